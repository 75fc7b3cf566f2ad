"""Independent Jack-polynomial oracle in the single parameter ``alpha``.

Nothing here touches the (q,t) machinery: the integral Jack basis is
rebuilt by Gram-Schmidt under ``<p_mu, p_nu>_alpha = delta z_mu alpha^l(mu)``,
and the Jack characters and Goulden-Jackson coefficients are derived from it.
These values are what the gamma = 0 slices of the two-parameter objects are
compared against.
"""

from __future__ import annotations

from functools import lru_cache
from math import comb, factorial

from .partitions import Partition, partitions, z_classical
from .scalars import ONE, ZERO, RatFun, var
from .symfunc import SymFun, convert, monomial, perp

_a = var("alpha")


def _key(lam) -> Partition:
    return lam if isinstance(lam, Partition) else Partition(lam)


def alpha_scalar(f: SymFun, g: SymFun) -> RatFun:
    out = ZERO
    for mu, x in f.terms.items():
        y = g.terms.get(mu)
        if y is not None:
            out = out + x * y * z_classical(mu) * _a ** mu.length
    return out


@lru_cache(maxsize=None)
def _jack_degree(n: int) -> dict[Partition, SymFun]:
    # reverse-lex order is a linear extension of dominance, smallest first
    order = list(reversed(partitions(n)))
    P: dict[Partition, SymFun] = {}
    norms: dict[Partition, RatFun] = {}
    for lam in order:
        f = monomial(lam)
        for mu, Pm in P.items():
            c = alpha_scalar(f, Pm)
            if not c.is_zero():
                f = f - Pm.scale(c / norms[mu])
        P[lam] = f
        norms[lam] = alpha_scalar(f, f)
    out = {}
    ones = Partition([1] * n)
    for lam, f in P.items():
        lead = convert(f, "m").get(ones, ZERO)
        out[lam] = f.scale(RatFun(factorial(n)) / lead)
    return out


def jack_J(lam) -> SymFun:
    """Integral Jack polynomial ``J_lam^(alpha)`` (coefficient of ``m_{1^n}`` is ``n!``)."""
    lam = _key(lam)
    return _jack_degree(lam.size)[lam]


def jack_norm(lam) -> RatFun:
    J = jack_J(lam)
    return alpha_scalar(J, J)


def jack_character(mu, lam) -> RatFun:
    """``theta_mu(lam) = [p_mu] (p_1^perp)^r J_lam / r!`` with ``r = |lam| - |mu|``."""
    mu, lam = _key(mu), _key(lam)
    r = lam.size - mu.size
    if r < 0:
        return ZERO
    g = jack_J(lam)
    if r:
        g = perp(SymFun.p([1] * r), g).scale(RatFun(1) / factorial(r))
    return g.coefficient(mu)


def jack_character_padded(mu, lam) -> RatFun:
    """Same value through the padding rule ``theta_mu = binom(r + m_1, m_1) theta_{mu 1^r}``."""
    mu, lam = _key(mu), _key(lam)
    r = lam.size - mu.size
    if r < 0:
        return ZERO
    m1 = mu.multiplicities().get(1, 0)
    return jack_J(lam).coefficient(Partition(list(mu) + [1] * r)) * comb(r + m1, m1)


def _triple_terms(m: int) -> dict[tuple[Partition, Partition, Partition], RatFun]:
    out: dict = {}
    for lam in partitions(m):
        J = jack_J(lam)
        w = ONE / jack_norm(lam)
        for a, x in J.terms.items():
            for b, y in J.terms.items():
                for c, z in J.terms.items():
                    key = (a, b, c)
                    out[key] = out.get(key, ZERO) + w * x * y * z
    return out


def jack_c(m: int) -> dict[tuple[Partition, Partition, Partition], RatFun]:
    """``c^pi_{mu,nu}(alpha)`` from ``sum_lam J J J / j_lam = sum c / (z_pi alpha^l(pi)) p p p``."""
    out = {}
    for (pi, mu, nu), v in _triple_terms(m).items():
        if not v.is_zero():
            out[(pi, mu, nu)] = v * z_classical(pi) * _a ** pi.length
    return out


def _merge(a: Partition, b: Partition) -> Partition:
    return Partition(sorted(a + b, reverse=True))


def _tmul(f: dict, g: dict) -> dict:
    out: dict = {}
    for (a1, b1, c1), x in f.items():
        for (a2, b2, c2), y in g.items():
            key = (_merge(a1, a2), _merge(b1, b2), _merge(c1, c2))
            out[key] = out.get(key, ZERO) + x * y
    return out


def graded_log(series: list[dict], m: int) -> dict:
    """``[u^m] log(1 + sum_{d>=1} u^d series[d])`` on triple-tensor dictionaries."""
    power = {d: series[d] for d in range(1, m + 1)}
    acc: dict = {}
    for k in range(1, m + 1):
        sign = ONE if k % 2 else -ONE
        for key, v in power.get(m, {}).items():
            acc[key] = acc.get(key, ZERO) + sign * v / k
        nxt: dict[int, dict] = {}
        for d, f in power.items():
            for e in range(1, m - d + 1):
                prod = _tmul(f, series[e])
                slot = nxt.setdefault(d + e, {})
                for key, v in prod.items():
                    slot[key] = slot.get(key, ZERO) + v
        power = nxt
        if not power:
            break
    return {k: v for k, v in acc.items() if not v.is_zero()}


def jack_h(m: int) -> dict[tuple[Partition, Partition, Partition], RatFun]:
    """``h^pi_{mu,nu}(alpha)`` from ``log sum_lam u^|lam| J J J / j_lam = sum u^m h / (alpha m) p p p``."""
    series = [None] + [_triple_terms(d) for d in range(1, m + 1)]
    log = graded_log(series, m)
    return {key: v * _a * m for key, v in log.items()}
