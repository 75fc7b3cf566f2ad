"""Macdonald polynomials, the diagonal operators, the Gamma operator and the creation formulas.

Two families of bases are used:

* the *integral* side, with ``J_lam`` built by Gram-Schmidt from the monomial
  basis under the (q,t) scalar product;
* the *modified* side, with ``Ht_lam = t^{n(lam)} phi(J_lam)``.

Operators that are diagonal in one of these bases act on expansion
dictionaries ``{lam: coefficient}`` (type :data:`Coeffs`).  The u-graded
series produced by ``Gamma`` are lists indexed by the power of ``u``.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Literal, Sequence

from . import cache as diskcache
from .partitions import EMPTY, Partition, n_stat, partitions
from .scalars import (
    ONE,
    RatFun,
    as_polynomial,
    ratfun,
    ratfun_from_json,
    substitute,
    to_alpha_gamma,
    var,
)
from .symfunc import (
    Alphabet,
    SymFun,
    h_plethystic,
    monomial,
    pleth,
    qt_scalar,
    zqt,
)

Side = Literal["integral", "modified"]
Coeffs = dict  # Partition -> RatFun
SIDES = ("integral", "modified")

_q, _t = var("q"), var("t")


class SingularEigenvalue(ZeroDivisionError):
    """A diagonal operator with a zero eigenvalue was inverted."""


class MismatchCertificate(AssertionError):
    """Two independently computed sides of an identity differ."""

    def __init__(self, message: str, lhs=None, rhs=None):
        super().__init__(message)
        self.lhs = lhs
        self.rhs = rhs


def _check_side(side: str) -> None:
    if side not in SIDES:
        raise ValueError(f"side must be one of {SIDES}, got {side!r}")


def _key(lam) -> Partition:
    return lam if isinstance(lam, Partition) else Partition(lam)


def _add_into(out: dict, key, value: RatFun) -> None:
    s = out.get(key)
    s = value if s is None else s + value
    if s.is_zero():
        out.pop(key, None)
    else:
        out[key] = s


def _flip_t(f: RatFun) -> RatFun:
    return substitute(f, {"t": ONE / _t})


def _t_power(k: int) -> RatFun:
    return _t ** k if k >= 0 else ONE / _t ** (-k)


# the basis cache -----------------------------------------------------------------


class MacCache:
    """Per-degree tables for ``J`` and ``Ht``, built once under a lock."""

    def __init__(self, use_disk: bool = True):
        self._lock = threading.Lock()
        self._use_disk = use_disk
        self._J: dict[int, dict[Partition, SymFun]] = {}
        self._norm: dict[Partition, RatFun] = {}
        self._p_to_J: dict[Partition, Coeffs] = {}
        self._p_to_H: dict[Partition, Coeffs] = {}
        self._H: dict[Partition, SymFun] = {}

    # construction

    def ensure(self, n: int) -> None:
        if n in self._J:
            return
        with self._lock:
            for d in range(n + 1):
                if d not in self._J:
                    self._J[d] = self._load_or_build(d)

    def _load_or_build(self, n: int) -> dict[Partition, SymFun]:
        data = diskcache.load_degree(n) if self._use_disk else None
        if data is not None:
            out = {}
            for entry in data["J"]:
                lam = Partition(entry["lambda"])
                out[lam] = SymFun(n, {Partition(t["mu"]): ratfun_from_json(t["coef"])
                                      for t in entry["p"]})
            if set(out) == set(partitions(n)):
                return out
        out = gram_schmidt_J(n)
        if self._use_disk:
            diskcache.store_degree(n, {"J": [
                {"lambda": list(lam), "p": out[lam].to_json()["terms"]}
                for lam in partitions(n)
            ]})
        return out

    # integral basis

    def J(self, lam) -> SymFun:
        lam = _key(lam)
        self.ensure(lam.size)
        return self._J[lam.size][lam]

    def P(self, lam) -> SymFun:
        lam = _key(lam)
        return self.J(lam).scale(ONE / j_to_p_factor(lam))

    def norm(self, lam) -> RatFun:
        """``<J_lam, J_lam>_{q,t}`` as computed from the basis itself."""
        lam = _key(lam)
        if lam not in self._norm:
            J = self.J(lam)
            self._norm[lam] = qt_scalar(J, J)
        return self._norm[lam]

    def p_in_J(self, mu) -> Coeffs:
        """``p_mu = sum_lam c_lam J_lam``."""
        mu = _key(mu)
        if mu not in self._p_to_J:
            self.ensure(mu.size)
            row = {}
            for lam in partitions(mu.size):
                c = self._J[mu.size][lam].coefficient(mu)
                if not c.is_zero():
                    row[lam] = c * zqt(mu) / self.norm(lam)
            self._p_to_J[mu] = row
        return self._p_to_J[mu]

    # modified basis

    def H(self, lam) -> SymFun:
        lam = _key(lam)
        if lam not in self._H:
            self._H[lam] = phi(self.J(lam)).scale(_t ** n_stat(lam))
        return self._H[lam]

    def p_in_H(self, mu) -> Coeffs:
        """``p_mu = sum_lam c_lam Ht_lam``, obtained through ``phi``."""
        mu = _key(mu)
        if mu not in self._p_to_H:
            factor = ONE
            for k in mu:
                factor = factor * (1 - _t ** k)
            row = {}
            for lam, d in self.p_in_J(mu).items():
                row[lam] = _flip_t(d * factor) * _t_power(-n_stat(lam))
            self._p_to_H[mu] = row
        return self._p_to_H[mu]

    # generic access

    def basis(self, lam, side: Side) -> SymFun:
        _check_side(side)
        return self.J(lam) if side == "integral" else self.H(lam)

    def p_in(self, mu, side: Side) -> Coeffs:
        _check_side(side)
        return self.p_in_J(mu) if side == "integral" else self.p_in_H(mu)


_DEFAULT: MacCache | None = None
_DEFAULT_LOCK = threading.Lock()


def get_cache() -> MacCache:
    global _DEFAULT
    if _DEFAULT is None:
        with _DEFAULT_LOCK:
            if _DEFAULT is None:
                _DEFAULT = MacCache()
    return _DEFAULT


def gram_schmidt_J(n: int) -> dict[Partition, SymFun]:
    """Integral forms of degree ``n`` by Gram-Schmidt on the monomial basis.

    Partitions are processed in increasing reverse-lexicographic order, a
    linear extension of dominance, so ``P_lam = m_lam + lower terms``.
    """
    P: dict[Partition, SymFun] = {}
    norms: dict[Partition, RatFun] = {}
    for lam in reversed(partitions(n)):
        f = monomial(lam)
        for mu, Pmu in P.items():
            c = qt_scalar(f, Pmu)
            if not c.is_zero():
                f = f - Pmu.scale(c / norms[mu])
        P[lam] = f
        norms[lam] = qt_scalar(f, f)
    return {lam: P[lam].scale(j_to_p_factor(lam)) for lam in partitions(n)}


def j_to_p_factor(lam) -> RatFun:
    """``c_lam = prod (1 - q^a t^{l+1})`` with ``J_lam = c_lam P_lam``."""
    out = ONE
    for a, l, _, _ in _key(lam).all_cell_stats():
        out = out * (1 - _q ** a * _t ** (l + 1))
    return out


def macdonald_J(lam) -> SymFun:
    return get_cache().J(lam)


def macdonald_P(lam) -> SymFun:
    return get_cache().P(lam)


def modified_H(lam) -> SymFun:
    return get_cache().H(lam)


# phi ----------------------------------------------------------------------------


def phi(f: SymFun) -> SymFun:
    """``sum d_mu(q,t) p_mu -> sum d_mu(q,1/t) p_mu[X/(1-1/t)]``."""
    out = {}
    for mu, c in f.terms.items():
        den = ONE
        for k in mu:
            den = den * (1 - ONE / _t ** k)
        out[mu] = _flip_t(c) / den
    return SymFun(f.degree, out)


def phi_inv(f: SymFun) -> SymFun:
    """``sum d_mu(q,t) p_mu -> sum d_mu(q,1/t) p_mu[X(1-t)]``."""
    out = {}
    for mu, c in f.terms.items():
        fac = ONE
        for k in mu:
            fac = fac * (1 - _t ** k)
        out[mu] = _flip_t(c) * fac
    return SymFun(f.degree, out)


# basis expansions ------------------------------------------------------------------


def to_basis(f: SymFun, side: Side = "integral", cache: MacCache | None = None) -> Coeffs:
    cache = cache or get_cache()
    out: Coeffs = {}
    for mu, c in f.terms.items():
        for lam, a in cache.p_in(mu, side).items():
            _add_into(out, lam, c * a)
    return out


def from_basis(coeffs: Coeffs, degree: int, side: Side = "integral",
               cache: MacCache | None = None) -> SymFun:
    cache = cache or get_cache()
    out = SymFun.zero(degree)
    for lam, c in coeffs.items():
        out = out + cache.basis(lam, side).scale(c)
    return out


def cell_weight(i: int, j: int, side: Side) -> RatFun:
    """``q^{a'} t^{-l'}`` (integral) or ``q^{a'} t^{l'}`` (modified) for cell ``(i, j)``."""
    return _q ** (j - 1) * _t_power(-(i - 1) if side == "integral" else i - 1)


def nabla_eigenvalue(lam, side: Side = "integral") -> RatFun:
    _check_side(side)
    lam = _key(lam)
    sign = -1 if lam.size % 2 else 1
    tpow = -n_stat(lam) if side == "integral" else n_stat(lam)
    return _q ** n_stat(lam.conjugate()) * _t_power(tpow) * sign


def delta_eigenvalue(lam, v, side: Side = "integral") -> RatFun:
    _check_side(side)
    v = ratfun(v)
    out = ONE
    for i, j in _key(lam).cells():
        out = out * (1 - v * cell_weight(i, j, side))
    return out


def scale_coeffs(coeffs: Coeffs, fn: Callable[[Partition], RatFun], inverse: bool = False) -> Coeffs:
    out: Coeffs = {}
    for lam, c in coeffs.items():
        e = fn(lam)
        if inverse:
            if e.is_zero():
                raise SingularEigenvalue(f"eigenvalue vanishes on {lam}")
            val = c / e
        else:
            val = c * e
        if not val.is_zero():
            out[lam] = val
    return out


def _diagonal(f: SymFun, fn, side: Side, inverse: bool) -> SymFun:
    coeffs = scale_coeffs(to_basis(f, side), fn, inverse)
    return from_basis(coeffs, f.degree, side)


def nabla(f: SymFun, side: Side = "integral", inverse: bool = False) -> SymFun:
    return _diagonal(f, lambda lam: nabla_eigenvalue(lam, side), side, inverse)


def delta(f: SymFun, v, side: Side = "integral", inverse: bool = False) -> SymFun:
    return _diagonal(f, lambda lam: delta_eigenvalue(lam, v, side), side, inverse)


def mult_pexp(f: SymFun, zfactor, degree: int) -> SymFun:
    """``P_Z f = Exp[Z X] f`` truncated at ``degree``."""
    from .symfunc import exp_kernel

    return exp_kernel(zfactor, degree) * f.with_degree(degree)


def translate(f: SymFun, z) -> SymFun:
    """``T_Z f = f[X + Z]``."""
    return pleth(f, Alphabet.linear(1, z))


# u-graded series ---------------------------------------------------------------------


@dataclass
class OperatorGrading:
    """A u-graded list: ``parts[k]`` is the coefficient of ``u^k``."""

    parts: list = field(default_factory=list)

    def __getitem__(self, k: int):
        return self.parts[k]

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __eq__(self, other) -> bool:
        if not isinstance(other, OperatorGrading):
            return NotImplemented
        n = max(len(self), len(other))
        pad = lambda g, k: g.parts[k] if k < len(g) else None  # noqa: E731
        for k in range(n):
            a, b = pad(self, k), pad(other, k)
            if a is None:
                a, b = b, a
            if b is None:
                if not _is_zero_part(a):
                    return False
            elif a != b:
                return False
        return True

    __hash__ = None  # type: ignore[assignment]


def _is_zero_part(x) -> bool:
    if isinstance(x, SymFun):
        return x.is_zero()
    return not x


def graded_pexp(series: list[SymFun], zfactor, kmax: int, degree: int) -> list[SymFun]:
    """``Exp[u Z X]`` times a u-graded series, up to ``u^kmax``."""
    hs = [h_plethystic(k, zfactor, degree) for k in range(kmax + 1)]
    out = [SymFun.zero(degree) for _ in range(kmax + 1)]
    for j, g in enumerate(series[: kmax + 1]):
        g = g.with_degree(degree)
        for k in range(kmax + 1 - j):
            out[j + k] = out[j + k] + hs[k] * g
    return out


def graded_map(series: list[SymFun], op: Callable[[SymFun], SymFun]) -> list[SymFun]:
    return [op(g) for g in series]


# Gamma ---------------------------------------------------------------------------


def gamma_alphabet(v, side: Side) -> RatFun:
    """Factor ``Z`` with ``Gamma(u, v) = Delta_{1/v} P_{u Z} Delta_{1/v}^{-1}``."""
    v = ratfun(v)
    if side == "integral":
        return v * (1 - _t) / (1 - _q)
    return v / (1 - _q)


def gamma(f: SymFun, v, uscale=1, side: Side = "integral", kmax: int | None = None,
          check_polynomial: bool = True) -> OperatorGrading:
    """``Gamma(uscale * u, v) f`` from its definition, graded by the power of ``u``.

    When ``v`` involves variables other than q and t, every coefficient of
    every u-part in the Macdonald basis of ``side`` is certified polynomial in
    those variables.
    """
    _check_side(side)
    v = ratfun(v)
    uscale = ratfun(uscale)
    top = max(f.degrees(), default=0)
    kmax = f.degree if kmax is None else kmax
    vinv = ONE / v
    symbols = v.variables() - {"q", "t"}
    inner = delta(f, vinv, side, inverse=True)
    zfac = gamma_alphabet(v, side)
    parts = []
    for k in range(kmax + 1):
        degree = top + k
        get_cache().ensure(degree)
        term = h_plethystic(k, zfac, degree) * inner.with_degree(degree)
        coeffs = scale_coeffs(to_basis(term, side), lambda lam: delta_eigenvalue(lam, vinv, side))
        if check_polynomial and symbols:
            for c in coeffs.values():
                as_polynomial(c, symbols)
        scale = uscale ** k
        parts.append(from_basis({lam: c * scale for lam, c in coeffs.items()}, degree, side))
    return OperatorGrading(parts)


@lru_cache(maxsize=None)
def pieri_coefficients(lam: Partition, k: int, side: Side) -> tuple:
    """Expansion of ``h_k[X(1-t)/(1-q)] J_lam`` (or ``h_k[X/(1-q)] Ht_lam``).

    Returned as a tuple of ``(xi, eta)`` pairs; computed by multiplying in the
    power-sum basis and re-expanding, without assuming the strip support.
    """
    _check_side(side)
    lam = _key(lam)
    degree = lam.size + k
    get_cache().ensure(degree)
    factor = (1 - _t) / (1 - _q) if side == "integral" else ONE / (1 - _q)
    prod = h_plethystic(k, factor, degree) * get_cache().basis(lam, side).with_degree(degree)
    return tuple(sorted(to_basis(prod, side).items(), key=lambda kv: kv[0]))


def skew_cells(xi: Partition, lam: Partition) -> list[tuple[int, int]]:
    return [(i, j) for i, j in xi.cells() if j > lam.part(i)]


def gamma_on_basis(coeffs: Coeffs, k: int, v, side: Side) -> Coeffs:
    """``[u^k] Gamma(u, v)`` on a basis expansion, through Pieri coefficients.

    On a basis element: ``sum_xi eta * prod_{cells of xi/lam} (v - w(cell)) * B_xi``.
    """
    v = ratfun(v)
    out: Coeffs = {}
    for lam, c in coeffs.items():
        for xi, eta in pieri_coefficients(lam, k, side):
            w = ONE
            for i, j in skew_cells(xi, lam):
                w = w * (v - cell_weight(i, j, side))
                if w.is_zero():
                    break
            if not w.is_zero():
                _add_into(out, xi, c * eta * w)
    return out


def gamma_series_on_basis(series: list[Coeffs], v, uscale, side: Side, kmax: int) -> list[Coeffs]:
    """Apply ``Gamma(uscale * u, v)`` to a u-graded list of basis expansions."""
    uscale = ratfun(uscale)
    out: list[Coeffs] = [{} for _ in range(kmax + 1)]
    for j, coeffs in enumerate(series[: kmax + 1]):
        if not coeffs:
            continue
        for k in range(kmax + 1 - j):
            scale = uscale ** k
            for xi, c in gamma_on_basis(coeffs, k, v, side).items():
                _add_into(out[j + k], xi, c * scale)
    return out


def chain_uscales(k: int, side: Side) -> list[RatFun]:
    """``1, t^{-1}, ..., t^{1-k}`` (integral) or ``1, t, ..., t^{k-1}`` (modified)."""
    return [_t_power(-i if side == "integral" else i) for i in range(k)]


def gamma_chain(vs: Sequence, side: Side = "integral", kmax: int = 0,
                uscales: Sequence | None = None) -> list[Coeffs]:
    """``Gamma(c_1 u, v_1) ... Gamma(c_k u, v_k) . 1`` as u-graded basis expansions."""
    uscales = chain_uscales(len(vs), side) if uscales is None else list(uscales)
    series: list[Coeffs] = [{EMPTY: ONE}] + [{} for _ in range(kmax)]
    for v, c in reversed(list(zip(vs, uscales))):
        series = gamma_series_on_basis(series, v, c, side, kmax)
    return series


def gamma_chain_closed_form(vs: Sequence, side: Side = "integral", kmax: int = 0) -> list[SymFun]:
    """Closed form of the Gamma chain applied to 1, per power of ``u``.

    Integral side: ``nabla P_{-t u/(1-q)} nabla^{-1} Exp[u X E]`` with
    ``E = (-t^{1-k} + (1-t) sum_i t^{1-i} v_i)/(1-q)``.
    Modified side: ``nabla P_{u/M} nabla^{-1} Exp[u X E]`` with
    ``E = t^k/M + sum_i t^{i-1} v_i/(1-q)`` and ``M = (1-q)(1-t)``.
    """
    k = len(vs)
    vs = [ratfun(v) for v in vs]
    M = (1 - _q) * (1 - _t)
    if side == "integral":
        expo = -_t_power(1 - k)
        for i, v in enumerate(vs, start=1):
            expo = expo + (1 - _t) * _t_power(1 - i) * v
        expo = expo / (1 - _q)
        outer = -_t / (1 - _q)
    else:
        expo = _t ** k / M
        for i, v in enumerate(vs, start=1):
            expo = expo + _t ** (i - 1) * v / (1 - _q)
        outer = ONE / M
    get_cache().ensure(kmax)
    series = [h_plethystic(d, expo, kmax) for d in range(kmax + 1)]
    series = graded_map(series, lambda g: nabla(g, side, inverse=True))
    series = graded_pexp(series, outer, kmax, kmax)
    return graded_map(series, lambda g: nabla(g, side))


def gamma_plus_on_basis(m: int, coeffs: Coeffs, side: Side = "integral") -> Coeffs:
    """``[u^m] nabla^{-1} Gamma(u, q^m) nabla`` on a basis expansion."""
    eig = lambda lam: nabla_eigenvalue(lam, side)  # noqa: E731
    inner = scale_coeffs(coeffs, eig)
    moved = gamma_on_basis(inner, m, _q ** m, side)
    return scale_coeffs(moved, eig, inverse=True)


def gamma_plus(m: int, f: SymFun, side: Side = "integral") -> SymFun:
    if m < 0:
        raise ValueError("m must be non-negative")
    top = max(f.degrees(), default=0) + m
    get_cache().ensure(top)
    coeffs = gamma_plus_on_basis(m, to_basis(f, side), side)
    return from_basis(coeffs, max(f.degree, top), side)


# creation formulas ---------------------------------------------------------------------

VARIANTS = ("thm1-integral", "thm2-integral", "thm1-modified", "thm2-modified")


@dataclass
class CreationResult:
    variant: str
    lam: Partition
    lhs: list[SymFun]
    rhs: list[SymFun]
    holds: bool

    def to_json(self) -> dict:
        return {
            "variant": self.variant,
            "lambda": list(self.lam),
            "holds": self.holds,
            "lhs": [g.to_json() for g in self.lhs],
            "rhs": [g.to_json() for g in self.rhs],
        }


def creation_chain(lam, variant: str, strict: bool = True) -> CreationResult:
    """Evaluate both sides of a creation formula for ``lam``.

    ``thm1-*``: the chain of creation operators applied to 1 against ``J_lam``
    (integral) or ``phi(J_lam) = t^{-n(lam)} Ht_lam`` (modified; the u-shifts
    of the underlying Gamma chain contribute ``t^{n(lam)}``, so the chain does
    not produce ``Ht_lam`` itself).  ``thm2-*``: the Gamma chain at ``v_i = q^{lam_i}`` against
    ``t^{-n} nabla J_lam[uX + 1/(1-t)]`` (integral) or ``nabla Ht_lam[uX + 1]``
    (modified), compared per power of ``u`` up to ``|lam| + 1``.
    """
    if variant not in VARIANTS:
        raise ValueError(f"variant must be one of {VARIANTS}")
    lam = _key(lam)
    thm, side = variant.split("-")
    n = lam.size
    cache = get_cache()
    if thm == "thm1":
        coeffs: Coeffs = {EMPTY: ONE}
        for m in reversed(lam):
            coeffs = gamma_plus_on_basis(m, coeffs, side)
        lhs = [from_basis(coeffs, n, side)]
        if side == "integral":
            rhs = [cache.J(lam)]
        else:
            rhs = [cache.H(lam).scale(_t_power(-n_stat(lam)))]
    else:
        kmax = n + 1
        cache.ensure(kmax)
        vs = [_q ** part for part in lam]
        series = gamma_chain(vs, side, kmax)
        lhs = [from_basis(c, kmax, side) for c in series]
        if side == "integral":
            shifted = translate(cache.J(lam).with_degree(kmax), ONE / (1 - _t))
            scale = _t_power(-n_stat(lam))
        else:
            shifted = translate(cache.H(lam).with_degree(kmax), ONE)
            scale = ONE
        rhs = [nabla(shifted.homogeneous(d), side).scale(scale) for d in range(kmax + 1)]
    holds = all(a == b for a, b in zip(lhs, rhs))
    result = CreationResult(variant, lam, lhs, rhs, holds)
    if strict and not holds:
        raise MismatchCertificate(f"{variant} fails for {lam}", lhs, rhs)
    return result


# super nabla ----------------------------------------------------------------------------


def super_nabla_pair(pi) -> dict[tuple[Partition, Partition], RatFun]:
    """Coefficients of ``p_mu[X] p_nu[Y]`` in ``gamma^{-m} nabla nabla_Y p_pi[X]``, in (alpha, gamma).

    Here ``nabla_Y J_lam[X] = t^{-n(lam)} J_lam[X] J_lam[Y]``.
    """
    pi = _key(pi)
    m = pi.size
    cache = get_cache()
    gam = var("gamma")
    table: dict[tuple[Partition, Partition], RatFun] = {}
    for lam, a in cache.p_in_J(pi).items():
        w = a * nabla_eigenvalue(lam, "integral") * _t_power(-n_stat(lam))
        J = cache.J(lam)
        for mu, x in J.terms.items():
            for nu, y in J.terms.items():
                _add_into(table, (mu, nu), w * x * y)
    return {key: to_alpha_gamma(c) / gam ** m for key, c in table.items()}
