"""The (alpha, gamma) world: integral forms, Goulden-Jackson type coefficients,
proposition checks and positivity sweeps.

Everything is computed in (q, t) and moved to ``q = 1 + gamma*alpha``,
``t = 1 + gamma`` at the end, optionally followed by ``alpha = 1 + b``.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator

from .characters import structure_g, theta_norm_poly
from .jack import graded_log
from .macdonald import MismatchCertificate, gamma, get_cache
from .partitions import (
    Partition,
    binomial2,
    conjugate,
    f_exponent,
    hook_t,
    mn_char,
    n_stat,
    partitions,
    partitions_upto,
    pochhammer,
    q_factorial,
    q_number,
    z_classical,
)
from .scalars import (
    ONE,
    ZERO,
    MultiPoly,
    NotPolynomial,
    RatFun,
    alpha_to_b,
    as_polynomial,
    has_integer_coefficients,
    has_nonnegative_coefficients,
    poly_from_json,
    poly_to_json,
    substitute,
    to_alpha_gamma,
    used_variables,
    var,
)
from .symfunc import Alphabet, SymFun, convert, pleth, qt_scalar, zqt
from . import cache as diskcache

__all__ = [
    "PositivityViolation", "GJTable", "Certificate", "jfrak", "gj_c", "gj_h",
    "mn_char", "check_marginal", "check_alpha1", "sweep", "CONJECTURES",
    "QPRIME_BINDINGS", "aggregate",
]

_q, _t = var("q"), var("t")
_a, _g, _b = var("alpha"), var("gamma"), var("b")

Triple = tuple[Partition, Partition, Partition]


class PositivityViolation(AssertionError):
    """A quantity proven to be a non-negative integer polynomial is not one."""


def _key(lam) -> Partition:
    return lam if isinstance(lam, Partition) else Partition(lam)


# certificates ------------------------------------------------------------------------


def _flags(p: MultiPoly | None) -> dict[str, bool]:
    if p is None:
        return {"is_polynomial": False, "integer_coeffs": False, "nonneg_coeffs": False}
    return {
        "is_polynomial": True,
        "integer_coeffs": has_integer_coefficients(p),
        "nonneg_coeffs": has_nonnegative_coefficients(p),
    }


@dataclass
class Certificate:
    """Outcome of one check: the normalized polynomials and their flags.

    ``polynomials`` maps a label to the certified value; ``None`` records a
    value that is not a polynomial in ``variables``.
    """

    check: str
    inputs: dict
    polynomials: dict[str, MultiPoly | None]
    variables: tuple[str, ...]
    runtime: float = 0.0
    config: dict = field(default_factory=dict)
    schema: int = diskcache.SCHEMA

    @property
    def flags(self) -> dict[str, bool]:
        out = {"is_polynomial": True, "integer_coeffs": True, "nonneg_coeffs": True}
        for p in self.polynomials.values():
            for k, v in _flags(p).items():
                out[k] = out[k] and v
        return out

    @property
    def passed(self) -> bool:
        return all(self.flags.values())

    @property
    def polynomial(self) -> MultiPoly | None:
        """The single value of a one-instance certificate."""
        if len(self.polynomials) != 1:
            raise ValueError("certificate holds several values")
        return next(iter(self.polynomials.values()))

    def to_json(self, runtime: bool = True) -> dict:
        out = {
            "check": self.check,
            "inputs": self.inputs,
            "variables": list(self.variables),
            "polynomials": {k: (None if p is None else poly_to_json(p))
                            for k, p in sorted(self.polynomials.items())},
            "flags": self.flags,
            "passed": self.passed,
            "config": self.config,
            "schema": self.schema,
        }
        if runtime:
            out["runtime"] = round(self.runtime, 6)
        return out

    @classmethod
    def from_json(cls, data: dict) -> "Certificate":
        polys = {k: (None if v is None else poly_from_json(v)) for k, v in data["polynomials"].items()}
        return cls(data["check"], data["inputs"], polys, tuple(data["variables"]),
                   data.get("runtime", 0.0), data.get("config", {}), data.get("schema", diskcache.SCHEMA))


def certify_value(value: RatFun, variables: Iterable[str]) -> MultiPoly | None:
    """``value`` as a polynomial involving only ``variables``, or ``None``."""
    try:
        p = as_polynomial(value)
    except NotPolynomial:
        return None
    if not used_variables(p) <= set(variables):
        return None
    return p


# (alpha, gamma) integral forms --------------------------------------------------------


def jfrak(lam, check: bool = True) -> SymFun:
    """``J_lam / (1 - t)^|lam|`` in (alpha, gamma), p-basis coefficients.

    With ``check`` the monomial coefficients are certified to be
    non-negative integer polynomials in alpha and gamma.
    """
    lam = _key(lam)
    J = get_cache().J(lam)
    scale = ONE / (1 - _t) ** lam.size
    out = J.map_coefficients(lambda c: to_alpha_gamma(c * scale))
    if check:
        for mu, c in convert(out, "m").items():
            p = certify_value(c, ("alpha", "gamma"))
            if p is None or not (has_integer_coefficients(p) and has_nonnegative_coefficients(p)):
                raise PositivityViolation(f"[m_{mu}] of J~_{lam} = {c} is not a non-negative integer polynomial")
    return out


def jtilde_norm(lam) -> RatFun:
    """``gamma^{-2|lam|} j_lam`` in (alpha, gamma)."""
    lam = _key(lam)
    return to_alpha_gamma(get_cache().norm(lam)) / _g ** (2 * lam.size)


# Goulden-Jackson type coefficients ----------------------------------------------------


@dataclass
class GJTable:
    """Coefficients ``(pi, mu, nu) -> value`` for one size ``m`` (absent keys are zero)."""

    m: int
    kind: str
    values: dict[Triple, RatFun]

    def __getitem__(self, key) -> RatFun:
        pi, mu, nu = (_key(x) for x in key)
        return self.values.get((pi, mu, nu), ZERO)

    def items(self) -> Iterator[tuple[Triple, RatFun]]:
        return iter(self.values.items())

    def keys(self) -> list[Triple]:
        return [(a, b, c) for a in partitions(self.m) for b in partitions(self.m) for c in partitions(self.m)]


_SERIES: dict[int, dict[Triple, RatFun]] = {}


def _series_part(m: int) -> dict[Triple, RatFun]:
    """``[u^m]`` of ``sum_lam u^|lam| t^{-2n} q^{n'} J~ J~ J~ / j~``, p-coefficients in (q, t)."""
    if m not in _SERIES:
        cache = get_cache()
        out: dict[Triple, RatFun] = {}
        for lam in partitions(m):
            J = cache.J(lam)
            w = (_q ** n_stat(conjugate(lam)) / (_t ** (2 * n_stat(lam)) * (1 - _t) ** m * cache.norm(lam)))
            for a, x in J.terms.items():
                wx = w * x
                for b, y in J.terms.items():
                    wxy = wx * y
                    for c, z in J.terms.items():
                        key = (a, b, c)
                        out[key] = out.get(key, ZERO) + wxy * z
        _SERIES[m] = {k: v for k, v in out.items() if not v.is_zero()}
    return _SERIES[m]


_TABLES: dict[tuple[str, int], GJTable] = {}


def gj_c(m: int) -> GJTable:
    """``c^pi_{mu,nu}(alpha, gamma)``: the series coefficient times ``z_pi(q,t)``."""
    if ("c", m) in _TABLES:
        return _TABLES[("c", m)]
    vals = {}
    for (pi, mu, nu), v in _series_part(m).items():
        vals[(pi, mu, nu)] = to_alpha_gamma(v * zqt(pi))
    return _TABLES.setdefault(("c", m), GJTable(m, "c", vals))


def gj_h(m: int) -> GJTable:
    """``h^pi_{mu,nu}(alpha, gamma)``: ``alpha [m]_q`` times the ``u^m`` part of the log."""
    if ("h", m) in _TABLES:
        return _TABLES[("h", m)]
    series = [None] + [_series_part(d) for d in range(1, m + 1)]
    log = graded_log(series, m)
    factor = (1 - _q ** m) / (1 - _t)
    table = GJTable(m, "h", {key: to_alpha_gamma(v * factor) for key, v in log.items()})
    return _TABLES.setdefault(("h", m), table)


# proposition checks --------------------------------------------------------------------


def _q_as_ag() -> RatFun:
    return 1 + _g * _a


def check_marginal(m: int) -> Certificate:
    """Row sums ``sum_nu c^pi_{mu,nu}`` against their closed form, plus the corollary form."""
    start = time.perf_counter()
    c = gj_c(m)
    polys: dict[str, MultiPoly | None] = {}
    head = to_alpha_gamma(_q ** binomial2(m) * pochhammer(_q, m) / (1 - _t) ** m)
    qfac = to_alpha_gamma(RatFun(q_factorial(m)))
    for mu in partitions(m):
        pl = ONE
        ratio = ONE
        for k in mu:
            pl = pl * (1 - _t ** k) / (1 - _q ** k)
            ratio = ratio * RatFun(q_number(k, "t")) / RatFun(q_number(k, "q"))
        closed = head * to_alpha_gamma(pl) / z_classical(mu)
        cor = to_alpha_gamma(_q ** binomial2(m) * ratio) * qfac * _a ** (m - mu.length)
        for pi in partitions(m):
            row = ZERO
            for nu in partitions(m):
                row = row + c[(pi, mu, nu)]
            if row != closed:
                raise MismatchCertificate(f"marginal sum pi={pi} mu={mu}", row, closed)
            if row * z_classical(mu) != cor:
                raise MismatchCertificate(f"corollary form pi={pi} mu={mu}", row * z_classical(mu), cor)
        p = certify_value(cor, ("alpha", "gamma"))
        polys[f"mu={mu}"] = p
        if not all(_flags(p).values()):
            raise MismatchCertificate(f"z_mu * row sum is not a non-negative integer polynomial for mu={mu}", cor)
    return Certificate("marginal", {"m": m}, polys, ("alpha", "gamma"), time.perf_counter() - start)


def check_alpha1(m: int) -> Certificate:
    """``c`` at ``alpha = 1`` against the symmetric-group character sum, plus integrality."""
    start = time.perf_counter()
    c = gj_c(m)
    tg = 1 + _g
    weights = {}
    for lam in partitions(m):
        e = n_stat(conjugate(lam)) - 2 * n_stat(lam)
        tp = tg ** e if e >= 0 else ONE / tg ** (-e)
        weights[lam] = tp * substitute(RatFun(hook_t(lam)), {"t": tg})
    polys: dict[str, MultiPoly | None] = {}
    for pi in partitions(m):
        for mu in partitions(m):
            for nu in partitions(m):
                lhs = substitute(c[(pi, mu, nu)], {"alpha": 1})
                rhs = ZERO
                for lam in partitions(m):
                    chi = mn_char(lam, pi) * mn_char(lam, mu) * mn_char(lam, nu)
                    if chi:
                        rhs = rhs + weights[lam] * chi
                rhs = rhs / (z_classical(mu) * z_classical(nu))
                if lhs != rhs:
                    raise MismatchCertificate(f"alpha=1 formula at {(pi, mu, nu)}", lhs, rhs)
                norm = lhs * tg ** (m * (m - 1)) * z_classical(mu) * z_classical(nu)
                p = certify_value(norm, ("gamma",))
                if p is None or not has_integer_coefficients(p):
                    raise MismatchCertificate(f"alpha=1 integrality at {(pi, mu, nu)}", norm)
                # integrality is the claim here; signs are not asserted
                polys[f"{pi}|{mu}|{nu}"] = p
    cert = Certificate("alpha1", {"m": m}, polys, ("gamma",), time.perf_counter() - start)
    return cert


def check_super_nabla(m: int) -> bool:
    """``gamma^{-m} nabla nabla_Y p_pi`` reproduces ``c^pi`` for every ``pi |- m``."""
    from .macdonald import super_nabla_pair

    c = gj_c(m)
    for pi in partitions(m):
        table = super_nabla_pair(pi)
        for mu in partitions(m):
            for nu in partitions(m):
                if table.get((mu, nu), ZERO) != c[(pi, mu, nu)]:
                    return False
    return True


def check_g_equals_c(m: int) -> bool:
    """The size-``m`` part of ``theta_mu theta_nu`` (``mu, nu |- m``) has coefficients ``c``."""
    c = gj_c(m)
    for mu in partitions(m):
        for nu in partitions(m):
            g = structure_g(mu, nu)
            for pi in partitions(m):
                if g.get(pi, ZERO) != c[(pi, mu, nu)]:
                    return False
    return True


def check_g_bounds(mu, nu) -> bool:
    """``g^pi_{mu,nu}`` vanishes unless ``max(|mu|,|nu|) <= |pi| <= |mu|+|nu|``."""
    mu, nu = _key(mu), _key(nu)
    lo, hi = max(mu.size, nu.size), mu.size + nu.size
    return all(lo <= pi.size <= hi for pi in structure_g(mu, nu))


# sweeps ---------------------------------------------------------------------------------


QPRIME_BINDINGS = ("q-1", "q", "alpha")


@dataclass
class SweepConfig:
    qprime: str = "q-1"

    def to_json(self) -> dict:
        return {"qprime": self.qprime}


def _stanley_instances(n: int) -> Iterator[dict]:
    for size in range(2, n + 1):
        for lam in partitions(size):
            for k in range(1, size):
                for mu in partitions(k):
                    for nu in partitions(size - k):
                        yield {"lambda": list(lam), "mu": list(mu), "nu": list(nu)}


def _stanley(inp: dict, cfg: SweepConfig) -> tuple[RatFun, tuple[str, ...]]:
    cache = get_cache()
    lam, mu, nu = (Partition(inp[k]) for k in ("lambda", "mu", "nu"))
    prod = cache.J(mu).with_degree(lam.size) * cache.J(nu).with_degree(lam.size)
    val = qt_scalar(prod, cache.J(lam)) / (1 - _t) ** (2 * lam.size)
    return to_alpha_gamma(val), ("alpha", "gamma")


def _gj_instances(n: int) -> Iterator[dict]:
    for m in range(1, n + 1):
        for pi in partitions(m):
            for mu in partitions(m):
                for nu in partitions(m):
                    yield {"pi": list(pi), "mu": list(mu), "nu": list(nu)}


def _matchings(inp: dict, cfg: SweepConfig) -> tuple[RatFun, tuple[str, ...]]:
    pi, mu, nu = (Partition(inp[k]) for k in ("pi", "mu", "nu"))
    m = pi.size
    c = gj_c(m)[(pi, mu, nu)]
    val = (1 + _g) ** (m * (m - 1)) * z_classical(mu) * z_classical(nu) * c
    return alpha_to_b(val), ("b", "gamma")


def _bconj(inp: dict, cfg: SweepConfig) -> tuple[RatFun, tuple[str, ...]]:
    pi, mu, nu = (Partition(inp[k]) for k in ("pi", "mu", "nu"))
    m = pi.size
    h = gj_h(m)[(pi, mu, nu)]
    val = (1 + _g) ** (m * (m - 1)) * z_classical(pi) * z_classical(mu) * z_classical(nu) * h
    return alpha_to_b(val), ("b", "gamma")


def _structure_instances(n: int) -> Iterator[dict]:
    for mu in partitions_upto(n):
        for nu in partitions_upto(n):
            if mu.size and nu.size:
                yield {"mu": list(mu), "nu": list(nu)}


def _lassalle_instances(n: int, kmax: int = 2) -> Iterator[dict]:
    for size in range(1, n + 1):
        for mu in partitions(size):
            for k in range(1, kmax + 1):
                yield {"mu": list(mu), "k": k}


def _lassalle(inp: dict, cfg: SweepConfig) -> tuple[RatFun, tuple[str, ...]]:
    mu, k = Partition(inp["mu"]), int(inp["k"])
    theta = theta_norm_poly(mu, k) * to_alpha_gamma(zqt(mu))
    sign = -1 if mu.size % 2 else 1
    val = theta * (1 + _g) ** ((k - 1) * mu.size) * sign
    # variables b, gamma and w_i = -alpha s_i
    val = substitute(val, {f"s{i}": -var(f"w{i}") / _a for i in range(1, k + 1)})
    val = alpha_to_b(val)
    return val, ("b", "gamma") + tuple(f"w{i}" for i in range(1, k + 1))


def _gamma_instances(n: int) -> Iterator[dict]:
    for size in range(0, n + 1):
        for mu in partitions(size):
            yield {"mu": list(mu), "max_nu": n}


_QPRIME_IMAGE = {
    "q-1": lambda: 1 + var("qprime"),
    "q": lambda: var("qprime"),
    "alpha": lambda: 1 + _g * var("qprime"),
}


def gamma_pairings(mu, max_nu: int, qprime: str = "q-1") -> dict[Partition, RatFun]:
    """``(-1)^n t^{|mu|} < [z^n] Gamma(z, v) p_mu[X(1-t)/(1-q)], p_nu[X(1-q)/(1-t)] >`` for ``|nu| <= max_nu``.

    The result is written in ``qprime``, ``gamma`` (``t = 1 + gamma``) and
    ``w1 = -v``.
    """
    if qprime not in QPRIME_BINDINGS:
        raise ValueError(f"qprime binding must be one of {QPRIME_BINDINGS}")
    mu = _key(mu)
    v = var("v1")
    src = pleth(SymFun.p(mu), Alphabet.linear((1 - _t) / (1 - _q)))
    series = gamma(src, v, side="integral", kmax=max_nu - mu.size)
    images = {"q": _QPRIME_IMAGE[qprime](), "t": 1 + _g, "v1": -var("w1")}
    out = {}
    for n, part in enumerate(series):
        sign = -1 if n % 2 else 1
        for nu in partitions(mu.size + n):
            # Hall pairing with p_nu[X(1-q)/(1-t)] = z_nu prod (1-q^k)/(1-t^k)
            x = part.coefficient(nu)
            if x.is_zero():
                continue
            val = x * zqt(nu) * _t ** mu.size * sign
            out[nu] = substitute(val, images)
    return out


CONJECTURES = ("stanley", "matchings", "b", "structure", "lassalle", "gamma")


def sweep(conjecture: str, n: int, config: SweepConfig | None = None,
          jobs: int = 1, k: int = 2) -> list[Certificate]:
    """Certificates for every instance of ``conjecture`` up to size ``n``.

    A certificate that fails its flags is returned, never raised.
    """
    cfg = config or SweepConfig()
    if conjecture not in CONJECTURES:
        raise ValueError(f"unknown conjecture {conjecture!r}; choose from {CONJECTURES}")
    if conjecture == "structure":
        return _sweep_structure(n)
    if conjecture == "gamma":
        return _sweep_gamma(n, cfg)
    table: dict[str, tuple[Callable[[int], Iterable[dict]], Callable]] = {
        "stanley": (_stanley_instances, _stanley),
        "matchings": (_gj_instances, _matchings),
        "b": (_gj_instances, _bconj),
        "lassalle": (lambda n: _lassalle_instances(n, k), _lassalle),
    }
    instances, fn = table[conjecture]
    items = list(instances(n))
    if jobs > 1:
        return _parallel(conjecture, items, cfg, jobs, n)
    return [_run_one(conjecture, fn, inp, cfg) for inp in items]


def _run_one(conjecture: str, fn: Callable, inp: dict, cfg: SweepConfig) -> Certificate:
    start = time.perf_counter()
    val, variables = fn(inp, cfg)
    p = certify_value(val, variables)
    return Certificate(conjecture, inp, {"value": p}, variables, time.perf_counter() - start, cfg.to_json())


_FNS = {"stanley": _stanley, "matchings": _matchings, "b": _bconj, "lassalle": _lassalle}


def _worker(args) -> dict:
    conjecture, inp, cfg_json = args
    return _run_one(conjecture, _FNS[conjecture], inp, SweepConfig(**cfg_json)).to_json()


def _parallel(conjecture: str, items: list[dict], cfg: SweepConfig, jobs: int, n: int) -> list[Certificate]:
    from concurrent.futures import ProcessPoolExecutor

    # fill the on-disk basis cache once so workers only read it
    get_cache().ensure(n)
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        results = list(pool.map(_worker, [(conjecture, inp, cfg.to_json()) for inp in items]))
    return [Certificate.from_json(r) for r in results]


def _sweep_structure(n: int) -> list[Certificate]:
    out = []
    for inp in _structure_instances(n):
        start = time.perf_counter()
        mu, nu = Partition(inp["mu"]), Partition(inp["nu"])
        g = structure_g(mu, nu)
        elapsed = time.perf_counter() - start
        for pi in partitions_upto(mu.size + nu.size):
            if pi.size < max(mu.size, nu.size):
                continue
            val = g.get(pi, ZERO)
            e = f_exponent(mu.size, nu.size, pi.size)
            val = alpha_to_b((1 + _g) ** e * z_classical(mu) * z_classical(nu) * val)
            p = certify_value(val, ("b", "gamma"))
            out.append(Certificate("structure", {"pi": list(pi), **inp, "f": e}, {"value": p},
                                   ("b", "gamma"), elapsed))
    return out


def _sweep_gamma(n: int, cfg: SweepConfig) -> list[Certificate]:
    out = []
    variables = ("qprime", "gamma", "w1")
    for size in range(0, n + 1):
        for mu in partitions(size):
            start = time.perf_counter()
            table = gamma_pairings(mu, n, cfg.qprime)
            elapsed = time.perf_counter() - start
            for nu in partitions_upto(n):
                if nu.size < mu.size:
                    continue
                val = table.get(nu, ZERO)
                p = certify_value(val, variables)
                out.append(Certificate("gamma", {"mu": list(mu), "nu": list(nu)}, {"value": p},
                                       variables, elapsed, cfg.to_json()))
    return out


def aggregate(conjecture: str, n: int, certs: list[Certificate], config: SweepConfig | None = None) -> dict:
    passed = sum(c.passed for c in certs)
    return {
        "conjecture": conjecture,
        "range": n,
        "passed": passed,
        "failed": len(certs) - passed,
        "config": (config or SweepConfig()).to_json(),
    }
