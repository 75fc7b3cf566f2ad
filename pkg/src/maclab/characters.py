"""Shifted-symmetric functions, Macdonald characters and their structure coefficients.

For a symmetric function ``f`` the shifted-symmetric image ``f*`` is computed
in two independent ways:

* as a polynomial in ``v_1..v_k`` by pairing ``f`` with the Gamma chain
  ``Gamma(1, v_1) Gamma(1/t, v_2) ... Gamma(t^{1-k}, v_k) . 1`` (:func:`star`);
* as a function on diagrams, by pairing ``P_{1/(1-q)} nabla f`` with
  ``t^{-n(lam)} J_lam`` (:func:`jstar_eval`, :func:`char_eval`).

Diagram evaluation pads with ones: ``f(lam) = f(q^lam_1, ..., q^lam_l, 1, ...)``.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from typing import Mapping, Sequence

from .linalg import SingularSystem, determinant, solve
from .macdonald import (
    Coeffs,
    get_cache,
    gamma_chain,
    nabla,
    nabla_eigenvalue,
)
from .partitions import Partition, j_norm, n_stat, partitions, partitions_upto
from .scalars import (
    CTX,
    ONE,
    ZERO,
    RatFun,
    as_polynomial,
    ratfun,
    ratfun_from_json,
    ratfun_to_json,
    substitute,
    to_alpha_gamma,
    var,
    var_index,
)
from .symfunc import SymFun, h_plethystic, perp, qt_scalar, zqt

_q, _t = var("q"), var("t")


def _key(lam) -> Partition:
    return lam if isinstance(lam, Partition) else Partition(lam)


def _t_power(k: int) -> RatFun:
    return _t ** k if k >= 0 else ONE / _t ** (-k)


def v_names(k: int) -> list[str]:
    return [f"v{i}" for i in range(1, k + 1)]


def v_vars(k: int) -> list[RatFun]:
    return [var(name) for name in v_names(k)]


# shifted polynomials ----------------------------------------------------------------


class ShiftedPoly:
    """Polynomial in ``v_1..v_k`` with coefficients in Q(q, t)."""

    __slots__ = ("k", "terms")

    def __init__(self, k: int, terms: Mapping | None = None):
        self.k = k
        clean = {}
        for exp, c in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != k:
                raise ValueError(f"exponent {exp} has wrong length for k={k}")
            c = ratfun(c)
            if not c.is_zero():
                clean[exp] = c
        self.terms = clean

    @classmethod
    def from_ratfun(cls, f, k: int) -> "ShiftedPoly":
        f = ratfun(f)
        names = v_names(k)
        as_polynomial(f, names)
        idx = [var_index(n) for n in names]
        buckets: dict[tuple, dict] = {}
        for exp, c in f.num.terms():
            vexp = tuple(exp[i] for i in idx)
            rest = list(exp)
            for i in idx:
                rest[i] = 0
            buckets.setdefault(vexp, {})[tuple(rest)] = c
        extra = {n for n in f.variables() if n.startswith("v")} - set(names)
        if extra:
            raise ValueError(f"unexpected variables {sorted(extra)}")
        terms = {vexp: RatFun(CTX.from_dict(d), f.den) for vexp, d in buckets.items()}
        return cls(k, terms)

    def to_ratfun(self) -> RatFun:
        vs = v_vars(self.k)
        out = ZERO
        for exp, c in self.terms.items():
            mono = ONE
            for v, e in zip(vs, exp):
                if e:
                    mono = mono * v ** e
            out = out + c * mono
        return out

    def __repr__(self) -> str:
        return f"ShiftedPoly(k={self.k}, {self.to_ratfun()})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, ShiftedPoly):
            return NotImplemented
        if self.k != other.k:
            return False
        keys = set(self.terms) | set(other.terms)
        return all(self.terms.get(e, ZERO) == other.terms.get(e, ZERO) for e in keys)

    __hash__ = None  # type: ignore[assignment]

    def __add__(self, other: "ShiftedPoly") -> "ShiftedPoly":
        if self.k != other.k:
            raise ValueError("variable counts differ")
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, ZERO) + c
        return ShiftedPoly(self.k, out)

    def __sub__(self, other: "ShiftedPoly") -> "ShiftedPoly":
        return self + other.scale(-1)

    def scale(self, c) -> "ShiftedPoly":
        c = ratfun(c)
        return ShiftedPoly(self.k, {e: x * c for e, x in self.terms.items()})

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def top_part(self) -> "ShiftedPoly":
        d = self.degree()
        return ShiftedPoly(self.k, {e: c for e, c in self.terms.items() if sum(e) == d})

    def evaluate(self, values: Sequence) -> RatFun:
        if len(values) != self.k:
            raise ValueError(f"expected {self.k} values")
        values = [ratfun(x) for x in values]
        powers: dict[tuple[int, int], RatFun] = {}
        out = ZERO
        for exp, c in self.terms.items():
            mono = c
            for i, e in enumerate(exp):
                if e:
                    if (i, e) not in powers:
                        powers[(i, e)] = values[i] ** e
                    mono = mono * powers[(i, e)]
            out = out + mono
        return out

    def at_partition(self, lam) -> RatFun:
        lam = _key(lam)
        if lam.length > self.k:
            raise ValueError(f"{lam} has more than {self.k} rows")
        return self.evaluate([_q ** lam.part(i) for i in range(1, self.k + 1)])

    def restrict(self) -> "ShiftedPoly":
        """Set the last variable to 1."""
        out: dict[tuple, RatFun] = {}
        for exp, c in self.terms.items():
            key = exp[:-1]
            out[key] = out.get(key, ZERO) + c
        return ShiftedPoly(self.k - 1, out)

    def shifted_transposition(self, i: int) -> "ShiftedPoly":
        """Swap ``v_i t^{1-i}`` and ``v_{i+1} t^{-i}`` (1-based ``i``)."""
        if not 1 <= i < self.k:
            raise ValueError("transposition index out of range")
        a, b = i - 1, i
        out = {}
        for exp, c in self.terms.items():
            e = list(exp)
            ea, eb = e[a], e[b]
            e[a], e[b] = eb, ea
            out[tuple(e)] = c * _t_power(eb - ea)
        return ShiftedPoly(self.k, out)

    def is_shifted_symmetric(self) -> bool:
        return all(self.shifted_transposition(i) == self for i in range(1, self.k))

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "terms": [{"vexp": list(e), "coef": ratfun_to_json(c)}
                      for e, c in sorted(self.terms.items(), key=lambda kv: (-sum(kv[0]), [-x for x in kv[0]]))],
        }

    @classmethod
    def from_json(cls, data: dict) -> "ShiftedPoly":
        return cls(data["k"], {tuple(t["vexp"]): ratfun_from_json(t["coef"]) for t in data["terms"]})


def symmetric_in_shifted(f: SymFun, k: int) -> ShiftedPoly:
    """``f(v_1, v_2/t, ..., v_k/t^{k-1})`` for a symmetric function ``f``."""
    ws = [v * _t_power(-(i)) for i, v in enumerate(v_vars(k))]
    pk: dict[int, RatFun] = {}

    def power_sum(j: int) -> RatFun:
        if j not in pk:
            acc = ZERO
            for w in ws:
                acc = acc + w ** j
            pk[j] = acc
        return pk[j]

    out = ZERO
    for mu, c in f.terms.items():
        mono = c
        for part in mu:
            mono = mono * power_sum(part)
        out = out + mono
    return ShiftedPoly.from_ratfun(out, k)


# the star map ------------------------------------------------------------------------


_CHAIN_LOCK = threading.Lock()
_CHAINS: dict[tuple[int, int], list[Coeffs]] = {}


def symbolic_chain(k: int, kmax: int) -> list[Coeffs]:
    """``Gamma(u, v_1) Gamma(u/t, v_2) ... Gamma(u t^{1-k}, v_k) . 1`` in the J basis."""
    key = (k, kmax)
    if key not in _CHAINS:
        series = gamma_chain(v_vars(k), "integral", kmax)
        with _CHAIN_LOCK:
            _CHAINS.setdefault(key, series)
    return _CHAINS[key]


def _pair_with_chain(f: SymFun, series: list[Coeffs]) -> RatFun:
    cache = get_cache()
    out = ZERO
    for d in sorted(f.degrees()):
        if d >= len(series):
            raise ValueError("chain truncated below the degree of f")
        part = f.homogeneous(d)
        for lam, c in series[d].items():
            out = out + c * qt_scalar(part, cache.J(lam))
    return out


def star(f: SymFun, k: int) -> ShiftedPoly:
    """``f*`` in ``k`` variables, by pairing with the symbolic Gamma chain."""
    if k < 1:
        raise ValueError("k must be positive")
    top = max(f.degrees(), default=0)
    series = symbolic_chain(k, top)
    return ShiftedPoly.from_ratfun(_pair_with_chain(f, series), k)


def star_numeric(f: SymFun, lam) -> RatFun:
    """``f*(lam)`` from the Gamma chain evaluated at ``v_i = q^{lam_i}``."""
    lam = _key(lam)
    top = max(f.degrees(), default=0)
    vs = [_q ** part for part in lam] or [ONE]
    return _pair_with_chain(f, gamma_chain(vs, "integral", top))


def jstar_eval(mu, lam) -> RatFun:
    """``J*_mu(lam) = <P_{1/(1-q)} nabla J_mu, t^{-n(lam)} J_lam>_{q,t}``."""
    mu, lam = _key(mu), _key(lam)
    r = lam.size - mu.size
    if r < 0:
        return ZERO
    cache = get_cache()
    cache.ensure(lam.size)
    prod = h_plethystic(r, ONE / (1 - _q), lam.size) * cache.J(mu).with_degree(lam.size)
    return nabla_eigenvalue(mu) * _t_power(-n_stat(lam)) * qt_scalar(prod, cache.J(lam))


def jstar(mu, k: int) -> ShiftedPoly:
    return star(get_cache().J(mu), k)


@dataclass
class CheckResult:
    name: str
    inputs: dict
    passed: bool
    details: dict

    def to_json(self) -> dict:
        return {"check": self.name, "inputs": self.inputs, "passed": self.passed, "details": self.details}


def jstar_checks(mu, k: int | None = None) -> CheckResult:
    """Normalization, vanishing and top-part checks for ``J*_mu``."""
    mu = _key(mu)
    k = max(mu.length, 1) if k is None else k
    poly = jstar(mu, k)
    target = (-1 if mu.size % 2 else 1) * _q ** n_stat(mu.conjugate()) * _t_power(-2 * n_stat(mu)) * j_norm(mu)
    normalization = mu.length <= k and poly.at_partition(mu) == target
    normalization_eval = jstar_eval(mu, mu) == target
    vanishing = []
    for lam in partitions_upto(mu.size + 1):
        if lam.contains(mu):
            continue
        vals = [jstar_eval(mu, lam)]
        if lam.length <= k:
            vals.append(poly.at_partition(lam))
        vanishing.append(all(v.is_zero() for v in vals))
    top = poly.top_part() == symmetric_in_shifted(get_cache().J(mu), k)
    details = {
        "normalization": normalization,
        "normalization_eval": normalization_eval,
        "vanishing": all(vanishing),
        "top_part": top,
        "shifted_symmetric": poly.is_shifted_symmetric(),
        "degree": poly.degree() == mu.size,
    }
    return CheckResult("jstar", {"mu": list(mu), "k": k}, all(details.values()), details)


# characters ---------------------------------------------------------------------------


def h_perp_twisted(r: int, g: SymFun) -> SymFun:
    """``h_r^perp[X/(1-t)] g``."""
    return perp(h_plethystic(r, ONE / (1 - _t), r), g)


class CharTable:
    """Cache of ``theta~_mu(lam)``; rows are filled per (lam, |mu|)."""

    def __init__(self):
        self._lock = threading.Lock()
        self._rows: dict[tuple[Partition, int], dict[Partition, RatFun]] = {}

    def row(self, lam, size: int) -> dict[Partition, RatFun]:
        lam = _key(lam)
        key = (lam, size)
        if key not in self._rows:
            row = self._compute_row(lam, size)
            with self._lock:
                self._rows.setdefault(key, row)
        return self._rows[key]

    @staticmethod
    def _compute_row(lam: Partition, size: int) -> dict[Partition, RatFun]:
        r = lam.size - size
        if r < 0:
            return {mu: ZERO for mu in partitions(size)}
        cache = get_cache()
        g = h_perp_twisted(r, cache.J(lam).scale(_t_power(-n_stat(lam))))
        g = nabla(SymFun(size, g.terms), "integral")
        return {mu: g.coefficient(mu) * zqt(mu) for mu in partitions(size)}

    def __call__(self, mu, lam) -> RatFun:
        mu = _key(mu)
        return self.row(lam, mu.size)[mu]


CHAR_TABLE = CharTable()


def char_eval(mu, lam) -> RatFun:
    """``theta~_mu(lam) = <p_mu, nabla h^perp_{|lam|-|mu|}[X/(1-t)] t^{-n(lam)} J_lam>_{q,t}``."""
    return CHAR_TABLE(mu, lam)


def character(mu, k: int) -> ShiftedPoly:
    """``theta~_{mu,k} = p_mu*`` as a polynomial in ``v_1..v_k``."""
    return star(SymFun.p(mu), k)


def feray_checks(mu, k: int | None = None) -> CheckResult:
    """The three characterizing properties of ``theta~_mu``."""
    mu = _key(mu)
    k = max(mu.length, 1) if k is None else k
    poly = character(mu, k)
    vanish = []
    for lam in partitions_upto(mu.size - 1):
        if lam.length <= k:
            vanish.append(poly.at_partition(lam).is_zero())
        vanish.append(star_numeric(SymFun.p(mu), lam).is_zero())
    details = {
        "shifted_symmetric": poly.is_shifted_symmetric(),
        "degree": poly.degree() == mu.size,
        "vanishing": all(vanish),
        "top_part": poly.top_part() == symmetric_in_shifted(SymFun.p(mu), k),
    }
    return CheckResult("feray", {"mu": list(mu), "k": k}, all(details.values()), details)


def compatibility_check(f: SymFun, k: int) -> bool:
    """``f*`` in ``k + 1`` variables restricts to ``f*`` in ``k`` variables."""
    return star(f, k + 1).restrict() == star(f, k)


def cross_route_check(mu, lam) -> bool:
    """Symbolic chain, numeric chain and the diagram formula agree on ``theta~_mu(lam)``."""
    mu, lam = _key(mu), _key(lam)
    direct = char_eval(mu, lam)
    numeric = star_numeric(SymFun.p(mu), lam)
    k = max(lam.length, 1)
    symbolic = character(mu, k).at_partition(lam)
    return direct == numeric == symbolic


def evaluation_matrix(d: int) -> tuple[list[Partition], list[list[RatFun]]]:
    """Matrix ``[theta~_pi(lam)]`` over ``|lam|, |pi| <= d`` (rows lam, columns pi)."""
    parts = partitions_upto(d)
    return parts, [[char_eval(pi, lam) for pi in parts] for lam in parts]


def basis_determinants(d: int) -> dict[int, RatFun]:
    """Determinants of the diagonal size blocks of :func:`evaluation_matrix`."""
    out = {}
    for s in range(d + 1):
        block = [[char_eval(pi, lam) for pi in partitions(s)] for lam in partitions(s)]
        out[s] = determinant(block)
    return out


def vanishing_forces_zero(n: int) -> bool:
    """A combination of ``theta~_pi`` (``|pi| <= n``) vanishing on all ``|lam| <= n`` is zero.

    Solved as the homogeneous system on the evaluation matrix; the zero
    solution is the only one when every diagonal block is invertible and the
    solve of a zero right-hand side returns zero.
    """
    parts, E = evaluation_matrix(n)
    try:
        X = solve(E, [[ZERO] for _ in parts])
    except SingularSystem:
        return False
    return all(row[0].is_zero() for row in X)


# (alpha, gamma) normalization -------------------------------------------------------------


def s_names(k: int) -> list[str]:
    return [f"s{i}" for i in range(1, k + 1)]


def theta_norm_poly(mu, k: int) -> RatFun:
    """``theta_mu(s_1..s_k) = theta~_mu(1 + alpha gamma s_i) / (gamma^{|mu|} z_mu(q,t))`` in (alpha, gamma, s)."""
    mu = _key(mu)
    a, g = var("alpha"), var("gamma")
    poly = character(mu, k).to_ratfun()
    poly = substitute(poly, {f"v{i}": 1 + a * g * var(f"s{i}") for i in range(1, k + 1)})
    return to_alpha_gamma(poly / zqt(mu)) / g ** mu.size


def theta_norm_eval(mu, lam) -> RatFun:
    """``theta_mu(lam) = theta~_mu(lam) / (gamma^{|mu|} z_mu(q,t))`` in (alpha, gamma)."""
    mu = _key(mu)
    return to_alpha_gamma(char_eval(mu, lam) / zqt(mu)) / var("gamma") ** mu.size


def theta_norm(mu, k: int | None = None, lam=None) -> RatFun:
    if (k is None) == (lam is None):
        raise ValueError("give exactly one of k or lam")
    return theta_norm_poly(mu, k) if lam is None else theta_norm_eval(mu, lam)


# structure coefficients ------------------------------------------------------------------


NORMALIZATIONS = ("theta-tilde", "theta-alpha-gamma")


def _block_inverse_solve(s: int, residual: dict[Partition, RatFun]) -> dict[Partition, RatFun]:
    """Solve the equal-size block ``sum_pi x_pi theta~_pi(lam) = r_lam`` (``lam, pi |- s``).

    On this block ``theta~_pi(lam) = z_pi(q,t) e_lam [p_pi] J_lam`` with
    ``e_lam = (-1)^s q^{n(lam')} t^{-2n(lam)}``, so the inverse is read off the
    expansion of ``p_pi`` in the J basis.
    """
    cache = get_cache()
    out = {}
    for pi in partitions(s):
        acc = ZERO
        for lam, b in cache.p_in_J(pi).items():
            r = residual.get(lam, ZERO)
            if r.is_zero():
                continue
            e = nabla_eigenvalue(lam) * _t_power(-n_stat(lam))
            acc = acc + b * r / e
        if not acc.is_zero():
            out[pi] = acc / zqt(pi)
    return out


def structure_g(mu, nu, normalization: str = "theta-alpha-gamma", method: str = "block") -> dict[Partition, RatFun]:
    """Structure coefficients ``theta_mu theta_nu = sum_pi g^pi theta_pi``.

    ``method="block"`` uses forward substitution over the size blocks with the
    closed-form block inverse; ``method="bareiss"`` solves the full evaluation
    system by fraction-free elimination.
    """
    if normalization not in NORMALIZATIONS:
        raise ValueError(f"normalization must be one of {NORMALIZATIONS}")
    mu, nu = _key(mu), _key(nu)
    N = mu.size + nu.size
    get_cache().ensure(N)
    rhs = {lam: char_eval(mu, lam) * char_eval(nu, lam) for lam in partitions_upto(N)}
    gt: dict[Partition, RatFun] = {}
    if method == "block":
        for s in range(N + 1):
            residual = {}
            for lam in partitions(s):
                r = rhs[lam]
                for pi, x in gt.items():
                    if pi.size < s:
                        r = r - x * char_eval(pi, lam)
                residual[lam] = r
            gt.update(_block_inverse_solve(s, residual))
    elif method == "bareiss":
        parts, E = evaluation_matrix(N)
        X = solve(E, [[rhs[lam]] for lam in parts])
        gt = {pi: row[0] for pi, row in zip(parts, X) if not row[0].is_zero()}
    else:
        raise ValueError("method must be 'block' or 'bareiss'")
    if normalization == "theta-tilde":
        return gt
    gam = var("gamma")
    out = {}
    for pi, x in gt.items():
        val = to_alpha_gamma(x * zqt(pi) / (zqt(mu) * zqt(nu)))
        out[pi] = val * gam ** (pi.size - N) if pi.size >= N else val / gam ** (N - pi.size)
    return out
