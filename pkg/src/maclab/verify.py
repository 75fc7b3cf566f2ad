"""Executable identity suites.

Each suite yields :class:`Outcome` records, one per checked instance.  A
failed outcome on any of these proven identities is a bug in the package.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Callable, Iterator

from .characters import (
    basis_determinants,
    character,
    compatibility_check,
    cross_route_check,
    feray_checks,
    jstar_checks,
    theta_norm_eval,
    vanishing_forces_zero,
)
from .conjectures import (
    check_alpha1,
    check_g_bounds,
    check_g_equals_c,
    check_marginal,
    check_super_nabla,
    jfrak,
    PositivityViolation,
)
from .jack import jack_character, jack_character_padded
from .macdonald import (
    MismatchCertificate,
    VARIANTS,
    creation_chain,
    delta,
    gamma,
    gamma_chain,
    gamma_chain_closed_form,
    gamma_on_basis,
    from_basis,
    get_cache,
    graded_map,
    graded_pexp,
    nabla,
    phi,
    phi_inv,
    to_basis,
    translate,
)
from .partitions import (
    Partition,
    dominance_leq,
    horizontal_strips,
    j_norm,
    n_stat,
    partitions,
    partitions_upto,
    pochhammer,
)
from .scalars import ONE, ZERO, RatFun, limit_cancel, var
from .symfunc import (
    Alphabet,
    SymFun,
    convert,
    h_plethystic,
    pleth,
    qt_scalar,
    zqt,
)

_q, _t = var("q"), var("t")
_M = (1 - _q) * (1 - _t)


@dataclass
class Outcome:
    suite: str
    check: str
    instance: str
    passed: bool
    runtime: float = 0.0
    details: dict = field(default_factory=dict)

    def to_json(self, runtime: bool = True) -> dict:
        out = {"suite": self.suite, "check": self.check, "instance": self.instance,
               "passed": self.passed, "details": self.details}
        if runtime:
            out["runtime"] = round(self.runtime, 6)
        return out


def _timed(suite: str, check: str, instance: str, fn: Callable[[], object]) -> Outcome:
    start = time.perf_counter()
    details: dict = {}
    try:
        res = fn()
        if isinstance(res, dict):
            details = {k: bool(v) for k, v in res.items()}
            ok = all(details.values())
        else:
            ok = bool(res)
    except (MismatchCertificate, PositivityViolation) as exc:
        ok, details = False, {"error": str(exc)}
    return Outcome(suite, check, instance, ok, time.perf_counter() - start, details)


def _t_power(k: int) -> RatFun:
    return _t ** k if k >= 0 else ONE / _t ** (-k)


# Macdonald core -------------------------------------------------------------------------


def triangularity(lam: Partition) -> bool:
    """``J_lam`` has monomial support below ``lam`` in dominance order."""
    coeffs = convert(get_cache().J(lam), "m")
    return lam in coeffs and all(dominance_leq(mu, lam) for mu in coeffs)


def orthogonality(lam: Partition, rho: Partition) -> bool:
    cache = get_cache()
    val = qt_scalar(cache.J(lam), cache.J(rho))
    return val == (j_norm(lam) if lam == rho else ZERO)


def one_row_closed_form(m: int) -> bool:
    """``J_[m] = (q;q)_m h_m[X(1-t)/(1-q)]``."""
    rhs = h_plethystic(m, (1 - _t) / (1 - _q), m).scale(pochhammer(_q, m))
    return get_cache().J([m]) == rhs


def plethystic_specialization(lam: Partition) -> bool:
    """``J_lam[(1-v)/(1-t)] = prod (t^{l'} - v q^{a'})``."""
    v = var("v1")
    val = pleth(get_cache().J(lam), Alphabet.scalar((1 - v) / (1 - _t))).coefficient(Partition())
    expected = ONE
    for i, j in lam.cells():
        expected = expected * (_t ** (i - 1) - v * _q ** (j - 1))
    return val == expected


def unit_dichotomy(lam: Partition) -> dict[str, bool]:
    """``J_lam[1]`` is ``(t;q)_m`` for one row and zero otherwise, by two routes."""
    J = get_cache().J(lam)
    total = ZERO
    for c in J.terms.values():
        total = total + c
    plethed = pleth(J, Alphabet.scalar(1)).coefficient(Partition())
    expected = pochhammer(_t, lam.size) if lam.length <= 1 else ZERO
    return {"coefficient_sum": total == expected, "plethysm": plethed == expected}


def suite_core(max_size: int = 6) -> Iterator[Outcome]:
    get_cache().ensure(max_size)
    for n in range(1, max_size + 1):
        parts = partitions(n)
        for lam in parts:
            yield _timed("core", "triangularity", str(lam), lambda: triangularity(lam))
            yield _timed("core", "orthogonality", str(lam),
                         lambda: all(orthogonality(lam, rho) for rho in parts))
            yield _timed("core", "plethystic_specialization", str(lam), lambda: plethystic_specialization(lam))
            yield _timed("core", "unit_dichotomy", str(lam), lambda: unit_dichotomy(lam))
        yield _timed("core", "one_row_closed_form", str(n), lambda: one_row_closed_form(n))


# identity suite ---------------------------------------------------------------------------


def cauchy(m: int) -> bool:
    """``sum_lam J_lam[X] J_lam[Y] / j_lam = sum_pi p_pi[X] p_pi[Y] / z_pi(q,t)``."""
    cache = get_cache()
    table: dict = {}
    for lam in partitions(m):
        J = cache.J(lam)
        w = ONE / j_norm(lam)
        for a, x in J.terms.items():
            for b, y in J.terms.items():
                table[(a, b)] = table.get((a, b), ZERO) + w * x * y
    for a in partitions(m):
        for b in partitions(m):
            expected = ONE / zqt(a) if a == b else ZERO
            if table.get((a, b), ZERO) != expected:
                return False
    return True


def pieri_support(lam: Partition, k: int, side: str = "integral") -> bool:
    """The basis expansion of ``h_k[X Z] B_lam`` lives on horizontal strips of size ``k``."""
    cache = get_cache()
    n = lam.size + k
    cache.ensure(n)
    z = (1 - _t) / (1 - _q) if side == "integral" else ONE / (1 - _q)
    prod = h_plethystic(k, z, n) * cache.basis(lam, side).with_degree(n)
    support = set(to_basis(prod, side))
    return support <= set(horizontal_strips(lam, k))


def _graded(f: SymFun, kmax: int) -> list[SymFun]:
    return [f.with_degree(f.degree + kmax)] + [SymFun.zero(f.degree + kmax) for _ in range(kmax)]


def five_term(lam: Partition, kmax: int = 2) -> bool:
    """``nabla P_{u/M} nabla^{-1} P_{uv/M} = Delta_{1/v} P_{uv/M} Delta_{1/v}^{-1}`` on ``Ht_lam``."""
    cache = get_cache()
    v = var("v1")
    deg = lam.size + kmax
    cache.ensure(deg)
    H = _graded(cache.H(lam), kmax)
    lhs = graded_pexp(H, v / _M, kmax, deg)
    lhs = graded_map(lhs, lambda g: nabla(g, "modified", inverse=True))
    lhs = graded_pexp(lhs, ONE / _M, kmax, deg)
    lhs = graded_map(lhs, lambda g: nabla(g, "modified"))
    rhs = graded_map(H, lambda g: delta(g, ONE / v, "modified", inverse=True))
    rhs = graded_pexp(rhs, v / _M, kmax, deg)
    rhs = graded_map(rhs, lambda g: delta(g, ONE / v, "modified"))
    return all(a == b for a, b in zip(lhs, rhs))


def b_lambda(lam: Partition) -> RatFun:
    """``B_lam`` from the finite row sum ``sum t^{i-1}(1-q^{lam_i})/(1-q)``."""
    out = ZERO
    for i, part in enumerate(lam, start=1):
        out = out + _t ** (i - 1) * (1 - _q ** part) / (1 - _q)
    return out


def b_lambda_cells(lam: Partition) -> RatFun:
    out = ZERO
    for i, j in lam.cells():
        out = out + _q ** (j - 1) * _t ** (i - 1)
    return out


def tesler(lam: Partition, kmax: int = 4) -> bool:
    """``nabla P_{-u/M} T_{1/u} Ht_lam[uX] = Exp[-u X D_lam / M]`` per power of ``u``."""
    cache = get_cache()
    cache.ensure(kmax)
    D = _M * b_lambda(lam) - 1
    # T_{1/u} Ht[uX] = Ht[uX + 1]; its u^d part is the degree-d part
    shifted = translate(cache.H(lam).with_degree(max(kmax, lam.size)), ONE)
    series = [shifted.homogeneous(d).with_degree(kmax) for d in range(kmax + 1)]
    series = graded_pexp(series, -ONE / _M, kmax, kmax)
    lhs = [nabla(g, "modified") for g in series]
    rhs = [h_plethystic(d, -D / _M, kmax) for d in range(kmax + 1)]
    return all(a == b for a, b in zip(lhs, rhs))


def gamma_rewrite(lam: Partition, kmax: int = 2) -> bool:
    """``Gamma(u,v) = nabla P_{u/M} nabla^{-1} P_{uv/(1-q)} nabla P_{-tu/M} nabla^{-1}`` on ``Ht_lam``."""
    cache = get_cache()
    v = var("v1")
    deg = lam.size + kmax
    cache.ensure(deg)
    H = _graded(cache.H(lam), kmax)
    rhs = graded_map(H, lambda g: nabla(g, "modified", inverse=True))
    rhs = graded_pexp(rhs, -_t / _M, kmax, deg)
    rhs = graded_map(rhs, lambda g: nabla(g, "modified"))
    rhs = graded_pexp(rhs, v / (1 - _q), kmax, deg)
    rhs = graded_map(rhs, lambda g: nabla(g, "modified", inverse=True))
    rhs = graded_pexp(rhs, ONE / _M, kmax, deg)
    rhs = graded_map(rhs, lambda g: nabla(g, "modified"))
    lhs = gamma(cache.H(lam), v, side="modified", kmax=kmax)
    return all(lhs[k].with_degree(deg) == rhs[k] for k in range(kmax + 1))


def pieri_route_gamma(lam: Partition, side: str, kmax: int = 2) -> bool:
    """``Gamma`` from its definition agrees with the Pieri-coefficient formula."""
    cache = get_cache()
    v = var("v1")
    deg = lam.size + kmax
    cache.ensure(deg)
    lhs = gamma(cache.basis(lam, side), v, side=side, kmax=kmax)
    for k in range(kmax + 1):
        expected = from_basis(gamma_on_basis({lam: ONE}, k, v, side), deg, side)
        if lhs[k].with_degree(deg) != expected:
            return False
    return True


def chain_closed_form(k: int, side: str, kmax: int = 3) -> bool:
    """The Gamma chain on symbolic ``v_1..v_k`` against its plethystic closed form."""
    vs = [var(f"v{i}") for i in range(1, k + 1)]
    chain = gamma_chain(vs, side, kmax)
    closed = gamma_chain_closed_form(vs, side, kmax)
    return all(from_basis(c, kmax, side) == g for c, g in zip(chain, closed))


def random_symfun(rng: random.Random, degree: int) -> SymFun:
    """A small random element with coefficients in Z[q, t]."""
    terms = {}
    for mu in partitions_upto(degree):
        if rng.random() < 0.6:
            c = rng.randint(-3, 3) + rng.randint(-2, 2) * _q + rng.randint(-2, 2) * _t ** rng.randint(0, 2)
            terms[mu] = c
    return SymFun(degree, terms)


def phi_pexp_lemma(f: SymFun, i: int, kmax: int = 2) -> bool:
    """``phi^{-1} P_{u t^i/(1-q)} phi = P_{t^{-i}(1-t)u/(1-q)}`` per power of ``u``."""
    deg = f.degree + kmax
    lhs = graded_pexp([phi(f).with_degree(deg)], _t ** i / (1 - _q), kmax, deg)
    lhs = graded_map(lhs, phi_inv)
    rhs = graded_pexp([f.with_degree(deg)], _t_power(-i) * (1 - _t) / (1 - _q), kmax, deg)
    return all(a == b for a, b in zip(lhs, rhs))


def phi_translation_lemma(f: SymFun) -> bool:
    """``phi^{-1} T_Z phi = T_{Z/(1-t)}`` with a formal ``Z``."""
    z = var("z")
    return phi_inv(translate(phi(f), z)) == translate(f, z / (1 - _t))


def phi_gamma_conjugation(f: SymFun, i: int, kmax: int = 2) -> bool:
    """``phi^{-1} Gamma(t^i u, v) phi`` is the integral ``Gamma(t^{-i} u, v)``."""
    v = var("v1")
    get_cache().ensure(f.degree + kmax)
    mod = gamma(phi(f), v, uscale=_t ** i, side="modified", kmax=kmax)
    integ = gamma(f, v, uscale=_t_power(-i), side="integral", kmax=kmax)
    return all(phi_inv(a) == b for a, b in zip(mod, integ))


def phi_basis(lam: Partition) -> bool:
    """``phi`` and ``phi^{-1}`` are inverse and carry ``J_lam`` to ``t^{-n(lam)} Ht_lam``."""
    cache = get_cache()
    J = cache.J(lam)
    return phi_inv(phi(J)) == J and phi(J).scale(_t ** n_stat(lam)) == cache.H(lam)


def stability(lam: Partition, s: int, k: int) -> dict[str, bool]:
    """``[u^k] Gamma(u, q^s)`` keeps ``Ht_lam`` (``lam_1 <= s``) inside ``lam_1 <= s`` and kills it for ``k > s``."""
    cache = get_cache()
    cache.ensure(lam.size + k)
    part = gamma(cache.H(lam), _q ** s, side="modified", kmax=k)[k]
    coeffs = to_basis(part, "modified")
    out = {"stable": all(xi.part(1) <= s for xi in coeffs)}
    if k > s:
        out["vanishes"] = not coeffs
    return out


def suite_identities(max_size: int = 6) -> Iterator[Outcome]:
    cache = get_cache()
    cauchy_top = min(max_size, 5)
    small = min(max_size, 4)
    cache.ensure(max_size)
    for m in range(1, cauchy_top + 1):
        yield _timed("identities", "cauchy", str(m), lambda: cauchy(m))
    for lam in partitions_upto(max_size):
        for k in range(1, max_size - lam.size + 1):
            for side in ("integral", "modified"):
                yield _timed("identities", f"pieri_support_{side}", f"{lam},k={k}",
                             lambda: pieri_support(lam, k, side))
    for lam in partitions_upto(small):
        yield _timed("identities", "five_term", str(lam), lambda: five_term(lam))
        yield _timed("identities", "tesler", str(lam), lambda: tesler(lam, small))
        yield _timed("identities", "b_lambda_forms", str(lam), lambda: b_lambda(lam) == b_lambda_cells(lam))
        yield _timed("identities", "gamma_rewrite", str(lam), lambda: gamma_rewrite(lam))
        yield _timed("identities", "phi_basis", str(lam), lambda: phi_basis(lam))
        for side in ("integral", "modified"):
            yield _timed("identities", f"gamma_pieri_route_{side}", str(lam),
                         lambda: pieri_route_gamma(lam, side))
    for k in (1, 2):
        for side in ("integral", "modified"):
            yield _timed("identities", f"chain_closed_form_{side}", f"k={k}",
                         lambda: chain_closed_form(k, side))
    rng = random.Random(20240611)
    for trial in range(6):
        f = random_symfun(rng, rng.randint(1, small))
        i = rng.randint(0, 2)
        yield _timed("identities", "phi_pexp_lemma", f"trial={trial},i={i}", lambda: phi_pexp_lemma(f, i))
        yield _timed("identities", "phi_translation_lemma", f"trial={trial}", lambda: phi_translation_lemma(f))
        g = random_symfun(rng, rng.randint(1, 3))
        yield _timed("identities", "phi_gamma_conjugation", f"trial={trial},i={i}",
                     lambda: phi_gamma_conjugation(g, i))
    for s in range(0, 3):
        for lam in partitions_upto(small - 1):
            if lam.part(1) > s:
                continue
            for k in range(0, s + 2):
                if lam.size + k > max_size:
                    continue
                yield _timed("identities", "stability", f"{lam},s={s},k={k}", lambda: stability(lam, s, k))


# creation theorems ----------------------------------------------------------------------------


def suite_creation(max_size: int = 5) -> Iterator[Outcome]:
    get_cache().ensure(max_size + 1)
    for lam in partitions_upto(max_size):
        for variant in VARIANTS:
            yield _timed("creation", variant, str(lam), lambda: creation_chain(lam, variant, strict=False).holds)


# character layer ------------------------------------------------------------------------------


def jack_limit(mu: Partition, lam: Partition) -> dict[str, bool]:
    """``theta_mu(lam)`` at ``gamma -> 0`` against the Jack-character oracle (two oracle routes)."""
    val = limit_cancel(theta_norm_eval(mu, lam), "gamma", 0)
    return {"oracle": val == jack_character(mu, lam),
            "padding_rule": jack_character(mu, lam) == jack_character_padded(mu, lam)}


def suite_characters(max_size: int = 4) -> Iterator[Outcome]:
    get_cache().ensure(max_size + 1)
    for mu in partitions_upto(max_size):
        if mu.size == 0:
            continue
        for k in range(1, 4):
            yield _timed("characters", "shifted_symmetry", f"{mu},k={k}",
                         lambda: character(mu, k).is_shifted_symmetric())
            yield _timed("characters", "compatibility", f"{mu},k={k}",
                         lambda: compatibility_check(SymFun.p(mu), k))
        yield _timed("characters", "jstar", str(mu), lambda: jstar_checks(mu).details)
        yield _timed("characters", "feray", str(mu), lambda: feray_checks(mu).details)
    for mu in partitions_upto(max_size):
        for lam in partitions_upto(max_size):
            yield _timed("characters", "cross_route", f"{mu}@{lam}", lambda: cross_route_check(mu, lam))
            yield _timed("characters", "jack_limit", f"{mu}@{lam}", lambda: jack_limit(mu, lam))
    top = max_size + 1
    yield _timed("characters", "basis_determinants", f"d<={top}",
                 lambda: {str(s): not d.is_zero() for s, d in basis_determinants(top).items()})
    yield _timed("characters", "uniqueness", f"n<={max_size}", lambda: vanishing_forces_zero(max_size))


# proven propositions on the (alpha, gamma) layer ---------------------------------------


def suite_propositions(max_size: int = 4) -> Iterator[Outcome]:
    get_cache().ensure(max_size + 1)
    for lam in partitions_upto(max_size + 1):
        if lam.size:
            yield _timed("propositions", "jfrak_positivity", str(lam), lambda: bool(jfrak(lam)))
    for m in range(1, max_size + 1):
        yield _timed("propositions", "marginal_sums", str(m), lambda: check_marginal(m).passed)
        yield _timed("propositions", "alpha1_formula", str(m), lambda: check_alpha1(m).flags["integer_coeffs"])
        yield _timed("propositions", "super_nabla", str(m), lambda: check_super_nabla(m))
        yield _timed("propositions", "g_equals_c", str(m), lambda: check_g_equals_c(m))
    for mu in partitions_upto(max_size):
        for nu in partitions_upto(max_size):
            if mu.size and nu.size and mu <= nu:
                yield _timed("propositions", "g_bounds", f"{mu},{nu}", lambda: check_g_bounds(mu, nu))


SUITES: dict[str, Callable[[int], Iterator[Outcome]]] = {
    "core": suite_core,
    "identities": suite_identities,
    "creation": suite_creation,
    "characters": suite_characters,
    "propositions": suite_propositions,
}

DEFAULT_SIZES = {"core": 6, "identities": 6, "creation": 5, "characters": 4, "propositions": 4}


def run_suite(name: str, max_size: int | None = None) -> list[Outcome]:
    if name == "all":
        out = []
        for key in SUITES:
            out.extend(run_suite(key, max_size))
        return out
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {sorted(SUITES) + ['all']}")
    size = DEFAULT_SIZES[name] if max_size is None else max_size
    return list(SUITES[name](size))
