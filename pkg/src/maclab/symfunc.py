"""Symmetric functions stored in the power-sum basis.

A :class:`SymFun` is a finite sum ``sum c_mu p_mu`` with :class:`RatFun`
coefficients, truncated at a degree ``D`` fixed at construction.  Other bases
(m, h, e, s) are views computed through the Hall scalar product.

Plethysm follows the usual convention: ``p_k[E]`` raises every variable
appearing in ``E`` to the ``k``-th power (see :meth:`RatFun.adams`), and
the coefficients of the function being substituted are left untouched.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Callable, Iterable, Mapping

from .partitions import (
    Partition,
    mn_char,
    partitions,
    partitions_upto,
    z_classical,
    z_qt,
)
from .scalars import ONE, ZERO, RatFun, ratfun, ratfun_from_json, ratfun_to_json


class TruncationExceeded(ValueError):
    """A result would need terms above the truncation degree."""


def _key(mu) -> Partition:
    return mu if isinstance(mu, Partition) else Partition(mu)


class SymFun:
    """Degree-truncated symmetric function in the power-sum basis."""

    __slots__ = ("degree", "terms")

    def __init__(self, degree: int, terms: Mapping | None = None):
        if degree < 0:
            raise ValueError("truncation degree must be non-negative")
        self.degree = degree
        clean: dict[Partition, RatFun] = {}
        for mu, c in (terms or {}).items():
            mu = _key(mu)
            if mu.size > degree:
                raise TruncationExceeded(f"p_{mu} exceeds truncation degree {degree}")
            c = ratfun(c)
            if not c.is_zero():
                clean[mu] = c
        self.terms = clean

    @classmethod
    def _raw(cls, degree: int, terms: dict) -> "SymFun":
        out = cls.__new__(cls)
        out.degree = degree
        out.terms = terms
        return out

    @classmethod
    def one(cls, degree: int) -> "SymFun":
        return cls._raw(degree, {Partition(): ONE})

    @classmethod
    def zero(cls, degree: int) -> "SymFun":
        return cls._raw(degree, {})

    @classmethod
    def p(cls, mu, degree: int | None = None, coef=1) -> "SymFun":
        mu = _key(mu)
        return cls(mu.size if degree is None else degree, {mu: coef})

    # basic protocol -------------------------------------------------------

    def __repr__(self) -> str:
        if not self.terms:
            return f"SymFun(D={self.degree}, 0)"
        body = " + ".join(f"({c})*p{list(mu)}" for mu, c in self.sorted_items())
        return f"SymFun(D={self.degree}, {body})"

    def sorted_items(self) -> list[tuple[Partition, RatFun]]:
        return sorted(self.terms.items(), key=lambda kv: _sort_key(kv[0]))

    def coefficient(self, mu) -> RatFun:
        return self.terms.get(_key(mu), ZERO)

    def is_zero(self) -> bool:
        return not self.terms

    def with_degree(self, degree: int) -> "SymFun":
        if degree >= self.degree:
            return SymFun._raw(degree, dict(self.terms))
        return SymFun._raw(degree, {mu: c for mu, c in self.terms.items() if mu.size <= degree})

    def homogeneous(self, d: int) -> "SymFun":
        return SymFun._raw(self.degree, {mu: c for mu, c in self.terms.items() if mu.size == d})

    def degrees(self) -> set[int]:
        return {mu.size for mu in self.terms}

    def map_coefficients(self, fn: Callable[[RatFun], RatFun]) -> "SymFun":
        return SymFun(self.degree, {mu: fn(c) for mu, c in self.terms.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, SymFun):
            return NotImplemented
        keys = set(self.terms) | set(other.terms)
        return all(self.coefficient(k) == other.coefficient(k) for k in keys)

    __hash__ = None  # type: ignore[assignment]

    # arithmetic -----------------------------------------------------------

    def __add__(self, other: "SymFun") -> "SymFun":
        if not isinstance(other, SymFun):
            return NotImplemented
        out = dict(self.terms)
        for mu, c in other.terms.items():
            s = out.get(mu)
            s = c if s is None else s + c
            if s.is_zero():
                out.pop(mu, None)
            else:
                out[mu] = s
        return SymFun._raw(max(self.degree, other.degree), out)

    def __neg__(self) -> "SymFun":
        return SymFun._raw(self.degree, {mu: -c for mu, c in self.terms.items()})

    def __sub__(self, other: "SymFun") -> "SymFun":
        return self + (-other)

    def scale(self, c) -> "SymFun":
        c = ratfun(c)
        if c.is_zero():
            return SymFun.zero(self.degree)
        return SymFun._raw(self.degree, {mu: v * c for mu, v in self.terms.items()})

    def __mul__(self, other) -> "SymFun":
        if not isinstance(other, SymFun):
            try:
                return self.scale(other)
            except TypeError:
                return NotImplemented
        degree = min(self.degree, other.degree)
        out: dict[Partition, RatFun] = {}
        for mu, a in self.terms.items():
            for nu, b in other.terms.items():
                if mu.size + nu.size > degree:
                    continue
                key = _merge(mu, nu)
                s = out.get(key)
                s = a * b if s is None else s + a * b
                out[key] = s
        return SymFun._raw(degree, {k: v for k, v in out.items() if not v.is_zero()})

    def __rmul__(self, other) -> "SymFun":
        return self.scale(other)

    def to_json(self) -> dict:
        return {
            "basis": "p",
            "degree": self.degree,
            "terms": [{"mu": list(mu), "coef": ratfun_to_json(c)} for mu, c in self.sorted_items()],
        }

    @classmethod
    def from_json(cls, data: dict) -> "SymFun":
        if data.get("basis", "p") != "p":
            expansion = {Partition(t["mu"]): ratfun_from_json(t["coef"]) for t in data["terms"]}
            return inject(expansion, data["basis"], data["degree"])
        return cls(data["degree"], {Partition(t["mu"]): ratfun_from_json(t["coef"]) for t in data["terms"]})


def _sort_key(mu: Partition) -> tuple:
    return (mu.size, tuple(-p for p in mu))


def _merge(mu: Partition, nu: Partition) -> Partition:
    return Partition(sorted(mu + nu, reverse=True))


def sort_partitions(parts: Iterable[Partition]) -> list[Partition]:
    return sorted(parts, key=_sort_key)


# alphabets and plethysm -----------------------------------------------------


@dataclass(frozen=True)
class Alphabet:
    """Target of a plethystic substitution.

    ``Scalar`` alphabets (``scale is None``) send ``p_k`` to ``shift(k)``;
    ``XLinear`` ones send ``p_k`` to ``scale(k) * p_k[X] + shift(k)``.
    """

    shift: Callable[[int], RatFun]
    scale: Callable[[int], RatFun] | None = None

    @property
    def kind(self) -> str:
        return "Scalar" if self.scale is None else "XLinear"

    @classmethod
    def scalar(cls, expr) -> "Alphabet":
        """The alphabet ``E`` itself: ``p_k -> p_k[E]``."""
        expr = ratfun(expr)
        return cls(shift=expr.adams)

    @classmethod
    def linear(cls, multiplier=1, translation=0) -> "Alphabet":
        """The alphabet ``X*multiplier + translation``."""
        multiplier, translation = ratfun(multiplier), ratfun(translation)
        return cls(shift=translation.adams, scale=multiplier.adams)

    @classmethod
    def identity(cls) -> "Alphabet":
        return cls.linear(1, 0)


def _binomial_power(a: RatFun, b: RatFun, k: int, m: int):
    """Terms of ``(a*p_k + b)**m`` as ``(j, coefficient of p_k^j)``."""
    for j in range(m + 1):
        c = comb(m, j)
        if j and a.is_zero():
            continue
        if m - j and b.is_zero():
            continue
        yield j, (a ** j) * (b ** (m - j)) * c


def pleth(f: SymFun, alphabet: Alphabet, degree: int | None = None) -> SymFun:
    """The image ``f[E]`` of ``f`` under ``p_k -> p_k[E]``."""
    degree = f.degree if degree is None else degree
    scale_cache: dict[int, RatFun] = {}
    shift_cache: dict[int, RatFun] = {}

    def sc(k):
        if k not in scale_cache:
            scale_cache[k] = ratfun(alphabet.scale(k))
        return scale_cache[k]

    def sh(k):
        if k not in shift_cache:
            shift_cache[k] = ratfun(alphabet.shift(k))
        return shift_cache[k]

    out: dict[Partition, RatFun] = {}
    for mu, c in f.terms.items():
        if alphabet.scale is None:
            val = c
            for k in mu:
                val = val * sh(k)
            if not val.is_zero():
                out[Partition()] = out.get(Partition(), ZERO) + val
            continue
        # product over distinct parts of (a p_k + b)^m
        partial: list[tuple[tuple[int, ...], RatFun]] = [((), c)]
        for k, m in Partition(mu).multiplicities().items():
            nxt = []
            for parts, val in partial:
                for j, coef in _binomial_power(sc(k), sh(k), k, m):
                    nxt.append((parts + (k,) * j, val * coef))
            partial = nxt
        for parts, val in partial:
            if val.is_zero():
                continue
            key = Partition(sorted(parts, reverse=True))
            if key.size > degree:
                raise TruncationExceeded(f"p_{key} exceeds truncation degree {degree}")
            s = out.get(key)
            out[key] = val if s is None else s + val
    return SymFun._raw(degree, {k: v for k, v in out.items() if not v.is_zero()})


# scalar products and adjoints -------------------------------------------------


def hall_scalar(f: SymFun, g: SymFun) -> RatFun:
    out = ZERO
    small, big = (f, g) if len(f.terms) <= len(g.terms) else (g, f)
    for mu, a in small.terms.items():
        b = big.terms.get(mu)
        if b is not None:
            out = out + a * b * z_classical(mu)
    return out


@lru_cache(maxsize=None)
def _zqt(mu: Partition) -> RatFun:
    return z_qt(mu)


def zqt(mu) -> RatFun:
    return _zqt(_key(mu))


def qt_scalar(f: SymFun, g: SymFun) -> RatFun:
    out = ZERO
    small, big = (f, g) if len(f.terms) <= len(g.terms) else (g, f)
    for mu, a in small.terms.items():
        b = big.terms.get(mu)
        if b is not None:
            out = out + a * b * zqt(mu)
    return out


def _perp_monomial(mu: Partition, nu: Partition) -> tuple[int, Partition] | None:
    """``p_mu^perp p_nu = coef * p_rest`` under the Hall adjunction."""
    mmu, mnu = mu.multiplicities(), nu.multiplicities()
    coef = 1
    rest = dict(mnu)
    for k, m in mmu.items():
        have = mnu.get(k, 0)
        if have < m:
            return None
        coef *= k ** m * factorial(have) // factorial(have - m)
        rest[k] = have - m
    parts = sorted((k for k, m in rest.items() for _ in range(m)), reverse=True)
    return coef, Partition(parts)


def perp(f: SymFun, g: SymFun) -> SymFun:
    """``f^perp g``: adjoint of multiplication by ``f`` for the Hall product."""
    out: dict[Partition, RatFun] = {}
    for mu, a in f.terms.items():
        for nu, b in g.terms.items():
            hit = _perp_monomial(mu, nu)
            if hit is None:
                continue
            coef, rest = hit
            val = a * b * coef
            s = out.get(rest)
            out[rest] = val if s is None else s + val
    return SymFun._raw(g.degree, {k: v for k, v in out.items() if not v.is_zero()})


def omega(f: SymFun) -> SymFun:
    return SymFun._raw(f.degree, {mu: (c if (mu.size - mu.length) % 2 == 0 else -c)
                                  for mu, c in f.terms.items()})


# classical bases ----------------------------------------------------------------


@lru_cache(maxsize=None)
def _p_in_m(n: int) -> dict[Partition, dict[Partition, int]]:
    """Integer matrix ``p_mu = sum_lam R[mu][lam] m_lam``."""
    table: dict[Partition, dict[Partition, int]] = {}
    for mu in partitions(n):
        row: dict[Partition, int] = {}
        for lam in partitions(n):
            c = _count_fillings(tuple(mu), tuple(lam))
            if c:
                row[lam] = c
        table[mu] = row
    return table


@lru_cache(maxsize=None)
def _count_fillings(parts: tuple[int, ...], target: tuple[int, ...]) -> int:
    # ways to send each part of ``parts`` to a row so that row sums equal ``target``
    if not parts:
        return int(all(x == 0 for x in target))
    first, rest = parts[0], parts[1:]
    total = 0
    for i, cap in enumerate(target):
        if cap >= first:
            nxt = list(target)
            nxt[i] -= first
            total += _count_fillings(rest, tuple(nxt))
    return total


@lru_cache(maxsize=None)
def _m_in_p(n: int) -> dict[Partition, dict[Partition, Fraction]]:
    """Inverse of :func:`_p_in_m`: ``m_lam = sum_mu M[lam][mu] p_mu``.

    ``p_mu`` is supported on ``m_lam`` with ``lam`` dominating ``mu``;
    back-substitute from the top of the reverse-lex order.
    """
    R = _p_in_m(n)
    order = list(partitions(n))  # [n] first
    inv: dict[Partition, dict[Partition, Fraction]] = {}
    for mu in order:
        # m_mu = (p_mu - sum_{lam > mu} R[mu][lam] m_lam) / R[mu][mu]
        row: dict[Partition, Fraction] = {mu: Fraction(1)}
        for lam, c in R[mu].items():
            if lam == mu:
                continue
            for nu, d in inv[lam].items():
                row[nu] = row.get(nu, Fraction(0)) - c * d
        diag = R[mu][mu]
        inv[mu] = {nu: v / diag for nu, v in row.items() if v}
    return inv


def monomial(lam, degree: int | None = None) -> SymFun:
    lam = _key(lam)
    D = lam.size if degree is None else degree
    return SymFun(D, {mu: c for mu, c in _m_in_p(lam.size)[lam].items()})


def complete(lam, degree: int | None = None) -> SymFun:
    lam = _key(lam)
    D = lam.size if degree is None else degree
    out = SymFun.one(D)
    for k in lam:
        out = out * h_plethystic(k, 1, D)
    return out


def elementary(lam, degree: int | None = None) -> SymFun:
    lam = _key(lam)
    D = lam.size if degree is None else degree
    out = SymFun.one(D)
    for k in lam:
        out = out * omega(h_plethystic(k, 1, D))
    return out


def schur(lam, degree: int | None = None) -> SymFun:
    lam = _key(lam)
    D = lam.size if degree is None else degree
    return SymFun(D, {mu: Fraction(mn_char(lam, mu), z_classical(mu)) for mu in partitions(lam.size)})


_BASES = {"m": monomial, "h": complete, "e": elementary, "s": schur}


def basis_element(basis: str, lam, degree: int | None = None) -> SymFun:
    if basis == "p":
        return SymFun.p(lam, degree)
    try:
        return _BASES[basis](lam, degree)
    except KeyError:
        raise ValueError(f"unknown basis {basis!r}") from None


def convert(f: SymFun, basis: str) -> dict[Partition, RatFun]:
    """Coordinates of ``f`` in the basis ``p``, ``m``, ``h``, ``e`` or ``s``."""
    if basis == "p":
        return dict(f.terms)
    dual = {"m": "h", "h": "m", "s": "s"}
    out: dict[Partition, RatFun] = {}
    for d in sorted(f.degrees()):
        part = f.homogeneous(d)
        for lam in partitions(d):
            if basis == "e":
                c = hall_scalar(omega(part), monomial(lam))
            else:
                c = hall_scalar(part, basis_element(dual[basis], lam))
            if not c.is_zero():
                out[lam] = c
    return out


def inject(expansion: Mapping, basis: str, degree: int) -> SymFun:
    out = SymFun.zero(degree)
    for lam, c in expansion.items():
        out = out + basis_element(basis, lam, degree).scale(c)
    return out


# plethystic exponential -------------------------------------------------------


def h_plethystic(k: int, expr, degree: int | None = None) -> SymFun:
    """``h_k[X * expr] = sum_{mu |- k} p_mu[expr] p_mu / z_mu``."""
    expr = ratfun(expr)
    D = k if degree is None else degree
    powers: dict[int, RatFun] = {}
    terms = {}
    for mu in partitions(k):
        c = ONE
        for part in mu:
            if part not in powers:
                powers[part] = expr.adams(part)
            c = c * powers[part]
        terms[mu] = c * Fraction(1, z_classical(mu))
    return SymFun(D, terms)


def exp_kernel(zfactor, degree: int) -> SymFun:
    """``Exp[Z X]`` truncated at ``degree``."""
    if degree < 0:
        raise ValueError("degree must be non-negative")
    out = SymFun.zero(degree)
    for k in range(degree + 1):
        out = out + h_plethystic(k, zfactor, degree)
    return out


def h_series(zfactor, kmax: int, degree: int) -> list[SymFun]:
    """``[h_0[ZX], ..., h_kmax[ZX]]``, the u-graded pieces of ``Exp[uZX]``."""
    return [h_plethystic(k, zfactor, degree) for k in range(kmax + 1)]


def all_partitions_upto(n: int) -> list[Partition]:
    return partitions_upto(n)
