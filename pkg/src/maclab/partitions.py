"""Integer partitions, Young-diagram statistics and the numerical factors built on them.

Cells are pairs ``(i, j)`` with 1-based row ``i`` and column ``j``; for a cell
of ``lam``::

    arm   = lam[i] - j            coarm = j - 1
    leg   = lam'[j] - i           coleg = i - 1

(with 1-based parts).  Internally parts are stored 0-based in a tuple.
"""

from __future__ import annotations

from functools import lru_cache
from math import comb, factorial
from typing import Iterator, NamedTuple, Sequence

from .scalars import ONE, MultiPoly, RatFun, as_polynomial, const, gen, ratfun, var


class Partition(tuple):
    """A weakly decreasing tuple of positive integers."""

    __slots__ = ()

    def __new__(cls, parts: Sequence[int] = ()):
        parts = tuple(int(p) for p in parts)
        while parts and parts[-1] == 0:
            parts = parts[:-1]
        if any(p <= 0 for p in parts):
            raise ValueError(f"parts must be positive: {parts}")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"parts must be weakly decreasing: {parts}")
        return super().__new__(cls, parts)

    def __repr__(self) -> str:
        return f"Partition({list(self)})"

    def __str__(self) -> str:
        return "[" + ",".join(map(str, self)) + "]"

    @property
    def size(self) -> int:
        return sum(self)

    @property
    def length(self) -> int:
        return len(self)

    def part(self, i: int) -> int:
        """1-based part access, zero beyond the length."""
        return self[i - 1] if 1 <= i <= len(self) else 0

    def conjugate(self) -> "Partition":
        return _conjugate(self)

    def multiplicities(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for p in self:
            out[p] = out.get(p, 0) + 1
        return out

    def cells(self) -> Iterator[tuple[int, int]]:
        """Cells in row-major order."""
        for i, row in enumerate(self, start=1):
            for j in range(1, row + 1):
                yield i, j

    def cell_stats(self, i: int, j: int) -> "CellStats":
        conj = self.conjugate()
        if not (1 <= i <= len(self) and 1 <= j <= self[i - 1]):
            raise ValueError(f"cell {(i, j)} not in {self}")
        return CellStats(self[i - 1] - j, conj[j - 1] - i, j - 1, i - 1)

    def all_cell_stats(self) -> list["CellStats"]:
        conj = self.conjugate()
        return [CellStats(self[i - 1] - j, conj[j - 1] - i, j - 1, i - 1)
                for i, j in self.cells()]

    def contains(self, other: Sequence[int]) -> bool:
        """True if the diagram of ``other`` sits inside this diagram."""
        if len(other) > len(self):
            return False
        return all(o <= s for o, s in zip(other, self))

    def to_json(self) -> list[int]:
        return list(self)


class CellStats(NamedTuple):
    arm: int
    leg: int
    coarm: int
    coleg: int


EMPTY = Partition()


@lru_cache(maxsize=None)
def _conjugate(lam: Partition) -> Partition:
    if not lam:
        return EMPTY
    return Partition([sum(1 for p in lam if p > j) for j in range(lam[0])])


@lru_cache(maxsize=None)
def partitions(n: int) -> tuple[Partition, ...]:
    """All partitions of ``n`` in reverse-lexicographic order ([n] first)."""
    if n < 0:
        raise ValueError("n must be non-negative")
    out: list[Partition] = []

    def rec(remaining: int, largest: int, prefix: list[int]) -> None:
        if remaining == 0:
            out.append(Partition(prefix))
            return
        for p in range(min(remaining, largest), 0, -1):
            prefix.append(p)
            rec(remaining - p, p, prefix)
            prefix.pop()

    rec(n, n, [])
    return tuple(out)


enumerate_partitions = partitions


def partitions_upto(n: int) -> list[Partition]:
    return [lam for k in range(n + 1) for lam in partitions(k)]


def n_stat(lam: Sequence[int]) -> int:
    return sum(p * i for i, p in enumerate(lam))


def dominance_leq(mu: Sequence[int], lam: Sequence[int]) -> bool:
    """``mu <= lam`` in dominance order; False when the sizes differ."""
    if sum(mu) != sum(lam):
        return False
    s_mu = s_lam = 0
    for i in range(max(len(mu), len(lam))):
        s_mu += mu[i] if i < len(mu) else 0
        s_lam += lam[i] if i < len(lam) else 0
        if s_mu > s_lam:
            return False
    return True


def conjugate(lam: Sequence[int]) -> Partition:
    return Partition(lam).conjugate()


def contains(mu: Sequence[int], lam: Sequence[int]) -> bool:
    """True if ``mu`` is contained in ``lam`` as diagrams."""
    return Partition(lam).contains(mu)


def horizontal_strips(lam: Sequence[int], k: int) -> list[Partition]:
    """Partitions ``xi`` such that ``xi/lam`` is a horizontal strip of size ``k``."""
    lam = Partition(lam)
    if k < 0:
        raise ValueError("k must be non-negative")
    out: list[Partition] = []
    rows = list(lam) + [0]

    # Row i may grow up to the previous row's old length.
    def rec(i: int, remaining: int, new: list[int]) -> None:
        if i == len(rows):
            if remaining == 0:
                out.append(Partition(new))
            return
        cap = remaining if i == 0 else min(remaining, rows[i - 1] - rows[i])
        for add in range(cap, -1, -1):
            new.append(rows[i] + add)
            rec(i + 1, remaining - add, new)
            new.pop()

    rec(0, k, [])
    return out


# numerical factors ------------------------------------------------------------


def z_classical(mu: Sequence[int]) -> int:
    out = 1
    for part, m in Partition(mu).multiplicities().items():
        out *= factorial(m) * part ** m
    return out


def z_qt(mu: Sequence[int]) -> RatFun:
    """``z_mu * prod_i (1 - q^mu_i)/(1 - t^mu_i)``."""
    q, t = var("q"), var("t")
    out = ratfun(z_classical(mu))
    for p in mu:
        out = out * (1 - q ** p) / (1 - t ** p)
    return out


def j_norm(lam: Sequence[int]) -> RatFun:
    q, t = var("q"), var("t")
    out = ONE
    for a, l, _, _ in Partition(lam).all_cell_stats():
        out = out * (1 - q ** (a + 1) * t ** l) * (1 - q ** a * t ** (l + 1))
    return out


def q_number(m: int, name: str = "q") -> MultiPoly:
    if m < 0:
        raise ValueError("m must be non-negative")
    x = gen(name)
    return sum((x ** i for i in range(m)), const(0))


def q_factorial(m: int, name: str = "q") -> MultiPoly:
    if m < 0:
        raise ValueError("m must be non-negative")
    out = const(1)
    for i in range(1, m + 1):
        out *= q_number(i, name)
    return out


def q_multinomial(m: int, parts: Sequence[int], name: str = "q") -> MultiPoly:
    if any(k < 0 for k in parts) or sum(parts) != m:
        raise ValueError(f"parts {list(parts)} do not sum to {m}")
    den = const(1)
    for k in parts:
        den *= q_factorial(k, name)
    return as_polynomial(RatFun(q_factorial(m, name), den))


def pochhammer(a, m: int, name: str = "q") -> RatFun:
    """``(a; q)_m = (1 - a)(1 - q a)...(1 - q^{m-1} a)``."""
    if m < 0:
        raise ValueError("m must be non-negative")
    a = ratfun(a)
    x = var(name)
    out = ONE
    for i in range(m):
        out = out * (1 - x ** i * a)
    return out


def hook_t(lam: Sequence[int], name: str = "t") -> MultiPoly:
    """t-deformed hook product ``prod [a + l + 1]_t``."""
    out = const(1)
    for a, l, _, _ in Partition(lam).all_cell_stats():
        out *= q_number(a + l + 1, name)
    return out


def f_exponent(n1: int, n2: int, k: int) -> int:
    big, small = max(n1, n2), min(n1, n2)
    return (big - small) * (big + small - k) + small * (small - 1) - (k - big) * (k - big - 1)


def binomial2(m: int) -> int:
    return comb(m, 2)


# symmetric-group characters -----------------------------------------------------


@lru_cache(maxsize=None)
def _mn(beta: tuple[int, ...], rho: tuple[int, ...]) -> int:
    # ``beta`` is a strictly decreasing beta-set; remove rim hooks of size rho[0]
    if not rho:
        return 1
    k, rest = rho[0], rho[1:]
    total = 0
    present = set(beta)
    for b in beta:
        c = b - k
        if c < 0 or c in present:
            continue
        sign = (-1) ** sum(1 for x in beta if c < x < b)
        new = tuple(sorted((present - {b}) | {c}, reverse=True))
        total += sign * _mn(new, rest)
    return total


def mn_char(lam: Sequence[int], rho: Sequence[int]) -> int:
    """Irreducible character ``chi^lam`` at cycle type ``rho`` (Murnaghan-Nakayama)."""
    lam, rho = Partition(lam), Partition(rho)
    if lam.size != rho.size:
        raise ValueError("lam and rho must have the same size")
    n = len(lam)
    beta = tuple(lam[i] + (n - 1 - i) for i in range(n))
    return _mn(beta, tuple(rho))
