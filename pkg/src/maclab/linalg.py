"""Exact linear algebra over the rational-function field.

Square systems are solved by fraction-free (Bareiss) elimination: each row
is first cleared of denominators, the elimination then runs on polynomials
with exact divisions by the previous pivot, and only the final back
substitution produces fractions.
"""

from __future__ import annotations

from typing import Sequence

from .scalars import ONE, ZERO, MultiPoly, RatFun, const, poly_exact_div, ratfun


class SingularSystem(ArithmeticError):
    """The coefficient matrix is singular."""


def _lcm(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    g = a.gcd(b)
    return a * (b / g) if not g.is_constant() else a * b


def _clear_row(row: Sequence[RatFun]) -> list[MultiPoly]:
    den = const(1)
    for x in row:
        if not x.is_zero():
            den = _lcm(den, x.den)
    out = []
    for x in row:
        if x.is_zero():
            out.append(const(0))
        else:
            out.append(x.num * (den / x.den))
    return out


def _bareiss(M: list[list[MultiPoly]], ncols: int) -> tuple[list[list[MultiPoly]], int]:
    """In-place forward elimination on the first ``ncols`` columns; returns (matrix, swaps)."""
    n = len(M)
    prev = const(1)
    swaps = 0
    for k in range(min(n, ncols)):
        pivot_row = next((r for r in range(k, n) if not M[r][k].is_zero()), None)
        if pivot_row is None:
            raise SingularSystem(f"no pivot in column {k}")
        if pivot_row != k:
            M[k], M[pivot_row] = M[pivot_row], M[k]
            swaps += 1
        pk = M[k][k]
        for i in range(k + 1, n):
            mik = M[i][k]
            row_i, row_k = M[i], M[k]
            for j in range(k + 1, len(row_i)):
                val = pk * row_i[j] - mik * row_k[j]
                if k > 0 and not val.is_zero():
                    quo = poly_exact_div(val, prev)
                    if quo is None:
                        raise ArithmeticError("Bareiss step was not exact")
                    val = quo
                row_i[j] = val
            row_i[k] = const(0)
        prev = pk
    return M, swaps


def solve(A: Sequence[Sequence], B: Sequence[Sequence]) -> list[list[RatFun]]:
    """Solve ``A X = B`` for square ``A`` (``B`` has one column per right-hand side)."""
    n = len(A)
    if n == 0:
        return []
    if any(len(row) != n for row in A):
        raise ValueError("A must be square")
    r = len(B[0]) if B else 0
    rows = [[ratfun(x) for x in A[i]] + [ratfun(x) for x in B[i]] for i in range(n)]
    M = [_clear_row(row) for row in rows]
    M, _ = _bareiss(M, n)
    X = [[ZERO] * r for _ in range(n)]
    for c in range(r):
        for i in range(n - 1, -1, -1):
            acc = RatFun(M[i][n + c])
            for j in range(i + 1, n):
                if not M[i][j].is_zero():
                    acc = acc - RatFun(M[i][j]) * X[j][c]
            X[i][c] = acc / RatFun(M[i][i])
    return X


def determinant(A: Sequence[Sequence]) -> RatFun:
    n = len(A)
    if n == 0:
        return ONE
    rows = [[ratfun(x) for x in row] for row in A]
    scale = ONE
    M = []
    for row in rows:
        cleared = _clear_row(row)
        # cleared = row * d for the row's common denominator d
        nz = next((i for i, x in enumerate(row) if not x.is_zero()), None)
        if nz is None:
            return ZERO
        scale = scale * (RatFun(cleared[nz]) / row[nz])
        M.append(cleared)
    try:
        M, swaps = _bareiss(M, n)
    except SingularSystem:
        return ZERO
    det = RatFun(M[n - 1][n - 1])
    if swaps % 2:
        det = -det
    return det / scale


def solve_block_lower(blocks: Sequence[Sequence[Sequence]], off: dict, rhs: Sequence[Sequence]) -> list[list[RatFun]]:
    """Forward substitution for a block lower-triangular system.

    ``blocks[s]`` is the square diagonal block for group ``s``; ``off[(s, r)]``
    (``r < s``) is the block coupling unknowns of group ``r`` into equations of
    group ``s``; ``rhs[s]`` is the list of right-hand sides for group ``s``.
    """
    out: list[list[RatFun]] = []
    for s, D in enumerate(blocks):
        b = [ratfun(x) for x in rhs[s]]
        for r in range(s):
            C = off.get((s, r))
            if C is None:
                continue
            for i in range(len(b)):
                for j, xj in enumerate(out[r]):
                    if not xj.is_zero() and not ratfun(C[i][j]).is_zero():
                        b[i] = b[i] - ratfun(C[i][j]) * xj
        if not D:
            out.append([])
            continue
        X = solve(D, [[x] for x in b])
        out.append([row[0] for row in X])
    return out
