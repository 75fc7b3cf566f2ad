from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from maclab.linalg import SingularSystem, determinant, solve, solve_block_lower
from maclab.scalars import ONE, ZERO, ratfun, var

q, t = var("q"), var("t")

entries = st.sampled_from([ZERO, ONE, q, t, 1 - q, q * t, ONE / (1 - t), 2 * q + 3])


@settings(max_examples=40, deadline=None)
@given(st.lists(entries, min_size=9, max_size=9), st.lists(entries, min_size=3, max_size=3))
def test_solve_satisfies_system(flat, rhs):
    A = [flat[0:3], flat[3:6], flat[6:9]]
    if determinant(A).is_zero():
        with pytest.raises(SingularSystem):
            solve(A, [[x] for x in rhs])
        return
    X = solve(A, [[x] for x in rhs])
    for i in range(3):
        assert sum((A[i][j] * X[j][0] for j in range(3)), ZERO) == rhs[i]


def test_determinant_known_values():
    assert determinant([[q, t], [1, 1]]) == q - t
    assert determinant([[ONE / q, 1], [1, q]]) == ZERO
    assert determinant([[0, 1], [1, 0]]) == ratfun(-1)
    assert determinant([]) == ONE


def test_block_lower_matches_full_solve():
    D0 = [[q, 1], [1, t]]
    D1 = [[1 - q]]
    C = [[t, q]]
    rhs = [[1, q], [t]]
    x = solve_block_lower([D0, D1], {(1, 0): C}, rhs)
    full = [[q, 1, 0], [1, t, 0], [t, q, 1 - q]]
    X = solve(full, [[1], [q], [t]])
    assert x[0] + x[1] == [row[0] for row in X]
