from __future__ import annotations

from math import factorial

from hypothesis import given, settings
from hypothesis import strategies as st

from maclab.jack import (
    alpha_scalar,
    graded_log,
    jack_c,
    jack_character,
    jack_character_padded,
    jack_h,
    jack_J,
    jack_norm,
)
from maclab.partitions import Partition, partitions
from maclab.scalars import ONE, ZERO, ratfun, substitute, var
from maclab.symfunc import convert, schur

a = var("alpha")
E = Partition()
small_partition = st.integers(1, 4).flatmap(lambda n: st.sampled_from(partitions(n)))


def _hook_product(lam: Partition) -> int:
    out = 1
    for s in lam.all_cell_stats():
        out *= s.arm + s.leg + 1
    return out


def test_textbook_jack_expansions():
    assert convert(jack_J([2]), "m") == {Partition([2]): 1 + a, Partition([1, 1]): 2 * ONE}
    assert convert(jack_J([2, 1]), "m") == {Partition([2, 1]): a + 2, Partition([1, 1, 1]): 6 * ONE}
    assert jack_norm([2]) == 2 * a ** 2 * (1 + a)


@settings(max_examples=15, deadline=None)
@given(small_partition)
def test_alpha_one_gives_scaled_schur(lam):
    J = jack_J(lam)
    at_one = J.map_coefficients(lambda c: substitute(c, {"alpha": 1}))
    assert at_one == schur(lam).scale(_hook_product(lam))


@settings(max_examples=15, deadline=None)
@given(small_partition, small_partition)
def test_jack_orthogonality(lam, mu):
    if lam.size == mu.size and lam != mu:
        assert alpha_scalar(jack_J(lam), jack_J(mu)).is_zero()


def test_characters_and_padding_rule():
    assert jack_character([1], [3, 1]) == 4 * ONE
    assert jack_character([2], [2]) == a
    assert jack_character([1, 1], [2]) == ONE
    for lam in [Partition([2, 1]), Partition([3, 1]), Partition([2, 2])]:
        for mu in [Partition([1]), Partition([2]), Partition([1, 1])]:
            assert jack_character(mu, lam) == jack_character_padded(mu, lam)
    assert jack_character([3], [2]).is_zero()


def test_univariate_log_of_one_plus_x():
    # series[d] encodes c_d x^d with x the single part 1 in the first slot
    x = lambda d: {(Partition([1] * d), E, E): ONE}  # noqa: E731
    series = [None, x(1), {}, {}, {}]
    for m in range(1, 5):
        expected = ratfun(1) / m * (1 if m % 2 else -1)
        assert graded_log(series, m) == {(Partition([1] * m), E, E): expected}


def test_log_of_exponential_is_linear():
    series = [None] + [{(Partition([1] * d), E, E): ONE / factorial(d)} for d in range(1, 5)]
    assert graded_log(series, 1) == {(Partition([1]), E, E): ONE}
    for m in range(2, 5):
        assert graded_log(series, m) == {}


def test_goulden_jackson_degree_two():
    p2, p11 = Partition([2]), Partition([1, 1])
    c, h = jack_c(2), jack_h(2)
    assert c[(p2, p2, p2)] == a - 1 and c[(p11, p2, p2)] == a
    assert c[(p11, p11, p11)] == ONE
    assert h[(p2, p2, p2)] == a - 1
    assert h.get((p11, p11, p11), ZERO).is_zero()
    assert jack_c(1) == jack_h(1) == {(Partition([1]),) * 3: ONE}
