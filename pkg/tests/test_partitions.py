from __future__ import annotations

from math import factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from maclab.partitions import (
    Partition,
    conjugate,
    dominance_leq,
    f_exponent,
    horizontal_strips,
    j_norm,
    mn_char,
    n_stat,
    partitions,
    partitions_upto,
    q_multinomial,
    q_number,
    z_classical,
    z_qt,
)
from maclab.scalars import ONE, var

q, t = var("q"), var("t")

some_partition = st.integers(0, 8).flatmap(lambda n: st.sampled_from(partitions(n)))


def test_partition_counts():
    assert [len(partitions(n)) for n in range(9)] == [1, 1, 2, 3, 5, 7, 11, 15, 22]
    assert partitions(4)[0] == Partition([4])
    assert len(partitions_upto(4)) == 12


def test_partition_validation():
    assert Partition([2, 1, 0]) == Partition([2, 1])
    with pytest.raises(ValueError):
        Partition([1, 2])
    with pytest.raises(ValueError):
        Partition([2, -1])


@settings(max_examples=60, deadline=None)
@given(some_partition)
def test_conjugation_is_involutive(lam):
    assert lam.conjugate().conjugate() == lam
    assert conjugate(lam).size == lam.size


@settings(max_examples=60, deadline=None)
@given(some_partition)
def test_arm_leg_statistics(lam):
    stats = lam.all_cell_stats()
    assert len(stats) == lam.size
    # n(lam) counts legs, n(lam') counts arms
    assert sum(s.leg for s in stats) == n_stat(lam)
    assert sum(s.arm for s in stats) == n_stat(lam.conjugate())


@settings(max_examples=60, deadline=None)
@given(some_partition)
def test_class_sizes_sum_to_factorial(lam):
    n = lam.size
    assert sum(factorial(n) // z_classical(mu) for mu in partitions(n)) == factorial(n)


def test_dominance():
    assert dominance_leq([1, 1, 1], [3])
    assert dominance_leq([2, 1], [2, 1])
    assert not dominance_leq([3, 3], [4, 1, 1]) and not dominance_leq([4, 1, 1], [3, 3])
    assert not dominance_leq([2], [1])


def test_horizontal_strips():
    assert sorted(horizontal_strips([1], 1)) == [Partition([1, 1]), Partition([2])]
    for xi in horizontal_strips([2, 1], 2):
        assert xi.size == 5 and xi.contains([2, 1])
        assert all(b <= a for a, b in zip([2, 1, 0], list(xi)[1:]))


def test_j_norm_small_cases():
    assert j_norm([1]) == (1 - q) * (1 - t)
    assert j_norm([2]) == (1 - q * q) * (1 - q) * (1 - q * t) * (1 - t)


def test_z_qt():
    assert z_qt([2, 2]) == 8 * ((1 - q * q) / (1 - t * t)) ** 2
    assert z_qt([]) == ONE


def test_q_analogs():
    assert q_number(3) == (1 + q + q * q).num
    assert q_multinomial(4, [2, 2]) == (1 + q + 2 * q ** 2 + q ** 3 + q ** 4).num


def test_murnaghan_nakayama_character_table():
    assert mn_char([2, 1], [1, 1, 1]) == 2
    assert mn_char([2, 1], [3]) == -1
    assert mn_char([2, 1], [2, 1]) == 0
    # column orthogonality of the S_4 table
    for rho in partitions(4):
        s = sum(mn_char(lam, rho) ** 2 for lam in partitions(4))
        assert s == z_classical(rho)


def test_f_exponent():
    assert f_exponent(2, 2, 2) == 2
    assert f_exponent(1, 1, 2) == 0
