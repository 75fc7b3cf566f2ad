from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from maclab.partitions import Partition, partitions
from maclab.scalars import ONE, var
from maclab.symfunc import (
    Alphabet,
    SymFun,
    TruncationExceeded,
    basis_element,
    complete,
    convert,
    elementary,
    hall_scalar,
    inject,
    monomial,
    omega,
    perp,
    pleth,
    qt_scalar,
    schur,
)

q, t = var("q"), var("t")

basis_name = st.sampled_from(["m", "h", "e", "s"])
small_partition = st.integers(1, 4).flatmap(lambda n: st.sampled_from(partitions(n)))


def test_truncation_guard():
    with pytest.raises(TruncationExceeded):
        SymFun(1, {Partition([2]): 1})
    f = SymFun.p([1], 2)
    # products truncate at the smaller degree
    assert (f * SymFun.p([1], 1)).is_zero()
    assert f * f == SymFun.p([1, 1], 2)


def test_classical_bases_in_degree_two():
    p2, p11 = SymFun.p([2]), SymFun.p([1, 1])
    half = ONE / 2
    assert complete([2]) == (p2 + p11).scale(half)
    assert elementary([2]) == (p11 - p2).scale(half)
    assert monomial([2]) == p2
    assert monomial([1, 1]) == (p11 - p2).scale(half)
    assert schur([2]) == complete([2])


@settings(max_examples=40, deadline=None)
@given(basis_name, small_partition)
def test_convert_inject_round_trip(basis, lam):
    f = basis_element(basis, lam)
    coords = convert(f, basis)
    assert coords == {lam: ONE}
    assert inject(coords, basis, lam.size) == f


@settings(max_examples=30, deadline=None)
@given(small_partition, small_partition)
def test_schur_orthonormal_and_h_m_dual(lam, mu):
    expected = ONE if lam == mu else 0 * ONE
    assert hall_scalar(schur(lam), schur(mu)) == expected
    assert hall_scalar(complete(lam), monomial(mu)) == expected


@settings(max_examples=30, deadline=None)
@given(small_partition)
def test_omega_swaps_h_and_e(lam):
    assert omega(complete(lam)) == elementary(lam)
    assert omega(schur(lam)) == schur(lam.conjugate())


def test_perp_is_adjoint_to_multiplication():
    f = schur([1])
    g = schur([2, 1])
    for lam in partitions(2):
        s = schur(lam)
        assert hall_scalar(perp(f, g), s) == hall_scalar(g, (f.with_degree(3) * s.with_degree(3)))


def test_plethysm_alphabets():
    f = SymFun.p([2, 1])
    # scalar alphabet: X -> q
    assert pleth(f, Alphabet.scalar(q)).coefficient([]) == q ** 3
    # linear alphabet: X -> X(1 - t)
    g = pleth(f, Alphabet.linear(1 - t))
    assert g == SymFun.p([2, 1]).scale((1 - t ** 2) * (1 - t))
    # translation: p_1[X + 1] = p_1 + 1
    h = pleth(SymFun.p([1]), Alphabet.linear(1, 1))
    assert h == SymFun.p([1]) + SymFun.one(1)
    assert pleth(f, Alphabet.identity()) == f


def test_qt_scalar_reduces_to_hall_at_q_equals_t():
    from maclab.scalars import substitute

    f, g = complete([2, 1]), schur([2, 1])
    assert substitute(qt_scalar(f, g), {"q": t}) == hall_scalar(f, g)
