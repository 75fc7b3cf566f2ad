from __future__ import annotations

import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from maclab.characters import (
    ShiftedPoly,
    basis_determinants,
    char_eval,
    character,
    compatibility_check,
    cross_route_check,
    feray_checks,
    jstar_checks,
    star,
    structure_g,
    theta_norm,
    vanishing_forces_zero,
)
from maclab.partitions import Partition, partitions, partitions_upto
from maclab.scalars import ONE, limit_cancel, var
from maclab.symfunc import SymFun

q, t, v1, v2 = var("q"), var("t"), var("v1"), var("v2")

nonempty = st.integers(1, 3).flatmap(lambda n: st.sampled_from(partitions(n)))
target = st.integers(0, 4).flatmap(lambda n: st.sampled_from(partitions(n)))


def test_degree_one_character():
    assert character([1], 1).to_ratfun() == v1 - 1
    assert character([1], 2).to_ratfun() == v1 - 1 + (v2 - 1) / t
    assert char_eval([1], [1]) == -(1 - q)
    assert char_eval([1], [2]) == q * q - 1


def test_character_vanishes_below_its_size():
    assert char_eval([2], [1]).is_zero()
    assert char_eval([1, 1], []).is_zero()


def test_star_of_constant():
    assert star(SymFun.one(0), 2).to_ratfun() == ONE


@settings(max_examples=20, deadline=None)
@given(nonempty, st.integers(1, 3))
def test_shifted_symmetry_and_compatibility(mu, k):
    assert character(mu, k).is_shifted_symmetric()
    assert compatibility_check(SymFun.p(mu), k)


@settings(max_examples=25, deadline=None)
@given(nonempty, target)
def test_three_routes_agree(mu, lam):
    assert cross_route_check(mu, lam)


@pytest.mark.parametrize("mu", [[1], [2], [1, 1], [2, 1], [3]])
def test_characterizing_properties(mu):
    assert feray_checks(mu).passed
    assert jstar_checks(mu).passed


def test_shifted_poly_roundtrip_and_validation():
    f = (v1 * v2 - q) / t
    p = ShiftedPoly.from_ratfun(f, 2)
    assert p.to_ratfun() == f
    assert ShiftedPoly.from_json(json.loads(json.dumps(p.to_json()))) == p
    assert ShiftedPoly.from_json(json.loads(json.dumps(character([2], 2).to_json()))) == character([2], 2)
    assert p.degree() == 2
    with pytest.raises(ValueError):
        ShiftedPoly(2, {(1,): ONE})


def test_evaluation_blocks_invertible_and_uniqueness():
    dets = basis_determinants(3)
    assert all(not d.is_zero() for d in dets.values())
    assert vanishing_forces_zero(3)


def test_alpha_gamma_normalization():
    a = var("alpha")
    assert theta_norm([1], k=1) == var("s1")
    # theta_1 counts boxes once gamma -> 0
    assert limit_cancel(theta_norm([1], lam=[3, 1]), "gamma", 0) == 4 * ONE
    assert limit_cancel(theta_norm([2], lam=[2]), "gamma", 0) == a
    with pytest.raises(ValueError):
        theta_norm([1])


def test_structure_coefficients_degree_one():
    g = structure_g([1], [1])
    assert g == {Partition([1]): ONE, Partition([1, 1]): 2 * ONE}


@pytest.mark.parametrize("mu,nu", [([1], [1]), ([2], [1]), ([1, 1], [2]), ([2], [2])])
def test_structure_block_and_bareiss_agree(mu, nu):
    for norm in ("theta-tilde", "theta-alpha-gamma"):
        block = structure_g(mu, nu, norm, "block")
        full = structure_g(mu, nu, norm, "bareiss")
        keys = set(block) | set(full)
        assert all(block.get(k, 0 * ONE) == full.get(k, 0 * ONE) for k in keys)


def test_structure_coefficients_reproduce_products():
    mu, nu = Partition([2]), Partition([1])
    g = structure_g(mu, nu, "theta-tilde")
    for lam in partitions_upto(3):
        lhs = char_eval(mu, lam) * char_eval(nu, lam)
        rhs = sum((c * char_eval(pi, lam) for pi, c in g.items()), 0 * ONE)
        assert lhs == rhs


def test_jack_limit_as_polynomial_in_s():
    # the gamma -> 0 limit agrees with the Jack character as a polynomial,
    # checked on every row vector with at most k rows and size <= 6
    from maclab.characters import theta_norm_poly
    from maclab.jack import jack_character
    from maclab.scalars import substitute

    for mu in partitions_upto(3):
        if not mu:
            continue
        for k in (1, 2, 3):
            poly = limit_cancel(theta_norm_poly(mu, k), "gamma", 0)
            for lam in partitions_upto(6):
                if lam.length <= k:
                    point = {f"s{i}": lam.part(i) for i in range(1, k + 1)}
                    assert substitute(poly, point) == jack_character(mu, lam)


def test_jack_limit_closed_form_for_two_cycle():
    # theta_2 at gamma = 0 is alpha n(lam') - n(lam) in row coordinates
    from maclab.characters import theta_norm_poly

    a, s1, s2 = var("alpha"), var("s1"), var("s2")
    expected = a * (s1 * (s1 - 1) + s2 * (s2 - 1)) / 2 - s2
    assert limit_cancel(theta_norm_poly([2], 2), "gamma", 0) == expected
