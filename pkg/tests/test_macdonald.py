from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from maclab.macdonald import (
    MacCache,
    MismatchCertificate,
    creation_chain,
    delta,
    delta_eigenvalue,
    gamma,
    gamma_on_basis,
    gamma_plus,
    get_cache,
    gram_schmidt_J,
    j_to_p_factor,
    macdonald_J,
    macdonald_P,
    modified_H,
    nabla,
    nabla_eigenvalue,
    phi,
    phi_inv,
    to_basis,
)
from maclab.partitions import Partition, dominance_leq, j_norm, n_stat, partitions
from maclab.scalars import ONE, substitute, var
from maclab.symfunc import SymFun, convert, monomial, qt_scalar, schur

q, t = var("q"), var("t")

small_partition = st.integers(1, 4).flatmap(lambda n: st.sampled_from(partitions(n)))


def test_degree_two_integral_forms():
    # textbook expansions of J_2 and J_11 in the monomial basis
    assert convert(macdonald_J([2]), "m") == {
        Partition([2]): (1 - t) * (1 - q * t),
        Partition([1, 1]): (1 - t) ** 2 * (1 + q),
    }
    assert convert(macdonald_J([1, 1]), "m") == {Partition([1, 1]): (1 - t) * (1 - t * t)}


def test_degree_two_modified_forms():
    assert convert(modified_H([2]), "s") == {Partition([2]): ONE, Partition([1, 1]): q}
    assert convert(modified_H([1, 1]), "s") == {Partition([2]): ONE, Partition([1, 1]): t}


@settings(max_examples=25, deadline=None)
@given(small_partition)
def test_p_is_monic_and_dominance_triangular(lam):
    coeffs = convert(macdonald_P(lam), "m")
    assert coeffs[lam] == ONE
    assert all(dominance_leq(mu, lam) for mu in coeffs)


@settings(max_examples=25, deadline=None)
@given(small_partition, small_partition)
def test_orthogonality_against_closed_norm(lam, rho):
    if lam.size != rho.size:
        return
    val = qt_scalar(macdonald_J(lam), macdonald_J(rho))
    assert val == (j_norm(lam) if lam == rho else 0 * ONE)


@settings(max_examples=20, deadline=None)
@given(small_partition)
def test_schur_limit_at_q_equals_t(lam):
    # P_lam(q, q) is the Schur function
    P = macdonald_P(lam)
    limit = SymFun(lam.size, {mu: substitute(c, {"q": t}) for mu, c in P.terms.items()})
    assert limit == schur(lam)


def test_disk_cache_round_trip(tmp_path, monkeypatch):
    monkeypatch.setenv("MACLAB_CACHE", str(tmp_path))
    built = MacCache().J([2, 1])
    assert (tmp_path / "degree_3.json").exists()
    assert MacCache().J([2, 1]) == built
    assert gram_schmidt_J(3)[Partition([2, 1])] == built


def test_disk_cache_can_be_disabled(tmp_path, monkeypatch):
    monkeypatch.setenv("MACLAB_CACHE", "")
    MacCache().ensure(2)
    assert not any(tmp_path.iterdir())


@settings(max_examples=15, deadline=None)
@given(small_partition)
def test_nabla_and_delta_are_diagonal(lam):
    J = macdonald_J(lam)
    assert nabla(J) == J.scale(nabla_eigenvalue(lam))
    v = var("v1")
    assert delta(J, v) == J.scale(delta_eigenvalue(lam, v))
    H = modified_H(lam)
    assert nabla(H, "modified") == H.scale(nabla_eigenvalue(lam, "modified"))


def test_phi_round_trip_and_basis_image():
    f = SymFun.p([2, 1]).scale(q) + SymFun.p([3]).scale(t)
    assert phi_inv(phi(f)) == f
    for lam in partitions(3):
        assert phi(macdonald_J(lam)).scale(t ** n_stat(lam)) == modified_H(lam)


def test_j_to_p_factor_degree_one():
    assert j_to_p_factor([1]) == 1 - t
    assert macdonald_J([1]) == SymFun.p([1]).scale(1 - t)


def test_gamma_definition_matches_pieri_route():
    v = var("v1")
    f = macdonald_J([1])
    series = gamma(f, v, kmax=2)
    for k, part in enumerate(series.parts):
        via_pieri = gamma_on_basis({Partition([1]): ONE}, k, v, "integral")
        assert to_basis(part) == via_pieri


def test_gamma_rejects_bad_side():
    with pytest.raises(ValueError):
        gamma(SymFun.one(0), var("v1"), side="sideways")


@pytest.mark.parametrize("variant", ["thm1-integral", "thm2-integral", "thm1-modified", "thm2-modified"])
@pytest.mark.parametrize("lam", [[1], [2], [1, 1], [2, 1], [3]])
def test_creation_formulas(variant, lam):
    assert creation_chain(lam, variant).holds


def test_modified_creation_chain_carries_t_power():
    # The modified chain of creation operators lands on t^{-n(lam)} Ht_lam,
    # not on Ht_lam itself.
    one = SymFun.one(0)
    chain = gamma_plus(1, gamma_plus(1, one, "modified"), "modified")
    H = modified_H([1, 1])
    assert chain != H
    assert chain == H.scale(ONE / t)
    assert convert(chain, "s") == {Partition([2]): ONE / t, Partition([1, 1]): ONE}


def test_strict_creation_mismatch_raises(monkeypatch):
    import maclab.macdonald as mac

    monkeypatch.setattr(mac, "_t_power", lambda k: ONE)
    with pytest.raises(MismatchCertificate):
        mac.creation_chain([1, 1], "thm1-modified")
    assert not mac.creation_chain([1, 1], "thm1-modified", strict=False).holds


def test_shared_cache_instance():
    assert get_cache() is get_cache()
    assert monomial([1]) == SymFun.p([1])
