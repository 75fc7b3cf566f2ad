from __future__ import annotations

import json

import pytest

from maclab.conjectures import (
    CONJECTURES,
    Certificate,
    SweepConfig,
    aggregate,
    certify_value,
    check_alpha1,
    check_g_bounds,
    check_g_equals_c,
    check_marginal,
    check_super_nabla,
    gamma_pairings,
    gj_c,
    gj_h,
    jfrak,
    sweep,
)
from maclab.jack import jack_c, jack_h
from maclab.partitions import Partition, partitions
from maclab.scalars import ONE, ZERO, limit_cancel, poly_to_json, var

a, g, b, w1, w2 = var("alpha"), var("gamma"), var("b"), var("w1"), var("w2")


def _value(certs, **inputs):
    hits = [c for c in certs if all(c.inputs.get(k) == v for k, v in inputs.items())]
    assert len(hits) == 1, inputs
    return hits[0].polynomial


def test_jfrak_degree_two():
    J = jfrak([2])
    assert J.coefficient([2]) == a * g / 2 + a
    assert J.coefficient([1, 1]) == a * g / 2 + 1


def test_certify_value():
    assert certify_value(1 + g, ("gamma",)) == (1 + g).num
    assert certify_value(ONE / g, ("gamma",)) is None
    assert certify_value(a, ("gamma",)) is None
    assert certify_value(ZERO, ("gamma",)) == ZERO.num


def test_certificate_flags_and_json_round_trip():
    good = Certificate("demo", {"m": 1}, {"value": (2 + g).num}, ("gamma",), 0.5)
    assert good.passed
    bad = Certificate("demo", {"m": 1}, {"value": (g - 1).num, "other": None}, ("gamma",))
    assert not bad.passed
    assert bad.flags == {"is_polynomial": False, "integer_coeffs": False, "nonneg_coeffs": False}
    data = json.loads(json.dumps(good.to_json()))
    again = Certificate.from_json(data)
    assert again.to_json() == good.to_json()
    assert "runtime" not in good.to_json(runtime=False)
    with pytest.raises(ValueError):
        bad.polynomial  # noqa: B018


def test_degree_one_goulden_jackson():
    one = (Partition([1]),) * 3
    assert gj_c(1)[one] == ONE
    assert gj_h(1)[one] == ONE
    assert gj_c(1)[(Partition([1]), Partition([1]), Partition([2]))] == ZERO


@pytest.mark.parametrize("m", [1, 2, 3])
def test_jack_limit_of_c_and_h(m):
    for kind, table, oracle in (("c", gj_c(m), jack_c(m)), ("h", gj_h(m), jack_h(m))):
        for key in table.keys():
            val = limit_cancel(table[key], "gamma", 0)
            assert val == oracle.get(key, ZERO), (kind, key)


@pytest.mark.parametrize("m", [1, 2, 3])
def test_propositions_small(m):
    assert check_marginal(m).passed
    assert check_alpha1(m).flags["integer_coeffs"]
    assert check_super_nabla(m)
    assert check_g_equals_c(m)


def test_g_bounds_small():
    for mu in [Partition([1]), Partition([2]), Partition([1, 1])]:
        for nu in [Partition([1]), Partition([2, 1])]:
            assert check_g_bounds(mu, nu)


def test_stanley_spot_value():
    certs = sweep("stanley", 2)
    assert _value(certs, **{"lambda": [2], "mu": [1], "nu": [1]}) == (2 * a ** 2 + g * a ** 3).num


def test_lassalle_spot_value():
    certs = sweep("lassalle", 1)
    assert _value(certs, mu=[1], k=1) == w1.num
    assert _value(certs, mu=[1], k=2) == (g * w1 + w1 + w2).num


def test_gamma_pairings_low_degree():
    table = gamma_pairings([], 1)
    assert table[Partition()] == ONE
    assert table[Partition([1])] == 1 + w1
    assert gamma_pairings([1], 1)[Partition([1])] == 1 + g


def test_gamma_bindings_recorded():
    for binding in ("q-1", "q", "alpha"):
        cfg = SweepConfig(qprime=binding)
        certs = sweep("gamma", 2, cfg)
        assert all(c.config == {"qprime": binding} for c in certs)
    with pytest.raises(ValueError):
        gamma_pairings([1], 2, "bogus")


@pytest.mark.parametrize("conjecture", CONJECTURES)
def test_small_sweeps_pass(conjecture):
    n = 2 if conjecture == "structure" else 3
    certs = sweep(conjecture, n)
    report = aggregate(conjecture, n, certs)
    assert certs and report["failed"] == 0
    assert report["passed"] == len(certs)


def test_parallel_sweep_matches_serial():
    serial = sweep("matchings", 2)
    parallel = sweep("matchings", 2, jobs=2)
    assert [c.to_json(runtime=False) for c in serial] == [c.to_json(runtime=False) for c in parallel]


def test_failed_certificate_is_surfaced_not_raised(monkeypatch):
    import maclab.conjectures as conj

    monkeypatch.setitem(conj._FNS, "stanley", lambda inp, cfg: (g - 1, ("gamma",)))
    monkeypatch.setattr(conj, "_stanley", conj._FNS["stanley"])
    certs = conj.sweep("stanley", 2)
    report = conj.aggregate("stanley", 2, certs)
    assert report["failed"] == len(certs) > 0
    assert certs[0].to_json()["polynomials"]["value"] == poly_to_json((g - 1).num)


def test_unknown_conjecture():
    with pytest.raises(ValueError):
        sweep("riemann", 2)


def test_table_keys_cover_all_triples():
    assert len(gj_c(3).keys()) == len(partitions(3)) ** 3
