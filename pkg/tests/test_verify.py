from __future__ import annotations

import pytest

from maclab.partitions import Partition
from maclab.verify import (
    SUITES,
    cauchy,
    five_term,
    gamma_rewrite,
    jack_limit,
    one_row_closed_form,
    plethystic_specialization,
    run_suite,
    tesler,
    unit_dichotomy,
)


@pytest.mark.parametrize("lam", [Partition([1]), Partition([2, 1]), Partition([1, 1, 1])])
def test_core_checks(lam):
    assert plethystic_specialization(lam)
    assert all(unit_dichotomy(lam).values())


def test_identity_checks():
    assert one_row_closed_form(3)
    assert cauchy(3)
    assert five_term(Partition([1]))
    assert tesler(Partition([1]), 2)
    assert gamma_rewrite(Partition([1]))
    assert all(jack_limit(Partition([1]), Partition([2, 1])).values())


@pytest.mark.parametrize("name", sorted(SUITES))
def test_each_suite_at_small_size(name):
    outcomes = run_suite(name, 2)
    assert outcomes
    assert all(o.passed for o in outcomes), [o for o in outcomes if not o.passed]
    assert all("runtime" not in o.to_json(runtime=False) for o in outcomes)


def test_unknown_suite():
    with pytest.raises(ValueError):
        run_suite("nonsense")
