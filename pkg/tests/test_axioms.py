from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mapr import catalog
from mapr.axioms import (
    check_non_reversal,
    check_quota,
    house_monotonicity_probe,
    population_monotonicity_probe,
    search_alabama_paradox,
    shift_target,
    single_attribute_instance,
    validate_population_shift,
)
from mapr.errors import PreconditionError, SchemaError
from mapr.generators import random_instance
from mapr.model import LossKind, TargetDistribution, representation_vector
from oracles import oracle_optima

KINDS = list(LossKind)


@pytest.mark.parametrize("kind", KINDS)
def test_quota_counterexample(kind):
    inst = catalog.quota_cx()
    _, optima = oracle_optima(inst, kind)
    assert optima
    for A in optima:
        assert check_quota(representation_vector(inst.db, A), inst.target, 1)


@pytest.mark.parametrize("kind", KINDS)
def test_non_reversal_counterexample(kind):
    inst = catalog.nonreversal_cx()
    _, optima = oracle_optima(inst, kind)
    for A in optima:
        found = check_non_reversal(representation_vector(inst.db, A), inst.target)
        assert (0, 1, 0) in found


def test_no_violations_on_exact_match():
    t = TargetDistribution(((F(1, 4), F(3, 4)), (F(1, 2), F(1, 4), F(1, 4))))
    assert check_non_reversal(t.values, t) == []
    assert check_quota(t.values, t, 4) == []


def test_shape_mismatch():
    t = TargetDistribution(((F(1, 2), F(1, 2)),))
    with pytest.raises(SchemaError):
        check_quota(((1, 0, 0),), t, 1)


def test_shift_target_rescales_other_values():
    t = TargetDistribution(((F(1, 2), F(1, 4), F(1, 4)), (F(1, 2), F(1, 2))))
    s = shift_target(t, 0, 0, F(1, 4))
    assert s[0] == (F(1, 4), F(3, 8), F(3, 8))
    assert s[1] == t[1]
    validate_population_shift(t, s, 0, 0)


def test_population_shift_conditions():
    t = TargetDistribution(((F(1, 2), F(1, 4), F(1, 4)), (F(1, 2), F(1, 2))))
    with pytest.raises(PreconditionError):
        validate_population_shift(t, t, 0, 0)
    skewed = t.replace_row(0, (F(1, 4), F(1, 2), F(1, 4)))
    with pytest.raises(PreconditionError):
        validate_population_shift(t, skewed, 0, 0)
    other = shift_target(t, 0, 0, F(1, 4)).replace_row(1, (F(1, 3), F(2, 3)))
    with pytest.raises(PreconditionError):
        validate_population_shift(t, other, 0, 0)


def test_probe_rejects_equal_targets():
    inst = catalog.differ_4()
    with pytest.raises(PreconditionError):
        population_monotonicity_probe(inst, inst.target, inst.target, 0, 0, "l1")


@st.composite
def binary_shift(draw):
    p = draw(st.integers(1, 3))
    m = draw(st.integers(2, 8))
    k = draw(st.integers(1, m))
    inst = random_instance(p, 2, m, k, draw(st.integers(0, 99_999)))
    i = draw(st.integers(0, p - 1))
    j = draw(st.integers(0, 1))
    share = inst.target[i][j]
    if share == 0:
        share = F(1, 2)
        inst = inst.with_target(inst.target.replace_row(i, (share, share)))
    lower = share * F(draw(st.integers(0, 9)), 10)
    return inst, shift_target(inst.target, i, j, lower), i, j


@settings(max_examples=120, deadline=None)
@given(binary_shift())
def test_population_monotonicity_binary_l1(data):
    inst, rho, i, j = data
    assert population_monotonicity_probe(inst, inst.target, rho, i, j, "l1").holds


def test_population_monotonicity_counterexample():
    inst = catalog.popmono_cx()
    low = catalog.popmono_cx(lowered=True)
    # the two targets differ only in value 1 of X1, rescaled
    validate_population_shift(inst.target, low.target, 0, 0)
    res = population_monotonicity_probe(inst, inst.target, low.target, 0, 0, "l1")
    assert not res.holds
    assert res.witness["committee_pi"] == [f"B{n}" for n in range(1, 9)]
    assert res.witness["committee_rho"] == [f"A{n}" for n in range(1, 9)]
    assert res.witness["share_pi"] == F(1, 4) < res.witness["min_share_rho"] == F(1, 2)


def test_popmono_counterexample_optima_by_exhaustion():
    for lowered, winner in ((False, "B"), (True, "A")):
        inst = catalog.popmono_cx(lowered=lowered)
        _, optima = oracle_optima(inst, "l1")
        assert [inst.db.names(A) for A in optima] == [[f"{winner}{n}" for n in range(1, 9)]]


def test_house_monotonicity_requires_larger_house():
    inst = single_attribute_instance((1, 3, 3), 4)
    with pytest.raises(PreconditionError):
        house_monotonicity_probe(inst, inst.target, 3, 3, "l1")
    with pytest.raises(PreconditionError):
        house_monotonicity_probe(inst, inst.target, 3, 13, "l1")


def test_house_monotonicity_full_house_holds():
    inst = single_attribute_instance((1, 3, 3), 3)
    assert house_monotonicity_probe(inst, inst.target, 2, inst.db.m, "l1").holds


def test_alabama_paradox_found():
    found = search_alabama_paradox(max_parties=4, max_k=12)
    assert found is not None
    votes, k, res = found
    assert not res.holds
    assert votes == (1, 3, 3) and k == 3
    assert res.witness["seats_k"] == ((1, 1, 1),)
    assert res.witness["optima_k2_seats"] == [((0, 2, 2),)]


def test_house_monotonicity_fractional_reading():
    inst = single_attribute_instance((1, 3, 3), 4)
    res = house_monotonicity_probe(inst, inst.target, 3, 4, "l1", fractional=True)
    assert not res.holds
