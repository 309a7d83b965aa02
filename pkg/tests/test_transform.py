from fractions import Fraction as F
from itertools import combinations

from hypothesis import given, settings
from hypothesis import strategies as st

from mapr import catalog
from mapr.generators import random_instance, random_instance_with_plant
from mapr.model import LossKind, committee_loss, is_perfect, representation_vector
from mapr.transform import restrict_representation, to_binary, verify_transform_identities


def test_intro_expands_to_nine_indicators():
    inst = catalog.intro()
    binary, mapping = to_binary(inst)
    assert binary.schema.p == 9
    assert mapping == tuple(range(10))
    assert binary.db.candidates[0].values == (1, 0, 1, 0, 0, 1, 0, 1, 0)
    assert binary.schema[0].name == "sex=F"
    # indicator 1 carries the original share
    assert binary.target[3] == (F(3, 4), F(1, 4))


def test_binary_instance_doubles_attributes():
    inst = random_instance(3, 2, 6, 2, seed=1)
    binary, _ = to_binary(inst)
    assert binary.schema.p == 6


def test_indicator_rows_sum_to_one_per_original_attribute():
    inst = random_instance(3, [2, 3, 4], 12, 4, seed=5)
    binary, _ = to_binary(inst)
    for c in binary.db.candidates:
        pos = 0
        for q in inst.schema.sizes:
            assert sum(c.values[pos:pos + q]) == 1
            pos += q


def test_intro_transformed_loss_doubles():
    inst = catalog.intro()
    A = inst.db.committee(["Charlie", "Donna", "George", "Kevin"])
    binary, _ = to_binary(inst)
    assert committee_loss(binary, A, LossKind.L1) == F(8, 5)
    l1, l1max, same = verify_transform_identities(inst, A)
    assert l1 == 2 and 1 <= l1max <= 3 and same


def test_zero_loss_convention():
    inst = catalog.ls2_lower_bound()
    A = inst.db.committee(["b.1", "b'.1", "c.1", "c'.1"])
    assert verify_transform_identities(inst, A) == (2, 1, True)


@st.composite
def pairs(draw):
    p = draw(st.integers(1, 4))
    sizes = draw(st.lists(st.integers(2, 4), min_size=p, max_size=p))
    m = draw(st.integers(2, 9))
    k = draw(st.integers(1, m))
    inst = random_instance(p, sizes, m, k, draw(st.integers(0, 99_999)))
    A = draw(st.lists(st.integers(0, m - 1), min_size=k, max_size=k, unique=True))
    return inst, tuple(sorted(A))


@settings(max_examples=200, deadline=None)
@given(pairs())
def test_identities_hold_exactly(data):
    inst, A = data
    l1, l1max, same = verify_transform_identities(inst, A)
    assert l1 == 2
    assert 1 <= l1max <= max(inst.schema.sizes)
    assert same


@settings(max_examples=100, deadline=None)
@given(pairs())
def test_restriction_recovers_representation(data):
    inst, A = data
    binary, mapping = to_binary(inst)
    r_bin = representation_vector(binary.db, [mapping[c] for c in A])
    assert restrict_representation(r_bin, inst.schema) == representation_vector(inst.db, A)


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 99_999), st.booleans())
def test_perfect_committees_are_preserved(seed, use_plant):
    inst, planted = random_instance_with_plant(3, [2, 3, 2], 8, 3, seed, plant_perfect=use_plant,
                                               natural_targets=True)
    binary, _ = to_binary(inst)
    for A in combinations(range(8), 3):
        assert is_perfect(inst.db, A, inst.target) == is_perfect(binary.db, A, binary.target)
