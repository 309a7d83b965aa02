import random
from fractions import Fraction as F
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mapr import catalog
from mapr.errors import EmptyInputError, SchemaError
from mapr.generators import random_instance
from mapr.model import (
    AttributeSchema,
    Ballot,
    CandidateDatabase,
    LossKind,
    RepresentationVector,
    TargetDistribution,
    committee_loss,
    is_natural,
    is_perfect,
    loss,
    representation_vector,
    targets_from_ballots,
)
from oracles import oracle_loss, tally


@pytest.fixture(scope="module")
def intro():
    return catalog.intro()


def test_representation_of_intro_committee(intro):
    A = intro.db.committee(["Charlie", "Donna", "George", "Kevin"])
    r = representation_vector(intro.db, A)
    assert r.values == (
        (F(1, 4), F(3, 4)),
        (F(1, 2), F(1, 4), F(1, 4)),
        (F(1, 4), F(3, 4)),
        (F(1, 4), F(3, 4)),
    )
    assert r.seats() == ((1, 3), (2, 1, 1), (1, 3), (1, 3))


def test_singleton_committee_gives_indicator_rows(intro):
    r = representation_vector(intro.db, intro.db.committee(["Ann"]))
    assert r.values == ((1, 0), (1, 0, 0), (1, 0), (1, 0))


def test_representation_matches_independent_tally():
    inst = random_instance(5, 2, 10, 4, seed=3)
    rng = random.Random(0)
    for _ in range(50):
        A = tuple(sorted(rng.sample(range(10), 4)))
        r = representation_vector(inst.db, A)
        assert r.values == tuple(tuple(F(n, 4) for n in row) for row in tally(inst, A))


def test_intro_losses_of_the_highlighted_committees(intro):
    cdgk = intro.db.committee(["Charlie", "Donna", "George", "Kevin"])
    acdg = intro.db.committee(["Ann", "Charlie", "Donna", "George"])
    assert committee_loss(intro, cdgk, LossKind.L1) == F(4, 5)
    assert committee_loss(intro, cdgk, LossKind.L1MAX) == F(2, 5)
    assert committee_loss(intro, acdg, LossKind.LMAX) == F(1, 5)


def test_loss_zero_on_identity():
    t = TargetDistribution(((F(1, 3), F(2, 3)), (F(1, 2), F(1, 4), F(1, 4))))
    for kind in LossKind:
        assert loss(kind, t, t.values) == 0


def test_loss_shape_mismatch():
    t = TargetDistribution(((F(1, 2), F(1, 2)),))
    with pytest.raises(SchemaError):
        loss(LossKind.L1, t, ((F(1, 3), F(1, 3), F(1, 3)),))


def test_loss_kind_enumeration_is_closed():
    assert {k.value for k in LossKind} == {"l1", "l1max", "lmax"}
    with pytest.raises(ValueError):
        LossKind.parse("l2")


def test_schema_rejects_one_valued_attribute():
    with pytest.raises(SchemaError):
        AttributeSchema.from_pairs([("x", ("only",))])


def test_schema_rejects_duplicates():
    with pytest.raises(SchemaError):
        AttributeSchema.from_pairs([("x", ("a", "b")), ("x", ("a", "b"))])
    with pytest.raises(SchemaError):
        AttributeSchema.from_pairs([("x", ("a", "a"))])


def test_database_rules():
    schema = AttributeSchema.from_pairs([("x", ("a", "b"))])
    with pytest.raises(SchemaError):
        CandidateDatabase.from_rows(schema, [("u", (2,))])
    with pytest.raises(SchemaError):
        CandidateDatabase.from_rows(schema, [("u", (0,)), ("u", (1,))])
    db = CandidateDatabase.from_rows(schema, [("u", ("a",)), ("v", ("a",))])
    assert db.vectors() == [(0,), (0,)]


def test_target_rows_must_sum_to_one_exactly():
    with pytest.raises(SchemaError):
        TargetDistribution(((F(1, 3), F(1, 3)),))
    with pytest.raises(SchemaError):
        TargetDistribution(((0.5, 0.5),))
    with pytest.raises(SchemaError):
        TargetDistribution(((F(3, 2), F(-1, 2)),))


def test_invalid_committee_index(intro):
    with pytest.raises(SchemaError):
        representation_vector(intro.db, (0, 99))
    with pytest.raises(SchemaError):
        representation_vector(intro.db, (1, 1))


def test_instance_k_bounds(intro):
    with pytest.raises(SchemaError):
        intro.with_k(0)
    with pytest.raises(SchemaError):
        intro.with_k(11)


def test_is_perfect(intro):
    for A in combinations(range(10), 3):
        assert not is_perfect(intro.db, A, intro.target)
    ls2 = catalog.ls2_lower_bound()
    assert is_perfect(ls2.db, ls2.db.committee(["b.1", "b'.1", "c.1", "c'.1"]), ls2.target)


def test_planted_committee_is_perfect():
    from mapr.generators import random_instance_with_plant

    for seed in range(20):
        inst, planted = random_instance_with_plant(4, [2, 3, 2, 2], 12, 5, seed, plant_perfect=True)
        assert is_perfect(inst.db, planted, inst.target)


def test_is_natural(intro):
    assert not is_natural(intro.target, 4)
    assert is_natural(((F(1, 2), F(1, 2)),), 4)
    assert not is_natural(((F(1, 3), F(1, 3), F(1, 3)),), 7)


def test_targets_from_ballots():
    schema = AttributeSchema.from_pairs([("x", ("a", "b"))])
    assert targets_from_ballots(schema, [Ballot((0,)), Ballot((0,))]).values == ((1, 0),)
    sex = AttributeSchema.from_pairs([("sex", ("F", "M"))])
    ballots = [Ballot((0,))] * 10 + [Ballot((1,))] * 10
    assert targets_from_ballots(sex, ballots).values == ((F(1, 2), F(1, 2)),)
    three = AttributeSchema.from_pairs([("x", ("a", "b", "c"))])
    assert targets_from_ballots(three, [Ballot((j,)) for j in range(3)]).values == ((F(1, 3),) * 3,)
    with pytest.raises(EmptyInputError):
        targets_from_ballots(schema, [])
    with pytest.raises(SchemaError):
        targets_from_ballots(schema, [Ballot((5,))])


def test_representation_vector_from_seats():
    r = RepresentationVector.from_seats(((1, 3),), 4)
    assert r.values == ((F(1, 4), F(3, 4)),)


# property tests over random instances and committees

@st.composite
def instance_and_committee(draw, binary=False):
    p = draw(st.integers(1, 4))
    sizes = [2] * p if binary else draw(st.lists(st.integers(2, 4), min_size=p, max_size=p))
    m = draw(st.integers(1, 8))
    k = draw(st.integers(1, m))
    seed = draw(st.integers(0, 10_000))
    inst = random_instance(p, sizes, m, k, seed)
    A = draw(st.lists(st.integers(0, m - 1), min_size=k, max_size=k, unique=True))
    return inst, tuple(sorted(A))


@settings(max_examples=150, deadline=None)
@given(instance_and_committee())
def test_loss_agrees_with_oracle_and_is_zero_iff_perfect(data):
    inst, A = data
    r = representation_vector(inst.db, A)
    values = {}
    for kind in LossKind:
        values[kind] = loss(kind, inst.target, r)
        assert values[kind] == oracle_loss(inst, A, kind)
        assert values[kind] >= 0
        assert (values[kind] == 0) == is_perfect(inst.db, A, inst.target)
    assert values[LossKind.LMAX] <= values[LossKind.L1MAX] <= values[LossKind.L1]


@settings(max_examples=100, deadline=None)
@given(instance_and_committee())
def test_representation_entries_are_multiples_of_one_over_k(data):
    inst, A = data
    r = representation_vector(inst.db, A)
    for row in r:
        assert sum(row) == 1
        assert all((x * inst.k).denominator == 1 and x >= 0 for x in row)


@settings(max_examples=100, deadline=None)
@given(instance_and_committee(binary=True))
def test_binary_l1_is_twice_l1max(data):
    inst, A = data
    r = representation_vector(inst.db, A)
    assert loss(LossKind.L1, inst.target, r) == 2 * loss(LossKind.L1MAX, inst.target, r)


@settings(max_examples=100, deadline=None)
@given(st.integers(2, 5), st.integers(1, 6), st.integers(0, 10_000))
def test_single_attribute_l1max_equals_lmax(q, k, seed):
    inst = random_instance(1, q, k + 3, k, seed)
    rng = random.Random(seed)
    A = rng.sample(range(inst.db.m), k)
    r = representation_vector(inst.db, A)
    assert loss(LossKind.L1MAX, inst.target, r) == loss(LossKind.LMAX, inst.target, r)
