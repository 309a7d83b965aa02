"""Instance data model, representation vectors and loss functions.

Everything here is immutable and uses :class:`fractions.Fraction` so that
loss ties are decided exactly.  Attribute values are 0-based indices into
each attribute's domain; labels only matter for I/O.
"""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from mapr.errors import EmptyInputError, SchemaError

Committee = tuple[int, ...]


@dataclass(frozen=True)
class Attribute:
    name: str
    values: tuple[str, ...]

    @property
    def size(self) -> int:
        return len(self.values)


@dataclass(frozen=True)
class AttributeSchema:
    attributes: tuple[Attribute, ...]

    def __post_init__(self):
        object.__setattr__(self, "attributes", tuple(self.attributes))
        names = [a.name for a in self.attributes]
        if len(set(names)) != len(names):
            raise SchemaError(f"duplicate attribute names in {names}")
        for a in self.attributes:
            if len(a.values) < 2:
                raise SchemaError(f"attribute {a.name!r} needs at least two values")
            if len(set(a.values)) != len(a.values):
                raise SchemaError(f"duplicate value labels in attribute {a.name!r}")

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[str, Sequence[str]]]) -> "AttributeSchema":
        return cls(tuple(Attribute(name, tuple(values)) for name, values in pairs))

    @property
    def p(self) -> int:
        return len(self.attributes)

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(a.size for a in self.attributes)

    def __len__(self):
        return len(self.attributes)

    def __getitem__(self, i) -> Attribute:
        return self.attributes[i]

    def __iter__(self):
        return iter(self.attributes)

    def index_of(self, name: str) -> int:
        for i, a in enumerate(self.attributes):
            if a.name == name:
                return i
        raise SchemaError(f"unknown attribute {name!r}")

    def value_index(self, attribute: int, label: str) -> int:
        try:
            return self.attributes[attribute].values.index(label)
        except ValueError:
            raise SchemaError(
                f"unknown value {label!r} for attribute {self.attributes[attribute].name!r}"
            ) from None


@dataclass(frozen=True)
class Candidate:
    name: str
    values: tuple[int, ...]


@dataclass(frozen=True)
class CandidateDatabase:
    schema: AttributeSchema
    candidates: tuple[Candidate, ...]

    def __post_init__(self):
        object.__setattr__(self, "candidates", tuple(self.candidates))
        sizes = self.schema.sizes
        seen = set()
        for c in self.candidates:
            if c.name in seen:
                raise SchemaError(f"duplicate candidate name {c.name!r}")
            seen.add(c.name)
            if len(c.values) != len(sizes):
                raise SchemaError(
                    f"candidate {c.name!r} has {len(c.values)} values, expected {len(sizes)}"
                )
            for v, q in zip(c.values, sizes):
                if not (isinstance(v, int) and 0 <= v < q):
                    raise SchemaError(f"candidate {c.name!r} has out-of-domain value {v!r}")

    @classmethod
    def from_rows(cls, schema: AttributeSchema, rows) -> "CandidateDatabase":
        """Build from ``(name, values)`` rows; values may be indices or labels."""
        cands = []
        for name, values in rows:
            idx = tuple(
                v if isinstance(v, int) else schema.value_index(i, v)
                for i, v in enumerate(values)
            )
            cands.append(Candidate(name, idx))
        return cls(schema, tuple(cands))

    @property
    def m(self) -> int:
        return len(self.candidates)

    def __len__(self):
        return len(self.candidates)

    def vectors(self) -> list[tuple[int, ...]]:
        return [c.values for c in self.candidates]

    def names(self, committee: Iterable[int]) -> list[str]:
        return [self.candidates[i].name for i in committee]

    def index_of(self, name: str) -> int:
        for i, c in enumerate(self.candidates):
            if c.name == name:
                return i
        raise SchemaError(f"unknown candidate {name!r}")

    def committee(self, names: Iterable[str]) -> Committee:
        return make_committee(self, [self.index_of(n) for n in names])


def _as_fraction(x) -> Fraction:
    if isinstance(x, float):
        # binary floats never enter the exact pipeline
        raise SchemaError(f"float {x!r} given where an exact rational is required")
    return Fraction(x)


@dataclass(frozen=True)
class TargetDistribution:
    """Per-attribute target shares; each row sums to exactly 1."""

    values: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(_as_fraction(x) for x in row) for row in self.values)
        for i, row in enumerate(rows):
            if any(x < 0 for x in row):
                raise SchemaError(f"negative target share on attribute {i}")
            if sum(row) != 1:
                raise SchemaError(f"target shares of attribute {i} sum to {sum(row)}, not 1")
        object.__setattr__(self, "values", rows)

    def __len__(self):
        return len(self.values)

    def __getitem__(self, i):
        return self.values[i]

    def __iter__(self):
        return iter(self.values)

    def matches(self, schema: AttributeSchema) -> bool:
        return tuple(len(row) for row in self.values) == schema.sizes

    def replace_row(self, i: int, row) -> "TargetDistribution":
        rows = list(self.values)
        rows[i] = tuple(row)
        return TargetDistribution(tuple(rows))


@dataclass(frozen=True)
class RepresentationVector:
    """Value frequencies of a committee; entries are multiples of 1/k."""

    values: tuple[tuple[Fraction, ...], ...]
    k: int

    def __len__(self):
        return len(self.values)

    def __getitem__(self, i):
        return self.values[i]

    def __iter__(self):
        return iter(self.values)

    def seats(self) -> tuple[tuple[int, ...], ...]:
        """Seat counts R_i^j = k * r_i^j."""
        return tuple(tuple(int(x * self.k) for x in row) for row in self.values)

    @classmethod
    def from_seats(cls, seats, k: int) -> "RepresentationVector":
        return cls(tuple(tuple(Fraction(s, k) for s in row) for row in seats), k)


class LossKind(enum.Enum):
    L1 = "l1"
    L1MAX = "l1max"
    LMAX = "lmax"

    @classmethod
    def parse(cls, text) -> "LossKind":
        if isinstance(text, cls):
            return text
        return cls(str(text).lower())


@dataclass(frozen=True)
class Ballot:
    """One voter's preferred value index per attribute."""

    preferred: tuple[int, ...]


@dataclass(frozen=True)
class Instance:
    db: CandidateDatabase
    target: TargetDistribution
    k: int

    def __post_init__(self):
        if not self.target.matches(self.db.schema):
            raise SchemaError("target distribution does not match the attribute schema")
        if not (isinstance(self.k, int) and 1 <= self.k <= self.db.m):
            raise SchemaError(f"committee size k={self.k} outside 1..{self.db.m}")

    @property
    def schema(self) -> AttributeSchema:
        return self.db.schema

    def with_target(self, target: TargetDistribution) -> "Instance":
        return Instance(self.db, target, self.k)

    def with_k(self, k: int) -> "Instance":
        return Instance(self.db, self.target, k)


def make_committee(db: CandidateDatabase, members: Iterable[int]) -> Committee:
    """Validate candidate indices and return them as a sorted tuple."""
    members = list(members)
    for i in members:
        if not (isinstance(i, int) and 0 <= i < db.m):
            raise SchemaError(f"invalid candidate index {i!r}")
    if len(set(members)) != len(members):
        raise SchemaError("committee contains a candidate twice")
    return tuple(sorted(members))


def representation_vector(db: CandidateDatabase, committee: Iterable[int]) -> RepresentationVector:
    members = make_committee(db, committee)
    k = len(members)
    if k == 0:
        raise SchemaError("empty committee")
    rows = []
    for i, attr in enumerate(db.schema):
        counts = Counter(db.candidates[c].values[i] for c in members)
        rows.append(tuple(Fraction(counts[j], k) for j in range(attr.size)))
    return RepresentationVector(tuple(rows), k)


def _rows(x) -> tuple:
    return tuple(x.values) if hasattr(x, "values") else tuple(tuple(r) for r in x)


def loss(kind: LossKind, target, r) -> Fraction:
    """Exact distance between a target distribution and a representation vector.

    ``l1`` sums all absolute deviations, ``l1max`` sums the per-attribute
    maxima, ``lmax`` takes the overall maximum.
    """
    kind = LossKind.parse(kind)
    t_rows, r_rows = _rows(target), _rows(r)
    if tuple(map(len, t_rows)) != tuple(map(len, r_rows)):
        raise SchemaError("target and representation vector have different shapes")
    devs = [[abs(Fraction(a) - Fraction(b)) for a, b in zip(tr, rr)] for tr, rr in zip(t_rows, r_rows)]
    if kind is LossKind.L1:
        return sum((sum(row, Fraction(0)) for row in devs), Fraction(0))
    if kind is LossKind.L1MAX:
        return sum((max(row) for row in devs), Fraction(0))
    return max((max(row) for row in devs), default=Fraction(0))


def committee_loss(instance: Instance, committee, kind: LossKind) -> Fraction:
    return loss(kind, instance.target, representation_vector(instance.db, committee))


def is_perfect(db: CandidateDatabase, committee, target: TargetDistribution) -> bool:
    if not target.matches(db.schema):
        raise SchemaError("target distribution does not match the attribute schema")
    return representation_vector(db, committee).values == target.values


def is_natural(target, k: int) -> bool:
    return all((Fraction(x) * k).denominator == 1 for row in _rows(target) for x in row)


def targets_from_ballots(schema: AttributeSchema, ballots: Sequence[Ballot]) -> TargetDistribution:
    if not ballots:
        raise EmptyInputError("at least one ballot is required")
    n = len(ballots)
    rows = []
    for i, attr in enumerate(schema):
        counts = Counter()
        for b in ballots:
            pref = b.preferred if isinstance(b, Ballot) else tuple(b)
            if len(pref) != schema.p or not (0 <= pref[i] < attr.size):
                raise SchemaError(f"ballot {pref!r} is invalid for the schema")
            counts[pref[i]] += 1
        rows.append(tuple(Fraction(counts[j], n) for j in range(attr.size)))
    return TargetDistribution(tuple(rows))
