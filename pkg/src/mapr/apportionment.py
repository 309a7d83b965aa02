"""Largest-remainder apportionment and the single-attribute committee rule."""

from __future__ import annotations

import enum
import itertools
import math
from fractions import Fraction
from typing import Sequence

from mapr.errors import DomainError, OverAllocationError, PreconditionError, SupplyError
from mapr.model import CandidateDatabase, Committee, TargetDistribution


class SeatAllocation(tuple):
    """Integer seats per party (attribute value); compares equal to plain tuples."""

    @property
    def k(self) -> int:
        return sum(self)


class QuotaKind(enum.Enum):
    HARE = "hare"
    DROOP = "droop"
    HAGENBACH_BISCHOFF = "hb"
    IMPERIALI = "imperiali"

    @classmethod
    def parse(cls, text) -> "QuotaKind":
        if isinstance(text, cls):
            return text
        text = str(text).lower()
        aliases = {"hagenbach-bischoff": "hb", "hagenbachbischoff": "hb"}
        return cls(aliases.get(text, text))


def quota_value(kind: QuotaKind, votes: Fraction, seats: int) -> Fraction:
    if kind is QuotaKind.HARE:
        return Fraction(votes, seats)
    if kind is QuotaKind.DROOP:
        return 1 + Fraction(votes, 1 + seats)
    if kind is QuotaKind.HAGENBACH_BISCHOFF:
        return Fraction(votes, 1 + seats)
    return Fraction(votes, 2 + seats)


def ideal_seats(weights: Sequence, k: int, quota=QuotaKind.HARE) -> list[Fraction]:
    """Ideal (fractional) seat counts s_i* = n_i / q."""
    quota = QuotaKind.parse(quota)
    w = [Fraction(x) for x in weights]
    if any(x < 0 for x in w):
        raise DomainError("weights must be nonnegative")
    n = sum(w)
    if n == 0:
        raise DomainError("weights must not all be zero")
    if quota is QuotaKind.HARE:
        # scale-free form: k times the vote fraction
        return [k * x / n for x in w]
    q = quota_value(quota, n, k)
    return [x / q for x in w]


def largest_remainder(weights: Sequence, k: int, quota=QuotaKind.HARE):
    """Largest-remainder apportionment of ``k`` seats.

    Returns ``(canonical, all_tied)``.  Every party first gets the floor of
    its ideal seat count; the leftover seats go to the largest remainders.
    When several parties tie on the boundary remainder, ``all_tied`` holds
    every resulting allocation and ``canonical`` favours lower indices.

    Non-Hare quotas interpret ``weights`` as raw vote counts.
    """
    if k < 0:
        raise DomainError("number of seats must be nonnegative")
    quota = QuotaKind.parse(quota)
    ideal = ideal_seats(weights, k, quota)
    base = [math.floor(s) for s in ideal]
    left = k - sum(base)
    if left < 0:
        raise OverAllocationError(
            f"{quota.value} quota floors hand out {sum(base)} seats, more than k={k}"
        )
    if left > len(base):
        raise OverAllocationError(
            f"{quota.value} quota leaves {left} seats for only {len(base)} parties"
        )
    rem = [s - b for s, b in zip(ideal, base)]
    if left == 0:
        alloc = SeatAllocation(base)
        return alloc, frozenset({alloc})
    boundary = sorted(rem, reverse=True)[left - 1]
    sure = [i for i, t in enumerate(rem) if t > boundary]
    tied = [i for i, t in enumerate(rem) if t == boundary]
    need = left - len(sure)
    allocs = []
    for chosen in itertools.combinations(tied, need):
        seats = list(base)
        for i in itertools.chain(sure, chosen):
            seats[i] += 1
        allocs.append(SeatAllocation(seats))
    # combinations() yields the lowest-index choice first
    return allocs[0], frozenset(allocs)


def hamilton(weights: Sequence, k: int) -> SeatAllocation:
    return largest_remainder(weights, k, QuotaKind.HARE)[0]


def naturalize(target: TargetDistribution, k: int) -> TargetDistribution:
    """Round every attribute to the nearest distribution natural for ``k``."""
    if k < 1:
        raise DomainError("k must be at least 1")
    rows = []
    for row in target:
        seats = hamilton(row, k)
        rows.append(tuple(Fraction(s, k) for s in seats))
    return TargetDistribution(tuple(rows))


def hamilton_committee_single_attribute(db: CandidateDatabase, target: TargetDistribution, k: int) -> Committee:
    if db.schema.p != 1:
        raise PreconditionError("single-attribute rule needs exactly one attribute")
    seats = hamilton(target[0], k)
    chosen = []
    for value, n in enumerate(seats):
        pool = [i for i, c in enumerate(db.candidates) if c.values[0] == value]
        if len(pool) < n:
            label = db.schema[0].values[value]
            raise SupplyError(f"value {label!r} needs {n} candidates, database has {len(pool)}")
        chosen.extend(pool[:n])
    return tuple(sorted(chosen))
