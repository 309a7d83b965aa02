"""Attribute-wise Hamilton decomposition for databases with full supply."""

from __future__ import annotations

import math
from collections import Counter, defaultdict

from mapr.apportionment import hamilton
from mapr.errors import PreconditionError
from mapr.model import CandidateDatabase, Instance, LossKind, committee_loss
from mapr.solvers.report import SolveReport


def full_supply_check(db: CandidateDatabase, k: int) -> bool:
    """True iff every value vector of the full domain has at least ``k`` candidates."""
    if k <= 0:
        return True
    counts = Counter(c.values for c in db.candidates)
    domain = math.prod(db.schema.sizes)
    if len(counts) < domain:
        return False
    return all(n >= k for n in counts.values())


def slot_values(seats) -> list[int]:
    """Expand seat counts into one value index per committee slot, in value order."""
    return [value for value, n in enumerate(seats) for _ in range(n)]


def solve_full_supply(instance: Instance, kind=LossKind.L1) -> SolveReport:
    db, k = instance.db, instance.k
    if not full_supply_check(db, k):
        raise PreconditionError(f"database does not satisfy full supply for k={k}")
    seats = [hamilton(row, k) for row in instance.target]
    slots = [slot_values(s) for s in seats]
    pools = defaultdict(list)
    for i in range(db.m - 1, -1, -1):
        pools[db.candidates[i].values].append(i)
    chosen = []
    for j in range(k):
        vector = tuple(s[j] for s in slots)
        chosen.append(pools[vector].pop())
    committee = tuple(sorted(chosen))
    kind = LossKind.parse(kind)
    return SolveReport((committee,), committee_loss(instance, committee, kind), "fs", kind,
                       trace={"seats": [list(s) for s in seats]})
