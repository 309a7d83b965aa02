"""Apportionment properties lifted to multi-attribute committees.

The probes quantify over *all* optimal committees, so they enumerate every
optimal bucket allocation exhaustively (see
:func:`mapr.solvers.optimal_allocations`).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Optional

from mapr.errors import PreconditionError, SchemaError
from mapr.model import (
    AttributeSchema,
    CandidateDatabase,
    Instance,
    LossKind,
    TargetDistribution,
    _rows,
)
from mapr.solvers.brute import DEFAULT_BUDGET, optimal_allocations


@dataclass(frozen=True)
class ProbeResult:
    holds: bool
    witness: Optional[dict[str, Any]] = None
    details: dict[str, Any] = field(default_factory=dict)

    def __bool__(self):
        return self.holds


def _same_shape(a, b):
    if tuple(map(len, _rows(a))) != tuple(map(len, _rows(b))):
        raise SchemaError("representation vector and target have different shapes")


def check_non_reversal(r, target) -> list[tuple[int, int, int]]:
    """Triples ``(i, j, j2)`` with ``pi_i^j > pi_i^j2`` but ``r_i^j < r_i^j2``."""
    _same_shape(r, target)
    out = []
    for i, (rr, tr) in enumerate(zip(_rows(r), _rows(target))):
        for j, j2 in itertools.permutations(range(len(tr)), 2):
            if tr[j] > tr[j2] and rr[j] < rr[j2]:
                out.append((i, j, j2))
    return out


def check_quota(r, target, k: int) -> list[tuple[int, int]]:
    """Pairs ``(i, j)`` whose seat count is neither floor nor ceil of ``k * pi_i^j``."""
    _same_shape(r, target)
    out = []
    for i, (rr, tr) in enumerate(zip(_rows(r), _rows(target))):
        for j, (x, t) in enumerate(zip(rr, tr)):
            seats = Fraction(x) * k
            ideal = Fraction(t) * k
            if seats not in (math.floor(ideal), math.ceil(ideal)):
                out.append((i, j))
    return out


def shift_target(target: TargetDistribution, i: int, j: int, share) -> TargetDistribution:
    """Set ``pi_i^j`` to ``share`` and rescale the other values of attribute i proportionally."""
    share = Fraction(share)
    row = target[i]
    rest = 1 - row[j]
    if rest == 0:
        raise PreconditionError("cannot rescale: all other values of the attribute have zero share")
    if not 0 <= share <= 1:
        raise PreconditionError("share must lie in [0, 1]")
    factor = (1 - share) / rest
    new = tuple(share if jj == j else x * factor for jj, x in enumerate(row))
    return target.replace_row(i, new)


def validate_population_shift(pi: TargetDistribution, rho: TargetDistribution, i: int, j: int):
    if len(pi) != len(rho) or any(len(a) != len(b) for a, b in zip(pi, rho)):
        raise SchemaError("pi and rho have different shapes")
    if not pi[i][j] > rho[i][j]:
        raise PreconditionError(f"condition (a) fails: pi[{i}][{j}] must exceed rho[{i}][{j}]")
    others = [jj for jj in range(len(pi[i])) if jj != j]
    for a, b in itertools.combinations(others, 2):
        # ratio pi_a / pi_b == rho_a / rho_b, cross-multiplied; zeros must match
        if (pi[i][a] == 0) != (rho[i][a] == 0) or (pi[i][b] == 0) != (rho[i][b] == 0):
            raise PreconditionError(f"condition (b) fails: zero pattern differs on values {a}, {b}")
        if pi[i][a] * rho[i][b] != rho[i][a] * pi[i][b]:
            raise PreconditionError(f"condition (b) fails: ratio of values {a}, {b} not preserved")
    for ii in range(len(pi)):
        if ii != i and pi[ii] != rho[ii]:
            raise PreconditionError(f"condition (c) fails: attribute {ii} differs")


def _committee_names(instance, optima, allocation):
    return instance.db.names(optima.table.materialize(allocation))


def population_monotonicity_probe(instance: Instance, pi: TargetDistribution, rho: TargetDistribution,
                                  i: int, j: int, kind, budget: int = DEFAULT_BUDGET) -> ProbeResult:
    """Lowering value j's share from pi to rho must not raise its representation.

    Holds iff for every optimum A under pi some optimum B under rho has
    ``r_i^j(A) >= r_i^j(B)``.  The committee size and database come from
    ``instance``; its own target is ignored.
    """
    kind = LossKind.parse(kind)
    validate_population_shift(pi, rho, i, j)
    opt_pi = optimal_allocations(instance.with_target(pi), kind, budget)
    opt_rho = optimal_allocations(instance.with_target(rho), kind, budget)

    def seats_of(opt, alloc):
        return opt.seat_counts(instance, alloc)[i][j]

    lowest_rho = min(opt_rho.allocations, key=lambda a: seats_of(opt_rho, a))
    floor_rho = seats_of(opt_rho, lowest_rho)
    details = {"optima_pi": len(opt_pi.allocations), "optima_rho": len(opt_rho.allocations),
               "loss_pi": opt_pi.loss, "loss_rho": opt_rho.loss}
    for a in opt_pi.allocations:
        if seats_of(opt_pi, a) < floor_rho:
            witness = {
                "committee_pi": _committee_names(instance, opt_pi, a),
                "share_pi": Fraction(seats_of(opt_pi, a), instance.k),
                "committee_rho": _committee_names(instance, opt_rho, lowest_rho),
                "min_share_rho": Fraction(floor_rho, instance.k),
            }
            return ProbeResult(False, witness, details)
    return ProbeResult(True, None, details)


def house_monotonicity_probe(instance: Instance, target: TargetDistribution, k: int, k2: int, kind,
                             fractional: bool = False, budget: int = DEFAULT_BUDGET) -> ProbeResult:
    """Growing the house from k to k2 seats must not take seats away from any value.

    Holds iff every optimum at ``k`` is dominated, value by value, by some
    optimum at ``k2``.  Seat counts are compared by default; ``fractional``
    compares shares r_i^j instead.
    """
    kind = LossKind.parse(kind)
    m = instance.db.m
    if not k < k2 <= m:
        raise PreconditionError(f"need k < k2 <= m, got k={k}, k2={k2}, m={m}")
    small = instance.with_target(target).with_k(k)
    large = instance.with_target(target).with_k(k2)
    opt_k = optimal_allocations(small, kind, budget)
    opt_k2 = optimal_allocations(large, kind, budget)

    def profile(inst, opt, alloc):
        seats = opt.seat_counts(inst, alloc)
        if fractional:
            return [Fraction(s, inst.k) for row in seats for s in row]
        return [s for row in seats for s in row]

    bigs = [profile(large, opt_k2, b) for b in opt_k2.allocations]
    details = {"optima_k": len(opt_k.allocations), "optima_k2": len(opt_k2.allocations)}
    for a in opt_k.allocations:
        pa = profile(small, opt_k, a)
        if not any(all(x >= y for x, y in zip(pb, pa)) for pb in bigs):
            witness = {
                "committee_k": _committee_names(small, opt_k, a),
                "seats_k": opt_k.seat_counts(small, a),
                "optima_k2_seats": [opt_k2.seat_counts(large, b) for b in opt_k2.allocations],
            }
            return ProbeResult(False, witness, details)
    return ProbeResult(True, None, details)


def single_attribute_instance(votes, k: int, supply: int | None = None) -> Instance:
    """Party-list instance: one attribute, ``supply`` candidates per party (default k)."""
    supply = supply if supply is not None else k
    labels = tuple(f"P{j + 1}" for j in range(len(votes)))
    schema = AttributeSchema.from_pairs([("party", labels)])
    rows = [(f"{lab}.{s + 1}", (j,)) for j, lab in enumerate(labels) for s in range(supply)]
    total = sum(votes)
    target = TargetDistribution(((tuple(Fraction(v, total) for v in votes)),))
    return Instance(CandidateDatabase.from_rows(schema, rows), target, k)


def search_alabama_paradox(max_parties: int = 4, max_k: int = 12, max_votes: int = 12,
                           kind=LossKind.L1):
    """Look for a vote vector where one more seat costs some party a seat.

    Scans vote vectors (nondecreasing, entries ``1..max_votes``) with 3 to
    ``max_parties`` parties and house sizes ``k < k+1 <= max_k``; returns
    ``(votes, k, ProbeResult)`` for the first violation found, else None.
    """
    for parties in range(3, max_parties + 1):
        for votes in itertools.combinations_with_replacement(range(1, max_votes + 1), parties):
            for k in range(1, max_k):
                inst = single_attribute_instance(votes, k + 1)
                res = house_monotonicity_probe(inst, inst.target, k, k + 1, kind)
                if not res.holds:
                    return votes, k, res
    return None
