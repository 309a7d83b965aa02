"""Solvers that work on buckets: groups of candidates sharing one value vector.

A committee's representation vector only depends on how many members it
takes from each bucket, so searching over bucket counts ``b_i`` (with
``0 <= b_i <= a_i`` and ``sum b_i = k``) is exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from mapr.errors import ResourceError
from mapr.model import CandidateDatabase, Instance, LossKind, is_natural
from mapr.solvers.report import SolveReport
from mapr.solvers.scoring import Scorer

DEFAULT_NODE_BUDGET = 2_000_000


@dataclass(frozen=True)
class BucketTable:
    vectors: tuple[tuple[int, ...], ...]
    multiplicities: tuple[int, ...]
    members: tuple[tuple[int, ...], ...]

    def __len__(self):
        return len(self.vectors)

    def materialize(self, allocation) -> tuple[int, ...]:
        """Pick the lowest-index ``b_i`` candidates of every bucket."""
        chosen = []
        for b, mem in zip(allocation, self.members):
            chosen.extend(mem[:b])
        return tuple(sorted(chosen))


def build_buckets(db: CandidateDatabase) -> BucketTable:
    """Group candidates by value vector, in order of first appearance."""
    groups: dict[tuple[int, ...], list[int]] = {}
    for i, c in enumerate(db.candidates):
        groups.setdefault(c.values, []).append(i)
    return BucketTable(
        tuple(groups),
        tuple(len(v) for v in groups.values()),
        tuple(tuple(v) for v in groups.values()),
    )


def _flat_index(instance: Instance):
    offsets, pos = [], 0
    for q in instance.schema.sizes:
        offsets.append(pos)
        pos += q
    return offsets, pos


def perfect_allocation(instance: Instance, table: BucketTable | None = None, budget: int = DEFAULT_NODE_BUDGET):
    """Search bucket counts reproducing ``k * pi`` exactly.

    Returns ``(allocation or None, nodes)``; ``allocation`` is in table order.
    """
    table = table or build_buckets(instance.db)
    k = instance.k
    if not is_natural(instance.target, k):
        return None, 0
    offsets, P = _flat_index(instance)
    need = [int(x * k) for row in instance.target for x in row]
    cols = [tuple(offsets[a] + v for a, v in enumerate(vec)) for vec in table.vectors]
    t = len(table)
    # suffix[i][u]: candidates in buckets i.. having flattened value u
    suffix = [[0] * P for _ in range(t + 1)]
    for i in range(t - 1, -1, -1):
        suffix[i] = list(suffix[i + 1])
        for u in cols[i]:
            suffix[i][u] += table.multiplicities[i]

    failed: set = set()
    nodes = 0
    alloc = [0] * t

    def dfs(i: int) -> bool:
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise ResourceError(f"perfect-committee search exceeded {budget} nodes")
        if i == t:
            return not any(need)
        key = (i, tuple(need))
        if key in failed:
            return False
        col = cols[i]
        hi = min([table.multiplicities[i]] + [need[u] for u in col])
        nxt = suffix[i + 1]
        lo = max([0] + [need[u] - nxt[u] for u in col])
        for b in range(hi, lo - 1, -1):
            for u in col:
                need[u] -= b
            if all(need[u] <= nxt[u] for u in range(P)) and dfs(i + 1):
                alloc[i] = b
                return True
            for u in col:
                need[u] += b
        failed.add(key)
        return False

    found = dfs(0)
    return (tuple(alloc) if found else None), nodes


def perfect_committee(instance: Instance, budget: int = DEFAULT_NODE_BUDGET) -> SolveReport:
    """Find a committee whose representation equals the target, if one exists.

    Infeasibility is reported through ``feasible=False``, not an exception.
    """
    if not is_natural(instance.target, instance.k):
        return SolveReport((), None, "perfect", feasible=False,
                           trace={"nodes": 0, "reason": "target not natural for k"})
    table = build_buckets(instance.db)
    alloc, nodes = perfect_allocation(instance, table, budget)
    if alloc is None:
        return SolveReport((), None, "perfect", feasible=False,
                           trace={"nodes": nodes, "buckets": len(table), "reason": "no allocation"})
    return SolveReport((table.materialize(alloc),), Fraction(0), "perfect",
                       trace={"nodes": nodes, "buckets": len(table), "allocation": list(alloc)})


def solve_buckets_optimal(instance: Instance, kind, budget: int = DEFAULT_NODE_BUDGET) -> SolveReport:
    """Branch and bound over bucket counts for the exact optimum of ``kind``.

    Buckets are branched in order of decreasing multiplicity, largest count
    first.  A partial assignment can only add seats, so the seats already
    above target give an admissible bound on the final loss.
    """
    kind = LossKind.parse(kind)
    scorer = Scorer(instance, kind)
    table = build_buckets(instance.db)
    offsets, P = _flat_index(instance)
    L = scorer.L
    target = [int(x) for x in scorer.target]
    order = sorted(range(len(table)), key=lambda i: -table.multiplicities[i])
    cols = [tuple(offsets[a] + v for a, v in enumerate(table.vectors[i])) for i in order]
    mult = [table.multiplicities[i] for i in order]
    t = len(order)
    cap_after = [0] * (t + 1)
    for pos in range(t - 1, -1, -1):
        cap_after[pos] = cap_after[pos + 1] + mult[pos]
    bounds = list(zip(offsets, list(offsets[1:]) + [P]))

    def excess_bound(counts):
        ex = [max(counts[u] * L - target[u], 0) for u in range(P)]
        if kind is LossKind.L1:
            return 2 * sum(ex)
        if kind is LossKind.L1MAX:
            return sum(max(ex[a:b]) for a, b in bounds)
        return max(ex)

    def exact(counts):
        dev = [abs(counts[u] * L - target[u]) for u in range(P)]
        if kind is LossKind.L1:
            return sum(dev)
        if kind is LossKind.L1MAX:
            return sum(max(dev[a:b]) for a, b in bounds)
        return max(dev)

    best = [None, None]
    counts = [0] * P
    alloc = [0] * t
    nodes = 0

    def dfs(pos: int, remaining: int):
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise ResourceError(f"bucket branch-and-bound exceeded {budget} nodes")
        if best[0] is not None and excess_bound(counts) >= best[0]:
            return
        if remaining == 0:
            val = exact(counts)
            if best[0] is None or val < best[0]:
                best[0], best[1] = val, tuple(alloc)
            return
        if pos == t:
            return
        hi = min(mult[pos], remaining)
        lo = max(0, remaining - cap_after[pos + 1])
        col = cols[pos]
        for b in range(hi, lo - 1, -1):
            for u in col:
                counts[u] += b
            alloc[pos] = b
            dfs(pos + 1, remaining - b)
            for u in col:
                counts[u] -= b
            alloc[pos] = 0
            if best[0] == 0:
                return

    dfs(0, instance.k)
    by_table = [0] * t
    for pos, i in enumerate(order):
        by_table[i] = best[1][pos]
    committee = table.materialize(by_table)
    return SolveReport((committee,), scorer.fraction(best[0]), "buckets", kind,
                       trace={"nodes": nodes, "buckets": t, "allocation": by_table})
