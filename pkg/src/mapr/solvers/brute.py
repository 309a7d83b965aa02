"""Exhaustive search, used as the reference oracle for every other solver."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from mapr.errors import ResourceError
from mapr.model import Instance, LossKind
from mapr.solvers.buckets import BucketTable, build_buckets
from mapr.solvers.report import SolveReport
from mapr.solvers.scoring import Scorer

DEFAULT_BUDGET = 5_000_000
# cap on elements materialised per vectorised block
_BLOCK_ELEMENTS = 2_000_000


def brute_force(instance: Instance, kind, want_all: bool = False,
                budget: int = DEFAULT_BUDGET, max_committees: int | None = None) -> SolveReport:
    """Minimise ``kind`` over all C(m, k) committees.

    With ``want_all`` every optimum is returned in lexicographic order, up to
    ``max_committees`` (then ``truncated`` is set).
    """
    kind = LossKind.parse(kind)
    m, k = instance.db.m, instance.k
    total = math.comb(m, k)
    if total > budget:
        raise ResourceError(f"brute force needs {total} committees, budget is {budget}")
    scorer = Scorer(instance, kind)
    rows = max(1, _BLOCK_ELEMENTS // (k * scorer.P))
    combos = itertools.combinations(range(m), k)
    best = None
    optima: list[tuple[int, ...]] = []
    truncated = False
    while True:
        flat = np.fromiter(itertools.chain.from_iterable(itertools.islice(combos, rows)), dtype=np.intp)
        if flat.size == 0:
            break
        block = flat.reshape(-1, k)
        vals = scorer.scaled(scorer.indicators[block].sum(axis=1))
        lo = vals.min()
        if best is not None and lo > best:
            continue
        if best is None or lo < best:
            best, optima, truncated = lo, [], False
        hits = np.flatnonzero(vals == best)
        if not want_all:
            if not optima:
                optima.append(tuple(int(x) for x in block[hits[0]]))
            continue
        for h in hits:
            if max_committees is not None and len(optima) >= max_committees:
                truncated = True
                break
            optima.append(tuple(int(x) for x in block[h]))
    return SolveReport(tuple(optima), scorer.fraction(best), "brute", kind,
                       trace={"nodes": total, "optima": len(optima)}, truncated=truncated)


@dataclass(frozen=True)
class AllocationOptima:
    """All loss-minimising bucket allocations of an instance."""

    loss: Fraction
    allocations: tuple[tuple[int, ...], ...]
    table: BucketTable
    enumerated: int

    def seat_counts(self, instance: Instance, allocation) -> tuple[tuple[int, ...], ...]:
        rows = [[0] * q for q in instance.schema.sizes]
        for b, vec in zip(allocation, self.table.vectors):
            for i, v in enumerate(vec):
                rows[i][v] += b
        return tuple(tuple(r) for r in rows)

    def committees(self):
        return [self.table.materialize(a) for a in self.allocations]


def _compositions(caps, total):
    """Yield every vector ``b`` with ``0 <= b_i <= caps[i]`` and ``sum b = total``."""
    n = len(caps)
    suffix = [0] * (n + 1)
    for i in range(n - 1, -1, -1):
        suffix[i] = suffix[i + 1] + caps[i]
    cur = [0] * n

    def rec(i, left):
        if i == n:
            if left == 0:
                yield tuple(cur)
            return
        for b in range(max(0, left - suffix[i + 1]), min(caps[i], left) + 1):
            cur[i] = b
            yield from rec(i + 1, left - b)
        cur[i] = 0

    if total <= suffix[0]:
        yield from rec(0, total)


def optimal_allocations(instance: Instance, kind, budget: int = DEFAULT_BUDGET) -> AllocationOptima:
    """Enumerate every bucket allocation and keep all optima.

    Equivalent to enumerating all committees up to the choice of which
    attribute-identical candidates fill a bucket, which leaves every
    representation vector unchanged.
    """
    kind = LossKind.parse(kind)
    scorer = Scorer(instance, kind)
    table = build_buckets(instance.db)
    vecs = np.zeros((len(table), scorer.P), dtype=scorer.dtype)
    for b, vec in enumerate(table.vectors):
        for i, v in enumerate(vec):
            vecs[b, scorer.offsets[i] + v] = scorer.L
    gen = _compositions(table.multiplicities, instance.k)
    rows = max(1, _BLOCK_ELEMENTS // max(len(table), scorer.P))
    best, optima, seen = None, [], 0
    while True:
        chunk = list(itertools.islice(gen, rows))
        if not chunk:
            break
        seen += len(chunk)
        if seen > budget:
            raise ResourceError(f"allocation enumeration exceeded {budget} allocations")
        arr = np.array(chunk, dtype=scorer.dtype)
        vals = scorer.scaled(arr.dot(vecs))
        lo = vals.min()
        if best is not None and lo > best:
            continue
        if best is None or lo < best:
            best, optima = lo, []
        optima.extend(chunk[h] for h in np.flatnonzero(vals == best))
    return AllocationOptima(scorer.fraction(best), tuple(optima), table, seen)
