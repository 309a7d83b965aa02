"""Instance construction: hardness reductions, random instances, worked examples."""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from mapr.errors import DomainError, ParameterError
from mapr.model import (
    AttributeSchema,
    Candidate,
    CandidateDatabase,
    Instance,
    TargetDistribution,
    representation_vector,
)

BINARY = ("0", "1")


def _unit_share_target(n_attributes: int, k: int) -> TargetDistribution:
    row = (1 - Fraction(1, k), Fraction(1, k))
    return TargetDistribution(tuple(row for _ in range(n_attributes)))


def from_x3c(universe_size: int, sets: Sequence[Iterable[int]]) -> Instance:
    """Perfect-committee instance for exact cover by 3-sets.

    Elements are ``1..universe_size``.  One binary attribute per element and
    one candidate per set; a perfect committee of size ``universe_size / 3``
    exists iff the sets admit an exact cover.
    """
    if universe_size < 3 or universe_size % 3:
        raise DomainError("universe size must be a positive multiple of 3")
    if not sets:
        raise DomainError("need at least one set")
    t = universe_size // 3
    rows = []
    for n, s in enumerate(sets):
        s = set(s)
        if len(s) != 3 or not all(isinstance(e, int) and 1 <= e <= universe_size for e in s):
            raise DomainError(f"set {n} must hold 3 distinct elements of 1..{universe_size}")
        rows.append(Candidate(f"S{n + 1}", tuple(int(e in s) for e in range(1, universe_size + 1))))
    if t > len(rows):
        raise DomainError(f"cover needs {t} sets but only {len(rows)} are given")
    schema = AttributeSchema.from_pairs((f"x{e}", BINARY) for e in range(1, universe_size + 1))
    return Instance(CandidateDatabase(schema, tuple(rows)), _unit_share_target(universe_size, t), t)


def from_perfect_code(vertices: Sequence, edges: Sequence[tuple], k: int) -> Instance:
    """Perfect-committee instance whose perfect committees are the size-k perfect codes.

    Every vertex is its own neighbour.  ``vertices`` is a list of labels or
    an int ``n`` meaning ``0..n-1``.
    """
    if isinstance(vertices, int):
        vertices = list(range(vertices))
    vertices = list(vertices)
    if not vertices:
        raise DomainError("graph has no vertices")
    if len(set(vertices)) != len(vertices):
        raise DomainError("duplicate vertex labels")
    pos = {v: n for n, v in enumerate(vertices)}
    adj = [{n} for n in range(len(vertices))]
    seen = set()
    for u, v in edges:
        if u not in pos or v not in pos:
            raise DomainError(f"edge ({u}, {v}) uses an unknown vertex")
        if u == v:
            raise DomainError(f"self-loop at {u}")
        key = frozenset((u, v))
        if key in seen:
            raise DomainError(f"multi-edge between {u} and {v}")
        seen.add(key)
        adj[pos[u]].add(pos[v])
        adj[pos[v]].add(pos[u])
    n = len(vertices)
    if not 1 <= k <= n:
        raise DomainError(f"code size k={k} outside 1..{n}")
    schema = AttributeSchema.from_pairs((f"N[{v}]", BINARY) for v in vertices)
    rows = tuple(Candidate(f"v{vertices[u]}", tuple(int(v in adj[u]) for v in range(n))) for u in range(n))
    return Instance(CandidateDatabase(schema, rows), _unit_share_target(n, k), k)


def _random_shares(rng, q: int) -> tuple[Fraction, ...]:
    w = [int(x) for x in rng.integers(1, 21, size=q)]
    total = sum(w)
    return tuple(Fraction(x, total) for x in w)


def random_instance(p: int, domain_sizes, m: int, k: int, seed: int, ensure_fs: bool = False,
                    natural_targets: bool | None = None, plant_perfect: bool = False) -> Instance:
    """Reproducible random instance.

    ``ensure_fs`` supplies ``k`` copies of every value vector first;
    ``natural_targets`` draws targets as multiples of 1/k; ``plant_perfect``
    samples a k-set and uses its representation vector as the target.
    """
    return random_instance_with_plant(p, domain_sizes, m, k, seed, ensure_fs,
                                      natural_targets, plant_perfect)[0]


def random_instance_with_plant(p, domain_sizes, m, k, seed, ensure_fs=False,
                               natural_targets=None, plant_perfect=False):
    """Same as :func:`random_instance`, also returning the planted committee (or None)."""
    if isinstance(domain_sizes, int):
        domain_sizes = [domain_sizes] * p
    domain_sizes = list(domain_sizes)
    if p < 1 or len(domain_sizes) != p or any(q < 2 for q in domain_sizes):
        raise ParameterError("need p >= 1 attributes with domain sizes >= 2")
    if not 1 <= k <= m:
        raise ParameterError(f"need 1 <= k <= m, got k={k}, m={m}")
    if plant_perfect and natural_targets is False:
        raise ParameterError("a planted perfect committee forces natural targets")
    rng = np.random.default_rng(seed)
    schema = AttributeSchema.from_pairs(
        (f"X{i + 1}", tuple(str(v) for v in range(q))) for i, q in enumerate(domain_sizes)
    )
    vectors = []
    if ensure_fs:
        full = list(itertools.product(*(range(q) for q in domain_sizes)))
        if m < k * len(full):
            raise ParameterError(f"full supply needs m >= {k * len(full)}")
        vectors = [v for v in full for _ in range(k)]
    while len(vectors) < m:
        vectors.append(tuple(int(rng.integers(q)) for q in domain_sizes))
    order = rng.permutation(m)
    cands = tuple(Candidate(f"c{n}", vectors[int(o)]) for n, o in enumerate(order))
    db = CandidateDatabase(schema, cands)
    planted = None
    if plant_perfect:
        planted = tuple(sorted(int(x) for x in rng.choice(m, size=k, replace=False)))
        target = TargetDistribution(representation_vector(db, planted).values)
    elif natural_targets:
        rows = []
        for q in domain_sizes:
            counts = np.bincount(rng.integers(q, size=k), minlength=q)
            rows.append(tuple(Fraction(int(c), k) for c in counts))
        target = TargetDistribution(tuple(rows))
    else:
        target = TargetDistribution(tuple(_random_shares(rng, q) for q in domain_sizes))
    return Instance(db, target, k), planted
