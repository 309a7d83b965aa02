"""Named catalog of small worked instances (examples and counterexamples)."""

from __future__ import annotations

import itertools
from fractions import Fraction as F

from mapr.model import AttributeSchema, CandidateDatabase, Instance, TargetDistribution

BINARY = ("0", "1")


def _instance(attributes, rows, target, k) -> Instance:
    schema = AttributeSchema.from_pairs(attributes)
    return Instance(CandidateDatabase.from_rows(schema, rows), TargetDistribution(target), k)


def intro(k: int = 4) -> Instance:
    """Recruiting-committee example: 10 researchers, 4 attributes."""
    attributes = [
        ("sex", ("F", "M")),
        ("group", ("A", "B", "C")),
        ("age", ("J", "S")),
        ("affiliation", ("L", "E")),
    ]
    rows = [
        ("Ann", ("F", "A", "J", "L")),
        ("Bob", ("M", "A", "J", "E")),
        ("Charlie", ("M", "A", "S", "L")),
        ("Donna", ("F", "B", "S", "E")),
        ("Ernest", ("M", "A", "S", "L")),
        ("George", ("M", "A", "S", "E")),
        ("Helena", ("F", "B", "S", "E")),
        ("John", ("M", "B", "J", "E")),
        ("Kevin", ("M", "C", "J", "E")),
        ("Laura", ("F", "C", "J", "L")),
    ]
    target = [
        (F(1, 2), F(1, 2)),
        (F(55, 100), F(25, 100), F(20, 100)),
        (F(3, 10), F(7, 10)),
        (F(3, 10), F(7, 10)),
    ]
    return _instance(attributes, rows, target, k)


def differ_1() -> Instance:
    """Three binary attributes where L1 and Lmax optima are disjoint (k=2)."""
    attributes = [(f"X{i}", BINARY) for i in (1, 2, 3)]
    rows = [("A", (1, 0, 0)), ("B", (1, 0, 0)), ("C", (0, 1, 1)), ("D", (0, 1, 1))]
    target = [(F(0), F(1))] * 3
    return _instance(attributes, rows, target, 2)


def differ_2() -> Instance:
    """Same data as differ-1, read for L1max against Lmax (binary: L1 = 2 L1max)."""
    return differ_1()


def differ_3() -> Instance:
    """A 4-valued attribute makes L1 and L1max optima disjoint (k=2)."""
    attributes = [("X1", ("1", "2", "3", "4")), ("X2", ("1", "2"))]
    rows = [("A", (0, 1)), ("B", (1, 1)), ("C", (2, 0)), ("D", (3, 0))]
    target = [(F(1, 2), F(1, 2), F(0), F(0)), (F(9, 10), F(1, 10))]
    return _instance(attributes, rows, target, 2)


def differ_4() -> Instance:
    """Two binary attributes where the Lmax optima are a strict subset of the L1 optima."""
    attributes = [("X1", ("1", "2")), ("X2", ("1", "2"))]
    rows = [("A", (0, 0)), ("B", (0, 0)), ("C", (1, 1))]
    target = [(F(1), F(0)), (F(0), F(1))]
    return _instance(attributes, rows, target, 2)


def quota_cx() -> Instance:
    attributes = [("X1", ("1", "2")), ("X2", ("1", "2"))]
    rows = [("a", (1, 1)), ("b", (0, 0))]
    target = [(F(0), F(1)), (F(1), F(0))]
    return _instance(attributes, rows, target, 1)


def nonreversal_cx() -> Instance:
    attributes = [("X1", ("1", "2")), ("X2", ("1", "2"))]
    rows = [(n, (0, 0)) for n in "abc"] + [(n, (1, 1)) for n in "def"]
    target = [(F(35, 100), F(65, 100)), (F(1), F(0))]
    return _instance(attributes, rows, target, 3)


def _ilp(counts) -> Instance:
    vectors = [(0, 0), (1, 0), (0, 1), (1, 1)]
    rows = []
    for n, (vec, c) in enumerate(zip(vectors, counts), start=1):
        rows += [(f"v{n}.{i + 1}", vec) for i in range(c)]
    target = [(F(1, 5), F(4, 5)), (F(3, 5), F(2, 5))]
    return _instance([("X1", BINARY), ("X2", BINARY)], rows, target, 5)


def ilp_feasible() -> Instance:
    return _ilp((4, 2, 2, 2))


def ilp_infeasible() -> Instance:
    return _ilp((5, 2, 2, 1))


def ls1_lower_bound() -> Instance:
    """Single swaps get stuck at loss (2/3)|X| when started at {a1, a2}; {b1, b2} is perfect."""
    rows = [("a1", (1, 1, 1)), ("a2", (0, 0, 1)), ("b1", (1, 0, 0)), ("b2", (0, 1, 0))]
    half = (F(1, 2), F(1, 2))
    target = [half, half, (F(1), F(0))]
    return _instance([(f"X{i + 1}", BINARY) for i in range(3)], rows, target, 2)


LS2_TABLE = {
    "a": (1, 0, 1, 1, 0, 0, 1),
    "a'": (0, 1, 0, 0, 1, 1, 1),
    "b": (0, 0, 0, 0, 0, 0, 0),
    "b'": (0, 0, 1, 1, 1, 1, 0),
    "c": (1, 1, 1, 1, 0, 0, 0),
    "c'": (1, 1, 0, 0, 1, 1, 0),
}


def ls2_lower_bound(copies: int = 2) -> Instance:
    """Seven binary attributes; double swaps get stuck at loss (2/7)|X| with k=4.

    Each of the six candidate types appears ``copies`` times as ``type.n``.
    """
    rows = [(f"{name}.{n + 1}", vec) for name, vec in LS2_TABLE.items() for n in range(copies)]
    half = (F(1, 2), F(1, 2))
    target = [half] * 6 + [(F(1), F(0))]
    return _instance([(f"X{i + 1}", BINARY) for i in range(7)], rows, target, 4)


def fs_illustration() -> Instance:
    """Full-supply database whose Hamilton seats are (2,0,2) and (3,1) for k=4."""
    attributes = [("X1", ("1", "2", "3")), ("X2", ("1", "2"))]
    rows = []
    for v1, v2 in itertools.product(range(3), range(2)):
        rows += [(f"x{v1 + 1}{v2 + 1}.{n + 1}", (v1, v2)) for n in range(4)]
    target = [(F(1, 2), F(0), F(1, 2)), (F(3, 4), F(1, 4))]
    return _instance(attributes, rows, target, 4)


def popmono_cx(lam: int = 1, eps=F(1, 16), lowered: bool = False) -> Instance:
    """Population-monotonicity counterexample for L1 (reduced: ``lam`` attributes per group).

    One 5-valued attribute plus 8x8 groups of ``lam`` binary attributes;
    16 candidates A1..A8, B1..B8, k=8.  The stored target gives value 1 of
    X1 the share 1/4; ``lowered=True`` gives the target where that share is
    0 and the rest is rescaled.  Under the higher target the B-committee is
    the unique optimum, under the lower one the A-committee, so lowering the
    share raises its representation.  ``lam=1`` already makes every mixed
    committee worse than both (at least 14 groups off target).
    """
    eps = F(eps)
    x1_a = [0] * 4 + [2] * 4
    x1_b = [0, 0, 1, 1, 2, 2, 3, 4]
    attributes = [("X1", ("1", "2", "3", "4", "5"))]
    groups = [(g, h) for g in range(8) for h in range(8)]
    for g, h in groups:
        attributes += [(f"G{g + 1}{h + 1}.{n + 1}", BINARY) for n in range(lam)]
    rows = []
    for n in range(8):
        bits = tuple(int(g == n) for g, h in groups for _ in range(lam))
        rows.append((f"A{n + 1}", (x1_a[n],) + bits))
    for n in range(8):
        bits = tuple(int(h == n) for g, h in groups for _ in range(lam))
        rows.append((f"B{n + 1}", (x1_b[n],) + bits))
    low = (F(0), F(0), F(3, 8) + eps, F(5, 8) - eps, F(0))
    high = (F(1, 4),) + tuple(x * F(3, 4) for x in low[1:])
    binary = (F(7, 8), F(1, 8))
    target = [low if lowered else high] + [binary] * (64 * lam)
    return _instance(attributes, rows, target, 8)


_BUILDERS = {
    "intro": intro,
    "differ-1": differ_1,
    "differ-2": differ_2,
    "differ-3": differ_3,
    "differ-4": differ_4,
    "quota-cx": quota_cx,
    "nonreversal-cx": nonreversal_cx,
    "ilp-feasible": ilp_feasible,
    "ilp-infeasible": ilp_infeasible,
    "ls1-lb": ls1_lower_bound,
    "ls2-lb": ls2_lower_bound,
    "fs-illustration": fs_illustration,
    "popmono-cx": popmono_cx,
}

CATALOG_NAMES = tuple(_BUILDERS)


def paper_instances() -> dict[str, Instance]:
    return {name: build() for name, build in _BUILDERS.items()}


def get(name: str) -> Instance:
    try:
        return _BUILDERS[name]()
    except KeyError:
        raise KeyError(f"unknown catalog instance {name!r}; known: {', '.join(_BUILDERS)}") from None
