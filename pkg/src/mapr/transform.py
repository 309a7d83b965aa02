"""Expansion of an instance into one binary indicator attribute per value."""

from __future__ import annotations

from fractions import Fraction

from mapr.model import (
    Attribute,
    AttributeSchema,
    Candidate,
    CandidateDatabase,
    Instance,
    LossKind,
    RepresentationVector,
    TargetDistribution,
    loss,
    representation_vector,
)

BINARY_LABELS = ("0", "1")


def indicator_name(attribute: Attribute, j: int) -> str:
    return f"{attribute.name}={attribute.values[j]}"


def to_binary(instance: Instance):
    """Return ``(binary_instance, mapping)``.

    Binary attribute ``X_ij`` is 1 exactly when the candidate has value j
    on attribute i; its target is ``(1 - pi_i^j, pi_i^j)``.  ``mapping[c]``
    gives the new index of candidate ``c`` (always the identity).
    """
    schema = instance.schema
    attrs, rows = [], []
    for i, attr in enumerate(schema):
        for j in range(attr.size):
            attrs.append(Attribute(indicator_name(attr, j), BINARY_LABELS))
            share = instance.target[i][j]
            rows.append((1 - share, share))
    new_schema = AttributeSchema(tuple(attrs))
    cands = []
    for c in instance.db.candidates:
        bits = tuple(int(c.values[i] == j) for i, attr in enumerate(schema) for j in range(attr.size))
        cands.append(Candidate(c.name, bits))
    db = CandidateDatabase(new_schema, tuple(cands))
    mapping = tuple(range(instance.db.m))
    return Instance(db, TargetDistribution(tuple(rows)), instance.k), mapping


def restrict_representation(binary_r: RepresentationVector, schema: AttributeSchema) -> RepresentationVector:
    """Recover the original representation vector from the indicator shares."""
    rows, pos = [], 0
    for attr in schema:
        rows.append(tuple(binary_r[pos + j][1] for j in range(attr.size)))
        pos += attr.size
    return RepresentationVector(tuple(rows), binary_r.k)


def verify_transform_identities(instance: Instance, committee):
    """Compare losses of ``committee`` before and after :func:`to_binary`.

    Returns ``(l1_ratio, l1max_ratio, max_equal)``.  On a zero-loss committee
    the ratios are reported as 2 and 1 respectively.
    """
    binary, mapping = to_binary(instance)
    r_old = representation_vector(instance.db, committee)
    r_new = representation_vector(binary.db, [mapping[c] for c in committee])
    old = {kind: loss(kind, instance.target, r_old) for kind in LossKind}
    new = {kind: loss(kind, binary.target, r_new) for kind in LossKind}
    l1 = new[LossKind.L1] / old[LossKind.L1] if old[LossKind.L1] else Fraction(2)
    l1max = new[LossKind.L1MAX] / old[LossKind.L1MAX] if old[LossKind.L1MAX] else Fraction(1)
    return l1, l1max, new[LossKind.LMAX] == old[LossKind.LMAX]
