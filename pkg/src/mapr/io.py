"""Instance file format (JSON) and machine-readable report rendering.

An instance file is a JSON object with exactly the keys ``attributes``,
``candidates``, ``target`` and ``k``::

    {
      "attributes": [{"name": "sex", "values": ["F", "M"]}, ...],
      "candidates": [{"name": "Ann", "values": ["F", ...]}, ...],
      "target": {"sex": {"F": "1/2", "M": "0.5"}, ...},
      "k": 4
    }

Target shares are strings, either ``"num/den"`` or a decimal such as
``"0.55"``; JSON numbers are refused so that no binary float ever reaches
the exact pipeline.
"""

from __future__ import annotations

import enum
import json
import re
from fractions import Fraction
from typing import Any

from mapr.errors import MaprError, SchemaError
from mapr.model import (
    AttributeSchema,
    Candidate,
    CandidateDatabase,
    Instance,
    TargetDistribution,
    loss,
    representation_vector,
)

SCHEMA_VERSION = 1

_FRACTION = re.compile(r"^-?\d+/\d+$")
_DECIMAL = re.compile(r"^-?(\d+(\.\d*)?|\.\d+)$")


class InstanceFormatError(SchemaError):
    """Malformed instance file; ``where`` locates the problem."""

    def __init__(self, where: str, message: str):
        super().__init__(f"{where}: {message}")
        self.where = where


def parse_rational(text, where: str = "value") -> Fraction:
    if not isinstance(text, str):
        raise InstanceFormatError(where, f"rational must be a string like \"3/10\" or \"0.3\", got {text!r}")
    s = text.strip()
    if _FRACTION.match(s):
        num, den = s.split("/")
        if int(den) == 0:
            raise InstanceFormatError(where, "zero denominator")
        return Fraction(int(num), int(den))
    if _DECIMAL.match(s):
        return Fraction(s)
    raise InstanceFormatError(where, f"not a rational: {text!r}")


def format_rational(x) -> str:
    return str(Fraction(x))


def _expect(obj, kind, where):
    if not isinstance(obj, kind) or isinstance(obj, bool):
        names = {dict: "object", list: "array", str: "string", int: "integer"}
        raise InstanceFormatError(where, f"expected {names.get(kind, kind.__name__)}, got {type(obj).__name__}")
    return obj


def _exact_keys(obj: dict, keys: tuple, where: str):
    extra = [k for k in obj if k not in keys]
    if extra:
        raise InstanceFormatError(where, f"unknown field {extra[0]!r}")
    missing = [k for k in keys if k not in obj]
    if missing:
        raise InstanceFormatError(where, f"missing field {missing[0]!r}")


def instance_from_dict(doc) -> Instance:
    _expect(doc, dict, "$")
    _exact_keys(doc, ("attributes", "candidates", "target", "k"), "$")

    attrs = _expect(doc["attributes"], list, "attributes")
    pairs = []
    for n, a in enumerate(attrs):
        w = f"attributes[{n}]"
        _expect(a, dict, w)
        _exact_keys(a, ("name", "values"), w)
        name = _expect(a["name"], str, w + ".name")
        labels = _expect(a["values"], list, w + ".values")
        for v, lab in enumerate(labels):
            _expect(lab, str, f"{w}.values[{v}]")
        pairs.append((name, tuple(labels)))
    try:
        schema = AttributeSchema.from_pairs(pairs)
    except SchemaError as e:
        raise InstanceFormatError("attributes", str(e)) from None

    cands = []
    for n, c in enumerate(_expect(doc["candidates"], list, "candidates")):
        w = f"candidates[{n}]"
        _expect(c, dict, w)
        _exact_keys(c, ("name", "values"), w)
        name = _expect(c["name"], str, w + ".name")
        labels = _expect(c["values"], list, w + ".values")
        if len(labels) != schema.p:
            raise InstanceFormatError(w + ".values", f"expected {schema.p} labels, got {len(labels)}")
        idx = []
        for i, lab in enumerate(labels):
            lw = f"{w}.values[{i}]"
            _expect(lab, str, lw)
            if lab not in schema[i].values:
                raise InstanceFormatError(lw, f"{lab!r} is not a value of attribute {schema[i].name!r}")
            idx.append(schema[i].values.index(lab))
        cands.append(Candidate(name, tuple(idx)))
    try:
        db = CandidateDatabase(schema, tuple(cands))
    except SchemaError as e:
        raise InstanceFormatError("candidates", str(e)) from None

    target_doc = _expect(doc["target"], dict, "target")
    names = tuple(a.name for a in schema)
    _exact_keys(target_doc, names, "target")
    rows = []
    for a in schema:
        w = f"target[{a.name!r}]"
        row_doc = _expect(target_doc[a.name], dict, w)
        _exact_keys(row_doc, a.values, w)
        rows.append(tuple(parse_rational(row_doc[lab], f"{w}[{lab!r}]") for lab in a.values))
    try:
        target = TargetDistribution(tuple(rows))
    except SchemaError as e:
        raise InstanceFormatError("target", str(e)) from None

    k = _expect(doc["k"], int, "k")
    try:
        return Instance(db, target, k)
    except MaprError as e:
        raise InstanceFormatError("k", str(e)) from None


def parse_instance(text: str) -> Instance:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise InstanceFormatError(f"line {e.lineno} column {e.colno}", e.msg) from None
    return instance_from_dict(doc)


def instance_to_dict(instance: Instance) -> dict:
    schema = instance.schema
    return {
        "attributes": [{"name": a.name, "values": list(a.values)} for a in schema],
        "candidates": [
            {"name": c.name, "values": [schema[i].values[v] for i, v in enumerate(c.values)]}
            for c in instance.db.candidates
        ],
        "target": {
            a.name: {lab: format_rational(x) for lab, x in zip(a.values, row)}
            for a, row in zip(schema, instance.target)
        },
        "k": instance.k,
    }


def dumps(doc) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def serialize_instance(instance: Instance) -> str:
    return dumps(instance_to_dict(instance))


def jsonable(x) -> Any:
    """Make trace data JSON-safe: rationals become strings, tuples become lists."""
    if isinstance(x, Fraction):
        return format_rational(x)
    if isinstance(x, enum.Enum):
        return x.value
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, frozenset, set)):
        items = [jsonable(v) for v in x]
        return sorted(items) if isinstance(x, (set, frozenset)) else items
    if hasattr(x, "item") and not isinstance(x, (str, bytes)):
        return x.item()
    return x


def representation_table(instance: Instance, committee) -> list[dict]:
    r = representation_vector(instance.db, committee)
    out = []
    for a, rr, tt in zip(instance.schema, r, instance.target):
        out.append({
            "attribute": a.name,
            "values": [
                {"value": lab, "seats": int(x * instance.k), "representation": format_rational(x),
                 "target": format_rational(t)}
                for lab, x, t in zip(a.values, rr, tt)
            ],
        })
    return out


def solve_report_to_dict(instance: Instance, report) -> dict:
    doc = {
        "schema_version": SCHEMA_VERSION,
        "command": "solve",
        "algorithm": report.algorithm,
        "loss_kind": report.kind.value if report.kind is not None else None,
        "status": "ok" if report.feasible else "infeasible",
        "seed": report.seed,
        "truncated": report.truncated,
        "loss": format_rational(report.loss) if report.loss is not None else None,
        "committees": [instance.db.names(c) for c in report.committees],
    }
    if report.committee is not None:
        doc["representation"] = representation_table(instance, report.committee)
        if report.kind is not None:
            # recomputed from scratch so the report cannot disagree with the model
            doc["loss_check"] = format_rational(loss(report.kind, instance.target,
                                                     representation_vector(instance.db, report.committee)))
    doc["trace"] = jsonable(report.trace)
    return doc
