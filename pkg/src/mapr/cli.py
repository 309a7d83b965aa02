"""Command-line front end.

Every subcommand prints one JSON report to stdout.  Exit codes: 0 success
or property holds, 1 semantic negative (infeasible, violated), 2 usage or
input error.
"""

from __future__ import annotations

import argparse
import sys

from mapr import catalog, generators
from mapr.apportionment import QuotaKind, ideal_seats, largest_remainder
from mapr.axioms import (
    check_non_reversal,
    check_quota,
    house_monotonicity_probe,
    population_monotonicity_probe,
    shift_target,
)
from mapr.errors import MaprError, OverAllocationError, ResourceError
from mapr.io import (
    SCHEMA_VERSION,
    InstanceFormatError,
    dumps,
    format_rational,
    jsonable,
    parse_instance,
    parse_rational,
    serialize_instance,
    solve_report_to_dict,
)
from mapr.model import LossKind, representation_vector
from mapr.solvers import (
    brute_force,
    local_search,
    optimal_allocations,
    perfect_committee,
    solve_buckets_optimal,
    solve_full_supply,
)
from mapr.solvers.brute import DEFAULT_BUDGET
from mapr.solvers.buckets import DEFAULT_NODE_BUDGET
from mapr.transform import to_binary

EXIT_OK, EXIT_NEGATIVE, EXIT_ERROR = 0, 1, 2
DEFAULT_MAX_ALL = 1000


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(f"{self.prog}: {message}")


def _read_instance(path: str):
    try:
        if path == "-":
            text = sys.stdin.read()
        else:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as e:
        raise InstanceFormatError(path, e.strerror or str(e)) from None
    except UnicodeDecodeError as e:
        raise InstanceFormatError(f"{path} byte {e.start}", "not valid UTF-8") from None
    try:
        return parse_instance(text)
    except InstanceFormatError as e:
        raise InstanceFormatError(f"{path}: {e.where}", str(e).split(": ", 1)[-1]) from None


def _emit(doc) -> None:
    sys.stdout.write(dumps(doc))


def _cmd_solve(args) -> int:
    inst = _read_instance(args.file)
    kind = LossKind.parse(args.loss)
    budget = args.budget
    if args.algo == "brute":
        rep = brute_force(inst, kind, want_all=args.all, budget=budget or DEFAULT_BUDGET,
                          max_committees=args.max_all if args.all else None)
    elif args.algo == "fs":
        rep = solve_full_supply(inst, kind)
    elif args.algo == "local":
        initial = None
        if args.initial:
            initial = inst.db.committee(n.strip() for n in args.initial.split(","))
        rep = local_search(inst, kind, l=args.l, seed=args.seed, initial=initial, max_iter=args.max_iter)
    elif args.algo == "buckets":
        rep = solve_buckets_optimal(inst, kind, budget=budget or DEFAULT_NODE_BUDGET)
    else:
        rep = perfect_committee(inst, budget=budget or DEFAULT_NODE_BUDGET)
    doc = solve_report_to_dict(inst, rep)
    if args.plot and rep.committee is not None:
        from mapr.plotting import plot_representation

        title = f"{rep.algorithm} / {kind.value}: loss {format_rational(rep.loss)}" if rep.loss is not None else None
        plot_representation(inst, rep.committee, args.plot, title)
        doc["plot"] = args.plot
    _emit(doc)
    return EXIT_OK if rep.feasible else EXIT_NEGATIVE


def _parse_weights(text: str):
    out = []
    for n, part in enumerate(text.split(",")):
        out.append(parse_rational(part.strip(), f"weights[{n}]"))
    return out


def _cmd_apportion(args) -> int:
    weights = _parse_weights(args.weights)
    quota = QuotaKind.parse(args.quota)
    doc = {"schema_version": SCHEMA_VERSION, "command": "apportion", "quota": quota.value, "k": args.k,
           "weights": [format_rational(w) for w in weights]}
    try:
        canonical, tied = largest_remainder(weights, args.k, quota)
    except OverAllocationError as e:
        doc.update(status="over_allocation", message=str(e),
                   ideal_seats=[format_rational(x) for x in ideal_seats(weights, args.k, quota)])
        _emit(doc)
        return EXIT_NEGATIVE
    doc.update(status="ok",
               ideal_seats=[format_rational(x) for x in ideal_seats(weights, args.k, quota)],
               seats=list(canonical), all_tied=sorted(list(t) for t in tied))
    _emit(doc)
    return EXIT_OK


def _committees_to_audit(inst, kind, args):
    if args.committee:
        return [inst.db.committee(n.strip() for n in args.committee.split(","))]
    opt = optimal_allocations(inst, kind, budget=args.budget or DEFAULT_BUDGET)
    return [opt.table.materialize(a) for a in opt.allocations]


def _cmd_axioms(args) -> int:
    inst = _read_instance(args.file)
    kind = LossKind.parse(args.loss)
    doc = {"schema_version": SCHEMA_VERSION, "command": "axioms", "check": args.check, "loss_kind": kind.value}
    budget = args.budget or DEFAULT_BUDGET
    if args.check in ("nonreversal", "quota"):
        audited = []
        for committee in _committees_to_audit(inst, kind, args):
            r = representation_vector(inst.db, committee)
            if args.check == "nonreversal":
                found = [{"attribute": inst.schema[i].name, "higher_target": inst.schema[i].values[j],
                          "lower_target": inst.schema[i].values[j2]} for i, j, j2 in check_non_reversal(r, inst.target)]
            else:
                found = [{"attribute": inst.schema[i].name, "value": inst.schema[i].values[j]}
                         for i, j in check_quota(r, inst.target, inst.k)]
            audited.append({"committee": inst.db.names(committee), "violations": found})
        holds = all(not a["violations"] for a in audited)
        doc.update(holds=holds, committees=audited)
    elif args.check == "popmono":
        if args.attribute is None or args.value is None or args.rho_share is None:
            raise _UsageError("popmono needs --attribute, --value and --rho-share")
        i = inst.schema.index_of(args.attribute)
        j = inst.schema.value_index(i, args.value)
        rho = shift_target(inst.target, i, j, parse_rational(args.rho_share, "--rho-share"))
        res = population_monotonicity_probe(inst, inst.target, rho, i, j, kind, budget=budget)
        doc.update(holds=res.holds, witness=jsonable(res.witness), details=jsonable(res.details),
                   rho={a.name: [format_rational(x) for x in row] for a, row in zip(inst.schema, rho)})
    else:
        if args.k2 is None:
            raise _UsageError("housemono needs --k2")
        res = house_monotonicity_probe(inst, inst.target, inst.k, args.k2, kind,
                                       fractional=args.fractional, budget=budget)
        doc.update(holds=res.holds, witness=jsonable(res.witness), details=jsonable(res.details))
    doc["status"] = "holds" if doc["holds"] else "violated"
    _emit(doc)
    return EXIT_OK if doc["holds"] else EXIT_NEGATIVE


def _int_list(text: str, where: str):
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError:
        raise InstanceFormatError(where, f"expected comma-separated integers, got {text!r}") from None


def _cmd_gen(args) -> int:
    kind = args.kind
    if kind.startswith("paper:"):
        name = kind.split(":", 1)[1]
        if name not in catalog.CATALOG_NAMES:
            raise _UsageError(f"unknown catalog instance {name!r}; known: {', '.join(catalog.CATALOG_NAMES)}")
        inst = catalog.get(name)
    elif kind == "x3c":
        if args.universe is None or args.sets is None:
            raise _UsageError("x3c needs --universe and --sets")
        sets = [_int_list(s, "--sets") for s in args.sets.split(";") if s.strip()]
        inst = generators.from_x3c(args.universe, sets)
    elif kind == "perfectcode":
        if args.vertices is None or args.k is None:
            raise _UsageError("perfectcode needs --vertices and --k")
        edges = []
        for part in (args.edges or "").split(","):
            if part.strip():
                u, _, v = part.strip().partition("-")
                edges.append((int(u), int(v)))
        inst = generators.from_perfect_code(args.vertices, edges, args.k)
    elif kind == "random":
        if args.p is None or args.m is None or args.k is None:
            raise _UsageError("random needs --p, --m and --k")
        sizes = _int_list(args.q, "--q")
        sizes = sizes[0] if len(sizes) == 1 else sizes
        inst = generators.random_instance(args.p, sizes, args.m, args.k, args.seed, ensure_fs=args.ensure_fs,
                                          natural_targets=args.natural, plant_perfect=args.plant)
    else:
        raise _UsageError(f"unknown generator {kind!r}")
    sys.stdout.write(serialize_instance(inst))
    return EXIT_OK


def _cmd_transform(args) -> int:
    inst = _read_instance(args.file)
    binary, _ = to_binary(inst)
    sys.stdout.write(serialize_instance(binary))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="mapr", description="Multi-attribute proportional representation toolkit.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("solve", help="find a committee")
    s.add_argument("file", help="instance JSON file, or - for stdin")
    s.add_argument("--loss", default="l1", choices=[k.value for k in LossKind])
    s.add_argument("--algo", default="brute", choices=["brute", "fs", "local", "buckets", "perfect"])
    s.add_argument("--l", type=int, default=1, help="local search swap radius")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--initial", help="comma-separated candidate names to start local search from")
    s.add_argument("--max-iter", type=int, default=None)
    s.add_argument("--all", action="store_true", help="report every optimum (brute force)")
    s.add_argument("--max-all", type=int, default=DEFAULT_MAX_ALL, help="cap on reported optima")
    s.add_argument("--budget", type=int, default=None, help="search budget (committees or nodes)")
    s.add_argument("--plot", metavar="PATH", help="write a representation-vs-target bar chart")
    s.set_defaults(func=_cmd_solve)

    a = sub.add_parser("apportion", help="largest-remainder seat allocation")
    a.add_argument("--weights", required=True, help='comma-separated votes or shares, e.g. "0.55,0.25,0.2"')
    a.add_argument("--k", type=int, required=True)
    a.add_argument("--quota", default="hare", choices=[q.value for q in QuotaKind])
    a.set_defaults(func=_cmd_apportion)

    x = sub.add_parser("axioms", help="audit apportionment properties")
    x.add_argument("file")
    x.add_argument("--check", required=True, choices=["nonreversal", "quota", "popmono", "housemono"])
    x.add_argument("--loss", default="l1", choices=[k.value for k in LossKind])
    x.add_argument("--committee", help="audit this committee instead of every optimum")
    x.add_argument("--attribute")
    x.add_argument("--value")
    x.add_argument("--rho-share", help="lowered target share for popmono")
    x.add_argument("--k2", type=int)
    x.add_argument("--fractional", action="store_true", help="housemono compares shares, not seats")
    x.add_argument("--budget", type=int, default=None)
    x.set_defaults(func=_cmd_axioms)

    g = sub.add_parser("gen", help="write a generated instance to stdout")
    g.add_argument("kind", help="x3c | perfectcode | random | paper:<name>")
    g.add_argument("--universe", type=int)
    g.add_argument("--sets", help='3-sets separated by ";", e.g. "1,2,3;4,5,6"')
    g.add_argument("--vertices", type=int)
    g.add_argument("--edges", help='e.g. "0-1,1-2"')
    g.add_argument("--k", type=int)
    g.add_argument("--p", type=int)
    g.add_argument("--q", default="2", help="domain size, or comma-separated sizes")
    g.add_argument("--m", type=int)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--ensure-fs", action="store_true")
    g.add_argument("--natural", action="store_true")
    g.add_argument("--plant", action="store_true")
    g.set_defaults(func=_cmd_gen)

    t = sub.add_parser("transform", help="binary-domain transform of an instance")
    t.add_argument("file")
    t.set_defaults(func=_cmd_transform)
    return p


def run(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except _UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
    except InstanceFormatError as e:
        print(f"input error: {e}", file=sys.stderr)
    except ResourceError as e:
        print(f"budget exceeded: {e} (raise --budget to search further)", file=sys.stderr)
    except (MaprError, KeyError) as e:
        print(f"error: {e}", file=sys.stderr)
    return EXIT_ERROR


def main() -> None:
    sys.exit(run())
