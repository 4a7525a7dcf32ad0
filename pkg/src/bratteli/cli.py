"""Command-line front end.

Subcommands:

    analyze FILE                  full classification report
    member FILE --class I --value EXPR
    good FILE --class I
    enumerate FILE --class I --level N
    equal FILE_A --class-a I FILE_B --class-b J
    construct rational --q Q --lam L [--extra I]
    construct extend FILE --class I
    construct simplify FILE --class I

Diagram files use the JSON interchange format {"name"?, "incidence": [[...]]}.
Class ids are the topological indices reported by `analyze` (0-based).
Value expressions follow the grammar

    expr := term (('+'|'-') term)*
    term := rat | rat '*' pow | pow
    pow  := 'l' ('^' uint)?
    rat  := int ('/' uint)?

where `l` denotes the measure's Perron eigenvalue, e.g. "1/3", "2 - l",
"1/4*l^2 + 1/2".  Exit codes: 0 = computed answer (whatever the verdict),
2 = bad input (parse, validation, unknown class, precondition), 3 = a bounded
search or enumeration gave up.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .construct import (
    DEFAULT_COEFF_BOUND,
    DEFAULT_MAX_N,
    DEFAULT_MAX_R,
    ConstructionResult,
    build_rational_family,
    collapse_to_simple,
    count_minimal_components,
    extend_with_minimal_component,
    proper_minimal_count,
)
from .diagram import Diagram, decompose, load_diagram
from .errors import (
    DiagramValidationError,
    EnumerationBudgetError,
    FieldMismatchError,
    InfiniteMeasureError,
    SearchFailedError,
    SizeLimitError,
    UnsupportedDegreeError,
    UnsupportedOperationError,
    ValueExprError,
)
from .goodness import is_bernoulli_type, is_good, is_multiplicative, quotient_witness
from .measure import ErgodicMeasure, build_measure
from .values import enumerate_level_values, group_equal, member_value, parse_value

DEFAULT_ENUM_BUDGET = 10**6


# ---------------------------------------------------------------------------
# Report builders
# ---------------------------------------------------------------------------


def _class_record(cls):
    return {
        "id": cls.index,
        "vertices": [v + 1 for v in cls.vertices],
        "minpoly": cls.minpoly.to_string("t"),
        "perron_approx": cls.perron.approx_str(),
        "minimal": cls.is_minimal,
        "initial": cls.is_initial,
        "distinguished": cls.is_distinguished,
    }


def _lambda_record(mu: ErgodicMeasure):
    rec = {
        "minpoly": mu.field.minpoly.to_string("t"),
        "approx": mu.lam.approx_str(),
        "integer": mu.lam_int() if mu.is_rational else None,
    }
    if not mu.is_rational:
        root = mu.field.root
        rec["interval"] = [str(root.lo), str(root.hi)]
    return rec


def _measure_record(mu: ErgodicMeasure):
    xs = []
    for v in mu.support:
        e = mu.x_at(v)
        entry = {
            "vertex": v + 1,
            "coeffs": [str(c) for c in e.coeffs],
            "expr": e.to_expr_string(),
            "approx": e.approx_str(),
        }
        if mu.is_rational:
            entry["fraction"] = str(e.as_fraction())
        xs.append(entry)
    rec = {
        "class": mu.class_index,
        "support": [v + 1 for v in mu.support],
        "lambda": _lambda_record(mu),
        "x": xs,
        "goodness": is_good(mu).as_dict(),
        "quotient_witness": quotient_witness(mu).as_dict(),
    }
    if mu.is_rational:
        q, p = mu.rational_data()
        rational = {"q": q, "p": list(p), "multiplicative": is_multiplicative(mu)}
        try:
            rational["bernoulli_type"] = is_bernoulli_type(mu)
        except UnsupportedOperationError:
            rational["bernoulli_type"] = None  # defined for good measures only
        rec["rational"] = rational
    else:
        rec["rational"] = None
    return rec


def _analysis_report(d: Diagram):
    dec = decompose(d)
    return {
        "name": d.name,
        "size": d.size,
        "incidence": [list(r) for r in d.incidence],
        "classes": [_class_record(c) for c in dec.classes],
        "measures": [
            _measure_record(build_measure(dec, c.index))
            for c in dec.classes
            if c.is_distinguished
        ],
    }


def _print_analysis(report):
    name = report["name"] or "diagram"
    print(f"{name}: {report['size']} vertices, {len(report['classes'])} classes, "
          f"{len(report['measures'])} ergodic measures")
    for c in report["classes"]:
        flags = [
            k
            for k in ("minimal", "initial", "distinguished")
            if c[k]
        ]
        label = "{" + ",".join(str(v) for v in c["vertices"]) + "}"
        extra = f" [{', '.join(flags)}]" if flags else ""
        print(f"  class {c['id']} {label}: minpoly {c['minpoly']}, "
              f"perron ~ {c['perron_approx']}{extra}")
    for m in report["measures"]:
        lam = m["lambda"]
        lam_txt = (
            f"lambda = {lam['integer']}"
            if lam["integer"] is not None
            else f"lambda ~ {lam['approx']} (root of {lam['minpoly']})"
        )
        supp = "{" + ",".join(str(v) for v in m["support"]) + "}"
        print(f"  measure on class {m['class']}: {lam_txt}, support {supp}")
        for entry in m["x"]:
            val = entry.get("fraction", entry["expr"])
            print(f"    x_{entry['vertex']} = {val} (~ {entry['approx']})")
        g = m["goodness"]
        verdict = "good" if g["good"] else "not good"
        detail = ", ".join(
            f"{k} {g[k]}"
            for k in ("branch", "R", "residual", "index")
            if g.get(k) is not None
        )
        print(f"    {verdict} ({detail})")
        if m["rational"]:
            r = m["rational"]
            print(f"    q = {r['q']}, multiplicative: {r['multiplicative']}, "
                  f"bernoulli type: {r['bernoulli_type']}")
        w = m["quotient_witness"]
        print(f"    witness outside S: {w['value']} (prime {w['prime']})")


# ---------------------------------------------------------------------------
# Subcommand handlers
# ---------------------------------------------------------------------------


def _measure_for(path: str, class_id: int) -> ErgodicMeasure:
    d = load_diagram(path)
    dec = decompose(d)
    if not 0 <= class_id < len(dec.classes):
        raise ValueError(
            f"unknown class id {class_id}: diagram has classes 0..{len(dec.classes) - 1}"
        )
    return build_measure(dec, class_id)


def _emit(args, payload, human):
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        human()
    return 0


def _cmd_analyze(args):
    report = _analysis_report(load_diagram(args.file))
    return _emit(args, report, lambda: _print_analysis(report))


def _cmd_member(args):
    mu = _measure_for(args.file, args.class_id)
    value = parse_value(args.value, mu.field)
    res = member_value(mu, value)
    payload = {"value": args.value, **res.as_dict()}

    def human():
        verdict = "is in" if res.member else "is not in"
        print(f"{args.value} {verdict} S(mu) [{res.reason}]")
        if res.member:
            print(f"  lambda^{res.exponent} * value has integer coordinates {list(res.coords)}")
        elif res.reason == "orbit-cycled":
            print(f"  denominator orbit closed after {res.visited} states")

    return _emit(args, payload, human)


def _cmd_good(args):
    mu = _measure_for(args.file, args.class_id)
    res = is_good(mu)
    payload = res.as_dict()

    def human():
        print("good" if res.good else "not good")
        detail = {k: v for k, v in payload.items() if v is not None and k != "good"}
        for k, v in detail.items():
            print(f"  {k}: {v}")

    return _emit(args, payload, human)


def _cmd_enumerate(args):
    mu = _measure_for(args.file, args.class_id)
    values = enumerate_level_values(mu, args.level, budget=args.enum_budget)
    payload = {
        "level": args.level,
        "count": len(values),
        "values": [{"expr": v.to_expr_string(), "approx": v.approx_str()} for v in values],
    }

    def human():
        print(f"{len(values)} clopen values at level {args.level}")
        for v in values:
            print(f"  {v.to_expr_string()} (~ {v.approx_str()})")

    return _emit(args, payload, human)


def _cmd_equal(args):
    mu_a = _measure_for(args.file_a, args.class_a)
    mu_b = _measure_for(args.file_b, args.class_b)
    res = group_equal(mu_a, mu_b)
    payload = res.as_dict()

    def human():
        print("equal" if res.equal else "not equal")
        print(f"  case: {res.case}")
        for k, v in res.detail.items():
            print(f"  {k}: {v}")

    return _emit(args, payload, human)


def _construct_payload(res: ConstructionResult):
    mu = res.measure
    return {
        "diagram": {
            "name": res.diagram.name,
            "incidence": [list(r) for r in res.diagram.incidence],
        },
        "psi_power": res.psi_power,
        "detail": res.detail,
        "verification": {
            "lambda": _lambda_record(mu),
            "support": [v + 1 for v in mu.support],
            "goodness": is_good(mu).as_dict(),
            "minimal_components": count_minimal_components(mu.decomposition),
            "proper_minimal_components": proper_minimal_count(res.diagram),
        },
    }


def _finish_construct(args, res: ConstructionResult):
    payload = _construct_payload(res)
    if args.out:
        out = Path(args.out)
        out.write_text(res.diagram.to_json(), encoding="utf-8")
        sidecar = out.with_name(out.stem + ".verify.json")
        sidecar.write_text(
            json.dumps({k: payload[k] for k in ("psi_power", "detail", "verification")},
                       indent=2) + "\n",
            encoding="utf-8",
        )
        print(f"wrote {out} and {sidecar}")
        return 0

    def human():
        print(f"constructed {len(payload['diagram']['incidence'])}-vertex diagram "
              f"(psi = lambda^{res.psi_power})")
        for row in payload["diagram"]["incidence"]:
            print(f"  {row}")
        print(f"  detail: {res.detail}")
        v = payload["verification"]
        print(f"  good: {v['goodness']['good']}, minimal components: {v['minimal_components']}")

    return _emit(args, payload, human)


def _cmd_construct_rational(args):
    res = build_rational_family(args.q, args.lam, args.extra)
    return _finish_construct(args, res)


def _cmd_construct_extend(args):
    mu = _measure_for(args.file, args.class_id)
    res = extend_with_minimal_component(
        mu, max_r=args.max_r, max_n=args.max_n, coeff_bound=args.coeff_bound
    )
    return _finish_construct(args, res)


def _cmd_construct_simplify(args):
    mu = _measure_for(args.file, args.class_id)
    res = collapse_to_simple(mu, max_power=args.max_r)
    return _finish_construct(args, res)


# ---------------------------------------------------------------------------
# Parser wiring
# ---------------------------------------------------------------------------


def _add_common(p):
    p.add_argument("--json", action="store_true", help="emit a JSON report")


def _add_class(p):
    p.add_argument("--class", dest="class_id", type=int, required=True,
                   help="class id from analyze (topological order, 0-based)")


def _add_budgets(p):
    p.add_argument("--max-r", type=int, default=DEFAULT_MAX_R,
                   help="largest rescaling exponent / matrix power searched")
    p.add_argument("--max-n", type=int, default=DEFAULT_MAX_N,
                   help="largest extra power searched in the extension")
    p.add_argument("--coeff-bound", type=int, default=DEFAULT_COEFF_BOUND,
                   help="largest edge multiplicity accepted in a solution")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bratteli",
        description="Exact classification of ergodic tail-invariant measures "
                    "on stationary Bratteli diagrams.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="classify a diagram and report all measures")
    p.add_argument("file")
    _add_common(p)
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("member", help="decide whether a value lies in S(mu)")
    p.add_argument("file")
    _add_class(p)
    p.add_argument("--value", required=True, help="value expression, e.g. '1/3' or '2 - l'")
    _add_common(p)
    p.set_defaults(func=_cmd_member)

    p = sub.add_parser("good", help="decide goodness with a certificate")
    p.add_argument("file")
    _add_class(p)
    _add_common(p)
    p.set_defaults(func=_cmd_good)

    p = sub.add_parser("enumerate", help="list all clopen values at a level")
    p.add_argument("file")
    _add_class(p)
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--enum-budget", type=int, default=DEFAULT_ENUM_BUDGET,
                   help="largest allowed subset-sum state count")
    _add_common(p)
    p.set_defaults(func=_cmd_enumerate)

    p = sub.add_parser("equal", help="decide whether two measures share their value group")
    p.add_argument("file_a")
    p.add_argument("file_b")
    p.add_argument("--class-a", dest="class_a", type=int, required=True)
    p.add_argument("--class-b", dest="class_b", type=int, required=True)
    _add_common(p)
    p.set_defaults(func=_cmd_equal)

    p = sub.add_parser("construct", help="build a new diagram carrying a prescribed measure")
    csub = p.add_subparsers(dest="construction", required=True)

    c = csub.add_parser("rational", help="the cyclic family for rational parameters")
    c.add_argument("--q", type=int, required=True)
    c.add_argument("--lam", type=int, required=True)
    c.add_argument("--extra", type=int, default=0,
                   help="number of extra minimal components (default 0)")
    c.add_argument("--out", help="write the diagram JSON here plus a .verify.json sidecar")
    _add_common(c)
    c.set_defaults(func=_cmd_construct_rational)

    c = csub.add_parser("extend", help="add one minimal component, keeping the value group")
    c.add_argument("file")
    _add_class(c)
    _add_budgets(c)
    c.add_argument("--out", help="write the diagram JSON here plus a .verify.json sidecar")
    _add_common(c)
    c.set_defaults(func=_cmd_construct_extend)

    c = csub.add_parser("simplify", help="collapse to a simple diagram with the same values")
    c.add_argument("file")
    _add_class(c)
    c.add_argument("--max-r", type=int, default=DEFAULT_MAX_R,
                   help="largest matrix power scanned")
    c.add_argument("--out", help="write the diagram JSON here plus a .verify.json sidecar")
    _add_common(c)
    c.set_defaults(func=_cmd_construct_simplify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (SearchFailedError, SizeLimitError, EnumerationBudgetError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (
        DiagramValidationError,
        ValueExprError,
        UnsupportedOperationError,
        UnsupportedDegreeError,
        FieldMismatchError,
        InfiniteMeasureError,
        ValueError,
        OSError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
