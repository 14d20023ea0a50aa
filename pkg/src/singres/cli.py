"""Command-line surface: one subcommand per pipeline stage.

Exit codes: 0 success, 2 parse error, 3 precondition violation,
4 step or work limit.  All output is deterministic; generator lists
print in canonical reduced-basis order.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import bench as bench_mod
from .center import prepare_center, reduced_center_weights
from .contact import maximal_contact
from .derivatives import diff_iterated, maximal_order_of_vanishing
from .errors import EngineError, PreconditionError
from .geometry import affine_space, presentation, validate_smooth
from .ideals import IdealPresentation, ideal_compare, EQUAL
from .parsing import format_gens, format_polynomial, format_rationals, parse_many
from .resolve import ResolutionProblem, count_statistics, weighted_resolution
from .rings import ring


def _add_ring_args(p, ideal_required=True):
    p.add_argument("--ring", help="comma-separated variable names")
    p.add_argument("--ambient", default="", help="semicolon-separated ambient ideal generators")
    p.add_argument("--ideal", default="", help="semicolon-separated subvariety ideal generators")
    p.add_argument("--input", help="JSON problem file (alternative to the flags)")


def _load_input_file(path):
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    if "charts" in data:
        chart_rows = data["charts"]
    else:
        chart_rows = [data]
    charts = []
    for row in chart_rows:
        names = row["ring"]
        R = ring(names if isinstance(names, str) else ",".join(names))
        ambient = [g for part in row.get("ambient", []) for g in parse_many(part, R)]
        gens = [g for part in row.get("ideal", []) for g in parse_many(part, R)]
        charts.append((R, ambient, gens))
    return charts, data.get("codim")


def _single_chart(args):
    charts, codim = _charts_from_args(args)
    if len(charts) != 1:
        raise PreconditionError("this command takes exactly one chart")
    return charts[0]


def _charts_from_args(args):
    if args.input:
        rows, codim = _load_input_file(args.input)
    else:
        if not args.ring:
            raise PreconditionError("--ring or --input is required")
        R = ring(args.ring)
        ambient = parse_many(args.ambient, R)
        gens = parse_many(args.ideal, R)
        rows, codim = [(R, ambient, gens)], getattr(args, "codim", None)
    charts = []
    for R, ambient, gens in rows:
        if ambient:
            pres = presentation(R, ambient)
            if not validate_smooth(pres):
                raise PreconditionError("ambient ideal does not present a smooth variety")
        else:
            pres = affine_space(R)
        charts.append((pres, IdealPresentation(R, tuple(gens))))
    return charts, codim


def _cmd_diff(args):
    pres, I = _single_chart(args)
    result = diff_iterated(pres, I, args.order)
    print(format_gens(result.ideal.canonical().gens))
    return 0


def _cmd_maxord(args):
    pres, I = _single_chart(args)
    b = maximal_order_of_vanishing(pres, I)
    print("infinity" if b == float("inf") else int(b))
    return 0


def _cmd_contact(args):
    pres, I = _single_chart(args)
    cover = maximal_contact(pres, I)
    for G, F in cover:
        print(f"G: {format_polynomial(G)}  F: {format_polynomial(F)}")
    return 0


def _cmd_maxinv(args):
    charts, _ = _charts_from_args(args)
    center = prepare_center(charts)
    print(f"maxinv: {format_rationals(center.maxinv)}")
    return 0


def _cmd_center(args):
    charts, _ = _charts_from_args(args)
    center = prepare_center(charts)
    print(f"maxinv: {format_rationals(center.maxinv)}")
    print(f"weights: {format_rationals(reduced_center_weights(center.maxinv))}")
    return 0


def _cmd_blowup(args):
    from .blowup import weighted_blow_up

    pres, I = _single_chart(args)
    params = parse_many(args.params, pres.ring)
    weights = [int(w) for w in args.weights.split(",") if w.strip()]
    charts = weighted_blow_up(pres, I, params, weights, validate=True)
    for chart in charts:
        print(f"chart[{chart.center_index}] ring: {','.join(chart.ring.variables)}")
        print(f"  relations: {format_gens(chart.relations.gens)}")
        images = ", ".join(
            f"{v} -> {format_polynomial(img)}"
            for v, img in zip(pres.ring.variables, chart.map.images)
        )
        print(f"  map: {images}")
        print(f"  total: {format_gens(chart.total_transform.gens)}")
        print(f"  transform: {format_gens(chart.transform.gens)}")
        grading = ", ".join(f"{v}:{chart.grading[v]}" for v in chart.ring.variables)
        print(f"  grading: {grading} (group order {chart.group_order})")
    return 0


def _chart_json(node):
    entry = {
        "id": node.id,
        "parent": node.parent,
        "role": node.role,
        "ring": list(node.pres.ring.variables),
        "relations": [format_polynomial(g) for g in node.pres.base.canonical().gens],
        "transform": [format_polynomial(g) for g in node.ideal.canonical().gens],
    }
    if node.blow is not None:
        chart = node.blow
        entry["map"] = {
            v: format_polynomial(img)
            for v, img in zip(chart.map.source.variables, chart.map.images)
        }
        entry["grading"] = {v: chart.grading[v] for v in chart.ring.variables}
        entry["group_order"] = chart.group_order
        entry["exceptional"] = chart.exceptional
    return entry


def emit_tree(tree, fmt):
    """Serialize a resolution tree as summary, json, or dot text."""
    if fmt == "json":
        blow_ups, charts = count_statistics(tree)
        doc = {
            "codim": tree.codim,
            "blowups": blow_ups,
            "final_maxinv": [str(e) for e in tree.final_maxinv] if tree.final_maxinv else None,
            "steps": [
                {
                    "maxinv": [str(e) for e in step.maxinv],
                    "weights": list(step.weights),
                    "charts": [_chart_json(n) for n in step.charts],
                }
                for step in tree.steps
            ],
            "final_charts": [_chart_json(n) for n in tree.final_charts],
        }
        return json.dumps(doc, indent=2, sort_keys=True)
    if fmt == "dot":
        lines = ["digraph resolution {"]
        for node in tree.initial:
            lines.append(f'  "{node.id}" [label="{node.id}"];')
        for step in tree.steps:
            for node in step.charts:
                lines.append(f'  "{node.id}" [label="{node.id}\\n{node.role}"];')
                if node.parent is not None:
                    lines.append(f'  "{node.parent}" -> "{node.id}";')
        lines.append("}")
        return "\n".join(lines)
    # summary
    blow_ups, charts = count_statistics(tree)
    if not tree.steps:
        return "already smooth; 0 blowups"
    lines = [f"blowups: {blow_ups}"]
    for k, step in enumerate(tree.steps, start=1):
        lines.append(
            f"step {k}: maxinv {format_rationals(step.maxinv)}"
            f" weights {format_rationals(step.weights)}"
            f" charts {len(step.charts)}"
        )
    if tree.final_maxinv is not None:
        lines.append(f"final maxinv: {format_rationals(tree.final_maxinv)}")
    lines.append(f"final charts: {charts}")
    for node in tree.final_charts:
        lines.append(
            f"  {node.id} [{node.role}] ring {','.join(node.pres.ring.variables)}"
            f" transform {format_gens(node.ideal.canonical().gens)}"
        )
    return "\n".join(lines)


def _cmd_resolve(args):
    charts, codim = _charts_from_args(args)
    problem = ResolutionProblem(charts, codim=codim)
    tree = weighted_resolution(problem, max_steps=args.max_steps)
    print(emit_tree(tree, args.emit))
    return 0


def _cmd_bench(args):
    if args.input:
        with open(args.input, "r", encoding="utf-8") as fh:
            rows = json.load(fh)["rows"]
    else:
        rows = bench_mod.reference_rows()
    report = bench_mod.bench_table(rows, budget=args.budget, workers=args.workers)
    print(bench_mod.format_bench_report(report))
    return 0


def build_parser():
    parser = argparse.ArgumentParser(prog="singres")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("diff", help="iterated derivative ideal")
    _add_ring_args(p)
    p.add_argument("--order", type=int, default=1)
    p.set_defaults(func=_cmd_diff)

    p = sub.add_parser("maxord", help="maximal order of vanishing")
    _add_ring_args(p)
    p.set_defaults(func=_cmd_maxord)

    p = sub.add_parser("contact", help="maximal contact cover")
    _add_ring_args(p)
    p.set_defaults(func=_cmd_contact)

    p = sub.add_parser("maxinv", help="maximal lexicographic order invariant")
    _add_ring_args(p)
    p.set_defaults(func=_cmd_maxinv)

    p = sub.add_parser("center", help="invariant and reduced-center weights")
    _add_ring_args(p)
    p.set_defaults(func=_cmd_center)

    p = sub.add_parser("blowup", help="weighted blow-up charts")
    _add_ring_args(p)
    p.add_argument("--params", required=True, help="semicolon-separated center parameters")
    p.add_argument("--weights", required=True, help="comma-separated integer weights")
    p.set_defaults(func=_cmd_blowup)

    p = sub.add_parser("resolve", help="run the resolution loop")
    _add_ring_args(p)
    p.add_argument("--max-steps", type=int, default=None)
    p.add_argument("--emit", choices=["summary", "json", "dot"], default="summary")
    p.add_argument("--codim", type=int, default=None)
    p.set_defaults(func=_cmd_resolve)

    p = sub.add_parser("bench", help="benchmark table")
    p.add_argument("--input", help="JSON file with a rows list; defaults to the built-in table")
    p.add_argument("--budget", type=int, default=None, help="per-row wall-clock seconds")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=_cmd_bench)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except EngineError as err:
        print(f"error: {err}", file=sys.stderr)
        return err.exit_code


if __name__ == "__main__":
    sys.exit(main())
