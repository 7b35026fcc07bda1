"""Command line entry point: ``nefcurves <command> ...``.

Exit status: 0 ok, 1 a theorem violation was found, 2 invalid input,
3 internal error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .census import CensusBounds, run_census
from .checks import CHECKERS
from .classify import check_codim1, check_dimension_bound, check_tree_theorem, classify_codim1
from .config import (
    ConfigError,
    CurveConfiguration,
    HypothesisError,
    canonicalize,
    is_connected,
    is_nef_graph,
    is_tree,
    summarize,
    validate,
)
from .document import InputDocument, InputError, config_to_json, export_dot, parse_input
from .lattice import LatticeError, j_dimension, preset_lattice
from .moves import MoveNotApplicable, applicable_moves, apply_move
from .rearrange import check_genus_bound, is_rearranged

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _load(path: str) -> InputDocument:
    try:
        data = sys.stdin.buffer.read() if path == "-" else Path(path).read_bytes()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    doc = parse_input(data)
    problems = validate(doc.config)
    if problems:
        raise InputError("invalid configuration: " + "; ".join(problems))
    return doc


def _fmt_config(cfg: CurveConfiguration) -> str:
    return ", ".join(f"({cfg.lattice.format(v.cls)}, {v.mult})" for v in cfg)


def _emit(args, payload: dict, text: str) -> None:
    if args.format == "json":
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text.rstrip("\n"))


def cmd_eval(args) -> int:
    doc = _load(args.file)
    cfg = doc.config
    lat = cfg.lattice
    s = summarize(cfg)
    iota, l = j_dimension(lat, s.total)
    adj = 2 * s.genus_total - 2
    payload = {
        "total": list(s.total),
        "total_label": lat.format(s.total),
        "genus": s.genus_total,
        "adj": adj,
        "iota": iota,
        "l": l,
        "nef": is_nef_graph(cfg),
        "connected": is_connected(cfg),
        "tree": is_tree(cfg),
        "total_pairings": list(cfg.total_pairings),
        "genus_sum": s.genus_sum,
        "weighted_genus_sum": s.weighted_genus_sum,
        "l_G": s.l_G,
        "L": s.L,
        "rearranged": is_rearranged(cfg),
        "vertices": [
            {
                "class": list(v.cls),
                "label": lat.format(v.cls),
                "mult": v.mult,
                "square": cfg.squares[i],
                "genus": cfg.genera[i],
                "adj": cfg.adjunctions[i],
                "l": cfg.dims[i],
            }
            for i, v in enumerate(cfg)
        ],
    }
    lines = [
        f"total       {payload['total_label']}",
        f"genus       {s.genus_total}",
        f"adj         {adj}",
        f"iota, l     {iota}, {l}",
        f"nef         {payload['nef']}",
        f"connected   {payload['connected']}",
        f"tree        {payload['tree']}",
        f"e.e_i       {payload['total_pairings']}",
        f"sum g_i     {s.genus_sum}   sum m_i g_i {s.weighted_genus_sum}",
        f"l_G, L      {s.l_G}, {s.L}",
        f"rearranged  {payload['rearranged']}",
    ]
    for i, v in enumerate(payload["vertices"]):
        lines.append(
            f"  [{i}] {v['label']} x{v['mult']}  sq={v['square']} g={v['genus']} l={v['l']}"
        )
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def cmd_moves(args) -> int:
    cfg = canonicalize(_load(args.file).config)
    moves = applicable_moves(cfg)
    payload = {"config": config_to_json(cfg)["vertices"], "moves": [m.to_json() for m in moves]}
    lines = [f"config  {_fmt_config(cfg)}"]
    lines += [f"{i:3d}  {m}" for i, m in enumerate(moves)]
    if not moves:
        lines.append("no applicable moves")
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def cmd_apply(args) -> int:
    doc = _load(args.file)
    cfg = canonicalize(doc.config)
    moves = applicable_moves(cfg)
    if not 0 <= args.move < len(moves):
        raise UsageError(f"--move {args.move} is out of range; {len(moves)} moves are applicable")
    move = moves[args.move]
    out = apply_move(cfg, move)
    payload = {"move": move.to_json(), **config_to_json(out, doc.preset)}
    _emit(args, payload, f"{move}\n{_fmt_config(out)}")
    return EXIT_OK


def cmd_rearrange(args) -> int:
    cfg = _load(args.file).config
    report = check_genus_bound(cfg)
    form = report.rearranged
    payload = {
        "final": config_to_json(form.config)["vertices"],
        "trace": [
            {"move": s.move.to_json(), "after": config_to_json(s.after)["vertices"]} for s in form.trace
        ],
        "strong_bound_eligible": form.strong_bound_eligible,
        "exception": form.exception,
        "step_bound": form.step_bound,
        "genus_total": report.g_total,
        "genus_sum": report.genus_sum,
        "weighted_genus_sum": report.weighted_genus_sum,
        "multi1_applies": report.multi1_applies,
        "multi1_holds": report.multi1_holds,
        "violations": report.violations,
    }
    lines = []
    for i, step in enumerate(form.trace):
        lines.append(f"{i:3d}  {str(step.move):<16} -> {_fmt_config(step.after)}")
    lines.append(f"final  {_fmt_config(form.config)}")
    if form.exception:
        lines.append(f"note   {form.exception}")
    lines.append(f"genus  g(e)={report.g_total}  sum g_i={report.genus_sum}  sum m_i g_i={report.weighted_genus_sum}")
    lines += [f"VIOLATION  {v}" for v in report.violations]
    _emit(args, payload, "\n".join(lines))
    return EXIT_VIOLATION if report.violations else EXIT_OK


def cmd_classify(args) -> int:
    cfg = _load(args.file).config
    checks = [check_tree_theorem(cfg), check_dimension_bound(cfg), check_codim1(cfg)]
    result = classify_codim1(cfg)
    payload = {
        "tag": result.tag.value,
        "reason": result.reason,
        "witness": [s.move.to_json() for s in result.witness],
        "base": config_to_json(result.base)["vertices"] if result.base is not None else None,
        "checks": {c.name: {"status": c.status.value, **c.detail} for c in checks},
    }
    lines = [f"tag    {result.tag.value}" + (f"  ({result.reason})" if result.reason else "")]
    for step in result.witness:
        lines.append(f"  {str(step.move):<16} -> {_fmt_config(step.after)}")
    for c in checks:
        lines.append(f"{c.name:<10} {c.status.value}")
    _emit(args, payload, "\n".join(lines))
    return EXIT_VIOLATION if any(c.violated for c in checks) else EXIT_OK


def cmd_dot(args) -> int:
    sys.stdout.write(export_dot(_load(args.file).config))
    return EXIT_OK


def _parse_checkers(text: str) -> list[str]:
    names = [c.strip() for c in text.split(",") if c.strip()]
    bad = [c for c in names if c not in CHECKERS]
    if bad:
        raise UsageError(f"unknown checkers {bad}; choose from {', '.join(CHECKERS)}")
    return names


def cmd_census(args) -> int:
    try:
        lattice = preset_lattice(args.lattice_preset, args.k)
        bounds = CensusBounds(
            lattice,
            args.max_vertices,
            args.max_mult,
            args.coeff_bound,
            require_connected=not args.no_filters,
            require_nef=not args.no_filters,
            require_genus0_total=args.genus0,
        )
    except (LatticeError, ValueError) as exc:
        raise UsageError(str(exc)) from None
    checkers = _parse_checkers(args.checkers)
    report = run_census(bounds, checkers, jobs=args.jobs)
    summary = {
        "candidates": report.candidates,
        "checked": report.checked,
        "violations": len(report.violations),
        "fingerprint": report.fingerprint,
        "stages": report.stages,
        "histograms": report.histograms,
        "wall_time": round(report.wall_time, 3),
    }
    records = [json.dumps(v, sort_keys=True) for v in report.violations]
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            for r in records:
                fh.write(r + "\n")
            fh.write(json.dumps(summary, sort_keys=True) + "\n")
    if args.figures:
        from .plotting import render_report

        render_report(report, args.figures)
    if args.format == "json":
        for r in records:
            print(r)
        print(json.dumps(summary, sort_keys=True))
    else:
        print(f"candidates   {report.candidates}")
        for name, c in report.checked.items():
            print(
                f"{name:<12} in-hypothesis {c['in_hypothesis']:>8}  pass {c['pass']:>8}  "
                f"fail {c['fail']:>4}  skipped {c['out_of_hypothesis']:>8}"
            )
        print(f"violations   {len(report.violations)}")
        print(f"fingerprint  {report.fingerprint}")
        print(f"wall time    {report.wall_time:.1f}s")
    return EXIT_VIOLATION if report.violations else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nefcurves", description=__doc__.splitlines()[0])
    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=("text", "json"), default="text")
    sub = parser.add_subparsers(dest="command", required=True)

    for name, func, helptext in (
        ("eval", cmd_eval, "invariants of a configuration"),
        ("moves", cmd_moves, "applicable moves in canonical order"),
        ("rearrange", cmd_rearrange, "rearranged normal form, trace and genus bound"),
        ("classify", cmd_classify, "genus zero checks and maximal-dimension classification"),
        ("dot", cmd_dot, "Graphviz DOT export"),
    ):
        p = sub.add_parser(name, parents=[fmt], help=helptext)
        p.add_argument("file", help="JSON document, or - for stdin")
        p.set_defaults(func=func)

    p = sub.add_parser("apply", parents=[fmt], help="apply the N-th move listed by 'moves'")
    p.add_argument("file")
    p.add_argument("--move", type=int, required=True, metavar="N")
    p.set_defaults(func=cmd_apply)

    p = sub.add_parser("census", parents=[fmt], help="exhaustive theorem census")
    p.add_argument("--lattice-preset", required=True, choices=("cp2_blowup", "ruled_blowup"))
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--max-vertices", type=int, required=True)
    p.add_argument("--max-mult", type=int, required=True)
    p.add_argument("--coeff-bound", type=int, required=True)
    p.add_argument("--checkers", default=",".join(CHECKERS))
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out", help="write violation records and the summary as JSON lines")
    p.add_argument("--figures", metavar="DIR", help="render histogram figures into DIR")
    p.add_argument("--no-filters", action="store_true", help="also enumerate disconnected and non-nef configurations")
    p.add_argument("--genus0", action="store_true", help="keep only configurations with genus zero total class")
    p.set_defaults(func=cmd_census)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InputError, HypothesisError, ConfigError, LatticeError, MoveNotApplicable, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except Exception as exc:  # noqa: BLE001
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
