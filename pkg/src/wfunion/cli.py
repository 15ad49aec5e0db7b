"""Command-line front end.

Exit status: 0 when the command's expectation is met, 1 when it is not (the
criterion fails, no witness, a sound criterion has a counterexample or an
unsound one has none), 2 on usage, parse or I/O errors.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys

from .chains import (
    ChainError,
    CriterionNotSatisfiedError,
    construct_greedy_chain,
    extract_monochrome,
    is_a_preferring,
    monochrome_cycle_oracle,
)
from .criteria import (
    CRITERION_IDS,
    EXTRACTABLE_IDS,
    CriterionUsageError,
    evaluate_criterion,
    first_immortal,
    get_criterion,
)
from .graphio import FIXTURES, GraphParseError, fixture_text, parse_graph, to_dot
from .relation import find_cycle
from .report import dumps, envelope
from .search import (
    DEFAULT_BUDGET,
    ScanConfig,
    compare_criteria,
    counterexample_report,
    soundness_scan,
)

EXIT_OK, EXIT_FAIL, EXIT_ERROR = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _read(path: str) -> str:
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _write(path: str, text: str) -> None:
    parent = os.path.dirname(path)
    if parent:
        os.makedirs(parent, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


# --- commands ---------------------------------------------------------------
# Each returns (exit status, report body, text lines).

def _cmd_check(args):
    text = _read(args.file)
    g = parse_graph(text)
    rep = evaluate_criterion(g, args.criterion)
    status = EXIT_OK if rep.holds else EXIT_FAIL
    lines = [
        f"criterion {rep.criterion}: {'holds' if rep.holds else 'fails'}",
        "colors well-founded: " + ", ".join(
            f"{t}={'yes' if ok else 'no'}" for t, ok in zip("ABC", rep.colors_wf)),
        f"union well-founded: {'yes' if rep.union_wf else 'no'}",
    ]
    if rep.union_cycle is not None:
        lines.append("union cycle: " + " -> ".join(map(str, rep.union_cycle + rep.union_cycle[:1])))
    for (x, y), idx in rep.violations:
        lines.append(f"violation: ({x}, {y}) uncovered by clause {idx}")
    if args.figure:
        from .plotting import draw_graph
        draw_graph(g, args.figure, f"{args.criterion}: {'holds' if rep.holds else 'fails'}")
        lines.append(f"figure: {args.figure}")
    return status, {"criterion": args.criterion, "result": rep.to_dict()}, text, lines


def _cmd_witness(args):
    text = _read(args.file)
    g = parse_graph(text)
    cycle = find_cycle(g.union())
    body = {"criterion": args.criterion,
            "union_cycle": None if cycle is None else cycle,
            "start": None, "greedy": None, "a_preferring": None,
            "extracted": None, "color": None, "trace": None}
    lines = []
    if cycle is None:
        lines.append("union is well-founded; no infinite chain")
        return EXIT_FAIL, body, text, lines
    lines.append("union cycle: " + " -> ".join(map(str, cycle + cycle[:1])))
    highlight = ()
    status = EXIT_OK
    if args.criterion is not None:
        if args.criterion not in EXTRACTABLE_IDS:
            raise CriterionUsageError(
                f"witness extraction supports {', '.join(EXTRACTABLE_IDS)}, not {args.criterion}")
        start = first_immortal(g)
        lasso = construct_greedy_chain(g, start)
        body.update(start=start, greedy=lasso.to_dict(), a_preferring=is_a_preferring(g, lasso))
        lines.append(f"greedy chain from {start}: {_fmt_lasso(lasso)}")
        try:
            out, trace = extract_monochrome(g, lasso, args.criterion)
        except CriterionNotSatisfiedError as exc:
            lines.append(str(exc))
            body["error"] = str(exc)
            return EXIT_FAIL, body, text, lines
        tag = out.cycle[0].color
        if monochrome_cycle_oracle(g, tag) is None:
            raise ChainError(f"extracted {tag}-cycle not confirmed by the per-color search")
        body.update(extracted=out.to_dict(), color=tag, trace=trace.to_dict())
        for r in trace.records:
            lines.append(f"  {r.kind} at {r.position}: {_fmt_steps(r.consumed)} => "
                         f"{_fmt_steps(r.produced)}"
                         + ("" if r.clause is None else f" (clause {r.clause})"))
        lines.append(f"monochrome {tag} chain: {_fmt_lasso(out)}")
        highlight = out.cycle
    if args.figure:
        from .plotting import draw_graph
        draw_graph(g, args.figure, "witness", highlight=highlight)
        lines.append(f"figure: {args.figure}")
    return status, body, text, lines


def _fmt_steps(steps) -> str:
    if not steps:
        return "-"
    out = str(steps[0].src)
    for s in steps:
        out += f" -{s.color}-> {s.dst}"
    return out


def _fmt_lasso(lasso) -> str:
    return f"stem [{_fmt_steps(lasso.stem)}] cycle [{_fmt_steps(lasso.cycle)}]"


def _scan_config(args, require_colors_wf: bool) -> ScanConfig:
    if args.exhaustive:
        return ScanConfig(args.nodes, "exhaustive", require_colors_wf=require_colors_wf,
                          workers=args.workers, budget=args.budget)
    return ScanConfig(args.nodes, "sample", sample_count=args.samples, seed=args.seed,
                      require_colors_wf=require_colors_wf, workers=args.workers,
                      budget=args.budget)


def _graph_line(code, g) -> str:
    return (f"graph {code} (n={g.n}): A={sorted(g.a)} B={sorted(g.b)} C={sorted(g.c)}")


def _cmd_scan(args):
    crit = get_criterion(args.criterion)
    cfg = _scan_config(args, True)
    if crit.sound:
        rep = soundness_scan(cfg, args.criterion)
        ok = not rep.counterexamples
        expectation = "no counterexample"
    else:
        rep = counterexample_report(cfg, args.criterion)
        ok = bool(rep.counterexamples)
        expectation = "a counterexample"
    body = rep.to_dict()
    body.update(sound=crit.sound, expectation=expectation, expectation_met=ok)
    lines = [f"{args.criterion} ({'sound' if crit.sound else 'unsound'}), {cfg.mode}, n={cfg.n}",
             f"graphs examined: {rep.graphs_examined}"]
    lines.extend(f"{k}: {v}" for k, v in rep.counts.items())
    lines.extend(_graph_line(c, g) for c, g in rep.counterexamples[:10])
    lines.append(f"expected {expectation}: {'met' if ok else 'NOT met'}")
    _scan_figure(args, rep, lines)
    return (EXIT_OK if ok else EXIT_FAIL), body, None, lines


def _cmd_compare(args):
    cfg = _scan_config(args, args.colors_wf)
    rep = compare_criteria(cfg, args.left, args.right)
    lines = [f"{args.left} vs {args.right}, {cfg.mode}, n={cfg.n}",
             f"graphs examined: {rep.graphs_examined}"]
    lines.extend(f"{k}: {v}" for k, v in rep.counts.items())
    for label, hit in rep.witnesses.items():
        lines.append(f"{label} witness: " + ("none" if hit is None else _graph_line(*hit)))
    _scan_figure(args, rep, lines)
    return EXIT_OK, rep.to_dict(), None, lines


def _scan_figure(args, rep, lines):
    if not args.figure:
        return
    from .plotting import draw_counts, draw_graph
    draw_counts(rep.counts, args.figure, f"{rep.command} {' vs '.join(rep.criteria)}, n={rep.config.n}")
    lines.append(f"figure: {args.figure}")
    hits = list(rep.counterexamples) + [v for v in rep.witnesses.values() if v is not None]
    stem, ext = os.path.splitext(args.figure)
    for code, g in hits[:4]:
        path = f"{stem}-{code}{ext or '.png'}"
        draw_graph(g, path, f"graph {code}")
        lines.append(f"figure: {path}")


def _cmd_fixtures(args):
    os.makedirs(args.dir, exist_ok=True)
    written = []
    for name in FIXTURES:
        path = os.path.join(args.dir, f"{name}.txt")
        _write(path, fixture_text(name))
        written.append(path)
    return EXIT_OK, {"files": written}, None, [f"wrote {p}" for p in written]


def _cmd_dot(args):
    text = _read(args.file)
    g = parse_graph(text)
    _write(args.out, to_dot(g))
    return EXIT_OK, {"out": args.out}, text, [f"wrote {args.out}"]


# --- argument parsing -------------------------------------------------------

def _positive(s: str) -> int:
    v = int(s)
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="wfunion", description="Well-foundedness criteria for unions of three relations.")
    p.add_argument("-v", "--verbose", action="store_true", help="progress lines on stderr")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, figure=True):
        sp.add_argument("--json", action="store_true", help="print the JSON report instead of text")
        sp.add_argument("--report", metavar="PATH", help="also write the JSON report to PATH")
        if figure:
            sp.add_argument("--figure", metavar="PNG", help="render a figure to PNG")

    sp = sub.add_parser("check", help="evaluate one criterion on a graph file")
    sp.add_argument("file")
    sp.add_argument("--criterion", required=True, choices=CRITERION_IDS)
    common(sp)

    sp = sub.add_parser("witness", help="union cycle, optionally a monochrome extraction")
    sp.add_argument("file")
    sp.add_argument("--criterion", choices=CRITERION_IDS)
    common(sp)

    def scan_opts(sp):
        sp.add_argument("--nodes", type=_positive, required=True)
        mode = sp.add_mutually_exclusive_group(required=True)
        mode.add_argument("--exhaustive", action="store_true")
        mode.add_argument("--samples", type=_positive)
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--workers", type=_positive, default=1)
        sp.add_argument("--budget", type=_positive, default=DEFAULT_BUDGET,
                        help="largest exhaustive space allowed (default 2^27)")
        common(sp)

    sp = sub.add_parser("scan", help="soundness scan or counterexample search")
    sp.add_argument("--criterion", required=True, choices=CRITERION_IDS)
    scan_opts(sp)

    sp = sub.add_parser("compare", help="joint truth table of two criteria")
    sp.add_argument("--left", required=True, choices=CRITERION_IDS)
    sp.add_argument("--right", required=True, choices=CRITERION_IDS)
    sp.add_argument("--colors-wf", action="store_true",
                    help="only graphs whose three colors are well-founded")
    scan_opts(sp)

    sp = sub.add_parser("fixtures", help="write the G1, G2, G3 graph files")
    sp.add_argument("--dir", required=True)
    common(sp, figure=False)

    sp = sub.add_parser("dot", help="Graphviz rendering of a graph file")
    sp.add_argument("file")
    sp.add_argument("--out", required=True)
    common(sp, figure=False)
    return p


COMMANDS = {
    "check": _cmd_check, "witness": _cmd_witness, "scan": _cmd_scan,
    "compare": _cmd_compare, "fixtures": _cmd_fixtures, "dot": _cmd_dot,
}


def run_command(argv=None, stdout=None, stderr=None) -> tuple[int, dict | None]:
    """Run one command; returns ``(exit status, report)``."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(exc, file=stderr)
        return EXIT_ERROR, None
    except SystemExit as exc:  # --help
        return (EXIT_OK if exc.code in (0, None) else EXIT_ERROR), None
    if args.verbose:
        logging.basicConfig(stream=stderr, level=logging.INFO, format="%(message)s")
    try:
        status, body, text, lines = COMMANDS[args.command](args)
    except GraphParseError as exc:
        print(f"{args.file}: {exc}", file=stderr)
        return EXIT_ERROR, None
    except (OSError, ValueError, ChainError) as exc:
        # includes criterion, scan and dimension usage errors
        print(f"error: {exc}", file=stderr)
        return EXIT_ERROR, None
    report = envelope(args.command, body, input_text=text,
                      input_path=getattr(args, "file", None), exit_status=status)
    if args.report:
        _write(args.report, dumps(report))
    if args.json:
        stdout.write(dumps(report))
    else:
        for line in lines:
            print(line, file=stdout)
    return status, report


def main(argv=None) -> int:
    return run_command(argv)[0]


if __name__ == "__main__":
    sys.exit(main())
