"""Command-line entry points.

Subcommands: trace, certify, stats, families, min2k, plot.  Long sweeps
write plain CSV/JSONL/JSON files plus a rendered figure next to them, print
one progress line per finished level, and can checkpoint/resume.

Exit codes: 0 success; trace uses 2 for a proper multicurve and 3 for a
non-admissible tuple; certify uses 1 when a zero polynomial is found; 64 is
a usage error and 65 a checkpoint mismatch.
"""

from __future__ import annotations

import argparse
import dataclasses
import functools
import os
import sys

from . import analysis, reports
from .analysis import LevelCache, LevelStats
from .checkpoint import Checkpoint, CheckpointMismatchError
from .conditions import is_admissible
from .tracer import ScreenResult, TraceStatus, screen_zero, trace
from .weights import WeightTuple

EX_USAGE = 64
EX_CHECKPOINT = 65


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(EX_USAGE)


def _parse_range(text: str) -> tuple[int, int]:
    lo, _, hi = text.partition("..")
    try:
        lo, hi = int(lo), int(hi)
    except ValueError:
        raise SystemExit(EX_USAGE)
    if lo < 2 or hi < lo:
        raise SystemExit(EX_USAGE)
    return lo, hi


def _default_workers() -> int:
    return max(1, int(os.environ.get("BURAU4_WORKERS", "1")))


def build_parser() -> _Parser:
    p = _Parser(prog="burau4", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    t = sub.add_parser("trace", help="trace one weight tuple")
    t.add_argument("weights", type=int, nargs=5, metavar="W")
    t.add_argument("--exact", action="store_true", default=True)
    t.add_argument("--screen", type=int, metavar="M", default=None,
                   help="screening mode with coefficients folded mod 2^M")

    c = sub.add_parser("certify", help="search a crossing range for zero polynomials")
    c.add_argument("--max", type=int, required=True, dest="max_crossings")
    c.add_argument("--mod-bits", type=int, default=7)
    c.add_argument("--workers", type=int, default=_default_workers())
    c.add_argument("--checkpoint", default=None)
    c.add_argument("--output-dir", default=".")

    s = sub.add_parser("stats", help="per-level minimum norm and multiplicity")
    s.add_argument("--range", required=True, type=_parse_range, dest="span")
    s.add_argument("--workers", type=int, default=_default_workers())
    s.add_argument("--checkpoint", default=None)
    s.add_argument("--output-dir", default=".")
    s.add_argument("--arcs", choices=["witnesses", "none"], default="witnesses")

    f = sub.add_parser("families", help="group minimum-norm witnesses into families")
    f.add_argument("--range", required=True, type=_parse_range, dest="span")
    f.add_argument("--kind", choices=["tight", "loose"], default="tight")
    f.add_argument("--depth", type=int, default=100)
    f.add_argument("--output-dir", default=".")
    f.add_argument("--cache-dir", default=None)

    m = sub.add_parser("min2k", help="minimum norms outside earlier families")
    m.add_argument("--range", required=True, type=_parse_range, dest="span")
    m.add_argument("--kind", choices=["tight", "loose"], default="tight")
    m.add_argument("--depth", type=int, default=100)
    m.add_argument("--output-dir", default=".")
    m.add_argument("--cache-dir", default=None)

    pl = sub.add_parser("plot", help="render a min2k.csv file to SVG")
    pl.add_argument("input")
    pl.add_argument("output")
    return p


def cmd_trace(args) -> int:
    t = WeightTuple(*args.weights)
    if not is_admissible(t):
        print(f"{t}: non-admissible")
        return 3
    if args.screen is not None:
        res = screen_zero(t, mod_bits=args.screen)
        print(f"{t}: screen[mod 2^{args.screen}] = {res.value}")
        return 2 if res is ScreenResult.PROPER_MULTICURVE else 0
    out = trace(t)
    if out.status is TraceStatus.PROPER_MULTICURVE:
        print(f"{t}: proper multicurve ({out.positive + out.negative} crossings on the walk)")
        return 2
    print(f"{t}: genuine arc")
    print(f"  crossings:  {out.crossings}")
    print(f"  record:     {','.join(map(str, out.record))}")
    print(f"  polynomial: {out.polynomial.canonical().to_string()}")
    print(f"  norm:       {out.polynomial.norm()}")
    return 0


def _row_from_dict(d: dict) -> analysis.CertifyRow:
    return analysis.CertifyRow(**d)


def cmd_certify(args) -> int:
    os.makedirs(args.output_dir, exist_ok=True)
    config = {"command": "certify", "max": args.max_crossings, "mod_bits": args.mod_bits}
    ck = Checkpoint(args.checkpoint, config)
    levels = [lv for lv in range(2, args.max_crossings + 1, 2)]
    todo = [lv for lv in levels if lv not in ck.done_levels()]
    report = analysis.CertifyReport()
    for lv in sorted(ck.done_levels()):
        d = dict(ck.rows[lv])
        witnesses = d.pop("zero_witnesses", [])
        report.rows.append(_row_from_dict(d))
        report.zero_witnesses.extend(WeightTuple(*w) for w in witnesses)
    job = functools.partial(analysis.certify_level, mod_bits=args.mod_bits)
    for row, witnesses in analysis.map_levels(job, todo, args.workers):
        report.rows.append(row)
        report.zero_witnesses.extend(witnesses)
        d = dataclasses.asdict(row)
        d["zero_witnesses"] = [list(w) for w in witnesses]
        ck.record(row.level, d)
        print(f"level {row.level}: arcs {row.arcs_tested} multicurves {row.multicurves} "
              f"possibly-zero {row.possibly_zero} zeros {row.zeros}", flush=True)
    report.rows.sort(key=lambda r: r.level)
    with open(os.path.join(args.output_dir, "levels.csv"), "w") as fh:
        fh.write(reports.levels_csv(report.rows))
    if report.total_zeros:
        print("ZERO POLYNOMIAL FOUND:")
        for w in report.zero_witnesses:
            print(f"  {w}")
        return 1
    print(f"no zero polynomial up to {args.max_crossings} crossings "
          f"({sum(r.arcs_tested for r in report.rows)} arcs tested)")
    return 0


def _stats_to_dict(st: LevelStats) -> dict:
    d = dataclasses.asdict(st)
    d["witnesses"] = [list(w) for w in st.witnesses]
    return d


def _stats_from_dict(d: dict) -> LevelStats:
    d = dict(d)
    d["witnesses"] = tuple(WeightTuple(*w) for w in d["witnesses"])
    return LevelStats(**d)


def cmd_stats(args) -> int:
    os.makedirs(args.output_dir, exist_ok=True)
    lo, hi = args.span
    config = {"command": "stats", "range": [lo, hi]}
    ck = Checkpoint(args.checkpoint, config)
    levels = list(range(lo + lo % 2, hi + 1, 2))
    stats = [_stats_from_dict(ck.rows[lv]) for lv in sorted(ck.done_levels()) if lv in levels]
    todo = [lv for lv in levels if lv not in ck.done_levels()]
    for st in analysis.map_levels(analysis.level_stats, todo, args.workers):
        stats.append(st)
        ck.record(st.level, _stats_to_dict(st))
        print(f"level {st.level}: minnorm {st.minnorm} mult {st.mult} "
              f"arcs {st.arcs_tested}", flush=True)
    stats.sort(key=lambda s: s.level)
    with open(os.path.join(args.output_dir, "levels.csv"), "w") as fh:
        fh.write(reports.levels_csv(stats))
    if args.arcs == "witnesses":
        entries = [analysis.arc_report_entry(w) for st in stats for w in st.witnesses]
        with open(os.path.join(args.output_dir, "arcs.jsonl"), "w") as fh:
            fh.write(reports.arcs_jsonl(entries))
    from .plotting import plot_level_stats
    plot_level_stats(stats, os.path.join(args.output_dir, "levels.svg"))
    return 0


def cmd_families(args) -> int:
    os.makedirs(args.output_dir, exist_ok=True)
    lo, hi = args.span
    cache = LevelCache(args.cache_dir)
    fams = analysis.extract_families(lo, hi, args.kind, cache)
    with open(os.path.join(args.output_dir, "families.json"), "w") as fh:
        fh.write(reports.families_json(fams))
    chained = [f for f in fams if f.verified_depth > 0]
    print(f"{len(fams)} families ({len(chained)} with more than one member)")
    return 0


def cmd_min2k(args) -> int:
    os.makedirs(args.output_dir, exist_ok=True)
    lo, hi = args.span
    cache = LevelCache(args.cache_dir)
    rows = []
    def show(item):
        level, value = item
        print(f"level {level}: min {'all_excluded' if value is None else value}", flush=True)
    table = analysis.min2k_table(lo, hi, args.kind, args.depth, cache, on_level=show)
    rows = [(lv, args.kind, args.depth, v) for lv, v in table]
    csv_path = os.path.join(args.output_dir, f"min2k_{args.kind}_{args.depth}.csv")
    with open(csv_path, "w") as fh:
        fh.write(reports.min2k_csv(rows))
    from .plotting import plot_min2k
    plot_min2k(rows, os.path.join(args.output_dir, f"min2k_{args.kind}_{args.depth}.svg"))
    print(f"wrote {csv_path}")
    return 0


def cmd_plot(args) -> int:
    try:
        with open(args.input) as fh:
            rows = reports.parse_min2k_csv(fh.read())
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 66
    from .plotting import plot_min2k
    plot_min2k(rows, args.output)
    print(f"wrote {args.output}")
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handler = {
        "trace": cmd_trace,
        "certify": cmd_certify,
        "stats": cmd_stats,
        "families": cmd_families,
        "min2k": cmd_min2k,
        "plot": cmd_plot,
    }[args.command]
    try:
        return handler(args)
    except CheckpointMismatchError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EX_CHECKPOINT


if __name__ == "__main__":
    sys.exit(main())
