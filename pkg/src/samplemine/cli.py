"""Command-line interface.

Subcommands mirror the library surface: ``sample``, ``quality``,
``discover``, ``conformance``, ``invitro``, ``invivo``, ``correlate``.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import harness
from .conformance import CONFORMANCE_CSV_HEADER, precision_recall
from .discovery import discover
from .eventlog import read_log, write_csv
from .processtree import parse_tree
from .quality import QUALITY_CSV_HEADER, measure
from .sampling import TECHNIQUES, draw_sample


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="samplemine",
        description="Event-log sampling quality and discovery-quality benchmarking",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sample", help="draw a sample from an event log")
    p.add_argument("log", help="event log (.csv, .xes, .xes.gz)")
    p.add_argument("--ratio", type=float, required=True)
    p.add_argument("--technique", choices=sorted(TECHNIQUES), default="simple")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True, help="output CSV path for the sample")
    p.set_defaults(handler=_cmd_sample)

    p = sub.add_parser("quality", help="score a sample against its parent log")
    p.add_argument("log", help="parent event log")
    p.add_argument("sample", help="sample log (CSV)")
    p.add_argument("--ratio", type=float, required=True)
    p.add_argument("--technique", default="simple", help="label for the output row")
    p.add_argument("--seed", type=int, default=0, help="label for the output row")
    p.set_defaults(handler=_cmd_quality)

    p = sub.add_parser("discover", help="discover a process tree from a log")
    p.add_argument("log")
    p.set_defaults(handler=_cmd_discover)

    p = sub.add_parser("conformance", help="entropy-based precision/recall of a model")
    p.add_argument("log")
    p.add_argument("tree", help="process tree, as text or a path to a text file")
    p.set_defaults(handler=_cmd_conformance)

    p = sub.add_parser("invitro", help="run the controlled experiment")
    p.add_argument("--config", help="configuration file (key = value)")
    p.add_argument("--out", required=True, help="records CSV output path")
    p.add_argument("--report", help="correlation report output path")
    p.add_argument("--plot-data", help="plot-ready long-format CSV output path")
    p.set_defaults(handler=_cmd_invitro)

    p = sub.add_parser("invivo", help="run the benchmark experiment on real logs")
    p.add_argument("logs", nargs="+", help="benchmark log paths")
    p.add_argument("--config", help="configuration file (key = value)")
    p.add_argument("--out", required=True, help="records CSV output path")
    p.add_argument("--report", help="correlation report output path")
    p.add_argument("--plot-data", help="plot-ready long-format CSV output path")
    p.set_defaults(handler=_cmd_invivo)

    p = sub.add_parser("correlate", help="correlation table from a records CSV")
    p.add_argument("records", help="records CSV produced by invitro/invivo")
    p.add_argument("--grouping", choices=["per-model", "per-log"], default="per-model")
    p.add_argument("--out", help="write the report here instead of stdout")
    p.set_defaults(handler=_cmd_correlate)
    return parser


def _cmd_sample(args) -> int:
    log = read_log(args.log)
    sample = draw_sample(log, args.ratio, args.seed, args.technique)
    with open(args.out, "wb") as fh:
        fh.write(write_csv(sample.log))
    print(
        f"sampled {sample.log.total_traces} of {sample.source_total} traces "
        f"({args.technique}, ratio {args.ratio}, seed {args.seed}) -> {args.out}"
    )
    return 0


def _cmd_quality(args) -> int:
    log = read_log(args.log)
    sample = read_log(args.sample)
    report = measure(log, sample, args.ratio)
    print(QUALITY_CSV_HEADER)
    print(report.csv_row(args.technique, args.seed))
    return 0


def _cmd_discover(args) -> int:
    log = read_log(args.log)
    print(discover(log))
    return 0


def _cmd_conformance(args) -> int:
    log = read_log(args.log)
    text = args.tree
    if os.path.exists(text):
        with open(text, "r", encoding="utf-8") as fh:
            text = fh.read()
    tree = parse_tree(text.strip())
    result = precision_recall(log, tree)
    print(CONFORMANCE_CSV_HEADER)
    print(result.csv_row())
    return 0


def _write_outputs(records, args) -> None:
    harness.write_records(records, args.out)
    print(f"{len(records)} records -> {args.out}")
    if args.report:
        table = harness.correlate(records, "per-model")
        with open(args.report, "w", encoding="utf-8") as fh:
            fh.write(harness.format_table1(table))
        print(f"report -> {args.report}")
    if args.plot_data:
        with open(args.plot_data, "w", encoding="utf-8") as fh:
            fh.write(harness.export_plot_data(records))
        print(f"plot data -> {args.plot_data}")


def _cmd_invitro(args) -> int:
    config = harness.load_config(args.config)
    records = harness.run_invitro(config)
    _write_outputs(records, args)
    return 0


def _cmd_invivo(args) -> int:
    config = harness.load_config(args.config)
    records = harness.run_invivo(args.logs, config)
    _write_outputs(records, args)
    return 0


def _cmd_correlate(args) -> int:
    records = harness.read_records(args.records)
    table = harness.correlate(records, args.grouping)
    text = harness.format_table1(table)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        print(f"report -> {args.out}")
    else:
        print(text, end="")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
