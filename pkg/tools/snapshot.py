"""Snapshot utility for the built-in verify suite.

Usage:
  python -m tools.snapshot <snapshot.json>            # write a new snapshot
  python -m tools.snapshot <snapshot.json> --compare  # diff the current run against it

Reports are compared with their run header stripped, record by record, so two
runs of the same code and seed must match exactly.
"""
import argparse
import json
import sys

from rich.console import Console

from geoconvex.cli.suite import run_full_suite
from geoconvex.config import load_json, save_json
from geoconvex.render.report import build_report, dumps_json, records_from_dicts, strip_header


def current_report(seed: int):
    result = run_full_suite(seed=seed)
    return strip_header(build_report(result.records, result.errors, {"suite": "full", "seed": seed}, result.wall_time))


def differences(old, new, limit: int = 20):
    # raw rows compare cleanly: non-finite values are already null on both sides
    old_rows, new_rows = old["records"], new["records"]
    out = []
    if len(old_rows) != len(new_rows):
        out.append(f"record count {len(old_rows)} -> {len(new_rows)}")
    changed = [i for i, (x, y) in enumerate(zip(old_rows, new_rows)) if x != y]
    before = records_from_dicts([old_rows[i] for i in changed[:limit]])
    after = records_from_dicts([new_rows[i] for i in changed[:limit]])
    for i, x, y in zip(changed, before, after):
        out.append(f"#{i} {x.check}/{x.side}: margin {x.margin!r} -> {y.margin!r}, pass {x.passed} -> {y.passed}")
    return out


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("path")
    parser.add_argument("--compare", action="store_true")
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    console = Console(stderr=True)
    report = current_report(args.seed)
    if not args.compare:
        save_json(args.path, report)
        console.print(f"wrote {len(report['records'])} records to {args.path}")
        return 0

    # round-trip through JSON so both sides carry the same float formatting
    diffs = differences(load_json(args.path), json.loads(dumps_json(report)))
    for line in diffs:
        console.print(f"[red]{line}[/red]")
    console.print("[green]snapshot matches[/green]" if not diffs else f"{len(diffs)} difference(s)")
    return 1 if diffs else 0

if __name__ == '__main__':
    sys.exit(main())
