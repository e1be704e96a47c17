"""Report serialization (JSON, CSV) and rich console tables.

A JSON report is one document ``{"meta": ..., "records": [...], "summary": ...}``.
Everything run-dependent (timestamp, wall time) lives under ``meta["header"]`` so
two runs of the same spec can be compared with ``strip_header``.
"""
from __future__ import annotations

import csv
import io
import json
import math
from datetime import datetime, timezone
from typing import Any, Dict, Iterable, List, Optional, Sequence

import numpy as np
from rich import box
from rich.table import Table

from .. import __version__
from ..checks.base import CheckRecord, margin_summary

CSV_COLUMNS = ("check", "a", "b", "s", "q", "side", "lhs", "rhs", "margin", "case", "pass", "err_estimate")


def _clean(value: Any) -> Any:
    """numpy scalars become Python values and non-finite floats become null, so the
    document stays valid JSON."""
    if isinstance(value, np.generic):
        value = value.item()
    if isinstance(value, float) and not math.isfinite(value):
        return None
    if isinstance(value, dict):
        return {k: _clean(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_clean(v) for v in value]
    return value


def summarize(records: Sequence[CheckRecord], errors: Sequence[Dict[str, Any]] = ()) -> Dict[str, Any]:
    passed = sum(1 for r in records if r.passed)
    summary = {
        "records": len(records),
        "passed": passed,
        "failed": len(records) - passed,
        "errors": len(errors),
        "by_check": {},
    }
    summary.update({k: v for k, v in margin_summary(r.margin for r in records).items() if k != "count"})
    by_check: Dict[str, Dict[str, int]] = {}
    for r in records:
        entry = by_check.setdefault(r.check, {"records": 0, "failed": 0})
        entry["records"] += 1
        entry["failed"] += 0 if r.passed else 1
    summary["by_check"] = dict(sorted(by_check.items()))
    return summary


def build_report(records: Sequence[CheckRecord], errors: Sequence[Dict[str, Any]] = (),
                 spec: Optional[Dict[str, Any]] = None, wall_time: float = 0.0) -> Dict[str, Any]:
    return _clean({
        "meta": {
            "header": {
                "generated_at": datetime.now(timezone.utc).isoformat(timespec="seconds"),
                "wall_time_s": round(wall_time, 3),
            },
            "tool": "geoconvex",
            "version": __version__,
            "spec": spec or {},
        },
        "records": [r.to_dict() for r in records],
        "errors": list(errors),
        "summary": summarize(records, errors),
    })


def strip_header(report: Dict[str, Any]) -> Dict[str, Any]:
    out = dict(report)
    out["meta"] = {k: v for k, v in report.get("meta", {}).items() if k != "header"}
    return out


def dumps_json(report: Dict[str, Any]) -> str:
    return json.dumps(report, indent=2, sort_keys=True, allow_nan=False) + "\n"


def _fmt(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return "" if math.isnan(value) else f"{value:.17g}"
    return "" if value is None else str(value)


def dumps_csv(records: Iterable[CheckRecord]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for record in records:
        row = record.to_dict()
        writer.writerow([_fmt(row[col]) for col in CSV_COLUMNS])
    return buf.getvalue()


def write_report(path: str, records: Sequence[CheckRecord], report: Dict[str, Any], fmt: str = "json") -> None:
    text = dumps_csv(records) if fmt == "csv" else dumps_json(report)
    with open(path, "w", encoding="utf-8", newline="") as f:
        f.write(text)


# --------------------------------------------------------------------------- #
# Console tables
# --------------------------------------------------------------------------- #


def _num(value: float) -> str:
    if value is None or (isinstance(value, float) and math.isnan(value)):
        return "-"
    return f"{value:.6g}"


def records_table(records: Sequence[CheckRecord], title: str = "geoconvex") -> Table:
    table = Table(title=title, box=box.SIMPLE_HEAVY)
    for col, justify in (("check", "left"), ("a", "right"), ("b", "right"), ("s", "right"), ("q", "right"),
                         ("side", "left"), ("lhs", "right"), ("rhs", "right"), ("margin", "right"),
                         ("case", "left"), ("pass", "center")):
        table.add_column(col, justify=justify)
    for r in records:
        table.add_row(
            r.check, _num(r.a), _num(r.b), _num(r.s), _num(r.q), r.side,
            _num(r.lhs), _num(r.rhs), _num(r.margin), r.case or "-",
            "[green]ok[/green]" if r.passed else "[bold red]FAIL[/bold red]",
        )
    return table


def mapping_table(rows: Dict[str, Any], title: str) -> Table:
    table = Table(title=title, box=box.SIMPLE)
    table.add_column("field")
    table.add_column("value", justify="right")
    for key, value in rows.items():
        table.add_row(str(key), _num(value) if isinstance(value, float) else str(value))
    return table


def catalog_table(entries: Dict[str, Any]) -> Table:
    table = Table(title="function catalog", box=box.SIMPLE)
    for col in ("name", "f", "params", "domain", "geometrically convex"):
        table.add_column(col)
    for name, entry in entries.items():
        domain = f"[{entry.domain.a:g}, {entry.domain.b:g}]" if entry.domain else "-"
        params = ", ".join(f"{k}={v:g}" for k, v in sorted(entry.params.items())) or "-"
        table.add_row(name, entry.source, params, domain, "yes" if entry.geometrically_convex else "-")
    return table


def records_from_dicts(rows: List[Dict[str, Any]]) -> List[CheckRecord]:
    """Inverse of ``CheckRecord.to_dict`` for reports read back from disk."""
    out = []
    for row in rows:
        out.append(CheckRecord(
            check=row["check"], side=row["side"],
            lhs=_float(row["lhs"]), rhs=_float(row["rhs"]), margin=_float(row["margin"]),
            passed=bool(row["pass"]), a=_float(row["a"]), b=_float(row["b"]),
            s=_float(row["s"]), q=_float(row["q"]), case=row.get("case") or "",
            err_estimate=_float(row.get("err_estimate", 0.0)), extra=dict(row.get("extra") or {}),
        ))
    return out


def _float(value: Any) -> float:
    return math.nan if value is None else float(value)
