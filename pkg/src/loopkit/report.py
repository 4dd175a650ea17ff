"""Serialization of theorem reports: tab-separated records, JSON, plain text."""

from __future__ import annotations

import csv
import io
import json
from typing import Iterable, TextIO

from .theorems import Record, TheoremReport

FIELDS = ("theorem_id", "mode", "loop_name", "verdict", "witness")


def _json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), default=_default)


def _default(obj):
    if hasattr(obj, "tolist"):
        return obj.tolist()
    if isinstance(obj, (set, frozenset, tuple)):
        return list(obj)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def all_records(reports: Iterable[TheoremReport]) -> list[Record]:
    records = [r for rep in reports for r in rep.records]
    records.sort(key=Record.sort_key)
    return records


def write_records(reports: Iterable[TheoremReport], out: TextIO) -> None:
    """One tab-separated line per (theorem, mode, instance); witness as JSON."""
    writer = csv.writer(out, delimiter="\t", lineterminator="\n", quoting=csv.QUOTE_MINIMAL)
    writer.writerow(FIELDS)
    for r in all_records(reports):
        writer.writerow([r.theorem_id, r.mode, r.loop_name, r.verdict, _json(r.witness)])


def records_text(reports: Iterable[TheoremReport]) -> str:
    buf = io.StringIO()
    write_records(reports, buf)
    return buf.getvalue()


def read_records(text: str) -> list[Record]:
    reader = csv.reader(io.StringIO(text), delimiter="\t")
    header = next(reader)
    if tuple(header) != FIELDS:
        raise ValueError(f"unexpected header {header}")
    return [Record(tid, mode, name, verdict, json.loads(w)) for tid, mode, name, verdict, w in reader]


def report_dict(rep: TheoremReport) -> dict:
    return {
        "theorem_id": rep.theorem_id,
        "mode": rep.mode,
        "asserted": rep.asserted,
        "description": rep.description,
        "filters": list(rep.filters),
        "instances": rep.instances,
        "passes": rep.passes,
        "skipped": rep.skipped,
        "failures": [{"loop_name": r.loop_name, "witness": r.witness} for r in rep.failures],
    }


def reports_json(reports: Iterable[TheoremReport]) -> str:
    return json.dumps([report_dict(r) for r in reports], indent=2, sort_keys=False, default=_default)


def reports_text(reports: Iterable[TheoremReport], show_failures: int = 3) -> str:
    lines = []
    for rep in reports:
        lines.append(rep.summary())
        for r in rep.failures[:show_failures]:
            w = {k: v for k, v in r.witness.items() if k not in ("table", "partner_table")}
            lines.append(f"    {r.loop_name}: {_json(w)}")
        if len(rep.failures) > show_failures:
            lines.append(f"    ... {len(rep.failures) - show_failures} more")
    return "\n".join(lines) + "\n"


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, default=_default)
