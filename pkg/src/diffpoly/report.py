"""Reports: an ordered set of fields plus named tables, in human or machine form.

The machine form is line based::

    diffpoly-report 1
    key=<json value>
    ...
    [section]
    col=<json>\\tcol=<json>

and parses back to an equal Report. ``timing_ms`` is the only field that varies
between identical runs.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

HEADER = "diffpoly-report 1"
VOLATILE = ("timing_ms",)


@dataclass
class Report:
    fields: list[tuple[str, Any]] = field(default_factory=list)
    sections: list[tuple[str, list[list[tuple[str, Any]]]]] = field(default_factory=list)

    def add(self, key: str, value: Any) -> None:
        self.fields.append((key, _plain(value)))

    def add_row(self, section: str, /, **values: Any) -> None:
        self.section(section).append([(k, _plain(v)) for k, v in values.items()])

    def section(self, name: str) -> list[list[tuple[str, Any]]]:
        for n, rows in self.sections:
            if n == name:
                return rows
        rows: list[list[tuple[str, Any]]] = []
        self.sections.append((name, rows))
        return rows

    def get(self, key: str, default=None):
        for k, v in self.fields:
            if k == key:
                return v
        return default

    def rows(self, name: str) -> list[dict[str, Any]]:
        for n, rows in self.sections:
            if n == name:
                return [dict(r) for r in rows]
        return []

    def stable(self) -> "Report":
        """Copy without the volatile fields, for golden comparison."""
        return Report([(k, v) for k, v in self.fields if k not in VOLATILE],
                      [(n, [list(r) for r in rows]) for n, rows in self.sections])


def _plain(v: Any) -> Any:
    if isinstance(v, (list, tuple)):
        return [_plain(x) for x in v]
    return v


def _dump(v: Any) -> str:
    return json.dumps(v, ensure_ascii=False, separators=(",", ":"))


def emit_machine(report: Report) -> str:
    lines = [HEADER]
    lines += [f"{k}={_dump(v)}" for k, v in report.fields]
    for name, rows in report.sections:
        lines.append(f"[{name}]")
        lines += ["\t".join(f"{k}={_dump(v)}" for k, v in row) for row in rows]
    return "\n".join(lines) + "\n"


def _human(v: Any) -> str:
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, list):
        return "[" + ", ".join(_human(x) for x in v) + "]"
    return str(v).replace("\n", " | ").strip(" |")


def emit_human(report: Report) -> str:
    width = max((len(k) for k, _ in report.fields), default=0)
    lines = [f"{k.ljust(width)}  {_human(v)}" for k, v in report.fields]
    for name, rows in report.sections:
        lines += ["", f"{name} ({len(rows)})"]
        if not rows:
            continue
        cols: list[str] = []
        for row in rows:
            cols += [k for k, _ in row if k not in cols]
        table = [cols] + [[_human(dict(row).get(c, "")) for c in cols] for row in rows]
        widths = [max(len(r[i]) for r in table) for i in range(len(cols))]
        for r in table:
            lines.append("  " + "  ".join(cell.ljust(w) for cell, w in zip(r, widths)).rstrip())
    return "\n".join(lines) + "\n"


def emit(report: Report, fmt: str = "human") -> str:
    if fmt == "machine":
        return emit_machine(report)
    if fmt == "human":
        return emit_human(report)
    raise ValueError(f"unknown format {fmt!r}")


class ReportFormatError(ValueError):
    pass


def _pair(text: str, lineno: int) -> tuple[str, Any]:
    key, sep, value = text.partition("=")
    if not sep or not key:
        raise ReportFormatError(f"line {lineno}: expected key=value, got {text!r}")
    try:
        return key, json.loads(value)
    except json.JSONDecodeError as exc:
        raise ReportFormatError(f"line {lineno}: bad value for {key}: {exc}") from None


def parse_reports(text: str) -> list[Report]:
    """Parse one or more machine-format reports."""
    reports: list[Report] = []
    current: Report | None = None
    rows = None
    # json.dumps keeps U+0085, U+2028 and friends literal, so split on newlines only
    for n, line in enumerate(text.split("\n"), start=1):
        line = line.removesuffix("\r")
        if line == HEADER:
            current = Report()
            reports.append(current)
            rows = None
            continue
        if not line:
            continue
        if current is None:
            raise ReportFormatError(f"line {n}: missing report header")
        if line.startswith("[") and line.endswith("]"):
            rows = current.section(line[1:-1])
        elif rows is None:
            current.fields.append(_pair(line, n))
        else:
            rows.append([_pair(cell, n) for cell in line.split("\t")])
    return reports


def parse_report(text: str) -> Report:
    reports = parse_reports(text)
    if len(reports) != 1:
        raise ReportFormatError(f"expected one report, found {len(reports)}")
    return reports[0]
