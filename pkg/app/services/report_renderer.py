"""
Rendering of reports as JSON, CSV or text.

JSON output is byte-stable for a given report: keys are sorted and only the
timing fields (wall_time_ms, elapsed_ms) vary between identical runs.
"""
import csv
import io
from typing import Union

import orjson

from app.config import get_settings
from app.models.schemas import (
    Certificate,
    CertificateReport,
    ExploreReport,
    IterationReport,
    IterationRunReport,
    OutputFormat,
    SequenceReport,
)
from app.services.qpoly import QPoly

Report = Union[SequenceReport, CertificateReport, IterationRunReport, ExploreReport]

TIMING_FIELDS = ("wall_time_ms", "elapsed_ms")

_CERT_COLUMNS = [
    "check_id",
    "property",
    "result",
    "matrix_size",
    "minor_order",
    "q_grid",
    "indeterminate",
    "method",
    "combo",
    "witness_rows",
    "witness_cols",
    "witness_value",
    "witness_q",
    "witness_index",
    "statement",
]


def dumps(data) -> bytes:
    return orjson.dumps(data, option=orjson.OPT_SORT_KEYS | orjson.OPT_INDENT_2)


def _coeffs(value) -> str:
    return orjson.dumps(value).decode() if value is not None else ""


def _poly_text(coeffs: list) -> str:
    return str(QPoly.from_json(coeffs))


class ReportRenderer:
    """Renders any report model in the requested output format."""

    def __init__(self, app_name: str | None = None):
        self.app_name = app_name or get_settings().app_name

    def render(self, report: Report, fmt: OutputFormat) -> str:
        if fmt == OutputFormat.JSON:
            return self.to_json(report)
        if fmt == OutputFormat.CSV:
            return self.to_csv(report)
        return self.to_text(report)

    # ------------------------------------------------------------------
    # JSON
    # ------------------------------------------------------------------

    def to_json(self, report: Report) -> str:
        return dumps(report.model_dump(mode="json")).decode() + "\n"

    # ------------------------------------------------------------------
    # CSV
    # ------------------------------------------------------------------

    def _cert_row(self, check_id: str, cert: Certificate) -> dict:
        w = cert.witness
        return {
            "check_id": check_id,
            "property": cert.property.value,
            "result": cert.result.value,
            "matrix_size": cert.matrix_size,
            "minor_order": cert.minor_order,
            "q_grid": " ".join(cert.q_grid or []),
            "indeterminate": str(cert.indeterminate).lower(),
            "method": cert.method.value if cert.method else "",
            "combo": cert.combo.value if cert.combo else "",
            "witness_rows": _coeffs(w.rows) if w else "",
            "witness_cols": _coeffs(w.cols) if w else "",
            "witness_value": _coeffs(w.value) if w else "",
            "witness_q": (w.q or "") if w else "",
            "witness_index": "" if not w or w.index is None else w.index,
            "statement": cert.statement,
        }

    def _iteration_rows(self, check_id: str, report: IterationReport) -> list[dict]:
        rows = []
        for level in report.levels:
            rows.append({
                "check_id": check_id,
                "level": level.level,
                "length": level.length,
                "nonnegative": str(level.nonnegative).lower(),
                "positive": str(level.positive).lower(),
                "first_failing_index": "" if level.first_failing_index is None else level.first_failing_index,
                "terms": _coeffs(level.terms),
            })
        return rows

    @staticmethod
    def _write(columns: list[str], rows: list[dict]) -> str:
        buffer = io.StringIO()
        writer = csv.DictWriter(buffer, fieldnames=columns, quoting=csv.QUOTE_MINIMAL, lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
        return buffer.getvalue()

    def to_csv(self, report: Report) -> str:
        if isinstance(report, SequenceReport):
            if report.rows is not None:
                rows = [{"row": i, "entries": _coeffs(r)} for i, r in enumerate(report.rows)]
                return self._write(["row", "entries"], rows)
            rows = [{"index": i, "value": _coeffs(t)} for i, t in enumerate(report.terms)]
            return self._write(["index", "value"], rows)
        if isinstance(report, CertificateReport):
            return self._write(_CERT_COLUMNS, [self._cert_row(report.property.value, report)])
        if isinstance(report, IterationRunReport):
            columns = ["check_id", "level", "length", "nonnegative", "positive", "first_failing_index", "terms"]
            return self._write(columns, self._iteration_rows(report.operator, report))

        cert_rows = [self._cert_row(c.check_id, c.certificate) for c in report.checks if c.certificate]
        out = self._write(_CERT_COLUMNS, cert_rows) if cert_rows else ""
        for check in report.checks:
            if check.iteration is not None:
                columns = ["check_id", "level", "length", "nonnegative", "positive", "first_failing_index", "terms"]
                out += self._write(columns, self._iteration_rows(check.check_id, check.iteration))
        return out

    # ------------------------------------------------------------------
    # Text
    # ------------------------------------------------------------------

    def _cert_text(self, cert: Certificate, indent: str = "") -> list[str]:
        lines = [f"{indent}{cert.property.value}: {cert.result.value.upper()}"]
        lines.append(f"{indent}  {cert.statement}")
        if cert.q_grid:
            lines.append(f"{indent}  q grid: {', '.join(cert.q_grid)}")
        if cert.combo:
            lines.append(f"{indent}  factor order: {cert.combo.value}")
        w = cert.witness
        if w is not None:
            parts = []
            if w.matrix:
                parts.append(f"matrix={w.matrix}")
            if w.rows is not None:
                parts.append(f"rows={w.rows} cols={w.cols}")
            if w.index is not None:
                parts.append(f"index={w.index}")
            if w.pair is not None:
                parts.append(f"pair={w.pair}")
            if w.level is not None:
                parts.append(f"level={w.level}")
            if w.q is not None:
                parts.append(f"q={w.q}")
            if w.value is not None:
                parts.append(f"value={_poly_text(w.value)}")
            lines.append(f"{indent}  witness: {' '.join(parts)}")
        lines.extend(f"{indent}  note: {note}" for note in cert.notes)
        return lines

    def _iteration_text(self, report: IterationReport, indent: str = "") -> list[str]:
        lines = [f"{indent}{report.operator} x{report.depth}: {report.result.value.upper()}",
                 f"{indent}  {report.statement}"]
        for level in report.levels:
            shown = ", ".join(_poly_text(t) for t in level.terms)
            more = ", ..." if level.truncated else ""
            lines.append(f"{indent}  level {level.level} ({level.length} terms): {shown}{more}")
        return lines

    def to_text(self, report: Report) -> str:
        if isinstance(report, SequenceReport):
            if report.rows is not None:
                return "\n".join(
                    "  ".join(_poly_text(e) for e in row) for row in report.rows
                ) + "\n"
            numeric = all(len(t) <= 1 for t in report.terms)
            if numeric:
                return " ".join(_poly_text(t) for t in report.terms) + "\n"
            return "\n".join(_coeffs(t) for t in report.terms) + "\n"

        header = f"{self.app_name} {report.tool_version}"
        if isinstance(report, CertificateReport):
            return "\n".join([header] + self._cert_text(report)) + "\n"
        if isinstance(report, IterationRunReport):
            return "\n".join([header] + self._iteration_text(report)) + "\n"

        lines = [header, report.statement]
        for check in report.checks:
            lines.append(f"[{check.check_id}] {check.wall_time_ms} ms")
            if check.certificate is not None:
                lines.extend(self._cert_text(check.certificate, indent="  "))
            if check.iteration is not None:
                lines.extend(self._iteration_text(check.iteration, indent="  "))
        return "\n".join(lines) + "\n"


def strip_timing(data):
    """Drop timing fields recursively, for comparing re-run reports."""
    if isinstance(data, dict):
        return {k: strip_timing(v) for k, v in data.items() if k not in TIMING_FIELDS}
    if isinstance(data, list):
        return [strip_timing(v) for v in data]
    return data
