"""
Rendering of command results as json, csv or text
"""

import csv
import io
from fractions import Fraction
from math import lcm
from typing import Dict, List, Literal, Mapping, Sequence, Tuple

from pydantic import BaseModel, ConfigDict, TypeAdapter

from ..alpha import AlphaResult, CertificateCheck
from ..ample import AmplenessReport
from ..builder import (
    SurfaceModel,
    rational_class,
    report_coordinates,
    report_labels,
    report_matrix,
    self_intersections,
)
from ..lattice import DivisorClass
from ..typing import IntMatrix, Rational
from .spec import Combination, format_surface_spec

OutputFormat = Literal["json", "csv", "text"]


def _table(header: Sequence[str], rows: Sequence[Sequence[object]]) -> str:
    cells = [[str(x) for x in header]] + [[_cell(x) for x in row] for row in rows]
    widths = [max(len(row[j]) for row in cells) for j in range(len(header))]
    return "\n".join(
        "  ".join(cell.rjust(width) for cell, width in zip(row, widths)).rstrip()
        for row in cells
    ) + "\n"


def _cell(value: object) -> str:
    if isinstance(value, bool):
        return str(value).lower()
    return "" if value is None else str(value)


def _csv(header: Sequence[str], rows: Sequence[Sequence[object]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows([[_cell(x) for x in row] for row in rows])
    return buffer.getvalue()


def _report_rational(model: SurfaceModel, vector: Sequence[Fraction]) -> List[Fraction]:
    scale = lcm(*(x.denominator for x in vector))
    cls = DivisorClass(
        coefficients=tuple(int(x * scale) for x in vector), basis_id=model.basis_id
    )
    return [Fraction(x, scale) for x in report_coordinates(model, cls)]


class BuildReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    basis: Tuple[str, ...]
    intersection_matrix: IntMatrix
    curves: Dict[str, List[int]]
    self_intersections: Dict[str, int]
    divisors: Dict[str, List[Rational]]


def build_report(model: SurfaceModel, divisors: Mapping[str, Combination]) -> BuildReport:
    return BuildReport(
        basis=report_labels(model),
        intersection_matrix=report_matrix(model),
        curves={label: report_coordinates(model, cls) for label, cls in model.curves.items()},
        self_intersections=self_intersections(model),
        divisors={
            name: _report_rational(model, rational_class(model, combination))
            for name, combination in divisors.items()
        },
    )


def render_build(
    model: SurfaceModel, divisors: Mapping[str, Combination], output_format: OutputFormat
) -> str:
    report = build_report(model, divisors)
    if output_format == "json":
        return report.model_dump_json(indent=2) + "\n"
    if output_format == "csv":
        rows = [(label, *row) for label, row in zip(report.basis, report.intersection_matrix)]
        return _csv(("", *report.basis), rows)
    # the comment block keeps the output a valid surface description
    lines = [f"# basis: {' '.join(report.basis)}", "# intersection matrix:"]
    lines.extend(
        "#   " + " ".join(f"{x:>3}" for x in row) for row in report.intersection_matrix
    )
    lines.append("# curve classes:")
    lines.extend(
        f"#   {label} = {coordinates}  self-intersection {report.self_intersections[label]}"
        for label, coordinates in report.curves.items()
    )
    return format_surface_spec(model, divisors) + "\n".join(lines) + "\n"


def render_ample(report: AmplenessReport, output_format: OutputFormat) -> str:
    if output_format == "json":
        return report.model_dump_json(indent=2) + "\n"
    rows: List[Tuple[str, int, bool]] = [
        ("L^2", report.self_intersection, report.self_intersection > 0)
    ]
    rows.extend((f"L.{label}", value, value > 0) for label, value in report.per_curve.items())
    if output_format == "csv":
        return _csv(("quantity", "value", "positive"), rows)
    footer = [f"verdict: {report.verdict}"]
    if report.failures:
        footer.append(f"failures: {', '.join(report.failures)}")
    footer.append(f"note: {report.assertion_note}")
    return _table(("quantity", "value", "positive"), rows) + "\n".join(footer) + "\n"


class AlphaReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    divisor: str
    scope: str
    results: Tuple[AlphaResult, ...]
    matches_closed_form: Tuple[bool, ...] | None = None
    infimum: Rational
    infimum_attained_at: Tuple[int, ...]


def scope_label(curve_labels: Sequence[str]) -> str:
    return "alpha_k restricted to divisors supported on " + " ".join(curve_labels)


def render_alpha(report: AlphaReport, output_format: OutputFormat) -> str:
    if output_format == "json":
        return report.model_dump_json(indent=2) + "\n"
    header = ["k", "alpha_k", "m_star", "achieved_by"]
    rows: List[List[object]] = [
        [r.k, r.alpha_k, r.m_star, r.achieved_by] for r in report.results
    ]
    if report.matches_closed_form is not None:
        header.append("matches_closed_form")
        for row, match in zip(rows, report.matches_closed_form):
            row.append(match)
    if output_format == "csv":
        return _csv(header, rows)
    attained = ", ".join(str(k) for k in report.infimum_attained_at)
    return (
        f"# {report.scope}\n"
        + _table(header, rows)
        + f"minimum {report.infimum} at k = {attained}\n"
    )


class CertificateRow(BaseModel):
    model_config = ConfigDict(frozen=True)

    k: int
    check: CertificateCheck
    alpha_k_bound: Rational | None
    matches_closed_form: bool | None = None


_CERTIFICATE_ROWS = TypeAdapter(List[CertificateRow])


def render_verify(rows: Sequence[CertificateRow], output_format: OutputFormat) -> str:
    if output_format == "json":
        return _CERTIFICATE_ROWS.dump_json(list(rows), indent=2).decode() + "\n"
    header = ["k", "equivalent", "lct", "alpha_k_bound"]
    compare = any(row.matches_closed_form is not None for row in rows)
    if compare:
        header.append("matches_closed_form")
    table = [
        [row.k, row.check.equivalent, row.check.lct, row.alpha_k_bound]
        + ([row.matches_closed_form] if compare else [])
        for row in rows
    ]
    return _csv(header, table) if output_format == "csv" else _table(header, table)


class OracleRow(BaseModel):
    model_config = ConfigDict(frozen=True)

    k: int
    alpha_k: Rational
    oracle_alpha_k: Rational
    same_witness: bool

    @property
    def agrees(self) -> bool:
        return self.alpha_k == self.oracle_alpha_k and self.same_witness


_ORACLE_ROWS = TypeAdapter(List[OracleRow])


def render_oracle(rows: Sequence[OracleRow], output_format: OutputFormat) -> str:
    if output_format == "json":
        return _ORACLE_ROWS.dump_json(list(rows), indent=2).decode() + "\n"
    header = ["k", "alpha_k", "oracle_alpha_k", "same_witness"]
    table = [[row.k, row.alpha_k, row.oracle_alpha_k, row.same_witness] for row in rows]
    return _csv(header, table) if output_format == "csv" else _table(header, table)
