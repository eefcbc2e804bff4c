"""JSON and CSV rendering of reports, and export of their JSON schemas."""

import csv
import io
import json
import sys
from pathlib import Path

from pydantic import BaseModel

from src.core.logging import get_logger
from src.schemas.reports import (
    REPORT_MODELS,
    DecompositionAuditReport,
    PhysicalGatesReport,
    ProtocolVerificationReport,
    SweepResult,
    TimingReport,
)

logger = get_logger(__name__)

CSV_HEADERS: dict[type[BaseModel], tuple[str, ...]] = {
    ProtocolVerificationReport: ("x", "x_bits", "sample", "b1", "b2", "a1", "a2", "residual"),
    DecompositionAuditReport: (
        "x",
        "x_bits",
        "p",
        "published",
        "published_length",
        "match",
        "max_deviation",
        "synthesized",
        "synthesized_length",
    ),
    PhysicalGatesReport: ("gate", "residual", "leakage", "passed"),
    SweepResult: ("y_gg", "y_ge", "y_eg", "y_ee", "offset_fraction", "fidelity"),
    TimingReport: ("quantity", "seconds", "ratio", "passed"),
}


def _csv_rows(report: BaseModel) -> list[list[object]]:
    match report:
        case ProtocolVerificationReport():
            return [[r.x, r.x_bits, r.sample, r.b1, r.b2, r.a1, r.a2, r.residual] for r in report.results]
        case DecompositionAuditReport():
            return [
                [
                    r.x,
                    r.x_bits,
                    " ".join(r.p),
                    " ".join(r.published),
                    r.published_length,
                    r.match,
                    r.max_deviation,
                    " ".join(r.synthesized),
                    r.synthesized_length,
                ]
                for r in report.rows
            ]
        case PhysicalGatesReport():
            return [[c.gate, c.residual, c.leakage, c.passed] for c in (report.cnot, report.hadamard)]
        case SweepResult():
            return [[r.y_gg, r.y_ge, r.y_eg, r.y_ee, r.offset_fraction, r.fidelity] for r in report.rows]
        case TimingReport():
            times = [
                "cnot_stage_time_s",
                "jc_stage_time_s",
                "pulse_time_s",
                "photon_lifetime_s",
                "effective_decay_time_s",
                "radiative_time_s",
                "total_protocol_time_s",
            ]
            rows: list[list[object]] = [[name, getattr(report, name), "", ""] for name in times]
            rows.extend([c.name, c.shorter_s, c.ratio, c.passed] for c in report.checks)
            return rows
    raise TypeError(f"no CSV layout for {type(report).__name__}")


def render_report(report: BaseModel, output_format: str) -> str:
    """Serialize ``report`` as indented JSON or as CSV with its fixed header."""
    if output_format == "json":
        return report.model_dump_json(indent=2) + "\n"
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_HEADERS[type(report)])
    writer.writerows(_csv_rows(report))
    return buffer.getvalue()


def write_report(report: BaseModel, output_format: str, out: str | None = None) -> None:
    """Write to ``out`` or, when unset, to stdout."""
    text = render_report(report, output_format)
    if out is None:
        sys.stdout.write(text)
        return
    path = Path(out)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")
    logger.info(f"Wrote {output_format} report to {path}")


def export_schemas(directory: str = "docs/schemas") -> list[str]:
    """Write ``<name>.schema.json`` for every report model."""
    target = Path(directory)
    target.mkdir(parents=True, exist_ok=True)
    written = []
    for name, model in REPORT_MODELS.items():
        path = target / f"{name}.schema.json"
        path.write_text(json.dumps(model.model_json_schema(), indent=2) + "\n", encoding="utf-8")
        written.append(str(path))
    return written
