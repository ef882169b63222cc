"""Audit orchestration and report rendering (text and JSON)."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

from .audit import (
    DEFAULT_BINS,
    DEFAULT_MIN_SUPPORT,
    DEFAULT_TOLERANCE,
    FairnessResult,
    evaluate,
)
from .definitions import Definition
from .errors import AuditError
from .ingest import validate_dataset
from .metrics import RATE_NAMES, RateSet, rates
from .records import PredictionRecord, split_by_group
from .tradeoffs import CompatibilityReport, compatibility_report


@dataclass
class AuditReport:
    favourable: int
    tolerance: float
    group_sizes: dict[str, int]
    group_rates: dict[str, RateSet] | None
    results: list[FairnessResult]
    compatibility: CompatibilityReport | None
    findings: list[str]

    @property
    def all_satisfied(self) -> bool:
        return all(r.satisfied is True for r in self.results)


def run_audit(
    records: Sequence[PredictionRecord],
    definitions: Sequence[Definition],
    *,
    favourable: int,
    tolerance: float = DEFAULT_TOLERANCE,
    legitimate: Sequence[str] | None = None,
    bins: int = DEFAULT_BINS,
    min_support: int = DEFAULT_MIN_SUPPORT,
) -> AuditReport:
    """Audit records against the requested definitions.

    Raises on structurally unusable input (single group, missing required
    fields for a requested definition); data-quality observations that do
    not block the audit land in ``findings``.
    """
    grouped = split_by_group(records, favourable=favourable)
    findings = validate_dataset(records, definitions)

    group_rates: dict[str, RateSet] | None
    try:
        group_rates = {g: rates(m) for g, m in grouped.matrices().items()}
    except AuditError:
        group_rates = None

    results = [
        evaluate(
            grouped,
            d,
            tolerance=tolerance,
            legitimate=legitimate,
            bins=bins,
            min_support=min_support,
        )
        for d in definitions
    ]

    compatibility: CompatibilityReport | None
    try:
        compatibility = compatibility_report(grouped, set(definitions), tolerance)
    except AuditError as exc:
        compatibility = None
        findings.append(f"compatibility diagnostics skipped: {exc}")

    return AuditReport(
        favourable=grouped.favourable,
        tolerance=tolerance,
        group_sizes=grouped.sizes(),
        group_rates=group_rates,
        results=results,
        compatibility=compatibility,
        findings=findings,
    )


def _fmt(value: float | int | None) -> str:
    if value is None:
        return "undefined"
    if isinstance(value, int):
        return str(value)
    return f"{value:.4f}"


def render_report(report: AuditReport) -> str:
    """Deterministic human-readable rendering, 4 decimals throughout."""
    lines: list[str] = []
    lines.append("FAIRNESS AUDIT")
    lines.append("==============")
    lines.append(f"favourable outcome: {report.favourable}")
    lines.append(f"tolerance: {report.tolerance:.4f}")
    lines.append("")

    lines.append("Group statistics")
    lines.append("----------------")
    for g, size in report.group_sizes.items():
        lines.append(f"group {g} (n={size})")
        if report.group_rates is None:
            lines.append("  rates unavailable: labels or predictions missing")
            continue
        rs = report.group_rates[g]
        for fld, name in RATE_NAMES.items():
            lines.append(f"  {name:<4}{_fmt(getattr(rs, fld))}")
    lines.append("")

    lines.append("Definition results")
    lines.append("------------------")
    for r in report.results:
        if r.satisfied is True:
            tag, verdict = "PASS", f"max gap {_fmt(r.max_gap)} <= tolerance {r.tolerance:.4f}"
        elif r.satisfied is False:
            tag, verdict = "FAIL", f"max gap {_fmt(r.max_gap)} > tolerance {r.tolerance:.4f}"
        else:
            tag, verdict = "N/A", "not evaluable"
        lines.append(f"[{tag}] {r.definition.value} ({r.definition.family.value}): {verdict}")
        for g, stats in r.per_group_stats.items():
            parts = ", ".join(f"{k} {_fmt(v)}" for k, v in stats.items())
            lines.append(f"      {g}: {parts}")
        for note in r.notes:
            lines.append(f"      note: {note}")
    lines.append("")

    if report.compatibility is not None:
        c = report.compatibility
        lines.append("Compatibility")
        lines.append("-------------")
        lines.append(
            f"base-rate gap {_fmt(c.base_rate_gap)} "
            f"(equal: {'yes' if c.equal_base_rates else 'no'}); "
            f"perfect classifier: {'yes' if c.perfect_classifier else 'no'}"
        )
        if c.conflicts:
            for (a, b), text in c.conflicts:
                lines.append(f"  conflict {a} / {b}: {text}")
        else:
            lines.append("  no conflicts among the requested definitions")
        lines.append("")

    if report.findings:
        lines.append("Findings")
        lines.append("--------")
        for finding in report.findings:
            lines.append(f"  - {finding}")
        lines.append("")

    return "\n".join(lines)


def report_to_dict(report: AuditReport) -> dict:
    groups = {}
    for g, size in report.group_sizes.items():
        groups[g] = {
            "size": size,
            "rates": report.group_rates[g].as_dict() if report.group_rates else None,
        }
    return {
        "favourable": report.favourable,
        "tolerance": report.tolerance,
        "satisfied": report.all_satisfied,
        "groups": groups,
        "results": [r.to_dict() for r in report.results],
        "compatibility": report.compatibility.to_dict() if report.compatibility else None,
        "findings": list(report.findings),
    }


def render_report_json(report: AuditReport) -> str:
    return json.dumps(report_to_dict(report), indent=2, sort_keys=True) + "\n"
