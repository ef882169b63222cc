"""Diagnosis of mutually incompatible fairness targets on a given dataset.

Sufficiency-style and separation-style definitions can hold together only
when the groups share a base rate or the classifier makes no errors;
independence-style definitions additionally clash with both other families
once base rates differ. This module flags those situations; deciding which
target to keep is the job of the guided selector, not of the diagnostics.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

from .audit import DEFAULT_TOLERANCE
from .definitions import Definition, Family
from .errors import AuditError, InputError
from .records import GroupedPredictions


@dataclass(frozen=True)
class CompatibilityReport:
    base_rate_gap: float
    equal_base_rates: bool
    perfect_classifier: bool
    conflicts: list[tuple[tuple[str, str], str]]

    def to_dict(self) -> dict:
        return {
            "base_rate_gap": self.base_rate_gap,
            "equal_base_rates": self.equal_base_rates,
            "perfect_classifier": self.perfect_classifier,
            "conflicts": [
                {"pair": list(pair), "explanation": text}
                for pair, text in self.conflicts
            ],
        }


def base_rate_gap(grouped: GroupedPredictions) -> float:
    """Largest pairwise difference of per-group base rates BR = P / (P + N)."""
    brs = []
    for g, recs in grouped.groups.items():
        missing = sum(1 for r in recs if r.y_true is None)
        if missing:
            raise AuditError(
                f"ground truth required to compute base rates: group {g!r} has "
                f"{missing} record(s) without y_true"
            )
        brs.append(sum(1 for r in recs if r.y_true == 1) / len(recs))
    return max(brs) - min(brs)


def _is_perfect(grouped: GroupedPredictions) -> bool:
    # Judged on the supplied predictions, the only observable proxy for
    # separability. Score-only data cannot demonstrate perfection.
    for recs in grouped.groups.values():
        for r in recs:
            if r.y_pred is None or r.y_pred != r.y_true:
                return False
    return True


def compatibility_report(
    grouped: GroupedPredictions,
    targets: Iterable[Definition],
    tolerance: float = DEFAULT_TOLERANCE,
) -> CompatibilityReport:
    """Flag pairs of requested definitions that cannot hold together here.

    A cross-family pair is compatible only when the groups' base rates agree
    within ``tolerance`` or the classifier is error-free on every group.
    Beyond the sufficiency-vs-separation case the family-level reading is a
    heuristic extrapolation and is labelled as such in the explanation.
    """
    target_set = set(targets)
    if not target_set:
        raise InputError("targets must be a non-empty set of definitions")

    gap = base_rate_gap(grouped)
    equal = gap <= tolerance
    perfect = _is_perfect(grouped)

    conflicts: list[tuple[tuple[str, str], str]] = []
    if not equal and not perfect:
        ordered = sorted(target_set, key=lambda d: d.value)
        for a, b in combinations(ordered, 2):
            fa, fb = a.family, b.family
            if fa is fb:
                continue
            families = {fa, fb}
            if families == {Family.SUFFICIENCY, Family.SEPARATION}:
                text = (
                    f"{a.value} ({fa.value}) and {b.value} ({fb.value}) cannot both hold: "
                    f"base-rate gap {gap:.4f} exceeds tolerance {tolerance} and the "
                    "classifier is not error-free"
                )
                if {a, b} != {Definition.CALIBRATION, Definition.EQUALISED_ODDS}:
                    text += " (heuristic family-level diagnosis)"
            else:
                other = (fb if fa is Family.INDEPENDENCE else fa).value
                text = (
                    f"{a.value} and {b.value}: equalising favourable-outcome rates "
                    f"despite a base-rate gap of {gap:.4f} forces errors that break "
                    f"{other.lower()}-style equality (heuristic family-level diagnosis)"
                )
            conflicts.append(((a.value, b.value), text))

    return CompatibilityReport(
        base_rate_gap=gap,
        equal_base_rates=equal,
        perfect_classifier=perfect,
        conflicts=conflicts,
    )
