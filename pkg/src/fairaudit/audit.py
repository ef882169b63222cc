"""Evaluation of group-fairness definitions on partitioned predictions.

Every check reduces to the same shape: compute one or more named statistics
per group, take the largest pairwise gap, and compare it against a tolerance.
Exact equality, which the definitions literally demand, is unusable on
finite samples, so ``satisfied`` means ``max_gap <= tolerance``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .definitions import Definition
from .errors import AuditError, InputError
from .metrics import RATE_NAMES, rates
from .records import GroupedPredictions

DEFAULT_TOLERANCE = 0.01
DEFAULT_BINS = 10
DEFAULT_MIN_SUPPORT = 5


@dataclass(frozen=True)
class FairnessResult:
    """Verdict of one definition on one grouped dataset.

    ``satisfied`` is True/False when the definition could be evaluated and
    ``None`` when a required statistic was undefined (empty denominator,
    unsupported stratum or bin); the notes say why.
    """

    definition: Definition
    satisfied: bool | None
    per_group_stats: dict[str, dict[str, float | int | None]]
    max_gap: float | None
    tolerance: float
    notes: list[str]

    def to_dict(self) -> dict:
        return {
            "definition": self.definition.value,
            "family": self.definition.family.value,
            "satisfied": self.satisfied,
            "max_gap": self.max_gap,
            "tolerance": self.tolerance,
            "per_group_stats": self.per_group_stats,
            "notes": list(self.notes),
        }


def _spread(values: Iterable[Fraction | float | int]) -> Fraction | float | int:
    """Largest pairwise absolute difference, i.e. max - min.

    Gap comparisons run on exact rationals wherever the inputs are counts, so
    that mathematically equal statistics (say a TNR gap and the matching FPR
    gap) never disagree through rounding; floats appear only in reports.
    """
    vs = list(values)
    return max(vs) - min(vs)


def _require(grouped: GroupedPredictions, definition: Definition) -> None:
    for g, recs in grouped.groups.items():
        for r in recs:
            if definition.needs_ground_truth and r.y_true is None:
                raise AuditError(
                    f"ground truth required for {definition.value}: group {g!r} has records without y_true"
                )
            if definition.needs_predictions and r.y_pred is None:
                raise AuditError(
                    f"predictions required for {definition.value}: group {g!r} has records without y_pred"
                )
            if definition.needs_scores and r.score is None:
                raise AuditError(
                    f"score output required for {definition.value}: group {g!r} has records without score"
                )


def _verdict(
    definition: Definition,
    stats: dict[str, dict[str, float | int | None]],
    gap: Fraction | float | None,
    tolerance: float,
    notes: list[str],
) -> FairnessResult:
    # The verdict compares the exact gap; only the stored value is floated.
    satisfied = None if gap is None else bool(gap <= tolerance)
    return FairnessResult(
        definition=definition,
        satisfied=satisfied,
        per_group_stats=stats,
        max_gap=None if gap is None else float(gap),
        tolerance=tolerance,
        notes=notes,
    )


def _favourable_rate(grouped: GroupedPredictions, recs) -> Fraction:
    return Fraction(sum(1 for r in recs if r.y_pred == grouped.favourable), len(recs))


def _demographic_parity(
    grouped: GroupedPredictions, tolerance: float
) -> FairnessResult:
    # Favourable-outcome rate is NR when favourable = 0 and PR when favourable = 1.
    stat = "PR" if grouped.favourable == 1 else "NR"
    shares = {g: _favourable_rate(grouped, recs) for g, recs in grouped.groups.items()}
    stats = {g: {stat: float(share)} for g, share in shares.items()}
    gap = _spread(shares.values())
    notes = [f"comparing {stat} (favourable outcome = {grouped.favourable})"]
    return _verdict(Definition.DEMOGRAPHIC_PARITY, stats, gap, tolerance, notes)


def _equal_selection_parity(
    grouped: GroupedPredictions, tolerance: float
) -> FairnessResult:
    stats = {
        g: {"favourable_count": sum(1 for r in recs if r.y_pred == grouped.favourable)}
        for g, recs in grouped.groups.items()
    }
    gap = _spread(s["favourable_count"] for s in stats.values())
    notes = [
        "comparing absolute favourable-outcome counts; tolerance is in records"
    ]
    return _verdict(Definition.EQUAL_SELECTION_PARITY, stats, gap, tolerance, notes)


def _conditional_statistical_parity(
    grouped: GroupedPredictions,
    tolerance: float,
    legitimate: Sequence[str] | None,
    min_support: int,
) -> FairnessResult:
    if not legitimate:
        raise InputError(
            "ConditionalStatisticalParity needs the names of the legitimate attributes to stratify by"
        )
    strata: dict[str, dict[str, list]] = {}
    for g, recs in grouped.groups.items():
        for r in recs:
            attrs = r.legitimate or {}
            missing = [a for a in legitimate if a not in attrs]
            if missing:
                raise InputError(
                    f"record in group {g!r} lacks legitimate attribute(s): {', '.join(missing)}"
                )
            label = ",".join(f"{a}={attrs[a]}" for a in legitimate)
            strata.setdefault(label, {}).setdefault(g, []).append(r)

    group_names = list(grouped.groups)
    stats: dict[str, dict[str, float | int | None]] = {g: {} for g in group_names}
    notes: list[str] = []
    judged_gaps: list[Fraction] = []
    for label in sorted(strata):
        per_group = strata[label]
        counts = {g: len(per_group.get(g, [])) for g in group_names}
        if min(counts.values()) < min_support:
            detail = ", ".join(f"{g}={c}" for g, c in counts.items())
            notes.append(
                f"stratum {label} below min support ({detail}; min {min_support}): not judged"
            )
            continue
        shares = {g: _favourable_rate(grouped, per_group[g]) for g in group_names}
        for g in group_names:
            stats[g][label] = float(shares[g])
        judged_gaps.append(_spread(shares.values()))

    if not judged_gaps:
        notes.append("no stratum reaches min support in every group")
        return _verdict(
            Definition.CONDITIONAL_STATISTICAL_PARITY, stats, None, tolerance, notes
        )
    return _verdict(
        Definition.CONDITIONAL_STATISTICAL_PARITY,
        stats,
        max(judged_gaps),
        tolerance,
        notes,
    )


_RATE_STATS = {
    Definition.CONDITIONAL_USE_ACCURACY_EQUALITY: ("ppv", "npv"),
    Definition.PREDICTIVE_PARITY: ("ppv",),
    Definition.EQUALISED_ODDS: ("tpr", "tnr"),
    Definition.EQUALISED_OPPORTUNITIES: ("fnr",),
    Definition.PREDICTIVE_EQUALITY: ("fpr",),
}


def _rate_gap(
    grouped: GroupedPredictions, definition: Definition, tolerance: float
) -> FairnessResult:
    fields = _RATE_STATS[definition]
    matrices = grouped.matrices()
    exact: dict[str, dict[str, Fraction | None]] = {}
    stats: dict[str, dict[str, float | int | None]] = {}
    notes: list[str] = []
    evaluable = True
    for g, m in matrices.items():
        rs = rates(m, exact=True)
        exact[g] = {}
        stats[g] = {}
        for fld in fields:
            value = rs.get(fld)
            exact[g][fld] = value
            stats[g][RATE_NAMES[fld]] = None if value is None else float(value)
            if value is None:
                notes.append(f"{RATE_NAMES[fld]} undefined for group {g!r}: {rs.undefined[fld]}")
                evaluable = False
    if not evaluable:
        return _verdict(definition, stats, None, tolerance, notes)
    gap = max(_spread(exact[g][fld] for g in exact) for fld in fields)
    return _verdict(definition, stats, gap, tolerance, notes)


def calibration_gaps(
    grouped: GroupedPredictions,
    bins: int = DEFAULT_BINS,
    min_support: int = DEFAULT_MIN_SUPPORT,
    *,
    tolerance: float = DEFAULT_TOLERANCE,
) -> FairnessResult:
    """Compare observed positive fractions per score bin across groups.

    Scores are partitioned into ``bins`` equal-width bins over [0, 1] (the
    last bin includes 1.0). The gap of a bin is the largest cross-group
    difference of the fraction of actual positives among records in that
    bin; only bins where every group has at least ``min_support`` records
    are judged. Bins populated but lacking support are noted.
    """
    if bins < 2:
        raise InputError(f"bins must be >= 2, got {bins!r}")
    if min_support < 1:
        raise InputError(f"min_support must be >= 1, got {min_support!r}")
    _require(grouped, Definition.CALIBRATION)

    def bin_label(i: int) -> str:
        lo, hi = i / bins, (i + 1) / bins
        closing = "]" if i == bins - 1 else ")"
        return f"[{lo:.2f},{hi:.2f}{closing}"

    group_names = list(grouped.groups)
    # binned[i][g] = (records in bin, positives in bin)
    binned: dict[int, dict[str, tuple[int, int]]] = {}
    for g, recs in grouped.groups.items():
        for r in recs:
            i = min(int(r.score * bins), bins - 1)
            total, pos = binned.setdefault(i, {}).get(g, (0, 0))
            binned[i][g] = (total + 1, pos + (r.y_true == 1))

    stats: dict[str, dict[str, float | int | None]] = {g: {} for g in group_names}
    notes: list[str] = []
    judged_gaps: list[Fraction] = []
    for i in sorted(binned):
        per_group = binned[i]
        counts = {g: per_group.get(g, (0, 0))[0] for g in group_names}
        if min(counts.values()) < min_support:
            detail = ", ".join(f"{g}={c}" for g, c in counts.items())
            notes.append(
                f"bin {bin_label(i)} lacks support ({detail}; min {min_support}): not judged"
            )
            continue
        shares = {}
        for g in group_names:
            total, pos = per_group[g]
            shares[g] = Fraction(pos, total)
            stats[g][bin_label(i)] = float(shares[g])
        judged_gaps.append(_spread(shares.values()))

    if not judged_gaps:
        notes.append("no score bin reaches min support in every group")
        return _verdict(Definition.CALIBRATION, stats, None, tolerance, notes)
    return _verdict(Definition.CALIBRATION, stats, max(judged_gaps), tolerance, notes)


def balance_gap(
    grouped: GroupedPredictions,
    cls: int,
    *,
    tolerance: float = DEFAULT_TOLERANCE,
) -> FairnessResult:
    """Compare mean scores across groups among records of one true class."""
    if cls not in (0, 1):
        raise InputError(f"class must be 0 or 1, got {cls!r}")
    definition = Definition.BALANCE_POSITIVE if cls == 1 else Definition.BALANCE_NEGATIVE
    _require(grouped, definition)

    stats: dict[str, dict[str, float | int | None]] = {}
    notes: list[str] = []
    means: list[float] = []
    evaluable = True
    for g, recs in grouped.groups.items():
        scores = [r.score for r in recs if r.y_true == cls]
        if not scores:
            stats[g] = {"mean_score": None}
            notes.append(f"group {g!r} has no records of class {cls}")
            evaluable = False
            continue
        mean = sum(scores) / len(scores)
        stats[g] = {"mean_score": mean}
        means.append(mean)
    gap = _spread(means) if evaluable else None
    return _verdict(definition, stats, gap, tolerance, notes)


def evaluate(
    grouped: GroupedPredictions,
    definition: Definition,
    *,
    tolerance: float = DEFAULT_TOLERANCE,
    legitimate: Sequence[str] | None = None,
    bins: int = DEFAULT_BINS,
    min_support: int = DEFAULT_MIN_SUPPORT,
) -> FairnessResult:
    """Evaluate any supported fairness definition on grouped predictions.

    ``legitimate`` names the stratification attributes for
    ConditionalStatisticalParity; ``bins``/``min_support`` parameterise
    Calibration (min_support also gates ConditionalStatisticalParity strata).
    """
    if tolerance < 0:
        raise InputError(f"tolerance must be >= 0, got {tolerance!r}")
    _require(grouped, definition)
    if definition is Definition.DEMOGRAPHIC_PARITY:
        return _demographic_parity(grouped, tolerance)
    if definition is Definition.EQUAL_SELECTION_PARITY:
        return _equal_selection_parity(grouped, tolerance)
    if definition is Definition.CONDITIONAL_STATISTICAL_PARITY:
        return _conditional_statistical_parity(grouped, tolerance, legitimate, min_support)
    if definition is Definition.CALIBRATION:
        return calibration_gaps(grouped, bins, min_support, tolerance=tolerance)
    if definition is Definition.BALANCE_POSITIVE:
        return balance_gap(grouped, 1, tolerance=tolerance)
    if definition is Definition.BALANCE_NEGATIVE:
        return balance_gap(grouped, 0, tolerance=tolerance)
    return _rate_gap(grouped, definition, tolerance)
