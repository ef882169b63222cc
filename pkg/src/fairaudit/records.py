"""Prediction records and their partition into sensitive subgroups."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Mapping, Sequence

from .errors import AuditError, InputError
from .metrics import ConfusionMatrix, confusion_from_labels


@dataclass(frozen=True)
class PredictionRecord:
    """One classified instance: outputs, optional truth, sensitive attribute.

    At least one of ``y_pred`` / ``score`` must be present; ``y_true`` may be
    absent when no ground truth exists for the task.
    """

    sensitive: str
    y_true: int | None = None
    y_pred: int | None = None
    score: float | None = None
    legitimate: Mapping[str, str] | None = None

    def __post_init__(self) -> None:
        if not str(self.sensitive):
            raise InputError("sensitive attribute value must be non-empty")
        if self.y_pred is None and self.score is None:
            raise InputError("record needs a prediction: either y_pred or score")
        for name in ("y_true", "y_pred"):
            value = getattr(self, name)
            if value is not None and value not in (0, 1):
                raise InputError(f"{name} must be 0 or 1, got {value!r}")
        if self.score is not None and not 0.0 <= self.score <= 1.0:
            raise InputError(f"score must lie in [0, 1], got {self.score!r}")


@dataclass(frozen=True)
class GroupedPredictions:
    """Records partitioned by sensitive attribute value, plus the audit's
    favourable outcome (the prediction class that benefits the individual)."""

    groups: dict[str, list[PredictionRecord]]
    favourable: int

    def __post_init__(self) -> None:
        if self.favourable not in (0, 1):
            raise InputError(f"favourable outcome must be 0 or 1, got {self.favourable!r}")
        if len(self.groups) < 2:
            raise AuditError(
                "nothing to compare: need at least 2 sensitive groups, "
                f"got {len(self.groups)}"
            )
        for name, recs in self.groups.items():
            if not recs:
                raise InputError(f"group {name!r} is empty")

    def sizes(self) -> dict[str, int]:
        return {g: len(recs) for g, recs in self.groups.items()}

    def matrices(self) -> dict[str, ConfusionMatrix]:
        """Per-group confusion matrices; requires y_true and y_pred everywhere."""
        out: dict[str, ConfusionMatrix] = {}
        for g, recs in self.groups.items():
            missing_truth = sum(1 for r in recs if r.y_true is None)
            missing_pred = sum(1 for r in recs if r.y_pred is None)
            if missing_truth:
                raise AuditError(
                    f"ground truth required: group {g!r} has {missing_truth} record(s) without y_true"
                )
            if missing_pred:
                raise AuditError(
                    f"predictions required: group {g!r} has {missing_pred} record(s) without y_pred"
                )
            out[g] = confusion_from_labels(
                [r.y_true for r in recs], [r.y_pred for r in recs]
            )
        return out


def split_by_group(
    records: Sequence[PredictionRecord],
    *,
    favourable: int,
    key: Callable[[PredictionRecord], str] | None = None,
) -> GroupedPredictions:
    """Partition records by sensitive attribute value (or a custom selector).

    The partition is total and disjoint; group order follows first appearance.
    Fewer than two distinct values is an :class:`AuditError`.
    """
    selector = key or (lambda r: r.sensitive)
    groups: dict[str, list[PredictionRecord]] = {}
    for r in records:
        groups.setdefault(str(selector(r)), []).append(r)
    return GroupedPredictions(groups=groups, favourable=favourable)


def records_from_matrix(
    m: ConfusionMatrix,
    sensitive: str,
    *,
    score_from_pred: bool = False,
    legitimate: Mapping[str, str] | None = None,
) -> list[PredictionRecord]:
    """Expand a confusion matrix into individual records for one group.

    Handy for building fixtures and synthetic audits from known cell
    counts. With ``score_from_pred=True`` each record also carries the
    degenerate score 0.0 or 1.0 equal to its prediction.
    """
    out: list[PredictionRecord] = []
    cells = ((1, 1, m.tp), (1, 0, m.fn), (0, 1, m.fp), (0, 0, m.tn))
    for truth, pred, count in cells:
        for _ in range(count):
            out.append(
                PredictionRecord(
                    sensitive=sensitive,
                    y_true=truth,
                    y_pred=pred,
                    score=float(pred) if score_from_pred else None,
                    legitimate=legitimate,
                )
            )
    return out
