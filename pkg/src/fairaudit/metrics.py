"""Confusion matrices and the statistical measures derived from them.

Everything in this module describes a single population. Splitting a
population into sensitive subgroups and comparing the measures across
them lives in :mod:`fairaudit.records` and :mod:`fairaudit.audit`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence, Union

from .errors import InputError

Number = Union[float, Fraction]

#: Convention used everywhere: a score equal to the threshold is classified
#: as positive.
THRESHOLD_IS_INCLUSIVE = True


def _check_label(value: object, name: str, index: int) -> int:
    if value not in (0, 1):
        raise InputError(f"{name}[{index}] must be 0 or 1, got {value!r}")
    return int(value)  # type: ignore[arg-type]


@dataclass(frozen=True)
class ConfusionMatrix:
    """Cell counts of a binary classifier evaluated against true labels.

    Rows of the conceptual matrix are the actual classes, columns the
    predicted classes:

    * ``tp`` - actual positive, predicted positive
    * ``fn`` - actual positive, predicted negative
    * ``fp`` - actual negative, predicted positive
    * ``tn`` - actual negative, predicted negative
    """

    tp: int
    fn: int
    fp: int
    tn: int

    def __post_init__(self) -> None:
        for name in ("tp", "fn", "fp", "tn"):
            value = getattr(self, name)
            if not isinstance(value, int) or value < 0:
                raise InputError(
                    f"confusion matrix cell {name} must be a non-negative integer, got {value!r}"
                )

    @property
    def p(self) -> int:
        """Actual positives: P = TP + FN."""
        return self.tp + self.fn

    @property
    def n(self) -> int:
        """Actual negatives: N = FP + TN."""
        return self.fp + self.tn

    @property
    def total(self) -> int:
        return self.tp + self.fn + self.fp + self.tn

    def scaled(self, k: int) -> "ConfusionMatrix":
        """Multiply every cell by a positive integer. Leaves all rates unchanged."""
        if k < 1:
            raise InputError(f"scale factor must be a positive integer, got {k!r}")
        return ConfusionMatrix(self.tp * k, self.fn * k, self.fp * k, self.tn * k)

    def as_dict(self) -> dict[str, int]:
        return {"tp": self.tp, "fn": self.fn, "fp": self.fp, "tn": self.tn}


#: Rate fields of :class:`RateSet` that can be undefined, with the condition
#: that makes them so.
UNDEFINED_REASONS = {
    "tpr": "no actual positives (P = 0)",
    "fnr": "no actual positives (P = 0)",
    "tnr": "no actual negatives (N = 0)",
    "fpr": "no actual negatives (N = 0)",
    "ppv": "no positive predictions (TP + FP = 0)",
    "fdr": "no positive predictions (TP + FP = 0)",
    "npv": "no negative predictions (TN + FN = 0)",
    "for_": "no negative predictions (TN + FN = 0)",
}

#: Display names used in reports and JSON payloads, in table order.
RATE_NAMES = {
    "p": "P",
    "n": "N",
    "br": "BR",
    "pr": "PR",
    "nr": "NR",
    "acc": "ACC",
    "mr": "MR",
    "tpr": "TPR",
    "tnr": "TNR",
    "fpr": "FPR",
    "fnr": "FNR",
    "fdr": "FDR",
    "ppv": "PPV",
    "for_": "FOR",
    "npv": "NPV",
}


@dataclass(frozen=True)
class RateSet:
    """The fifteen measures derived from a confusion matrix.

    Any rate whose denominator is zero is ``None`` and listed in
    :attr:`undefined` together with the reason. Undefined is never silently
    reported as zero.
    """

    p: int
    n: int
    br: Number
    pr: Number
    nr: Number
    acc: Number
    mr: Number
    tpr: Number | None
    tnr: Number | None
    fpr: Number | None
    fnr: Number | None
    fdr: Number | None
    ppv: Number | None
    for_: Number | None
    npv: Number | None
    undefined: dict[str, str] = field(default_factory=dict)

    def get(self, name: str) -> Number | None:
        """Look a measure up by display name (``"TPR"``) or field name (``"tpr"``)."""
        lower = {v: k for k, v in RATE_NAMES.items()}
        return getattr(self, lower.get(name, name))

    def as_dict(self) -> dict[str, float | int | None]:
        """Measures keyed by display name, floats for JSON friendliness."""
        out: dict[str, float | int | None] = {}
        for fld, name in RATE_NAMES.items():
            value = getattr(self, fld)
            if fld in ("p", "n"):
                out[name] = int(value)
            else:
                out[name] = None if value is None else float(value)
        return out


def confusion_from_labels(
    y_true: Sequence[int], y_pred: Sequence[int]
) -> ConfusionMatrix:
    """Count the four confusion-matrix cells from paired label vectors.

    Raises :class:`InputError` on empty input, length mismatch or any value
    outside ``{0, 1}``.
    """
    if len(y_true) != len(y_pred):
        raise InputError(
            f"y_true and y_pred must have equal length, got {len(y_true)} and {len(y_pred)}"
        )
    if not y_true:
        raise InputError("cannot build a confusion matrix from empty inputs")
    tp = fn = fp = tn = 0
    for i, (truth, pred) in enumerate(zip(y_true, y_pred)):
        truth = _check_label(truth, "y_true", i)
        pred = _check_label(pred, "y_pred", i)
        if truth == 1:
            if pred == 1:
                tp += 1
            else:
                fn += 1
        else:
            if pred == 1:
                fp += 1
            else:
                tn += 1
    return ConfusionMatrix(tp=tp, fn=fn, fp=fp, tn=tn)


def rates(m: ConfusionMatrix, *, exact: bool = False) -> RateSet:
    """Derive all measures of a confusion matrix.

    Formulas::

        P  = TP + FN           N   = FP + TN
        BR = P / (P + N)       PR  = (TP + FP) / (P + N)
        NR = (TN + FN) / (P + N)
        ACC = (TP + TN) / (P + N)
        MR  = (FN + FP) / (P + N)
        TPR = TP / P           TNR = TN / N
        FPR = FP / N           FNR = FN / P
        FDR = FP / (TP + FP)   PPV = TP / (TP + FP)
        FOR = FN / (TN + FN)   NPV = TN / (TN + FN)

    With ``exact=True`` every rate is a :class:`fractions.Fraction`, which the
    test suite uses to check complement identities without rounding error.
    """
    total = m.total
    if total == 0:
        raise InputError("confusion matrix is empty (all cells are zero)")

    if exact:
        def div(a: int, b: int) -> Number:
            return Fraction(a, b)
    else:
        def div(a: int, b: int) -> Number:
            return a / b

    undefined: dict[str, str] = {}

    def ratio(num: int, den: int, fld: str) -> Number | None:
        if den == 0:
            undefined[fld] = UNDEFINED_REASONS[fld]
            return None
        return div(num, den)

    return RateSet(
        p=m.p,
        n=m.n,
        br=div(m.p, total),
        pr=div(m.tp + m.fp, total),
        nr=div(m.tn + m.fn, total),
        acc=div(m.tp + m.tn, total),
        mr=div(m.fn + m.fp, total),
        tpr=ratio(m.tp, m.p, "tpr"),
        fnr=ratio(m.fn, m.p, "fnr"),
        tnr=ratio(m.tn, m.n, "tnr"),
        fpr=ratio(m.fp, m.n, "fpr"),
        ppv=ratio(m.tp, m.tp + m.fp, "ppv"),
        fdr=ratio(m.fp, m.tp + m.fp, "fdr"),
        npv=ratio(m.tn, m.tn + m.fn, "npv"),
        for_=ratio(m.fn, m.tn + m.fn, "for_"),
        undefined=undefined,
    )


def binarize(scores: Sequence[float], threshold: float) -> list[int]:
    """Turn probability scores into hard labels: 1 iff score >= threshold."""
    if not 0.0 <= threshold <= 1.0:
        raise InputError(f"threshold must lie in [0, 1], got {threshold!r}")
    return [1 if s >= threshold else 0 for s in scores]
