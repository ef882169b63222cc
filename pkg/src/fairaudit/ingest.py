"""Loading prediction datasets from delimited text with an explicit schema.

Column meaning is never guessed: the mapping names which columns hold the
labels, score and sensitive attribute, and which spellings encode the
positive and negative class. Only the delimiter may be auto-detected,
restricted to comma, semicolon and tab.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from typing import Iterable, Sequence

from .definitions import Definition
from .errors import InputError
from .records import PredictionRecord

_DELIMITERS = (",", ";", "\t")


@dataclass(frozen=True)
class SchemaMapping:
    """Column mapping and label conventions for one dataset."""

    sensitive: str
    y_true: str | None = None
    y_pred: str | None = None
    score: str | None = None
    legitimate: tuple[str, ...] = ()
    favourable: int | None = None
    positive_label: str = "1"
    negative_label: str = "0"
    delimiter: str | None = None

    def __post_init__(self) -> None:
        if not self.sensitive:
            raise InputError("schema mapping needs a sensitive column")
        if self.y_pred is None and self.score is None:
            raise InputError("schema mapping needs at least one of y_pred / score")
        mapped = [
            c
            for c in (self.sensitive, self.y_true, self.y_pred, self.score, *self.legitimate)
            if c is not None
        ]
        dupes = {c for c in mapped if mapped.count(c) > 1}
        if dupes:
            raise InputError(f"schema maps column(s) more than once: {', '.join(sorted(dupes))}")
        if self.favourable is not None and self.favourable not in (0, 1):
            raise InputError(f"favourable outcome must be 0 or 1, got {self.favourable!r}")
        if self.positive_label == self.negative_label:
            raise InputError("positive and negative label spellings must differ")
        if self.delimiter is not None and self.delimiter not in _DELIMITERS:
            raise InputError("delimiter must be one of ',' ';' or tab")

    @classmethod
    def from_dict(cls, doc: dict) -> "SchemaMapping":
        known = {
            "sensitive",
            "y_true",
            "y_pred",
            "score",
            "legitimate",
            "favourable",
            "positive_label",
            "negative_label",
            "delimiter",
        }
        unknown = set(doc) - known
        if unknown:
            raise InputError(f"unknown schema field(s): {', '.join(sorted(unknown))}")
        if "sensitive" not in doc:
            raise InputError("schema mapping needs a sensitive column")
        kwargs = dict(doc)
        kwargs["legitimate"] = tuple(doc.get("legitimate", ()) or ())
        return cls(**kwargs)

    def to_dict(self) -> dict:
        return {
            "sensitive": self.sensitive,
            "y_true": self.y_true,
            "y_pred": self.y_pred,
            "score": self.score,
            "legitimate": list(self.legitimate),
            "favourable": self.favourable,
            "positive_label": self.positive_label,
            "negative_label": self.negative_label,
            "delimiter": self.delimiter,
        }


def _detect_delimiter(header_line: str) -> str:
    counts = {d: header_line.count(d) for d in _DELIMITERS}
    best = max(counts, key=lambda d: counts[d])
    if counts[best] == 0:
        raise InputError(
            "could not detect a delimiter (expected comma, semicolon or tab); "
            "set one explicitly in the schema"
        )
    return best


def parse_dataset(text: str, mapping: SchemaMapping) -> list[PredictionRecord]:
    """Parse delimited text with a header row into prediction records."""
    stripped = text.lstrip("﻿")
    if not stripped.strip():
        raise InputError("dataset is empty: no header row")
    delimiter = mapping.delimiter or _detect_delimiter(stripped.splitlines()[0])
    reader = csv.reader(io.StringIO(stripped), delimiter=delimiter)
    try:
        header = next(reader)
    except StopIteration:  # pragma: no cover - guarded by the emptiness check
        raise InputError("dataset is empty: no header row")
    header = [h.strip() for h in header]

    columns: dict[str, int] = {}
    wanted = {
        "sensitive": mapping.sensitive,
        "y_true": mapping.y_true,
        "y_pred": mapping.y_pred,
        "score": mapping.score,
    }
    for role, col in wanted.items():
        if col is None:
            continue
        if col not in header:
            raise InputError(f"missing column {col!r} (mapped as {role})")
        columns[role] = header.index(col)
    legit_idx: dict[str, int] = {}
    for col in mapping.legitimate:
        if col not in header:
            raise InputError(f"missing column {col!r} (mapped as legitimate attribute)")
        legit_idx[col] = header.index(col)

    labels = {mapping.positive_label: 1, mapping.negative_label: 0}

    def parse_label(value: str, col: str, row_no: int) -> int | None:
        value = value.strip()
        if value == "":
            return None
        if value not in labels:
            raise InputError(
                f"row {row_no}: column {col!r}: unrecognised label {value!r} "
                f"(expected {mapping.positive_label!r} or {mapping.negative_label!r})"
            )
        return labels[value]

    records: list[PredictionRecord] = []
    for row_no, row in enumerate(reader, start=2):
        if not row or all(not cell.strip() for cell in row):
            continue
        if len(row) != len(header):
            raise InputError(
                f"row {row_no}: expected {len(header)} fields, got {len(row)}"
            )
        sensitive = row[columns["sensitive"]].strip()
        if not sensitive:
            raise InputError(f"row {row_no}: column {mapping.sensitive!r}: empty sensitive value")
        y_true = y_pred = None
        score = None
        if "y_true" in columns:
            y_true = parse_label(row[columns["y_true"]], mapping.y_true, row_no)
        if "y_pred" in columns:
            y_pred = parse_label(row[columns["y_pred"]], mapping.y_pred, row_no)
        if "score" in columns:
            raw = row[columns["score"]].strip()
            if raw:
                try:
                    score = float(raw)
                except ValueError:
                    raise InputError(
                        f"row {row_no}: column {mapping.score!r}: not a number: {raw!r}"
                    ) from None
                if not 0.0 <= score <= 1.0:
                    raise InputError(
                        f"row {row_no}: column {mapping.score!r}: score {score} outside [0, 1]"
                    )
        legitimate = (
            {col: row[idx].strip() for col, idx in legit_idx.items()} or None
        )
        try:
            records.append(
                PredictionRecord(
                    sensitive=sensitive,
                    y_true=y_true,
                    y_pred=y_pred,
                    score=score,
                    legitimate=legitimate,
                )
            )
        except InputError as exc:
            raise InputError(f"row {row_no}: {exc}") from None

    if not records:
        raise InputError("no records: the dataset holds a header row only")
    return records


def validate_dataset(
    records: Sequence[PredictionRecord],
    required_by: Iterable[Definition] = (),
    *,
    min_group: int = 5,
) -> list[str]:
    """Describe gaps between the data and what the requested checks need.

    Findings are advisory text, not failures; an empty list means nothing
    noteworthy was found.
    """
    findings: list[str] = []
    n = len(records)
    missing_truth = sum(1 for r in records if r.y_true is None)
    missing_pred = sum(1 for r in records if r.y_pred is None)
    missing_score = sum(1 for r in records if r.score is None)

    for definition in sorted(set(required_by), key=lambda d: d.value):
        if definition.needs_ground_truth and missing_truth:
            findings.append(
                f"ground truth required for {definition.value}: {missing_truth} of {n} records lack y_true"
            )
        if definition.needs_predictions and missing_pred:
            findings.append(
                f"predictions required for {definition.value}: {missing_pred} of {n} records lack y_pred"
            )
        if definition.needs_scores and missing_score:
            findings.append(
                f"score output required for {definition.value}: {missing_score} of {n} records lack score"
            )
        if definition.needs_legitimate:
            lacking = sum(1 for r in records if not r.legitimate)
            if lacking:
                findings.append(
                    f"legitimate attributes required for {definition.value}: "
                    f"{lacking} of {n} records carry none"
                )

    groups: dict[str, list[PredictionRecord]] = {}
    for r in records:
        groups.setdefault(r.sensitive, []).append(r)
    if len(groups) < 2:
        findings.append("only one sensitive group present: nothing to compare")
    for g in sorted(groups):
        recs = groups[g]
        if len(recs) < min_group:
            findings.append(
                f"group {g!r} has only {len(recs)} record(s) (min recommended {min_group})"
            )
        truths = [r.y_true for r in recs if r.y_true is not None]
        if truths:
            if not any(t == 1 for t in truths):
                findings.append(f"group {g!r} has no actual positives: TPR/FNR undefined")
            if not any(t == 0 for t in truths):
                findings.append(f"group {g!r} has no actual negatives: TNR/FPR undefined")
    return findings
