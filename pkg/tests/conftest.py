from __future__ import annotations

import random
from pathlib import Path

import pytest

from fairaudit import ConfusionMatrix, GroupedPredictions, records_from_matrix

DATA_DIR = Path(__file__).parent / "data"

# Insurance-claims golden fixture: the whole population and its two subgroups.
SAMPLE = ConfusionMatrix(tp=9, fn=12, fp=12, tn=30)
MEN = ConfusionMatrix(tp=7, fn=7, fp=6, tn=22)
WOMEN = ConfusionMatrix(tp=2, fn=5, fp=6, tn=8)

# The "optimised for ..." variants used as golden fixtures.
DP_MEN = ConfusionMatrix(tp=3, fn=9, fp=9, tn=15)
DP_WOMEN = ConfusionMatrix(tp=6, fn=3, fp=3, tn=15)
CAL_MEN = ConfusionMatrix(tp=8, fn=4, fp=4, tn=20)
CAL_WOMEN = ConfusionMatrix(tp=6, fn=3, fp=3, tn=15)
PE_MEN = ConfusionMatrix(tp=9, fn=3, fp=4, tn=20)


def grouped_from_matrices(
    matrices: dict[str, ConfusionMatrix], favourable: int = 0, **kwargs
) -> GroupedPredictions:
    records = []
    for name, m in matrices.items():
        records.extend(records_from_matrix(m, name, **kwargs))
    groups = {}
    for r in records:
        groups.setdefault(r.sensitive, []).append(r)
    return GroupedPredictions(groups=groups, favourable=favourable)


def random_matrix(rng: random.Random, lo: int = 0, hi: int = 40) -> ConfusionMatrix:
    return ConfusionMatrix(
        tp=rng.randint(lo, hi),
        fn=rng.randint(lo, hi),
        fp=rng.randint(lo, hi),
        tn=rng.randint(lo, hi),
    )


def random_nondegenerate_matrix(rng: random.Random, hi: int = 40) -> ConfusionMatrix:
    # Every denominator positive: P, N, TP+FP, TN+FN all > 0.
    while True:
        m = random_matrix(rng, 0, hi)
        if m.p > 0 and m.n > 0 and m.tp + m.fp > 0 and m.tn + m.fn > 0:
            return m


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20210614)


@pytest.fixture
def sample_grouped() -> GroupedPredictions:
    return grouped_from_matrices({"men": MEN, "women": WOMEN})


@pytest.fixture
def claims_csv_text() -> str:
    return (DATA_DIR / "claims.csv").read_text("utf-8")
