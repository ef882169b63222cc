"""The catalogue of group-fairness definitions and the statistical family of each."""

from __future__ import annotations

from enum import Enum

from .errors import InputError


class Family(str, Enum):
    INDEPENDENCE = "Independence"
    SUFFICIENCY = "Sufficiency"
    SEPARATION = "Separation"


class Definition(str, Enum):
    """One checkable notion of group fairness."""

    DEMOGRAPHIC_PARITY = "DemographicParity"
    CONDITIONAL_STATISTICAL_PARITY = "ConditionalStatisticalParity"
    EQUAL_SELECTION_PARITY = "EqualSelectionParity"
    CONDITIONAL_USE_ACCURACY_EQUALITY = "ConditionalUseAccuracyEquality"
    PREDICTIVE_PARITY = "PredictiveParity"
    CALIBRATION = "Calibration"
    EQUALISED_ODDS = "EqualisedOdds"
    EQUALISED_OPPORTUNITIES = "EqualisedOpportunities"
    PREDICTIVE_EQUALITY = "PredictiveEquality"
    BALANCE_POSITIVE = "BalancePositive"
    BALANCE_NEGATIVE = "BalanceNegative"

    @property
    def family(self) -> Family:
        return _FAMILY[self]

    @property
    def needs_ground_truth(self) -> bool:
        """Sufficiency and separation notions condition on the true label."""
        return self.family is not Family.INDEPENDENCE

    @property
    def needs_predictions(self) -> bool:
        """Label-based notions need hard predictions; score-based ones do not."""
        return self not in _SCORE_BASED

    @property
    def needs_scores(self) -> bool:
        return self in _SCORE_BASED

    @property
    def needs_legitimate(self) -> bool:
        return self is Definition.CONDITIONAL_STATISTICAL_PARITY


_FAMILY = {
    Definition.DEMOGRAPHIC_PARITY: Family.INDEPENDENCE,
    Definition.CONDITIONAL_STATISTICAL_PARITY: Family.INDEPENDENCE,
    Definition.EQUAL_SELECTION_PARITY: Family.INDEPENDENCE,
    Definition.CONDITIONAL_USE_ACCURACY_EQUALITY: Family.SUFFICIENCY,
    Definition.PREDICTIVE_PARITY: Family.SUFFICIENCY,
    Definition.CALIBRATION: Family.SUFFICIENCY,
    Definition.EQUALISED_ODDS: Family.SEPARATION,
    Definition.EQUALISED_OPPORTUNITIES: Family.SEPARATION,
    Definition.PREDICTIVE_EQUALITY: Family.SEPARATION,
    Definition.BALANCE_POSITIVE: Family.SEPARATION,
    Definition.BALANCE_NEGATIVE: Family.SEPARATION,
}

_SCORE_BASED = frozenset(
    {Definition.CALIBRATION, Definition.BALANCE_POSITIVE, Definition.BALANCE_NEGATIVE}
)


def parse_definition(name: str) -> Definition:
    """Resolve a definition by its canonical name, case-insensitively."""
    for d in Definition:
        if d.value.lower() == name.strip().lower():
            return d
    valid = ", ".join(d.value for d in Definition)
    raise InputError(f"unknown fairness definition {name!r}; expected one of: {valid}")
