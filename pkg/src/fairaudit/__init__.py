"""fairaudit: per-subgroup classification metrics, group-fairness checks,
incompatibility diagnostics and a guided fairness-definition selector."""

from .audit import (
    DEFAULT_BINS,
    DEFAULT_MIN_SUPPORT,
    DEFAULT_TOLERANCE,
    FairnessResult,
    balance_gap,
    calibration_gaps,
    evaluate,
)
from .definitions import Definition, Family, parse_definition
from .errors import (
    AuditError,
    FairauditError,
    IncompleteSessionError,
    InputError,
    InvalidChoiceError,
    SessionCompleteError,
    SessionError,
    TreeValidationError,
)
from .ingest import SchemaMapping, parse_dataset, validate_dataset
from .metrics import (
    ConfusionMatrix,
    RateSet,
    binarize,
    confusion_from_labels,
    rates,
)
from .records import (
    GroupedPredictions,
    PredictionRecord,
    records_from_matrix,
    split_by_group,
)
from .report import (
    AuditReport,
    render_report,
    render_report_json,
    report_to_dict,
    run_audit,
)
from .tradeoffs import CompatibilityReport, base_rate_gap, compatibility_report

__version__ = "0.1.0"

__all__ = [
    "AuditError",
    "AuditReport",
    "CompatibilityReport",
    "ConfusionMatrix",
    "DEFAULT_BINS",
    "DEFAULT_MIN_SUPPORT",
    "DEFAULT_TOLERANCE",
    "Definition",
    "FairauditError",
    "FairnessResult",
    "Family",
    "GroupedPredictions",
    "IncompleteSessionError",
    "InputError",
    "InvalidChoiceError",
    "PredictionRecord",
    "RateSet",
    "SchemaMapping",
    "SessionCompleteError",
    "SessionError",
    "TreeValidationError",
    "balance_gap",
    "base_rate_gap",
    "binarize",
    "calibration_gaps",
    "compatibility_report",
    "confusion_from_labels",
    "evaluate",
    "parse_dataset",
    "parse_definition",
    "rates",
    "records_from_matrix",
    "render_report",
    "render_report_json",
    "report_to_dict",
    "run_audit",
    "split_by_group",
    "validate_dataset",
]
