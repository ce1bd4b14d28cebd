"""User-level feature pipeline: records -> aggregates -> encoded matrix."""

from .records import (
    OPERATION_FIELDS,
    TRANSACTION_FIELDS,
    OperationRecord,
    RecordSet,
    TransactionRecord,
    compute_missing_rates,
    filter_features,
    load_records,
)
from .merge import CrossFeature, UserAggregate, merge_users
from .encoding import (
    EncodingVocab,
    FeaturePipeline,
    UserFeatureMatrix,
    encode,
    fit_vocab,
)

__all__ = [
    "CrossFeature",
    "EncodingVocab",
    "FeaturePipeline",
    "OPERATION_FIELDS",
    "OperationRecord",
    "RecordSet",
    "TRANSACTION_FIELDS",
    "TransactionRecord",
    "UserAggregate",
    "UserFeatureMatrix",
    "compute_missing_rates",
    "encode",
    "filter_features",
    "fit_vocab",
    "load_records",
    "merge_users",
]
