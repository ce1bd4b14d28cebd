"""Vocabulary fitting and deterministic numeric encoding of user aggregates.

Layout per user row: one block per categorical feature (top-K categories by
global frequency plus an "__other__" bucket, counts normalized by the user's
record count in that source), then (count, mean, std, min, max, sum) per
numeric feature, then the same stats per cross-feature bucket. The
standardizer is fitted on the training aggregates; zero-variance columns are
dropped. Encoding is pure arithmetic: same data in, bit-identical matrix out.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.exceptions import NotFittedError

from ..errors import ConfigError, SchemaError
from .merge import STAT_NAMES, CrossFeature, UserAggregate, merge_users
from .records import RecordSet, compute_missing_rates, filter_features

OTHER = "__other__"
VOCAB_VERSION = 1


@dataclass
class EncodingVocab:
    """Column layout, category lists and standardizer for one fitted encoding."""

    categories: dict[str, list[str]]
    numeric: list[str]
    columns: list[str]
    mean: np.ndarray
    std: np.ndarray
    kept: np.ndarray
    version: int = VOCAB_VERSION

    @property
    def kept_columns(self) -> list[str]:
        return [c for c, keep in zip(self.columns, self.kept) if keep]

    @property
    def dim(self) -> int:
        return int(self.kept.sum())

    def fingerprint(self) -> str:
        payload = json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(payload.encode("utf-8")).hexdigest()

    def to_dict(self) -> dict:
        from ..nn.serialize import array_to_dict

        return {
            "version": self.version,
            "categories": self.categories,
            "numeric": self.numeric,
            "columns": self.columns,
            "mean": array_to_dict(self.mean),
            "std": array_to_dict(self.std),
            "kept": [int(k) for k in self.kept],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "EncodingVocab":
        from ..nn.serialize import array_from_dict

        if d.get("version") != VOCAB_VERSION:
            raise SchemaError(f"unsupported vocab version {d.get('version')!r}")
        return cls(
            categories={k: list(v) for k, v in d["categories"].items()},
            numeric=list(d["numeric"]),
            columns=list(d["columns"]),
            mean=array_from_dict(d["mean"]),
            std=array_from_dict(d["std"]),
            kept=np.asarray(d["kept"], dtype=bool),
            version=d["version"],
        )


@dataclass
class UserFeatureMatrix:
    """Encoded rows aligned with user_ids; columns name every dimension."""

    user_ids: list[str]
    matrix: np.ndarray
    columns: list[str]

    @property
    def dim(self) -> int:
        return self.matrix.shape[1]


def _as_aggregate_list(aggregates) -> list[UserAggregate]:
    if isinstance(aggregates, dict):
        aggregates = list(aggregates.values())
    aggregates = list(aggregates)
    if not aggregates:
        raise SchemaError("no user aggregates to encode")
    first = aggregates[0]
    for agg in aggregates[1:]:
        if list(agg.cats) != list(first.cats) or list(agg.nums) != list(first.nums):
            raise SchemaError("aggregates disagree on feature layout")
    return aggregates


def _source_of(key: str) -> str:
    return "op" if key.startswith("op.") else "tx"


def _raw_matrix(aggregates: list[UserAggregate], categories: dict[str, list[str]],
                numeric: list[str]) -> np.ndarray:
    n_cols = sum(len(v) + 1 for v in categories.values()) + len(numeric) * len(STAT_NAMES)
    out = np.zeros((len(aggregates), n_cols))
    for i, agg in enumerate(aggregates):
        col = 0
        for key, cats in categories.items():
            counter = agg.cats[key]
            n_rec = agg.record_count(_source_of(key))
            if n_rec:
                total = sum(counter.values())
                in_vocab = 0
                for c in cats:
                    cnt = counter.get(c, 0)
                    out[i, col] = cnt / n_rec
                    in_vocab += cnt
                    col += 1
                out[i, col] = (total - in_vocab) / n_rec
                col += 1
            else:
                col += len(cats) + 1
        for key in numeric:
            out[i, col:col + len(STAT_NAMES)] = agg.nums[key].as_tuple()
            col += len(STAT_NAMES)
    return out


def fit_vocab(user_aggregates, max_categories_per_feature: int = 80,
              min_user_fraction: float = 0.05) -> EncodingVocab:
    """Fit category lists and the standardizer on training aggregates.

    A category earns a column only when at least min_user_fraction of the
    training users have it; rarer values (personal device ids and the like)
    fold into the per-feature __other__ bucket instead of adding a noise
    column per identity.
    """
    if max_categories_per_feature <= 0:
        raise ConfigError("max_categories_per_feature must be positive")
    if not 0.0 <= min_user_fraction < 1.0:
        raise ConfigError("min_user_fraction must lie in [0, 1)")
    aggregates = _as_aggregate_list(user_aggregates)
    min_users = min_user_fraction * len(aggregates)
    categories: dict[str, list[str]] = {}
    for key in aggregates[0].cats:
        global_counts: dict[str, int] = {}
        user_counts: dict[str, int] = {}
        for agg in aggregates:
            for cat, cnt in agg.cats[key].items():
                global_counts[cat] = global_counts.get(cat, 0) + cnt
                user_counts[cat] = user_counts.get(cat, 0) + 1
        ranked = sorted(global_counts.items(), key=lambda kv: (-kv[1], kv[0]))
        categories[key] = [cat for cat, _ in ranked[:max_categories_per_feature]
                           if user_counts[cat] >= min_users]
    numeric = list(aggregates[0].nums)

    columns: list[str] = []
    for key, cats in categories.items():
        columns += [f"{key}={c}" for c in cats] + [f"{key}={OTHER}"]
    for key in numeric:
        columns += [f"{key}.{stat}" for stat in STAT_NAMES]

    raw = _raw_matrix(aggregates, categories, numeric)
    mean = raw.mean(axis=0)
    std = raw.std(axis=0)
    kept = std > 1e-12
    return EncodingVocab(
        categories=categories,
        numeric=numeric,
        columns=columns,
        mean=mean,
        std=std,
        kept=kept,
    )


def encode(user_aggregates, vocab: EncodingVocab) -> UserFeatureMatrix:
    """Encode aggregates with a fitted vocab into a standardized matrix."""
    aggregates = _as_aggregate_list(user_aggregates)
    if list(aggregates[0].cats) != list(vocab.categories) or \
            list(aggregates[0].nums) != list(vocab.numeric):
        raise SchemaError("aggregates do not match the vocab's feature layout")
    raw = _raw_matrix(aggregates, vocab.categories, vocab.numeric)
    std = np.where(vocab.kept, vocab.std, 1.0)
    standardized = (raw - vocab.mean) / std
    matrix = standardized[:, vocab.kept]
    return UserFeatureMatrix(
        user_ids=[agg.user_id for agg in aggregates],
        matrix=matrix,
        columns=vocab.kept_columns,
    )


class FeaturePipeline(BaseEstimator, TransformerMixin):
    """records -> missing-rate filter -> merge -> vocab -> encoded matrix.

    fit() learns retained features, category vocabularies and the
    standardizer from a training RecordSet; transform() encodes any RecordSet
    into that fitted layout.
    """

    def __init__(self, missing_threshold: float = 0.30,
                 max_categories: int = 80, min_user_fraction: float = 0.05,
                 hour_buckets: int = 4,
                 cross: tuple[CrossFeature, ...] = (CrossFeature(),)):
        self.missing_threshold = missing_threshold
        self.max_categories = max_categories
        self.min_user_fraction = min_user_fraction
        self.hour_buckets = hour_buckets
        self.cross = cross

    def _merge(self, records: RecordSet, op_features, tx_features):
        return merge_users(
            records.operations,
            records.transactions,
            op_features=op_features,
            tx_features=tx_features,
            cross=self.cross,
            hour_buckets=self.hour_buckets,
        )

    def fit(self, records: RecordSet, y=None):
        self.missing_rates_ = {
            "operation": compute_missing_rates(records.operations, "operation"),
            "transaction": compute_missing_rates(records.transactions, "transaction"),
        }
        self.op_features_ = filter_features(
            self.missing_rates_["operation"], self.missing_threshold)
        self.tx_features_ = filter_features(
            self.missing_rates_["transaction"], self.missing_threshold)
        aggregates = self._merge(records, self.op_features_, self.tx_features_)
        self.vocab_ = fit_vocab(aggregates, self.max_categories,
                                self.min_user_fraction)
        self.feature_fingerprint_ = self.vocab_.fingerprint()
        return self

    def transform(self, records: RecordSet) -> UserFeatureMatrix:
        if not hasattr(self, "vocab_"):
            raise NotFittedError("FeaturePipeline is not fitted yet")
        aggregates = self._merge(records, self.op_features_, self.tx_features_)
        return encode(aggregates, self.vocab_)

    def fit_transform(self, records: RecordSet, y=None) -> UserFeatureMatrix:
        self.fit(records)
        return self.transform(records)
