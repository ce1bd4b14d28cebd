"""Merge record streams into one aggregate row per user.

Categorical features become category -> count maps; numeric features become
(count, mean, std, min, max, sum) with population std; cross-features bucket
a numeric feature by hour of day. The time column itself is exposed as a
derived hour-of-day bucket categorical per source, so timing behaviour
survives aggregation. A user missing from one source gets empty counts and
zero stats for that source.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from ..errors import ConfigError
from .records import feature_names

NUMERIC_FEATURES = {"transaction": ("tran_amt", "balance")}
STAT_NAMES = ("count", "mean", "std", "min", "max", "sum")


@dataclass(frozen=True)
class CrossFeature:
    """Stats of one numeric feature split by hour-of-day buckets."""

    numeric: str = "tran_amt"
    buckets: int = 4

    def __post_init__(self):
        if self.buckets <= 0 or 24 % self.buckets != 0:
            raise ConfigError(
                f"hour buckets must divide 24 evenly, got {self.buckets}"
            )


@dataclass(frozen=True)
class NumericStats:
    count: float = 0.0
    mean: float = 0.0
    std: float = 0.0
    min: float = 0.0
    max: float = 0.0
    sum: float = 0.0

    @classmethod
    def from_values(cls, values: list[float]) -> "NumericStats":
        if not values:
            return cls()
        arr = np.asarray(values, dtype=np.float64)
        return cls(
            count=float(arr.size),
            mean=float(arr.mean()),
            std=float(arr.std()),
            min=float(arr.min()),
            max=float(arr.max()),
            sum=float(arr.sum()),
        )

    def as_tuple(self) -> tuple[float, ...]:
        return (self.count, self.mean, self.std, self.min, self.max, self.sum)


@dataclass
class UserAggregate:
    """All features of one user; every configured key is always present."""

    user_id: str
    op_count: int = 0
    tx_count: int = 0
    cats: dict[str, Counter] = field(default_factory=dict)
    nums: dict[str, NumericStats] = field(default_factory=dict)

    def record_count(self, source: str) -> int:
        return self.op_count if source == "op" else self.tx_count


def _hour_bucket(hour: int, buckets: int) -> str:
    return f"h{hour // (24 // buckets)}"


def merge_users(operations, transactions, *,
                op_features=None, tx_features=None,
                cross: tuple[CrossFeature, ...] = (CrossFeature(),),
                hour_buckets: int = 4) -> dict[str, UserAggregate]:
    """Group both record streams by user_id into UserAggregate rows.

    op_features/tx_features restrict which raw features are aggregated (the
    missing-rate filter's output); None keeps everything. Returned dict is
    sorted by user_id.
    """
    op_features = list(feature_names("operation")) if op_features is None else list(op_features)
    tx_features = list(feature_names("transaction")) if tx_features is None else list(tx_features)
    for cf in cross:
        if cf.numeric not in NUMERIC_FEATURES["transaction"]:
            raise ConfigError(f"unknown cross-feature numeric {cf.numeric!r}")

    op_cats = [f for f in op_features if f != "time"]
    tx_cats = [f for f in tx_features
               if f != "time" and f not in NUMERIC_FEATURES["transaction"]]
    tx_nums = [f for f in NUMERIC_FEATURES["transaction"] if f in tx_features]
    op_has_time = "time" in op_features
    tx_has_time = "time" in tx_features
    active_cross = [cf for cf in cross if cf.numeric in tx_nums and tx_has_time]

    cat_keys = [f"op.{f}" for f in op_cats]
    if op_has_time:
        cat_keys.append("op.hour")
    cat_keys += [f"tx.{f}" for f in tx_cats]
    if tx_has_time:
        cat_keys.append("tx.hour")
    num_keys = [f"tx.{f}" for f in tx_nums]
    num_keys += [
        f"tx.{cf.numeric}@h{b}" for cf in active_cross for b in range(cf.buckets)
    ]

    values: dict[str, dict[str, list[float]]] = {}
    aggregates: dict[str, UserAggregate] = {}

    def _get(user_id: str) -> UserAggregate:
        agg = aggregates.get(user_id)
        if agg is None:
            agg = UserAggregate(
                user_id=user_id,
                cats={key: Counter() for key in cat_keys},
                nums={},
            )
            aggregates[user_id] = agg
            values[user_id] = {key: [] for key in num_keys}
        return agg

    for rec in operations:
        agg = _get(rec.user_id)
        agg.op_count += 1
        for f in op_cats:
            v = getattr(rec, f)
            if v is not None:
                agg.cats[f"op.{f}"][v] += 1
        if op_has_time and rec.time is not None:
            agg.cats["op.hour"][_hour_bucket(rec.time.hour, hour_buckets)] += 1

    for rec in transactions:
        agg = _get(rec.user_id)
        agg.tx_count += 1
        for f in tx_cats:
            v = getattr(rec, f)
            if v is not None:
                agg.cats[f"tx.{f}"][v] += 1
        if tx_has_time and rec.time is not None:
            agg.cats["tx.hour"][_hour_bucket(rec.time.hour, hour_buckets)] += 1
        user_values = values[rec.user_id]
        for f in tx_nums:
            v = getattr(rec, f)
            if v is not None:
                user_values[f"tx.{f}"].append(v)
        for cf in active_cross:
            v = getattr(rec, cf.numeric)
            if v is not None and rec.time is not None:
                bucket = rec.time.hour // (24 // cf.buckets)
                user_values[f"tx.{cf.numeric}@h{bucket}"].append(v)

    for user_id, agg in aggregates.items():
        agg.nums = {
            key: NumericStats.from_values(values[user_id][key]) for key in num_keys
        }
    return dict(sorted(aggregates.items()))
