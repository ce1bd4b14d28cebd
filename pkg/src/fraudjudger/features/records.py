"""Typed operation/transaction records and CSV ingestion.

An empty CSV cell is a missing value (None). Strict loading fails on the
first malformed row with its 1-based line number; lenient loading skips bad
rows with a warning.
"""

from __future__ import annotations

import csv
import warnings
from dataclasses import dataclass
from datetime import datetime
from pathlib import Path
from typing import NamedTuple

from ..errors import RecordError, SchemaError

OPERATION_FIELDS = (
    "user_id", "mode", "time", "device", "version", "ip", "mac", "os", "geo_code",
)
TRANSACTION_FIELDS = (
    "user_id", "time", "device", "tran_amt", "ip", "channel", "acc_id",
    "balance", "trans_type",
)
TIME_FORMAT = "%Y-%m-%dT%H:%M:%S"


@dataclass(frozen=True)
class OperationRecord:
    user_id: str
    mode: str | None = None
    time: datetime | None = None
    device: str | None = None
    version: str | None = None
    ip: str | None = None
    mac: str | None = None
    os: str | None = None
    geo_code: str | None = None


@dataclass(frozen=True)
class TransactionRecord:
    user_id: str
    time: datetime | None = None
    device: str | None = None
    tran_amt: float | None = None
    ip: str | None = None
    channel: str | None = None
    acc_id: str | None = None
    balance: float | None = None
    trans_type: str | None = None


class RecordSet(NamedTuple):
    """The two record streams the pipeline consumes."""

    operations: list[OperationRecord]
    transactions: list[TransactionRecord]


_SCHEMAS = {
    "operation": (OperationRecord, OPERATION_FIELDS),
    "transaction": (TransactionRecord, TRANSACTION_FIELDS),
}
_NUMERIC_FIELDS = {"tran_amt", "balance"}


def _parse_cell(field: str, raw: str, line_no: int):
    value = raw.strip()
    if value == "":
        return None
    if field == "time":
        try:
            return datetime.strptime(value, TIME_FORMAT)
        except ValueError as exc:
            raise RecordError(
                f"line {line_no}: bad time {value!r} (expected {TIME_FORMAT})",
                line_no,
            ) from exc
    if field in _NUMERIC_FIELDS:
        try:
            number = float(value)
        except ValueError as exc:
            raise RecordError(
                f"line {line_no}: bad {field} {value!r} (expected a number)",
                line_no,
            ) from exc
        if field == "tran_amt" and number < 0:
            raise RecordError(
                f"line {line_no}: tran_amt must be non-negative, got {number}",
                line_no,
            )
        return number
    return value


def load_records(path, kind: str, strict: bool = True):
    """Load operation or transaction records from a CSV file."""
    if kind not in _SCHEMAS:
        raise SchemaError(f"unknown record kind {kind!r}")
    record_cls, expected = _SCHEMAS[kind]
    path = Path(path)
    records = []
    skipped = 0
    with path.open(newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise SchemaError(f"{path}: file is empty, expected a header row")
        if tuple(h.strip() for h in header) != expected:
            raise SchemaError(
                f"{path}: header {header!r} does not match the {kind} schema "
                f"{list(expected)!r}"
            )
        for line_no, row in enumerate(reader, start=2):
            if not row:
                continue
            try:
                if len(row) != len(expected):
                    raise RecordError(
                        f"line {line_no}: expected {len(expected)} columns, "
                        f"got {len(row)}",
                        line_no,
                    )
                values = {
                    field: _parse_cell(field, raw, line_no)
                    for field, raw in zip(expected, row)
                }
                if not values["user_id"]:
                    raise RecordError(f"line {line_no}: empty user_id", line_no)
                records.append(record_cls(**values))
            except RecordError as exc:
                if strict:
                    raise RecordError(f"{path}: {exc}", exc.line_no) from exc
                skipped += 1
    if skipped:
        warnings.warn(f"{path}: skipped {skipped} malformed rows", RuntimeWarning)
    return records


def _format_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, datetime):
        return value.strftime(TIME_FORMAT)
    if isinstance(value, float):
        return repr(value)
    return str(value)


def save_records(records, kind: str, path) -> None:
    """Write records as CSV; missing values become empty cells."""
    if kind not in _SCHEMAS:
        raise SchemaError(f"unknown record kind {kind!r}")
    _, fields = _SCHEMAS[kind]
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(fields)
        for rec in records:
            writer.writerow([_format_cell(getattr(rec, f)) for f in fields])


def feature_names(kind: str) -> tuple[str, ...]:
    """Feature columns of a record kind (everything except user_id)."""
    if kind not in _SCHEMAS:
        raise SchemaError(f"unknown record kind {kind!r}")
    return tuple(f for f in _SCHEMAS[kind][1] if f != "user_id")


def compute_missing_rates(records, kind: str) -> dict[str, float]:
    """Fraction of records with a missing value, per feature."""
    if not records:
        raise SchemaError("cannot compute missing rates on an empty record set")
    names = feature_names(kind)
    missing = {name: 0 for name in names}
    for rec in records:
        for name in names:
            if getattr(rec, name) is None:
                missing[name] += 1
    n = len(records)
    return {name: missing[name] / n for name in names}


def filter_features(rates: dict[str, float], threshold: float = 0.30) -> list[str]:
    """Features to keep: missing rate strictly greater than threshold drops."""
    if not 0.0 <= threshold <= 1.0:
        raise SchemaError(f"threshold must lie in [0, 1], got {threshold}")
    return [name for name, rate in rates.items() if rate <= threshold]
