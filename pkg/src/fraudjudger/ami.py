"""Adjusted mutual information between two labelings.

AMI = (MI - E[MI]) / (mean(H(A), H(B)) - E[MI]) with natural logs, where
E[MI] is the exact expectation under the permutation model (hypergeometric
cell counts given fixed marginals).
"""

from __future__ import annotations

import numpy as np
from scipy.special import gammaln

from .errors import InputError
from .validation import check_consistent_length


def _as_codes(labels, name: str) -> np.ndarray:
    arr = np.asarray(labels).reshape(-1)
    if arr.size == 0:
        raise InputError(f"{name} must contain at least one value")
    _, codes = np.unique(arr, return_inverse=True)
    return codes


def contingency_table(labels_a, labels_b) -> np.ndarray:
    a = _as_codes(labels_a, "labels_a")
    b = _as_codes(labels_b, "labels_b")
    check_consistent_length(a, b, names=("labels_a", "labels_b"))
    ka = int(a.max()) + 1
    kb = int(b.max()) + 1
    table = np.zeros((ka, kb), dtype=np.int64)
    np.add.at(table, (a, b), 1)
    return table


def entropy(labels) -> float:
    """Entropy of a labeling in nats."""
    codes = _as_codes(labels, "labels")
    counts = np.bincount(codes).astype(np.float64)
    p = counts[counts > 0] / codes.size
    return float(-np.sum(p * np.log(p)))


def mutual_information(labels_a, labels_b) -> float:
    """MI of the joint labeling in nats."""
    table = contingency_table(labels_a, labels_b).astype(np.float64)
    n = table.sum()
    ai = table.sum(axis=1)
    bj = table.sum(axis=0)
    mi = 0.0
    for i in range(table.shape[0]):
        for j in range(table.shape[1]):
            nij = table[i, j]
            if nij > 0:
                mi += (nij / n) * np.log(n * nij / (ai[i] * bj[j]))
    return float(max(mi, 0.0))


def expected_mutual_information(table: np.ndarray) -> float:
    """E[MI] when cell counts follow the permutation (hypergeometric) model."""
    table = np.asarray(table, dtype=np.int64)
    ai = table.sum(axis=1)
    bj = table.sum(axis=0)
    n = int(table.sum())
    emi = 0.0
    log_n = np.log(n)
    for a in ai:
        for b in bj:
            lo = max(1, a + b - n)
            hi = min(a, b)
            if hi < lo:
                continue
            nij = np.arange(lo, hi + 1, dtype=np.float64)
            term1 = (nij / n) * (np.log(nij) + log_n - np.log(a) - np.log(b))
            log_prob = (
                gammaln(a + 1)
                + gammaln(b + 1)
                + gammaln(n - a + 1)
                + gammaln(n - b + 1)
                - gammaln(n + 1)
                - gammaln(nij + 1)
                - gammaln(a - nij + 1)
                - gammaln(b - nij + 1)
                - gammaln(n - a - b + nij + 1)
            )
            emi += float(np.sum(term1 * np.exp(log_prob)))
    return emi


def partitions_equal(labels_a, labels_b) -> bool:
    """True when the two labelings induce the same partition of the items."""
    a = _as_codes(labels_a, "labels_a")
    b = _as_codes(labels_b, "labels_b")
    check_consistent_length(a, b, names=("labels_a", "labels_b"))
    first_a: dict[int, int] = {}
    first_b: dict[int, int] = {}
    for i, (ca, cb) in enumerate(zip(a.tolist(), b.tolist())):
        if first_a.setdefault(ca, i) != first_b.setdefault(cb, i):
            return False
    return True


def ami(labels_a, labels_b) -> float:
    """Adjusted mutual information, symmetric in its arguments.

    Degenerate case: when both sides carry no information (zero entropy or
    an otherwise zero denominator) the score is 1.0 for identical partitions
    and 0.0 otherwise.
    """
    table = contingency_table(labels_a, labels_b)
    n = table.sum()
    if n == 0:
        raise InputError("labelings are empty")
    h_a = entropy(labels_a)
    h_b = entropy(labels_b)
    mi = mutual_information(labels_a, labels_b)
    emi = expected_mutual_information(table)
    denominator = 0.5 * (h_a + h_b) - emi
    if abs(denominator) < 1e-12:
        return 1.0 if partitions_equal(labels_a, labels_b) else 0.0
    return float((mi - emi) / denominator)
