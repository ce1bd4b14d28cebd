"""Latent-space group labeling and discovery of potential fraud users.

The discovery routine implements the detect-then-cluster flow: classify every
user with the supervised model, cluster the unsupervised latent codes, flag
groups whose detected-fraud share exceeds t_fraud, and surface the users the
classifier called benign inside those groups.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import InputError, ShapeError
from .kmeans import KMeansResult, kmeans
from .validation import as_label_vector, check_consistent_length

DEFAULT_T_FRAUD = 0.7


@dataclass(frozen=True)
class GroupStats:
    group: int
    size: int
    fraud_count: int
    fraud_ratio: float
    is_fraud_group: bool


@dataclass
class ClusterReport:
    """Clustering plus per-group fraud statistics."""

    k: int
    assignments: np.ndarray
    centroids: np.ndarray
    inertia: float
    groups: list[GroupStats] = field(default_factory=list)

    @property
    def fraud_groups(self) -> list[int]:
        return [g.group for g in self.groups if g.is_fraud_group]

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "inertia": self.inertia,
            "groups": [
                {
                    "group": g.group,
                    "size": g.size,
                    "fraud_count": g.fraud_count,
                    "fraud_ratio": g.fraud_ratio,
                    "is_fraud_group": g.is_fraud_group,
                }
                for g in self.groups
            ],
        }


def label_groups(assignments, detected_labels, t_fraud: float = DEFAULT_T_FRAUD,
                 k: int | None = None) -> list[GroupStats]:
    """Per-group fraud share; a group is a fraud group iff share > t_fraud."""
    assignments = np.asarray(assignments, dtype=np.int64).reshape(-1)
    detected = as_label_vector(detected_labels, "detected_labels")
    check_consistent_length(assignments, detected,
                            names=("assignments", "detected_labels"))
    if not 0.0 <= t_fraud <= 1.0:
        raise InputError(f"t_fraud must lie in [0, 1], got {t_fraud}")
    if np.any(assignments < 0):
        raise InputError("assignments must be non-negative group indices")
    n_groups = int(assignments.max()) + 1 if k is None else int(k)
    sizes = np.bincount(assignments, minlength=n_groups)
    fraud_counts = np.bincount(assignments, weights=detected, minlength=n_groups)
    stats = []
    for g in range(n_groups):
        size = int(sizes[g])
        fraud = int(fraud_counts[g])
        ratio = fraud / size if size else 0.0
        stats.append(GroupStats(
            group=g,
            size=size,
            fraud_count=fraud,
            fraud_ratio=ratio,
            is_fraud_group=bool(size and ratio > t_fraud),
        ))
    return stats


def cluster_report(latent, detected_labels, n_cluster: int, *,
                   t_fraud: float = DEFAULT_T_FRAUD, seed: int = 0,
                   n_restarts: int = 10, max_iter: int = 100) -> ClusterReport:
    """Cluster latent codes and attach detected-fraud group statistics."""
    result: KMeansResult = kmeans(latent, n_cluster, seed=seed,
                                  n_restarts=n_restarts, max_iter=max_iter)
    groups = label_groups(result.assignments, detected_labels, t_fraud, k=result.k)
    return ClusterReport(
        k=result.k,
        assignments=result.assignments,
        centroids=result.centroids,
        inertia=result.inertia,
        groups=groups,
    )


@dataclass(frozen=True)
class PotentialFraud:
    user_id: str
    group: int
    group_fraud_ratio: float


@dataclass
class PotentialFraudSet:
    """Users classified benign that sit inside detected-fraud groups."""

    users: list[PotentialFraud]
    report: ClusterReport
    detected: np.ndarray

    @property
    def user_ids(self) -> list[str]:
        return [u.user_id for u in self.users]


def find_potential_frauds(user_ids, features, classifier, encoder,
                          n_cluster: int, *, t_fraud: float = DEFAULT_T_FRAUD,
                          seed: int = 0, n_restarts: int = 10) -> PotentialFraudSet:
    """Detect-then-cluster discovery of suspicious benign-classified users.

    classifier must provide predict(features) -> {0,1}; encoder must provide
    transform(features) -> latent codes. The returned set is disjoint from
    the detected set by construction.
    """
    user_ids = [str(u) for u in user_ids]
    fp_a = getattr(classifier, "feature_fingerprint_", None)
    fp_b = getattr(encoder, "feature_fingerprint_", None)
    if fp_a is not None and fp_b is not None and fp_a != fp_b:
        raise ShapeError(
            "classifier and encoder were fitted on different feature layouts"
        )
    detected = as_label_vector(classifier.predict(features), "detected")
    latent = encoder.transform(features)
    check_consistent_length(user_ids, detected, latent,
                            names=("user_ids", "detected", "latent"))
    report = cluster_report(latent, detected, n_cluster, t_fraud=t_fraud,
                            seed=seed, n_restarts=n_restarts)
    fraud_groups = {g.group: g for g in report.groups if g.is_fraud_group}
    users = [
        PotentialFraud(
            user_id=user_ids[i],
            group=int(report.assignments[i]),
            group_fraud_ratio=fraud_groups[int(report.assignments[i])].fraud_ratio,
        )
        for i in range(len(user_ids))
        if int(report.assignments[i]) in fraud_groups and detected[i] == 0
    ]
    return PotentialFraudSet(users=users, report=report, detected=detected)


def cluster_recall(assignments, true_labels, t_fraud: float = DEFAULT_T_FRAUD) -> float:
    """Share of true fraud users that fall in groups with true-fraud share > t_fraud."""
    true_labels = as_label_vector(true_labels, "true_labels")
    groups = label_groups(assignments, true_labels, t_fraud)
    total_fraud = int(np.sum(true_labels == 1))
    if total_fraud == 0:
        raise InputError("cluster_recall is undefined without fraud users")
    assignments = np.asarray(assignments, dtype=np.int64).reshape(-1)
    fraud_group_ids = {g.group for g in groups if g.is_fraud_group}
    in_fraud_groups = np.isin(assignments, list(fraud_group_ids))
    captured = int(np.sum((true_labels == 1) & in_fraud_groups))
    return captured / total_fraud
