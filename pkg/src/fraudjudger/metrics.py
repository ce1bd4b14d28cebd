"""Evaluation metrics (fraud = positive class) and the linear baseline."""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin
from sklearn.exceptions import NotFittedError

from .errors import InputError, ShapeError
from .nn.optim import Adam
from .validation import (
    as_float_matrix,
    as_float_vector,
    as_label_vector,
    check_consistent_length,
)


@dataclass(frozen=True)
class ConfusionCounts:
    tp: int
    fp: int
    tn: int
    fn: int

    @property
    def n(self) -> int:
        return self.tp + self.fp + self.tn + self.fn


def confusion(preds, labels) -> ConfusionCounts:
    """Count tp/fp/tn/fn with label 1 (fraud) as the positive class."""
    preds = as_label_vector(preds, "preds")
    labels = as_label_vector(labels, "labels")
    check_consistent_length(preds, labels, names=("preds", "labels"))
    tp = int(np.sum((preds == 1) & (labels == 1)))
    fp = int(np.sum((preds == 1) & (labels == 0)))
    tn = int(np.sum((preds == 0) & (labels == 0)))
    fn = int(np.sum((preds == 0) & (labels == 1)))
    return ConfusionCounts(tp=tp, fp=fp, tn=tn, fn=fn)


def prf_metrics(counts: ConfusionCounts) -> dict:
    """Accuracy, precision, recall and F1 from confusion counts.

    Degenerate zero denominators yield 0.0 with a warning rather than an
    error; an entirely empty count set is an error.
    """
    if counts.n == 0:
        raise InputError("confusion counts are empty")
    accuracy = (counts.tp + counts.tn) / counts.n

    def _ratio(num: int, den: int, name: str) -> float:
        if den == 0:
            warnings.warn(f"{name} denominator is zero; reporting 0.0", RuntimeWarning)
            return 0.0
        return num / den

    precision = _ratio(counts.tp, counts.tp + counts.fp, "precision")
    recall = _ratio(counts.tp, counts.tp + counts.fn, "recall")
    if precision + recall == 0.0:
        warnings.warn("f1 denominator is zero; reporting 0.0", RuntimeWarning)
        f1 = 0.0
    else:
        f1 = 2.0 * precision * recall / (precision + recall)
    return {"accuracy": accuracy, "precision": precision, "recall": recall, "f1": f1}


@dataclass(frozen=True)
class RocCurve:
    """ROC points (fpr, tpr) from (0,0) to (1,1) plus the trapezoid AUC."""

    points: np.ndarray
    thresholds: np.ndarray
    auc: float


def roc_auc(scores, labels) -> RocCurve:
    """Threshold sweep over descending scores; ties share one step.

    The trapezoid AUC over tie-grouped steps equals the Mann-Whitney
    statistic P(s+ > s-) + 0.5 P(s+ = s-).
    """
    scores = as_float_vector(scores, "scores")
    labels = as_label_vector(labels, "labels")
    check_consistent_length(scores, labels, names=("scores", "labels"))
    n_pos = int(np.sum(labels == 1))
    n_neg = int(np.sum(labels == 0))
    if n_pos == 0 or n_neg == 0:
        raise InputError("roc_auc needs both classes present")

    order = np.argsort(-scores, kind="stable")
    sorted_scores = scores[order]
    sorted_labels = labels[order]
    # One curve point per distinct score value.
    boundary = np.flatnonzero(np.diff(sorted_scores) != 0.0)
    cut = np.concatenate([boundary, [len(sorted_scores) - 1]])
    tp = np.cumsum(sorted_labels == 1)[cut]
    fp = np.cumsum(sorted_labels == 0)[cut]
    tpr = np.concatenate([[0.0], tp / n_pos])
    fpr = np.concatenate([[0.0], fp / n_neg])
    thresholds = np.concatenate([[np.inf], sorted_scores[cut]])
    auc = float(np.trapezoid(tpr, fpr))
    return RocCurve(points=np.column_stack([fpr, tpr]), thresholds=thresholds, auc=auc)


class LogisticBaseline(BaseEstimator, ClassifierMixin):
    """Linear fraud scorer: full-batch gradient descent on logistic loss.

    The objective is mean BCE plus l2/2 * ||w||^2 (intercept unpenalized), so
    a zero-variance feature's weight is pulled to zero. Optimization is
    deterministic: zero init, fixed iteration count, Adam steps.
    """

    def __init__(self, l2: float = 1e-3, lr: float = 0.05, n_iter: int = 1500):
        self.l2 = l2
        self.lr = lr
        self.n_iter = n_iter

    def fit(self, X, y):
        X = as_float_matrix(X, "X")
        y = as_label_vector(y, "y")
        check_consistent_length(X, y, names=("X", "y"))
        if len(np.unique(y)) < 2:
            raise InputError("training labels contain a single class")
        n, d = X.shape
        w = np.zeros(d)
        b = np.zeros(1)
        opt = Adam([w, b], lr=self.lr)
        yf = y.astype(np.float64)
        for _ in range(self.n_iter):
            p = _stable_sigmoid(X @ w + b[0])
            resid = (p - yf) / n
            gw = X.T @ resid + self.l2 * w
            gb = np.array([resid.sum()])
            opt.step([gw, gb])
        self.coef_ = w
        self.intercept_ = float(b[0])
        self.classes_ = np.array([0, 1])
        self.n_features_in_ = d
        return self

    def _check_fitted(self):
        if not hasattr(self, "coef_"):
            raise NotFittedError("LogisticBaseline is not fitted yet")

    def decision_function(self, X) -> np.ndarray:
        self._check_fitted()
        X = as_float_matrix(X, "X", allow_empty=True)
        if X.shape[1] != self.n_features_in_:
            raise ShapeError(
                f"X has {X.shape[1]} features, model expects {self.n_features_in_}"
            )
        return X @ self.coef_ + self.intercept_

    def predict_proba(self, X) -> np.ndarray:
        p = _stable_sigmoid(self.decision_function(X))
        return np.column_stack([1.0 - p, p])

    def predict(self, X) -> np.ndarray:
        return (self.decision_function(X) > 0.0).astype(np.int64)


def _stable_sigmoid(z: np.ndarray) -> np.ndarray:
    out = np.empty_like(z, dtype=np.float64)
    pos = z >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-z[pos]))
    ez = np.exp(z[~pos])
    out[~pos] = ez / (1.0 + ez)
    return out
