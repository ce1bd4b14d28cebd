"""Training losses and their gradients.

All losses are means over the batch so gradients carry the 1/n factor, and
probabilities are clamped to [EPS_CLIP, 1 - EPS_CLIP] before any log so both
the value and the gradient stay finite at the boundaries.
"""

from __future__ import annotations

import numpy as np

from ..errors import ShapeError
from ..validation import as_float_matrix

EPS_CLIP = 1e-7


def _pair(a, b, name_a: str, name_b: str) -> tuple[np.ndarray, np.ndarray]:
    a = as_float_matrix(a, name_a, allow_empty=True)
    b = as_float_matrix(b, name_b, allow_empty=True)
    if a.shape != b.shape:
        raise ShapeError(f"{name_a} {a.shape} and {name_b} {b.shape} differ in shape")
    if a.size == 0:
        raise ShapeError(f"{name_a} must be non-empty")
    return a, b


def mse_loss(x, x_rec) -> float:
    """Mean squared error over every entry."""
    x, x_rec = _pair(x, x_rec, "x", "x_rec")
    return float(np.mean(np.square(x - x_rec)))


def mse_grad(x, x_rec) -> np.ndarray:
    """Gradient of mse_loss with respect to x_rec."""
    x, x_rec = _pair(x, x_rec, "x", "x_rec")
    return 2.0 * (x_rec - x) / x.size


def clamp_probs(p: np.ndarray) -> np.ndarray:
    return np.clip(p, EPS_CLIP, 1.0 - EPS_CLIP)


def bce_loss(p, a) -> float:
    """Binary cross-entropy, probabilities clamped, mean over entries."""
    p, a = _pair(p, a, "p", "a")
    p = clamp_probs(p)
    return float(-np.mean(a * np.log(p) + (1.0 - a) * np.log(1.0 - p)))


def bce_grad(p, a) -> np.ndarray:
    """Gradient of bce_loss with respect to p.

    The clamped probability sits in the denominator, so the gradient stays
    finite (magnitude at most ~1/EPS_CLIP per entry) even when p saturates.
    """
    p, a = _pair(p, a, "p", "a")
    pc = clamp_probs(p)
    return (pc - a) / (pc * (1.0 - pc)) / p.size


def softmax_ce_loss(y, a) -> float:
    """Cross-entropy -sum(a * log y) per row, mean over the batch."""
    y, a = _pair(y, a, "y", "a")
    yc = clamp_probs(y)
    return float(-np.sum(a * np.log(yc)) / y.shape[0])


def softmax_ce_grad(y, a) -> np.ndarray:
    """Gradient of softmax_ce_loss with respect to the probabilities y.

    Feed this to the softmax layer's backward, which applies the Jacobian;
    for one-hot targets the combined effect is the usual (y - a) / n.
    """
    y, a = _pair(y, a, "y", "a")
    yc = clamp_probs(y)
    return -(a / yc) / y.shape[0]
