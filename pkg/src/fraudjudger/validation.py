"""Input validation helpers used by every estimator and functional op."""

from __future__ import annotations

import numpy as np

from .errors import InputError, ShapeError


def as_float_matrix(x, name: str = "X", *, allow_empty: bool = False) -> np.ndarray:
    """Coerce to a 2-D float64 array with finite entries."""
    arr = np.asarray(x, dtype=np.float64)
    if arr.ndim == 1:
        arr = arr.reshape(-1, 1)
    if arr.ndim != 2:
        raise ShapeError(f"{name} must be 2-D, got ndim={arr.ndim}")
    if arr.shape[0] == 0 and not allow_empty:
        raise ShapeError(f"{name} must contain at least one row")
    if not np.all(np.isfinite(arr)):
        raise InputError(f"{name} contains non-finite entries")
    return arr


def as_float_vector(x, name: str = "x", *, allow_empty: bool = False) -> np.ndarray:
    """Coerce to a 1-D float64 array with finite entries."""
    arr = np.asarray(x, dtype=np.float64).reshape(-1)
    if arr.size == 0 and not allow_empty:
        raise ShapeError(f"{name} must contain at least one value")
    if not np.all(np.isfinite(arr)):
        raise InputError(f"{name} contains non-finite entries")
    return arr


def as_label_vector(y, name: str = "labels", *, allowed=(0, 1)) -> np.ndarray:
    """Coerce to a 1-D int array whose values all lie in `allowed`."""
    arr = np.asarray(y)
    if arr.ndim != 1:
        arr = arr.reshape(-1)
    if arr.size == 0:
        raise ShapeError(f"{name} must contain at least one value")
    if arr.dtype.kind == "f":
        if not np.all(np.isfinite(arr)):
            raise InputError(f"{name} contains non-finite entries")
        if not np.all(arr == np.round(arr)):
            raise InputError(f"{name} contains non-integer values")
    arr = arr.astype(np.int64)
    bad = ~np.isin(arr, list(allowed))
    if np.any(bad):
        raise InputError(
            f"{name} contains values outside {sorted(allowed)}: "
            f"{sorted(set(arr[bad].tolist()))[:5]}"
        )
    return arr


def check_consistent_length(*arrays, names: tuple[str, ...] | None = None) -> int:
    lengths = [len(a) for a in arrays]
    if len(set(lengths)) > 1:
        labels = names or tuple(f"arg{i}" for i in range(len(arrays)))
        detail = ", ".join(f"{n}={l}" for n, l in zip(labels, lengths))
        raise ShapeError(f"inconsistent lengths: {detail}")
    return lengths[0]


def check_probability_vector(p, name: str = "p") -> np.ndarray:
    arr = as_float_vector(p, name)
    if np.any(arr < 0) or np.any(arr > 1):
        raise InputError(f"{name} entries must lie in [0, 1]")
    return arr


def check_rng(seed_or_rng) -> np.random.Generator:
    """Accept a seed or a Generator; always return a Generator."""
    if isinstance(seed_or_rng, np.random.Generator):
        return seed_or_rng
    return np.random.default_rng(seed_or_rng)


def spawn_rngs(seed: int, n: int) -> list[np.random.Generator]:
    """Derive `n` independent deterministic generators from one seed."""
    seq = np.random.SeedSequence(seed)
    return [np.random.default_rng(child) for child in seq.spawn(n)]


def check_finite_scalar(value: float, name: str = "value") -> float:
    value = float(value)
    if not np.isfinite(value):
        raise InputError(f"{name} must be finite, got {value}")
    return value
