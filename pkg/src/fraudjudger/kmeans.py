"""Lloyd's k-means with farthest-point seeding and restarts."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError, ShapeError
from .validation import as_float_matrix, spawn_rngs


@dataclass
class KMeansResult:
    k: int
    assignments: np.ndarray
    centroids: np.ndarray
    inertia: float
    n_iter: int
    inertia_history: list[float] = field(default_factory=list)


def _squared_distances(points: np.ndarray, centroids: np.ndarray) -> np.ndarray:
    """Pairwise squared euclidean distances, (n_points, n_centroids)."""
    # ||x - c||^2 = ||x||^2 - 2 x.c + ||c||^2; clip tiny negatives from rounding.
    d2 = (
        np.sum(points * points, axis=1)[:, None]
        - 2.0 * points @ centroids.T
        + np.sum(centroids * centroids, axis=1)[None, :]
    )
    return np.maximum(d2, 0.0)


def _farthest_point_init(points: np.ndarray, k: int, rng: np.random.Generator) -> np.ndarray:
    """First centroid random, each next the point farthest from the chosen set."""
    n = points.shape[0]
    chosen = [int(rng.integers(n))]
    min_d2 = _squared_distances(points, points[chosen])[:, 0]
    while len(chosen) < k:
        min_d2[chosen] = -1.0  # never re-pick an existing centroid
        nxt = int(np.argmax(min_d2))
        chosen.append(nxt)
        min_d2 = np.minimum(min_d2, _squared_distances(points, points[[nxt]])[:, 0])
    return points[chosen].copy()


def _lloyd(points: np.ndarray, k: int, rng: np.random.Generator,
           max_iter: int) -> KMeansResult:
    n = points.shape[0]
    centroids = _farthest_point_init(points, k, rng)
    assignments = np.full(n, -1, dtype=np.int64)
    history: list[float] = []
    n_iter = 0
    for n_iter in range(1, max_iter + 1):
        d2 = _squared_distances(points, centroids)
        new_assignments = np.argmin(d2, axis=1)

        # Empty cluster: re-seed it at the point farthest from its assigned
        # centroid and hand that point over. Each point is claimed at most
        # once per sweep so degenerate (duplicate-heavy) inputs terminate.
        counts = np.bincount(new_assignments, minlength=k)
        claimable = np.ones(n, dtype=bool)
        while np.any(counts == 0) and np.any(claimable):
            empty = int(np.argmin(counts))
            nearest = np.where(claimable, d2[np.arange(n), new_assignments], -1.0)
            farthest = int(np.argmax(nearest))
            claimable[farthest] = False
            centroids[empty] = points[farthest]
            d2[:, empty] = np.sum(np.square(points - centroids[empty]), axis=1)
            new_assignments = np.argmin(d2, axis=1)
            new_assignments[farthest] = empty
            counts = np.bincount(new_assignments, minlength=k)

        inertia = float(np.sum(d2[np.arange(n), new_assignments]))
        history.append(inertia)
        if np.array_equal(new_assignments, assignments):
            break
        assignments = new_assignments
        for j in range(k):
            members = points[assignments == j]
            if members.shape[0]:
                centroids[j] = members.mean(axis=0)

    # Final inertia against the final centroids.
    d2 = _squared_distances(points, centroids)
    assignments = np.argmin(d2, axis=1)
    inertia = float(np.sum(d2[np.arange(n), assignments]))
    return KMeansResult(
        k=k,
        assignments=assignments,
        centroids=centroids,
        inertia=inertia,
        n_iter=n_iter,
        inertia_history=history,
    )


def kmeans(points, k: int, *, seed: int = 0, max_iter: int = 100,
           n_restarts: int = 10) -> KMeansResult:
    """Best-of-n_restarts Lloyd's k-means; deterministic given the seed.

    Each restart draws its own first centroid; ties in assignment go to the
    lowest centroid index. Raises when k exceeds the number of points.
    """
    points = as_float_matrix(points, "points")
    n = points.shape[0]
    if k <= 0:
        raise ConfigError(f"k must be positive, got {k}")
    if k > n:
        raise ShapeError(f"k={k} exceeds the number of points n={n}")
    if max_iter <= 0 or n_restarts <= 0:
        raise ConfigError("max_iter and n_restarts must be positive")

    best: KMeansResult | None = None
    for rng in spawn_rngs(seed, n_restarts):
        result = _lloyd(points, k, rng, max_iter)
        if best is None or result.inertia < best.inertia:
            best = result
    return best
