"""Prior distributions the adversarial training matches the encoder against."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..errors import ConfigError, ShapeError
from ..validation import check_rng


@dataclass(frozen=True)
class PriorSpec:
    """Latent prior z ~ N(mu, sigma^2 I) and categorical label prior y.

    mu/sigma are per-dimension vectors; y_prior is a probability vector over
    the label classes (used only by semi-supervised models).
    """

    mu: np.ndarray
    sigma: np.ndarray
    y_prior: np.ndarray | None = None

    def __post_init__(self):
        mu = np.asarray(self.mu, dtype=np.float64).reshape(-1)
        sigma = np.asarray(self.sigma, dtype=np.float64).reshape(-1)
        if mu.shape != sigma.shape:
            raise ShapeError(f"mu {mu.shape} and sigma {sigma.shape} differ in shape")
        if mu.size == 0:
            raise ConfigError("prior needs at least one latent dimension")
        if np.any(sigma <= 0):
            raise ConfigError("sigma entries must be positive")
        object.__setattr__(self, "mu", mu)
        object.__setattr__(self, "sigma", sigma)
        if self.y_prior is not None:
            y = np.asarray(self.y_prior, dtype=np.float64).reshape(-1)
            if y.size < 2:
                raise ConfigError("y_prior needs at least two classes")
            if np.any(y < 0) or not np.isclose(y.sum(), 1.0, atol=1e-9):
                raise ConfigError("y_prior must be a probability vector")
            object.__setattr__(self, "y_prior", y)

    @property
    def latent_dim(self) -> int:
        return self.mu.size

    @property
    def n_classes(self) -> int | None:
        return None if self.y_prior is None else self.y_prior.size

    @classmethod
    def standard(cls, latent_dim: int, y_prior=None) -> "PriorSpec":
        """z ~ N(0, I) in `latent_dim` dimensions."""
        return cls(np.zeros(latent_dim), np.ones(latent_dim), y_prior)


def sample_prior(spec: PriorSpec, n: int, rng) -> tuple[np.ndarray, np.ndarray | None]:
    """Draw n latent samples and, when y_prior is set, n one-hot labels."""
    if n <= 0:
        raise ConfigError(f"n must be positive, got {n}")
    rng = check_rng(rng)
    z = spec.mu + spec.sigma * rng.standard_normal((n, spec.latent_dim))
    y = None
    if spec.y_prior is not None:
        draws = rng.choice(spec.n_classes, size=n, p=spec.y_prior)
        y = np.zeros((n, spec.n_classes))
        y[np.arange(n), draws] = 1.0
    return z, y
