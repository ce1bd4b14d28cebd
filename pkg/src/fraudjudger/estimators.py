"""Estimator wrappers around the adversarial autoencoder.

FraudClassifier is the semi-supervised model (fit with y in {-1, 0, 1},
-1 meaning unlabeled); LatentEncoder is the unsupervised representation
model used for clustering. Both are plain sklearn-style estimators and
serialize to a single self-describing JSON artifact.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin, TransformerMixin
from sklearn.exceptions import NotFittedError

from .aae import AaeModel, TrainConfig, train
from .errors import ConfigError, InputError, SchemaError, ShapeError
from .nn.serialize import (
    dump_json,
    load_json,
    network_from_dict,
    network_to_dict,
    prior_from_dict,
    prior_to_dict,
)
from .validation import as_float_matrix, check_consistent_length

MODEL_FORMAT = "fraudjudger-model"
MODEL_VERSION = 1


def _derived_seeds(seed: int, n: int) -> list[int]:
    return [int(s) for s in np.random.SeedSequence(seed).generate_state(n)]


class _AaeEstimatorBase(BaseEstimator):
    """Shared fit plumbing, artifact IO and fitted-state checks."""

    _mode = ""

    def _train_config(self, train_seed: int) -> TrainConfig:
        return TrainConfig(
            epochs=self.epochs,
            batch_size=self.batch_size,
            lr=self.lr,
            adv_lr=self.adv_lr,
            lambda_rec=self.lambda_rec,
            lambda_adv=self.lambda_adv,
            lambda_cls=getattr(self, "lambda_cls", 1.0),
            seed=train_seed,
        )

    def _fit_model(self, X: np.ndarray, labels, y_prior) -> None:
        init_seed, train_seed = _derived_seeds(self.seed, 2)
        model = AaeModel.build(
            input_dim=X.shape[1],
            latent_dim=self.latent_dim,
            mode=self._mode,
            hidden=tuple(self.hidden),
            disc_hidden=tuple(self.disc_hidden),
            y_prior=y_prior,
            rng=np.random.default_rng(init_seed),
        )
        history = train(model, X, labels, self._train_config(train_seed))
        self.model_ = model
        self.history_ = history
        self.n_features_in_ = X.shape[1]

    def _check_fitted(self) -> AaeModel:
        if not hasattr(self, "model_"):
            raise NotFittedError(f"{type(self).__name__} is not fitted yet")
        return self.model_

    def _check_X(self, X) -> np.ndarray:
        model = self._check_fitted()
        X = as_float_matrix(X, "X", allow_empty=True)
        if X.shape[1] != model.input_dim:
            raise ShapeError(
                f"X has {X.shape[1]} features, model expects {model.input_dim}")
        return X

    # -- artifact IO ---------------------------------------------------

    def to_dict(self) -> dict:
        model = self._check_fitted()
        networks = {
            "trunk": network_to_dict(model.trunk),
            "z_head": network_to_dict(model.z_head),
            "decoder": network_to_dict(model.decoder),
            "latent_disc": network_to_dict(model.latent_disc),
        }
        if model.mode == "semi":
            networks["y_head"] = network_to_dict(model.y_head)
            networks["label_disc"] = network_to_dict(model.label_disc)
        params = {
            k: list(v) if isinstance(v, tuple) else v
            for k, v in self.get_params().items()
        }
        return {
            "format": MODEL_FORMAT,
            "version": MODEL_VERSION,
            "kind": type(self).__name__,
            "mode": model.mode,
            "latent_dim": model.latent_dim,
            "params": params,
            "prior": prior_to_dict(model.prior),
            "networks": networks,
            "feature_fingerprint": getattr(self, "feature_fingerprint_", None),
            "history": getattr(self, "history_", None),
            "n_features_in": self.n_features_in_,
        }

    def save(self, path) -> None:
        dump_json(self.to_dict(), path)

    @classmethod
    def _from_dict_into(cls, d: dict, estimator: "_AaeEstimatorBase"):
        if d.get("format") != MODEL_FORMAT:
            raise SchemaError(f"not a {MODEL_FORMAT} payload: {d.get('format')!r}")
        if d.get("version") != MODEL_VERSION:
            raise SchemaError(f"unsupported model version {d.get('version')!r}")
        if d.get("kind") != type(estimator).__name__:
            raise SchemaError(
                f"artifact holds a {d.get('kind')!r}, "
                f"expected {type(estimator).__name__!r}")
        params = {
            k: tuple(v) if isinstance(v, list) else v
            for k, v in d["params"].items()
        }
        estimator.set_params(**params)
        nets = d["networks"]
        model = AaeModel(
            mode=d["mode"],
            trunk=network_from_dict(nets["trunk"]),
            z_head=network_from_dict(nets["z_head"]),
            decoder=network_from_dict(nets["decoder"]),
            latent_disc=network_from_dict(nets["latent_disc"]),
            prior=prior_from_dict(d["prior"]),
            y_head=network_from_dict(nets["y_head"]) if "y_head" in nets else None,
            label_disc=network_from_dict(nets["label_disc"]) if "label_disc" in nets else None,
        )
        estimator.model_ = model
        estimator.history_ = d.get("history")
        estimator.n_features_in_ = d["n_features_in"]
        if d.get("feature_fingerprint") is not None:
            estimator.feature_fingerprint_ = d["feature_fingerprint"]
        return estimator

    @classmethod
    def load(cls, path):
        d = load_json(path)
        return cls._from_dict_into(d, cls())


class FraudClassifier(_AaeEstimatorBase, ClassifierMixin):
    """Semi-supervised fraud classifier (class 0 benign, class 1 fraud)."""

    _mode = "semi"

    def __init__(self, latent_dim: int = 32, hidden: tuple[int, ...] = (128, 128),
                 disc_hidden: tuple[int, ...] = (64,), epochs: int = 30,
                 batch_size: int = 128, lr: float = 1e-3,
                 adv_lr: float | None = None, lambda_rec: float = 1.0,
                 lambda_adv: float = 1.0, lambda_cls: float = 1.0,
                 fraud_prior: float | None = None, seed: int = 0):
        self.latent_dim = latent_dim
        self.hidden = hidden
        self.disc_hidden = disc_hidden
        self.epochs = epochs
        self.batch_size = batch_size
        self.lr = lr
        self.adv_lr = adv_lr
        self.lambda_rec = lambda_rec
        self.lambda_adv = lambda_adv
        self.lambda_cls = lambda_cls
        self.fraud_prior = fraud_prior
        self.seed = seed

    def fit(self, X, y):
        X = as_float_matrix(X, "X")
        y = np.asarray(y).reshape(-1).astype(np.int64)
        check_consistent_length(X, y, names=("X", "y"))
        labeled = y[y >= 0]
        if labeled.size == 0:
            raise InputError("fit needs at least one labeled row per class")
        if self.fraud_prior is not None:
            if not 0.0 < self.fraud_prior < 1.0:
                raise ConfigError("fraud_prior must lie in (0, 1)")
            y_prior = np.array([1.0 - self.fraud_prior, self.fraud_prior])
        else:
            fraud_share = float(np.mean(labeled == 1))
            fraud_share = min(max(fraud_share, 1e-3), 1.0 - 1e-3)
            y_prior = np.array([1.0 - fraud_share, fraud_share])
        self._fit_model(X, y, y_prior)
        self.classes_ = np.array([0, 1])
        return self

    def predict(self, X) -> np.ndarray:
        labels, _ = self._check_fitted().classify(self._check_X(X))
        return labels

    def predict_proba(self, X) -> np.ndarray:
        y, _ = self._check_fitted().encode(self._check_X(X))
        return y

    def fraud_scores(self, X) -> np.ndarray:
        """Fraud-vs-benign logit margin per row (higher = more suspicious)."""
        _, scores = self._check_fitted().classify(self._check_X(X))
        return scores

    def encode(self, X) -> np.ndarray:
        """Latent codes from the classifier's encoder."""
        _, z = self._check_fitted().encode(self._check_X(X))
        return z


class LatentEncoder(_AaeEstimatorBase, TransformerMixin):
    """Unsupervised adversarial autoencoder exposing the latent space."""

    _mode = "unsupervised"

    def __init__(self, latent_dim: int = 32, hidden: tuple[int, ...] = (128, 128),
                 disc_hidden: tuple[int, ...] = (64,), epochs: int = 30,
                 batch_size: int = 128, lr: float = 1e-3,
                 adv_lr: float | None = None, lambda_rec: float = 1.0,
                 lambda_adv: float = 1.0, seed: int = 0):
        self.latent_dim = latent_dim
        self.hidden = hidden
        self.disc_hidden = disc_hidden
        self.epochs = epochs
        self.batch_size = batch_size
        self.lr = lr
        self.adv_lr = adv_lr
        self.lambda_rec = lambda_rec
        self.lambda_adv = lambda_adv
        self.seed = seed

    def fit(self, X, y=None):
        X = as_float_matrix(X, "X")
        self._fit_model(X, None, None)
        return self

    def transform(self, X) -> np.ndarray:
        return self._check_fitted().encode(self._check_X(X))

    def inverse_transform(self, Z) -> np.ndarray:
        model = self._check_fitted()
        Z = as_float_matrix(Z, "Z", allow_empty=True)
        if Z.shape[1] != model.latent_dim:
            raise ShapeError(
                f"Z has {Z.shape[1]} dims, model latent_dim is {model.latent_dim}")
        return model.decode(Z)

    def reconstruction_error(self, X) -> float:
        X = self._check_X(X)
        model = self._check_fitted()
        return float(np.mean(np.square(X - model.reconstruct(X))))
