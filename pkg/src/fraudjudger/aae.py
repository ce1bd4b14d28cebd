"""Adversarial autoencoder: model assembly and interleaved training.

The encoder is a shared relu trunk with a linear latent head and, in
semi-supervised mode, a softmax label head (class 0 benign, class 1 fraud).
The decoder reconstructs the input from the latent code (concatenated with
the label vector in semi mode). Two sigmoid discriminators judge whether a
latent code / label vector was generated by the encoder (target 1) or drawn
from the prior (target 0); the generator step trains the encoder to push
both discriminator outputs toward 0.

Each batch runs reconstruction, then the discriminator update, then the
generator update, then (semi only) a supervised classification step on the
next labeled mini-batch. All updates are Adam; parameters not owned by a
step's optimizer are never touched by it.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, InputError, ModeError, NumericError, ShapeError
from .nn.losses import bce_grad, bce_loss, mse_grad, mse_loss, softmax_ce_grad, softmax_ce_loss
from .nn.network import DenseNetwork
from .nn.optim import Adam
from .nn.priors import PriorSpec, sample_prior
from .validation import as_float_matrix, check_rng

MODES = ("semi", "unsupervised")
N_CLASSES = 2
BENIGN, FRAUD = 0, 1
DEFAULT_FRAUD_PRIOR = 0.1378


@dataclass(frozen=True)
class TrainConfig:
    """Schedule and loss weights for one training run."""

    epochs: int = 30
    batch_size: int = 128
    lr: float = 1e-3
    adv_lr: float | None = None
    lambda_rec: float = 1.0
    lambda_adv: float = 1.0
    lambda_cls: float = 1.0
    lr_decay: float = 1.0
    decay_at: float = 0.7
    seed: int = 0

    def __post_init__(self):
        if self.epochs < 0:
            raise ConfigError(f"epochs must be >= 0, got {self.epochs}")
        if self.batch_size < 2:
            raise ConfigError(f"batch_size must be >= 2, got {self.batch_size}")
        if self.lr <= 0 or (self.adv_lr is not None and self.adv_lr <= 0):
            raise ConfigError("learning rates must be positive")
        if not 0.0 < self.lr_decay <= 1.0:
            raise ConfigError(f"lr_decay must lie in (0, 1], got {self.lr_decay}")
        if not 0.0 <= self.decay_at <= 1.0:
            raise ConfigError(f"decay_at must lie in [0, 1], got {self.decay_at}")
        for name in ("lambda_rec", "lambda_adv", "lambda_cls"):
            if getattr(self, name) < 0:
                raise ConfigError(f"{name} must be >= 0")


def full_scale() -> dict:
    """Production-scale hyperparameters (large corpora, long training)."""
    return {
        "hidden": (1024, 1024, 1024),
        "latent_dim": 100,
        "epochs": 500,
        "batch_size": 200,
    }


class AaeModel:
    """Assembled networks plus the prior; see module docstring for roles."""

    def __init__(self, mode: str, trunk: DenseNetwork, z_head: DenseNetwork,
                 decoder: DenseNetwork, latent_disc: DenseNetwork,
                 prior: PriorSpec, y_head: DenseNetwork | None = None,
                 label_disc: DenseNetwork | None = None):
        if mode not in MODES:
            raise ConfigError(f"mode must be one of {MODES}, got {mode!r}")
        if mode == "semi" and (y_head is None or label_disc is None):
            raise ConfigError("semi mode needs a label head and label discriminator")
        if mode == "unsupervised" and (y_head is not None or label_disc is not None):
            raise ConfigError("unsupervised mode must not carry label networks")
        self.mode = mode
        self.trunk = trunk
        self.z_head = z_head
        self.y_head = y_head
        self.decoder = decoder
        self.latent_disc = latent_disc
        self.label_disc = label_disc
        self.prior = prior

    @classmethod
    def build(cls, input_dim: int, latent_dim: int, mode: str,
              hidden: tuple[int, ...] = (128, 128),
              disc_hidden: tuple[int, ...] = (64,),
              y_prior=None, rng=None) -> "AaeModel":
        if input_dim <= 0 or latent_dim <= 0:
            raise ConfigError("input_dim and latent_dim must be positive")
        if len(hidden) == 0:
            raise ConfigError("at least one hidden layer is required")
        rng = check_rng(rng)
        hidden = tuple(int(h) for h in hidden)
        disc_hidden = tuple(int(h) for h in disc_hidden)

        trunk = DenseNetwork.create(
            (input_dim, *hidden), ["relu"] * len(hidden), rng)
        z_head = DenseNetwork.create((hidden[-1], latent_dim), ["linear"], rng)
        y_head = None
        label_disc = None
        code_dim = latent_dim
        prior_y = None
        if mode == "semi":
            y_head = DenseNetwork.create((hidden[-1], N_CLASSES), ["softmax"], rng)
            label_disc = DenseNetwork.create(
                (N_CLASSES, *disc_hidden, 1),
                ["relu"] * len(disc_hidden) + ["sigmoid"], rng)
            code_dim += N_CLASSES
            if y_prior is None:
                prior_y = np.array([1.0 - DEFAULT_FRAUD_PRIOR, DEFAULT_FRAUD_PRIOR])
            else:
                prior_y = np.asarray(y_prior, dtype=np.float64)
        elif y_prior is not None:
            raise ConfigError("y_prior is only meaningful in semi mode")
        decoder = DenseNetwork.create(
            (code_dim, *reversed(hidden), input_dim),
            ["relu"] * len(hidden) + ["linear"], rng)
        latent_disc = DenseNetwork.create(
            (latent_dim, *disc_hidden, 1),
            ["relu"] * len(disc_hidden) + ["sigmoid"], rng)
        prior = PriorSpec.standard(latent_dim, prior_y)
        return cls(mode, trunk, z_head, decoder, latent_disc, prior,
                   y_head=y_head, label_disc=label_disc)

    @property
    def input_dim(self) -> int:
        return self.trunk.input_dim

    @property
    def latent_dim(self) -> int:
        return self.z_head.output_dim

    def _check_input(self, x) -> np.ndarray:
        x = as_float_matrix(x, "x", allow_empty=True)
        if x.shape[1] != self.input_dim:
            raise ShapeError(
                f"x has {x.shape[1]} features, model expects {self.input_dim}")
        return x

    def encode(self, x):
        """Latent codes; semi mode returns (y, z)."""
        x = self._check_input(x)
        h = self.trunk.forward(x)
        z = self.z_head.forward(h)
        if self.mode == "semi":
            return self.y_head.forward(h), z
        return z

    def decode(self, code) -> np.ndarray:
        code = as_float_matrix(code, "code", allow_empty=True)
        return self.decoder.forward(code)

    def reconstruct(self, x) -> np.ndarray:
        x = self._check_input(x)
        if self.mode == "semi":
            y, z = self.encode(x)
            return self.decode(np.hstack([z, y]))
        return self.decode(self.encode(x))

    def classify(self, x) -> tuple[np.ndarray, np.ndarray]:
        """(labels, fraud scores); the exact 0.5/0.5 tie goes to benign.

        Scores are fraud-minus-benign logit margins: monotone in the fraud
        probability but free of the float ties softmax saturation creates.
        """
        if self.mode != "semi":
            raise ModeError("classify requires a semi-supervised model")
        x = self._check_input(x)
        h = self.trunk.forward(x)
        y = self.y_head.forward(h)
        labels = np.argmax(y, axis=1).astype(np.int64)  # first max: tie -> benign
        logits = self.y_head.final_preactivation(h)
        return labels, logits[:, FRAUD] - logits[:, 0]


class AaeTrainer:
    """Owns the per-phase optimizers and the three training sub-steps."""

    def __init__(self, model: AaeModel, cfg: TrainConfig):
        self.model = model
        self.cfg = cfg
        adv_lr = cfg.adv_lr if cfg.adv_lr is not None else cfg.lr
        m = model
        enc_params = m.trunk.parameters() + m.z_head.parameters() + (
            m.y_head.parameters() if m.y_head is not None else [])
        self.opt_rec = Adam(enc_params + m.decoder.parameters(), lr=cfg.lr)
        self.opt_gen = Adam(enc_params, lr=adv_lr)
        self.opt_latent_disc = Adam(m.latent_disc.parameters(), lr=adv_lr)
        if m.mode == "semi":
            self.opt_label_disc = Adam(m.label_disc.parameters(), lr=adv_lr)
            self.opt_cls = Adam(
                m.trunk.parameters() + m.y_head.parameters(), lr=cfg.lr)

    def optimizers(self) -> list[Adam]:
        opts = [self.opt_rec, self.opt_gen, self.opt_latent_disc]
        if self.model.mode == "semi":
            opts += [self.opt_label_disc, self.opt_cls]
        return opts

    def _encoder_forward(self, x):
        h = self.model.trunk.forward(x)
        z = self.model.z_head.forward(h)
        y = self.model.y_head.forward(h) if self.model.mode == "semi" else None
        return h, z, y

    def _encoder_backward(self, d_z, d_y) -> list[np.ndarray]:
        """Combine head gradients through the trunk; returns opt_gen-ordered grads."""
        z_grads, d_h = self.model.z_head.backward(d_z)
        y_grads: list[np.ndarray] = []
        if self.model.mode == "semi":
            y_grads, d_h_y = self.model.y_head.backward(d_y)
            d_h = d_h + d_h_y
        trunk_grads, _ = self.model.trunk.backward(d_h)
        return trunk_grads + z_grads + y_grads

    def step_reconstruction(self, x: np.ndarray) -> float:
        m = self.model
        _, z, y = self._encoder_forward(x)
        code = np.hstack([z, y]) if m.mode == "semi" else z
        x_rec = m.decoder.forward(code)
        loss = mse_loss(x, x_rec)
        dec_grads, d_code = m.decoder.backward(self.cfg.lambda_rec * mse_grad(x, x_rec))
        d_z = d_code[:, :m.latent_dim]
        d_y = d_code[:, m.latent_dim:] if m.mode == "semi" else None
        enc_grads = self._encoder_backward(d_z, d_y)
        self.opt_rec.step(enc_grads + dec_grads)
        return loss

    def step_adversarial(self, x: np.ndarray, rng) -> tuple[float, float]:
        m = self.model
        n = x.shape[0]
        z_prior, y_prior = sample_prior(m.prior, n, rng)
        targets = np.vstack([np.ones((n, 1)), np.zeros((n, 1))])

        # Discriminator update; encoder outputs are inputs only, encoder
        # parameters are not in these optimizers.
        _, z, y = self._encoder_forward(x)
        p_z = m.latent_disc.forward(np.vstack([z, z_prior]))
        loss_d1 = bce_loss(p_z, targets)
        d1_grads, _ = m.latent_disc.backward(self.cfg.lambda_adv * bce_grad(p_z, targets))
        self.opt_latent_disc.step(d1_grads)
        loss_d2 = 0.0
        if m.mode == "semi":
            p_y = m.label_disc.forward(np.vstack([y, y_prior]))
            loss_d2 = bce_loss(p_y, targets)
            d2_grads, _ = m.label_disc.backward(
                self.cfg.lambda_adv * bce_grad(p_y, targets))
            self.opt_label_disc.step(d2_grads)
        loss_d = loss_d1 + loss_d2

        # Generator update: push the (frozen) discriminators toward the
        # prior verdict, training only the encoder.
        zeros = np.zeros((n, 1))
        _, z, y = self._encoder_forward(x)
        p_z = m.latent_disc.forward(z)
        loss_g = bce_loss(p_z, zeros)
        _, d_z = m.latent_disc.backward(self.cfg.lambda_adv * bce_grad(p_z, zeros))
        d_y = None
        if m.mode == "semi":
            p_y = m.label_disc.forward(y)
            loss_g += bce_loss(p_y, zeros)
            _, d_y = m.label_disc.backward(self.cfg.lambda_adv * bce_grad(p_y, zeros))
        enc_grads = self._encoder_backward(d_z, d_y)
        self.opt_gen.step(enc_grads)
        return loss_d, loss_g

    def step_classification(self, x: np.ndarray, labels: np.ndarray) -> float:
        m = self.model
        if m.mode != "semi":
            raise ModeError("classification step requires a semi-supervised model")
        onehot = np.zeros((labels.size, N_CLASSES))
        onehot[np.arange(labels.size), labels] = 1.0
        h = m.trunk.forward(x)
        y = m.y_head.forward(h)
        loss = softmax_ce_loss(y, onehot)
        y_grads, d_h = m.y_head.backward(self.cfg.lambda_cls * softmax_ce_grad(y, onehot))
        trunk_grads, _ = m.trunk.backward(d_h)
        self.opt_cls.step(trunk_grads + y_grads)
        return loss


def train(model: AaeModel, x, labels=None, cfg: TrainConfig = TrainConfig()) -> dict:
    """Run the interleaved schedule; returns per-epoch mean loss history.

    labels: required in semi mode, an int vector over {-1, 0, 1} where -1
    marks unlabeled rows; at least one labeled example per class. Identical
    (model init, data, config) reruns produce identical parameters.
    """
    x = as_float_matrix(x, "x")
    if x.shape[1] != model.input_dim:
        raise ShapeError(f"x has {x.shape[1]} features, model expects {model.input_dim}")
    n = x.shape[0]

    labeled_idx = np.array([], dtype=np.int64)
    label_values = None
    if model.mode == "semi":
        if labels is None:
            raise InputError("semi mode requires labels (-1 marks unlabeled)")
        label_values = np.asarray(labels).reshape(-1).astype(np.int64)
        if label_values.shape[0] != n:
            raise ShapeError("labels length does not match x")
        if np.any((label_values < -1) | (label_values > 1)):
            raise InputError("labels must lie in {-1, 0, 1}")
        labeled_idx = np.flatnonzero(label_values >= 0)
        present = set(label_values[labeled_idx].tolist())
        if present != {BENIGN, FRAUD}:
            raise InputError("semi mode needs at least one labeled example per class")
    elif labels is not None:
        raise ModeError("unsupervised mode does not take labels")

    seq = np.random.SeedSequence(cfg.seed)
    shuffle_rng, prior_rng = (np.random.default_rng(c) for c in seq.spawn(2))
    trainer = AaeTrainer(model, cfg)

    history = {
        "epoch": [],
        "reconstruction": [],
        "discriminator": [],
        "generator": [],
        "classification": [],
    }
    labeled_order = np.array([], dtype=np.int64)
    labeled_pos = 0
    decay_epoch = int(round(cfg.decay_at * cfg.epochs))
    for epoch in range(cfg.epochs):
        if cfg.lr_decay < 1.0 and epoch == decay_epoch:
            for opt in trainer.optimizers():
                opt.lr *= cfg.lr_decay
        order = shuffle_rng.permutation(n)
        sums = {"reconstruction": 0.0, "discriminator": 0.0,
                "generator": 0.0, "classification": 0.0}
        n_batches = 0
        for start in range(0, n, cfg.batch_size):
            idx = order[start:start + cfg.batch_size]
            if idx.size < 2:
                continue  # a 1-row tail cannot feed the adversarial pairing
            xb = x[idx]
            sums["reconstruction"] += trainer.step_reconstruction(xb)
            loss_d, loss_g = trainer.step_adversarial(xb, prior_rng)
            sums["discriminator"] += loss_d
            sums["generator"] += loss_g
            if model.mode == "semi":
                take = min(cfg.batch_size, labeled_idx.size)
                if labeled_pos + take > labeled_order.size:
                    labeled_order = shuffle_rng.permutation(labeled_idx)
                    labeled_pos = 0
                lb = labeled_order[labeled_pos:labeled_pos + take]
                labeled_pos += take
                sums["classification"] += trainer.step_classification(
                    x[lb], label_values[lb])
            n_batches += 1
        if n_batches == 0:
            raise InputError("no trainable batches (need at least 2 rows)")
        history["epoch"].append(epoch)
        for key, total in sums.items():
            value = total / n_batches
            if not np.isfinite(value):
                raise NumericError(
                    f"non-finite {key} loss at epoch {epoch}; "
                    "lower the learning rate or check the inputs")
            history[key].append(value)
    return history
