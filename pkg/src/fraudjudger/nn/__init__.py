"""Minimal dense-network substrate: exact backprop, Adam, losses, priors."""

from .network import ACTIVATIONS, DenseNetwork, Layer
from .optim import Adam
from .losses import (
    EPS_CLIP,
    bce_grad,
    bce_loss,
    mse_grad,
    mse_loss,
    softmax_ce_grad,
    softmax_ce_loss,
)
from .priors import PriorSpec, sample_prior
from .serialize import (
    load_network,
    network_from_dict,
    network_to_dict,
    save_network,
)

__all__ = [
    "ACTIVATIONS",
    "Adam",
    "DenseNetwork",
    "EPS_CLIP",
    "Layer",
    "PriorSpec",
    "bce_grad",
    "bce_loss",
    "load_network",
    "mse_grad",
    "mse_loss",
    "network_from_dict",
    "network_to_dict",
    "sample_prior",
    "save_network",
    "softmax_ce_grad",
    "softmax_ce_loss",
]
