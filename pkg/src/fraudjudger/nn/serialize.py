"""Versioned, bit-exact serialization for networks and priors.

Arrays are stored as base64 of their raw little-endian float64 bytes plus the
shape, so save/load round-trips every parameter bit-for-bit and the files are
self-describing JSON.
"""

from __future__ import annotations

import base64
import json
from pathlib import Path

import numpy as np

from ..errors import SchemaError
from .network import DenseNetwork, Layer
from .priors import PriorSpec

FORMAT_NAME = "fraudjudger-network"
FORMAT_VERSION = 1


def array_to_dict(arr: np.ndarray) -> dict:
    arr = np.ascontiguousarray(arr, dtype=np.float64)
    le = arr.astype("<f8", copy=False)
    return {
        "shape": list(arr.shape),
        "data": base64.b64encode(le.tobytes()).decode("ascii"),
    }


def array_from_dict(d: dict) -> np.ndarray:
    raw = base64.b64decode(d["data"])
    arr = np.frombuffer(raw, dtype="<f8").astype(np.float64)
    return arr.reshape(d["shape"])


def network_to_dict(net: DenseNetwork) -> dict:
    return {
        "format": FORMAT_NAME,
        "version": FORMAT_VERSION,
        "layers": [
            {
                "activation": layer.activation,
                "w": array_to_dict(layer.w),
                "b": array_to_dict(layer.b),
            }
            for layer in net.layers
        ],
    }


def network_from_dict(d: dict) -> DenseNetwork:
    if d.get("format") != FORMAT_NAME:
        raise SchemaError(f"not a {FORMAT_NAME} payload: {d.get('format')!r}")
    if d.get("version") != FORMAT_VERSION:
        raise SchemaError(f"unsupported {FORMAT_NAME} version {d.get('version')!r}")
    layers = [
        Layer(array_from_dict(l["w"]), array_from_dict(l["b"]), l["activation"])
        for l in d["layers"]
    ]
    return DenseNetwork(layers)


def prior_to_dict(spec: PriorSpec) -> dict:
    out = {
        "mu": array_to_dict(spec.mu),
        "sigma": array_to_dict(spec.sigma),
    }
    if spec.y_prior is not None:
        out["y_prior"] = array_to_dict(spec.y_prior)
    return out


def prior_from_dict(d: dict) -> PriorSpec:
    y = array_from_dict(d["y_prior"]) if "y_prior" in d else None
    return PriorSpec(array_from_dict(d["mu"]), array_from_dict(d["sigma"]), y)


def dump_json(payload: dict, path) -> None:
    """Deterministic JSON: sorted keys, fixed separators, trailing newline."""
    text = json.dumps(payload, sort_keys=True, separators=(",", ":"), allow_nan=False)
    Path(path).write_text(text + "\n", encoding="utf-8")


def load_json(path) -> dict:
    return json.loads(Path(path).read_text(encoding="utf-8"))


def save_network(net: DenseNetwork, path) -> None:
    dump_json(network_to_dict(net), path)


def load_network(path) -> DenseNetwork:
    return network_from_dict(load_json(path))
