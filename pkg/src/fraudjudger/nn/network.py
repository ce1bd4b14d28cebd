"""Dense feed-forward networks with exact, cache-based backpropagation.

Everything is float64. A network is an ordered list of dense layers, each a
weight matrix, a bias vector and an elementwise activation; softmax is only
legal as the final activation. forward() caches the values backward() needs,
so the calling pattern is strictly forward-then-backward on the same batch.

Concurrency: a network that is no longer being trained is plain immutable
data (nothing mutates parameters except an optimizer step), so trained
networks can be shared across threads; training mutates caches and must stay
single-threaded per network.
"""

from __future__ import annotations

import numpy as np

from ..errors import ConfigError, ShapeError, StateError
from ..validation import as_float_matrix, check_rng

ACTIVATIONS = ("relu", "sigmoid", "softmax", "linear")


def _sigmoid(z: np.ndarray) -> np.ndarray:
    # Piecewise form keeps exp() arguments negative, so no overflow warnings.
    out = np.empty_like(z)
    pos = z >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-z[pos]))
    ez = np.exp(z[~pos])
    out[~pos] = ez / (1.0 + ez)
    return out


def _softmax(z: np.ndarray) -> np.ndarray:
    shifted = z - z.max(axis=1, keepdims=True)
    ez = np.exp(shifted)
    return ez / ez.sum(axis=1, keepdims=True)


class Layer:
    """One dense layer: out = activation(x @ w + b)."""

    def __init__(self, w: np.ndarray, b: np.ndarray, activation: str):
        if activation not in ACTIVATIONS:
            raise ConfigError(f"unknown activation {activation!r}")
        w = np.asarray(w, dtype=np.float64)
        b = np.asarray(b, dtype=np.float64).reshape(-1)
        if w.ndim != 2:
            raise ShapeError("layer weight must be 2-D")
        if b.shape[0] != w.shape[1]:
            raise ShapeError(
                f"bias length {b.shape[0]} does not match fan-out {w.shape[1]}"
            )
        self.w = w
        self.b = b
        self.activation = activation
        self._x: np.ndarray | None = None  # input cached by forward
        self._a: np.ndarray | None = None  # activation output cached by forward
        self._z: np.ndarray | None = None  # pre-activation cached by forward

    @property
    def fan_in(self) -> int:
        return self.w.shape[0]

    @property
    def fan_out(self) -> int:
        return self.w.shape[1]

    def forward(self, x: np.ndarray) -> np.ndarray:
        z = x @ self.w + self.b
        if self.activation == "relu":
            a = np.maximum(z, 0.0)
        elif self.activation == "sigmoid":
            a = _sigmoid(z)
        elif self.activation == "softmax":
            a = _softmax(z)
        else:
            a = z
        self._x, self._z, self._a = x, z, a
        return a

    def backward(self, grad_out: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Given dL/d(output), return (dL/dw, dL/db, dL/d(input))."""
        if self._x is None:
            raise StateError("backward called before forward")
        if self.activation == "relu":
            delta = grad_out * (self._z > 0.0)
        elif self.activation == "sigmoid":
            delta = grad_out * self._a * (1.0 - self._a)
        elif self.activation == "softmax":
            # Full Jacobian-vector product: works for any upstream gradient,
            # not only the fused cross-entropy case.
            inner = np.sum(grad_out * self._a, axis=1, keepdims=True)
            delta = self._a * (grad_out - inner)
        else:
            delta = grad_out
        dw = self._x.T @ delta
        db = delta.sum(axis=0)
        dx = delta @ self.w.T
        return dw, db, dx


class DenseNetwork:
    """Ordered dense layers with exact backprop over cached activations."""

    def __init__(self, layers: list[Layer]):
        if not layers:
            raise ConfigError("a network needs at least one layer")
        for prev, nxt in zip(layers, layers[1:]):
            if prev.fan_out != nxt.fan_in:
                raise ShapeError(
                    f"layer fan-out {prev.fan_out} does not feed fan-in {nxt.fan_in}"
                )
        for layer in layers[:-1]:
            if layer.activation == "softmax":
                raise ConfigError("softmax is only allowed as the final activation")
        self.layers = layers

    @classmethod
    def create(cls, dims, activations, rng) -> "DenseNetwork":
        """Build a network with Xavier-uniform weights and zero biases.

        dims is (input, h1, ..., output); activations has len(dims) - 1
        entries drawn from ACTIVATIONS.
        """
        dims = [int(d) for d in dims]
        if len(dims) < 2:
            raise ConfigError("dims needs at least an input and an output size")
        if any(d <= 0 for d in dims):
            raise ConfigError(f"all layer sizes must be positive, got {dims}")
        if len(activations) != len(dims) - 1:
            raise ConfigError(
                f"need {len(dims) - 1} activations for {len(dims)} dims, "
                f"got {len(activations)}"
            )
        rng = check_rng(rng)
        layers = []
        for fan_in, fan_out, act in zip(dims, dims[1:], activations):
            limit = np.sqrt(6.0 / (fan_in + fan_out))
            w = rng.uniform(-limit, limit, size=(fan_in, fan_out))
            layers.append(Layer(w, np.zeros(fan_out), act))
        return cls(layers)

    @property
    def input_dim(self) -> int:
        return self.layers[0].fan_in

    @property
    def output_dim(self) -> int:
        return self.layers[-1].fan_out

    @property
    def dims(self) -> list[int]:
        return [self.input_dim] + [layer.fan_out for layer in self.layers]

    @property
    def activations(self) -> list[str]:
        return [layer.activation for layer in self.layers]

    def forward(self, x) -> np.ndarray:
        x = as_float_matrix(x, "x", allow_empty=True)
        if x.shape[1] != self.input_dim:
            raise ShapeError(
                f"input has {x.shape[1]} features, network expects {self.input_dim}"
            )
        out = x
        for layer in self.layers:
            out = layer.forward(out)
        return out

    def final_preactivation(self, x) -> np.ndarray:
        """Forward pass returning the last layer's pre-activation values.

        Useful as a saturation-free score when the final activation squashes
        (sigmoid/softmax); does not populate the last layer's backward cache.
        """
        x = as_float_matrix(x, "x", allow_empty=True)
        if x.shape[1] != self.input_dim:
            raise ShapeError(
                f"input has {x.shape[1]} features, network expects {self.input_dim}"
            )
        out = x
        for layer in self.layers[:-1]:
            out = layer.forward(out)
        last = self.layers[-1]
        return out @ last.w + last.b

    def backward(self, grad_out: np.ndarray) -> tuple[list[np.ndarray], np.ndarray]:
        """Backprop dL/d(output) through the cached forward pass.

        Returns (gradients aligned with parameters(), dL/d(input)). Parameters
        are not mutated.
        """
        grad_out = np.asarray(grad_out, dtype=np.float64)
        cached = self.layers[-1]._a
        if cached is None:
            raise StateError("backward called before forward")
        if grad_out.shape != cached.shape:
            raise ShapeError(
                f"upstream gradient shape {grad_out.shape} does not match "
                f"output shape {cached.shape}"
            )
        grads: list[np.ndarray] = []
        grad = grad_out
        for layer in reversed(self.layers):
            dw, db, grad = layer.backward(grad)
            grads.append(db)
            grads.append(dw)
        grads.reverse()
        return grads, grad

    def parameters(self) -> list[np.ndarray]:
        """Live parameter arrays, ordered [w0, b0, w1, b1, ...]."""
        params: list[np.ndarray] = []
        for layer in self.layers:
            params.append(layer.w)
            params.append(layer.b)
        return params

    def num_params(self) -> int:
        return sum(p.size for p in self.parameters())

    def copy(self) -> "DenseNetwork":
        return DenseNetwork(
            [Layer(layer.w.copy(), layer.b.copy(), layer.activation) for layer in self.layers]
        )
