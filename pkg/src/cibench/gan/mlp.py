"""Dense ReLU networks with exact backpropagation, and the Adam update."""

from dataclasses import dataclass

import numpy as np

from ..exceptions import OptError, ShapeError


@dataclass
class MLP:
    """Fully connected network; ReLU on hidden layers.

    ``widths`` lists every layer size including input and output. The
    output activation is ``"linear"`` or ``"sigmoid"``.
    """

    widths: tuple
    weights: list
    biases: list
    output: str = "linear"

    @property
    def n_inputs(self):
        return self.widths[0]

    @property
    def hidden_widths(self):
        return tuple(self.widths[1:-1])

    def params(self):
        return self.weights + self.biases

    def set_params(self, params):
        n = len(self.weights)
        self.weights = list(params[:n])
        self.biases = list(params[n:])

    def copy(self):
        return MLP(self.widths, [w.copy() for w in self.weights],
                   [b.copy() for b in self.biases], self.output)


def init_mlp(widths, output="linear", rng=None):
    """He-normal weights and zero biases."""
    rng = np.random.default_rng(rng)
    widths = tuple(int(w) for w in widths)
    W = [rng.normal(0.0, np.sqrt(2.0 / a), size=(a, b))
         for a, b in zip(widths[:-1], widths[1:])]
    B = [np.zeros(b) for b in widths[1:]]
    return MLP(widths, W, B, output)


def _sigmoid(z):
    return 0.5 * (1.0 + np.tanh(0.5 * z))


def mlp_forward(net, X):
    """Return the network output and the activations needed for backprop."""
    X = np.asarray(X, dtype=np.float64)
    if X.ndim != 2 or X.shape[1] != net.n_inputs:
        raise ShapeError(f"network expects {net.n_inputs} input columns, got "
                         f"shape {X.shape}")
    acts = [X]
    a = X
    last = len(net.weights) - 1
    for i, (W, b) in enumerate(zip(net.weights, net.biases)):
        z = a @ W + b
        if i < last:
            a = np.maximum(z, 0.0)
        else:
            a = _sigmoid(z) if net.output == "sigmoid" else z
        acts.append(a)
    return a, acts


def mlp_backward(net, acts, grad_out):
    """Gradients of a scalar loss given ``d loss / d output``.

    Returns ``(weight_grads, bias_grads, input_grad)``.
    """
    grad_out = np.asarray(grad_out, dtype=np.float64)
    if grad_out.shape != acts[-1].shape:
        raise ShapeError(f"output gradient shape {grad_out.shape} does not "
                         f"match output {acts[-1].shape}")
    out = acts[-1]
    delta = grad_out * out * (1.0 - out) if net.output == "sigmoid" else grad_out
    gW = [None] * len(net.weights)
    gB = [None] * len(net.weights)
    for i in range(len(net.weights) - 1, -1, -1):
        gW[i] = acts[i].T @ delta
        gB[i] = delta.sum(axis=0)
        delta = delta @ net.weights[i].T
        if i > 0:
            delta = delta * (acts[i] > 0.0)
    return gW, gB, delta


def mse_loss(pred, target):
    """Mean squared error over every element and its output gradient."""
    diff = pred - target
    return float(np.mean(diff * diff)), 2.0 * diff / diff.size


@dataclass
class AdamState:
    """First and second moment estimates for one parameter array."""

    m: np.ndarray
    v: np.ndarray

    @classmethod
    def zeros_like(cls, param):
        return cls(np.zeros_like(param, dtype=np.float64),
                   np.zeros_like(param, dtype=np.float64))


def adam_update(param, grad, state, step_size=1e-3, beta1=0.9, beta2=0.999,
                eps=1e-8, t=1):
    """One bias-corrected Adam step; returns ``(new_param, new_state)``."""
    if t < 1:
        raise OptError(f"Adam step counter must start at 1, got {t}")
    grad = np.asarray(grad, dtype=np.float64)
    if not np.all(np.isfinite(grad)):
        raise OptError("non-finite gradient passed to Adam")
    if np.shape(grad) != np.shape(param):
        raise ShapeError("gradient and parameter shapes differ")
    m = beta1 * state.m + (1.0 - beta1) * grad
    v = beta2 * state.v + (1.0 - beta2) * grad * grad
    m_hat = m / (1.0 - beta1 ** t)
    v_hat = v / (1.0 - beta2 ** t)
    new = param - step_size * m_hat / (np.sqrt(v_hat) + eps)
    return new, AdamState(m, v)


class Adam:
    """Adam over a list of parameter arrays."""

    def __init__(self, params, step_size=1e-3, beta1=0.9, beta2=0.999,
                 eps=1e-8):
        self.step_size, self.beta1, self.beta2, self.eps = (
            step_size, beta1, beta2, eps)
        self.states = [AdamState.zeros_like(p) for p in params]
        self.t = 0

    def step(self, params, grads):
        self.t += 1
        out = []
        for i, (p, g) in enumerate(zip(params, grads)):
            p, self.states[i] = adam_update(p, g, self.states[i],
                                            self.step_size, self.beta1,
                                            self.beta2, self.eps, self.t)
            out.append(p)
        return out
