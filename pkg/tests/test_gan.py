import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cibench.exceptions import FitError, OptError, SampleError, ShapeError
from cibench.gan import (AdamState, GanConfig, MLP, adam_update,
                         ctgan_augment, fit_ctgan, init_mlp, mlp_backward,
                         mlp_forward, mse_loss, sample)
from cibench.gan.ctgan import _Trainer
from cibench.resampling import SYNTHETIC

FAST = GanConfig(epochs=30)


def _fixture(counts, seed=0, f=2):
    rng = np.random.default_rng(seed)
    X = np.concatenate([rng.normal(3.0 * c, 1.0, size=(n, f))
                        for c, n in enumerate(counts)])
    return X, np.repeat(np.arange(len(counts)), counts)


# -- adam ---------------------------------------------------------------------

def reference_adam(x0, grad_fn, steps, lr, b1=0.9, b2=0.999, eps=1e-8):
    x, m, v = float(x0), 0.0, 0.0
    out = []
    for t in range(1, steps + 1):
        g = grad_fn(x)
        m = b1 * m + (1 - b1) * g
        v = b2 * v + (1 - b2) * g * g
        mh = m / (1 - b1 ** t)
        vh = v / (1 - b2 ** t)
        x = x - lr * mh / (vh ** 0.5 + eps)
        out.append(x)
    return out


def test_adam_zero_grad_keeps_param():
    p = np.array([1.0, -2.0])
    new, _ = adam_update(p, np.zeros(2), AdamState.zeros_like(p), 0.1, t=1)
    np.testing.assert_array_equal(new, p)


def test_adam_first_step_is_signed_step():
    p = np.array([0.5])
    for g in (3.0, -0.02):
        new, state = adam_update(p, np.array([g]), AdamState.zeros_like(p),
                                 0.01, t=1)
        assert state.m[0] / (1 - 0.9) == pytest.approx(g)
        assert new[0] == pytest.approx(0.5 - 0.01 * np.sign(g), abs=1e-8)


def test_adam_quadratic_trace_matches_reference():
    grad = lambda x: 2.0 * (x - 3.0)
    ref = reference_adam(0.0, grad, 10, 0.1)
    p, state = np.array([0.0]), AdamState.zeros_like(np.zeros(1))
    for t in range(1, 11):
        p, state = adam_update(p, grad(p), state, 0.1, t=t)
        assert p[0] == pytest.approx(ref[t - 1], abs=1e-12)


def test_adam_first_step_scale_equivariant():
    p = np.zeros(3)
    g = np.array([1.0, -2.0, 0.5])
    steps = [adam_update(p, s * g, AdamState.zeros_like(p), 0.01, eps=0.0,
                         t=1)[0] for s in (1e-3, 1e3)]
    np.testing.assert_allclose(steps[0], steps[1], rtol=1e-12)
    np.testing.assert_allclose(np.abs(steps[0]), 0.01, rtol=1e-12)


def test_adam_rejects_bad_input():
    p = np.zeros(2)
    with pytest.raises(OptError):
        adam_update(p, np.array([np.nan, 0.0]), AdamState.zeros_like(p), t=1)
    with pytest.raises(OptError):
        adam_update(p, p, AdamState.zeros_like(p), t=0)


# -- mlp ----------------------------------------------------------------------

def test_zero_net_outputs_zero():
    net = init_mlp((3, 4, 2), "linear", 0)
    net.weights = [np.zeros_like(w) for w in net.weights]
    out, _ = mlp_forward(net, np.ones((5, 3)))
    np.testing.assert_array_equal(out, 0.0)


def test_identity_net_mse_gradient():
    net = MLP((1, 1), [np.ones((1, 1))], [np.zeros(1)], "linear")
    out, acts = mlp_forward(net, np.array([[1.0]]))
    loss, g = mse_loss(out, np.zeros((1, 1)))
    assert loss == 1.0 and g[0, 0] == 2.0
    gW, gB, gx = mlp_backward(net, acts, g)
    assert gW[0][0, 0] == 2.0 and gB[0][0] == 2.0


def test_width_mismatch():
    net = init_mlp((3, 4, 1), rng=0)
    with pytest.raises(ShapeError):
        mlp_forward(net, np.ones((2, 4)))


def test_architecture_widths():
    X, y = _fixture([20, 10])
    h = fit_ctgan(X, y, GanConfig(epochs=2), seed=0)
    assert h.generator.hidden_widths == (50, 25, 10)
    assert h.generator.widths[-1] == 2
    assert h.generator.output == "linear"


def _loss(net, X, T):
    return mse_loss(mlp_forward(net, X)[0], T)[0]


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 2**32 - 1), st.sampled_from(["linear", "sigmoid"]))
def test_mlp_gradients_match_finite_differences(seed, output):
    rng = np.random.default_rng(seed)
    widths = (3, 5, 4, 2)
    net = init_mlp(widths, output, rng)
    net.biases = [rng.normal(0, 0.5, b.shape) for b in net.biases]
    X = rng.normal(size=(6, 3))
    T = rng.normal(size=(6, 2))
    out, acts = mlp_forward(net, X)
    gW, gB, gx = mlp_backward(net, acts, mse_loss(out, T)[1])
    h = 1e-6
    for arrays, grads in ((net.weights, gW), (net.biases, gB)):
        for P, G in zip(arrays, grads):
            for idx in np.ndindex(P.shape):
                old = P[idx]
                P[idx] = old + h
                up = _loss(net, X, T)
                P[idx] = old - h
                down = _loss(net, X, T)
                P[idx] = old
                fd = (up - down) / (2 * h)
                # kinks of the rectifier make a finite difference meaningless
                assert abs(fd - G[idx]) <= 1e-4 * max(1.0, abs(fd)) or \
                    _near_kink(net, X, h)


def _near_kink(net, X, h):
    a = X
    for W, b in zip(net.weights[:-1], net.biases[:-1]):
        z = a @ W + b
        if np.any(np.abs(z) < 10 * h):
            return True
        a = np.maximum(z, 0)
    return False


# -- training -----------------------------------------------------------------

def test_discriminator_learns_against_frozen_generator():
    X, y = _fixture([40, 20])
    cfg = GanConfig(epochs=100, freeze_generator=True)
    Z = (X - X.min(0)) / (X.max(0) - X.min(0))
    tr = _Trainer(Z, y, 2, cfg, seed=0)
    before = tr.discriminator_accuracy()
    tr.run()
    assert tr.discriminator_accuracy() > max(0.5, before)


def test_discriminator_output_in_unit_interval():
    X, y = _fixture([30, 10])
    Z = (X - X.min(0)) / (X.max(0) - X.min(0))
    tr = _Trainer(Z, y, 2, FAST, seed=1)
    p, _ = mlp_forward(tr.D, np.hstack([Z, np.eye(2)[y]]))
    assert np.all((p > 0) & (p < 1))


def test_training_does_not_mutate_input():
    X, y = _fixture([30, 10])
    X0, y0 = X.copy(), y.copy()
    fit_ctgan(X, y, FAST, seed=0)
    np.testing.assert_array_equal(X, X0)
    np.testing.assert_array_equal(y, y0)


def test_trace_export(tmp_path):
    X, y = _fixture([30, 10])
    path = tmp_path / "trace.csv"
    h = fit_ctgan(X, y, GanConfig(epochs=5, trace_path=str(path)), seed=0)
    lines = path.read_text().splitlines()
    assert lines[0] == "epoch,d_loss,g_loss"
    assert len(lines) == 1 + h.epochs_run == 6


def test_divergence_restarts_then_fails(monkeypatch):
    calls = []

    def boom(self):
        calls.append(1)
        raise OptError("boom")

    monkeypatch.setattr(_Trainer, "run", boom)
    X, y = _fixture([30, 10])
    with pytest.raises(FitError):
        fit_ctgan(X, y, FAST)
    assert len(calls) == 2


def test_epoch_cap():
    with pytest.raises(FitError):
        GanConfig(epochs=1001)


# -- sampling -----------------------------------------------------------------

@pytest.fixture(scope="module")
def handle():
    X, y = _fixture([40, 12], seed=2, f=3)
    return fit_ctgan(X, y, FAST, seed=3), X


def test_sample_contract(handle):
    h, X = handle
    a = sample(h, 1, 25, seed=4)
    np.testing.assert_array_equal(a, sample(h, 1, 25, seed=4))
    assert a.shape == (25, 3)
    assert np.all(a >= X.min(0) - 1e-12) and np.all(a <= X.max(0) + 1e-12)
    with pytest.raises(SampleError):
        sample(h, 1, 0)
    with pytest.raises(SampleError):
        sample(h, 7, 3)


def test_ctgan_augment_counts():
    X, y = _fixture([90, 10])
    res = ctgan_augment(X, y, FAST, seed=0)
    assert res.class_counts().tolist() == [90, 90]
    assert np.sum(res.provenance == SYNTHETIC) == 80
    assert np.all(res.y[res.provenance == SYNTHETIC] == 1)
    Xb, yb = _fixture([20, 20])
    bal = ctgan_augment(Xb, yb, FAST, seed=0)
    np.testing.assert_array_equal(bal.X, Xb)
    assert "loss_trace" not in bal.info
    three = ctgan_augment(*_fixture([50, 30, 20]), FAST, seed=0)
    assert three.class_counts().tolist() == [50, 50, 50]
