"""Class-conditional tabular GAN used as an oversampler.

Features are min-max scaled with the training rows. The generator maps
noise plus a one-hot class to a feature vector; the discriminator scores a
feature vector plus its one-hot class. Both are trained with a squared
error adversarial loss (real -> 1, fake -> 0; the generator aims for 1).
"""

import csv
from dataclasses import dataclass, field

import numpy as np

from .._validation import MinMaxScaling, derive_seed
from ..exceptions import FitError, OptError, SampleError
from ..resampling.base import SYNTHETIC, _Builder, check_train, deficits
from .mlp import Adam, init_mlp, mlp_backward, mlp_forward, mse_loss

MAX_EPOCHS = 1000


@dataclass(frozen=True)
class GanConfig:
    noise_dim: int = 16
    epochs: int = MAX_EPOCHS
    batch_size: int = 64
    learning_rate: float = 1e-3
    beta1: float = 0.9
    beta2: float = 0.999
    eps: float = 1e-8
    hidden: tuple = (50, 25, 10)
    plateau_window: int = 50
    plateau_tol: float = 1e-4
    trace_path: str = None
    # keep the generator at its initial weights (diagnostics only)
    freeze_generator: bool = False

    def __post_init__(self):
        if not 1 <= self.epochs <= MAX_EPOCHS:
            raise FitError(f"epochs must lie in 1..{MAX_EPOCHS}, got {self.epochs}")
        if self.batch_size < 1 or self.noise_dim < 1:
            raise FitError("batch_size and noise_dim must be positive")


@dataclass(frozen=True, eq=False)
class GeneratorHandle:
    """Trained generator plus what sampling needs to undo the scaling."""

    generator: object
    scaler: MinMaxScaling
    n_classes: int
    noise_dim: int
    classes_present: tuple
    trace: np.ndarray = field(repr=False, default=None)
    restarts: int = 0

    @property
    def epochs_run(self):
        return len(self.trace)


def _one_hot(c, n_classes):
    out = np.zeros((len(c), n_classes))
    out[np.arange(len(c)), c] = 1.0
    return out


def _plateaued(trace, window, tol):
    if len(trace) <= window:
        return False
    now, then = trace[-1], trace[-1 - window]
    rel = np.abs(now - then) / np.maximum(np.abs(then), 1e-12)
    return bool(np.all(rel < tol))


class _Trainer:
    def __init__(self, Z, y, n_classes, config, seed):
        self.Z, self.y, self.C, self.cfg = Z, y, n_classes, config
        self.rng = np.random.default_rng(seed)
        f = Z.shape[1]
        h = tuple(config.hidden)
        self.G = init_mlp((config.noise_dim + n_classes,) + h + (f,),
                          "linear", self.rng)
        self.D = init_mlp((f + n_classes,) + h + (1,), "sigmoid", self.rng)
        kw = dict(step_size=config.learning_rate, beta1=config.beta1,
                  beta2=config.beta2, eps=config.eps)
        self.opt_g = Adam(self.G.params(), **kw)
        self.opt_d = Adam(self.D.params(), **kw)
        self.present = np.flatnonzero(np.bincount(y, minlength=n_classes))
        self.by_class = {c: np.flatnonzero(y == c) for c in self.present}
        self.batch = min(config.batch_size, len(y))

    def draw_batch(self):
        # training-by-sampling: uniform class, then a real row of that class
        c = self.present[self.rng.integers(0, len(self.present), self.batch)]
        pos = self.rng.random(self.batch)
        rows = np.empty(self.batch, dtype=np.int64)
        for k in self.present:
            hit = c == k
            members = self.by_class[k]
            rows[hit] = members[(pos[hit] * len(members)).astype(np.int64)]
        return c, rows

    def generate(self, c, noise=None):
        if noise is None:
            noise = self.rng.standard_normal((len(c), self.cfg.noise_dim))
        inp = np.hstack([noise, _one_hot(c, self.C)])
        out, acts = mlp_forward(self.G, inp)
        return out, acts

    def d_step(self, c, rows, fake):
        cond = _one_hot(c, self.C)
        X = np.vstack([np.hstack([self.Z[rows], cond]), np.hstack([fake, cond])])
        target = np.r_[np.ones(len(c)), np.zeros(len(c))][:, None]
        p, acts = mlp_forward(self.D, X)
        loss, g = mse_loss(p, target)
        gW, gB, _ = mlp_backward(self.D, acts, g)
        self.D.set_params(self.opt_d.step(self.D.params(), gW + gB))
        return loss, p

    def g_step(self, c):
        fake, g_acts = self.generate(c)
        cond = _one_hot(c, self.C)
        p, d_acts = mlp_forward(self.D, np.hstack([fake, cond]))
        loss, g = mse_loss(p, np.ones_like(p))
        if self.cfg.freeze_generator:
            return loss
        _, _, g_in = mlp_backward(self.D, d_acts, g)
        f = self.Z.shape[1]
        gW, gB, _ = mlp_backward(self.G, g_acts, g_in[:, :f])
        self.G.set_params(self.opt_g.step(self.G.params(), gW + gB))
        return loss

    def run(self):
        n_batches = int(np.ceil(len(self.y) / self.batch))
        trace = []
        for epoch in range(self.cfg.epochs):
            d_tot = g_tot = 0.0
            for _ in range(n_batches):
                c, rows = self.draw_batch()
                fake, _ = self.generate(c)
                d_loss, _ = self.d_step(c, rows, fake)
                g_loss = self.g_step(c)
                d_tot += d_loss
                g_tot += g_loss
            row = (d_tot / n_batches, g_tot / n_batches)
            if not np.all(np.isfinite(row)):
                raise OptError(f"non-finite GAN loss at epoch {epoch}")
            trace.append(row)
            if _plateaued(np.array(trace), self.cfg.plateau_window,
                          self.cfg.plateau_tol):
                break
        return np.array(trace)

    def discriminator_accuracy(self):
        """Real-vs-fake accuracy over the whole train set, threshold 0.5."""
        c = self.y
        fake, _ = self.generate(c)
        cond = _one_hot(c, self.C)
        p_real, _ = mlp_forward(self.D, np.hstack([self.Z, cond]))
        p_fake, _ = mlp_forward(self.D, np.hstack([fake, cond]))
        return 0.5 * (np.mean(p_real > 0.5) + np.mean(p_fake <= 0.5))


def _write_trace(path, trace):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["epoch", "d_loss", "g_loss"])
        for e, (d, g) in enumerate(trace):
            w.writerow([e, repr(float(d)), repr(float(g))])


def fit_ctgan(X, y, config=None, seed=0):
    """Train the conditional GAN on a training matrix.

    A run that produces a non-finite loss is restarted once with
    ``seed + 1``; a second failure raises :class:`FitError`.
    """
    config = config or GanConfig()
    X, y, counts = check_train(X, y)
    scaler = MinMaxScaling(X)
    Z = scaler.transform(X)
    n_classes = len(counts)
    for attempt in range(2):
        trainer = _Trainer(Z, y, n_classes, config, seed + attempt)
        try:
            trace = trainer.run()
        except (OptError, FloatingPointError) as exc:
            last = exc
            continue
        if config.trace_path:
            _write_trace(config.trace_path, trace)
        return GeneratorHandle(trainer.G, scaler, n_classes, config.noise_dim,
                               tuple(trainer.present.tolist()), trace, attempt)
    raise FitError(f"GAN training diverged twice: {last}")


def sample(handle, class_index, n, seed=0):
    """``n`` rows of class ``class_index`` in original feature units."""
    if int(n) < 1:
        raise SampleError(f"sample size must be at least 1, got {n}")
    if class_index not in handle.classes_present:
        raise SampleError(f"class {class_index} was not seen during training")
    rng = np.random.default_rng(seed)
    noise = rng.standard_normal((int(n), handle.noise_dim))
    inp = np.hstack([noise, _one_hot(np.full(int(n), class_index),
                                     handle.n_classes)])
    out, _ = mlp_forward(handle.generator, inp)
    return handle.scaler.inverse_transform(np.clip(out, 0.0, 1.0))


def ctgan_augment(X, y, config=None, seed=0):
    """Fill every class up to the majority count with GAN samples."""
    X, y, counts = check_train(X, y)
    b = _Builder(X, y)
    need = deficits(counts)
    if not need.any():
        return b.build("ctgan")
    handle = fit_ctgan(X, y, config, seed)
    for c in np.flatnonzero(need):
        rows = sample(handle, int(c), int(need[c]),
                      derive_seed("ctgan-sample", seed, int(c)))
        b.add(rows, int(c), SYNTHETIC, np.full(len(rows), -1))
    b.info.update(loss_trace=handle.trace, restarts=handle.restarts)
    if handle.restarts:
        b.warnings.append("ctgan: training restarted after divergence")
    return b.build("ctgan")
