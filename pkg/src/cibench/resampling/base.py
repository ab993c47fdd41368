"""Resampling results with per-row provenance, plus shared helpers."""

from dataclasses import dataclass, field

import numpy as np

from .._validation import MinMaxScaling, check_array
from ..exceptions import ResamplingError

ORIGINAL, DUPLICATE, SYNTHETIC = 0, 1, 2
TAG_NAMES = {ORIGINAL: "original", DUPLICATE: "duplicate",
             SYNTHETIC: "synthetic"}


@dataclass(frozen=True, eq=False)
class ResampledTrain:
    """Augmented training arrays and where every row came from.

    ``source`` is the training row a row copies, or the seed row of a
    synthetic (-1 when generated without one). For interpolated synthetics
    ``row == X[source] + gap * (X[neighbor] - X[source])`` in the units of
    the input matrix. ``removed_tags`` lists the provenance of rows that a
    cleaning or undersampling step discarded.
    """

    X: np.ndarray
    y: np.ndarray
    provenance: np.ndarray
    source: np.ndarray
    neighbor: np.ndarray
    gap: np.ndarray
    removed_tags: np.ndarray
    method: str
    warnings: tuple = ()
    info: dict = field(default_factory=dict)

    def __len__(self):
        return len(self.y)

    def class_counts(self, n_classes=None):
        return np.bincount(self.y, minlength=n_classes or 0)

    def counts(self):
        """Generated rows per tag (before removal) and the removed count."""
        out = {name: int(np.sum(self.provenance == t) +
                         np.sum(self.removed_tags == t))
               for t, name in TAG_NAMES.items()}
        out["removed"] = len(self.removed_tags)
        return out

    def tags(self):
        return [TAG_NAMES[t] for t in self.provenance]


class _Builder:
    """Accumulates the original rows followed by blocks of new rows."""

    def __init__(self, X, y):
        self.X0, self.y0 = X, y
        n = len(y)
        self.keep = np.ones(n, dtype=bool)
        self.blocks = []
        self.warnings = []
        self.info = {}

    def drop(self, rows):
        self.keep[rows] = False

    def add(self, X, label, tag, source, neighbor=None, gap=None):
        m = len(X)
        if m == 0:
            return
        self.blocks.append((
            np.asarray(X, dtype=np.float64).reshape(m, -1),
            np.full(m, label, dtype=np.int64),
            np.full(m, tag, dtype=np.int8),
            np.asarray(source, dtype=np.int64),
            np.full(m, -1, np.int64) if neighbor is None else np.asarray(neighbor, np.int64),
            np.full(m, np.nan) if gap is None else np.asarray(gap, np.float64)))

    def build(self, method):
        n = len(self.y0)
        kept = np.flatnonzero(self.keep)
        parts = [(self.X0[kept], self.y0[kept],
                  np.full(len(kept), ORIGINAL, np.int8), kept,
                  np.full(len(kept), -1, np.int64), np.full(len(kept), np.nan))]
        parts += self.blocks
        cols = list(zip(*parts))
        removed = np.full(n - len(kept), ORIGINAL, dtype=np.int8)
        return ResampledTrain(
            X=np.concatenate(cols[0]), y=np.concatenate(cols[1]),
            provenance=np.concatenate(cols[2]), source=np.concatenate(cols[3]),
            neighbor=np.concatenate(cols[4]), gap=np.concatenate(cols[5]),
            removed_tags=removed, method=method,
            warnings=tuple(self.warnings), info=dict(self.info))


def check_train(X, y):
    X = check_array(X)
    y = np.asarray(y).ravel()
    if len(y) != len(X):
        raise ResamplingError(f"X has {len(X)} rows but y has {len(y)} labels")
    if not np.issubdtype(y.dtype, np.integer) or (len(y) and y.min() < 0):
        raise ResamplingError("y must hold class indices 0..C-1")
    y = y.astype(np.int64)
    counts = np.bincount(y)
    if np.count_nonzero(counts) < 2:
        raise ResamplingError("resampling needs at least two classes")
    return X, y, counts


def deficits(counts):
    """Rows each class lacks to reach the majority count ('auto' strategy)."""
    return counts.max() - counts


def interpolate(x, neighbor, gap):
    """``x + gap * (neighbor - x)``; a gap in [0, 1] stays on the segment,
    a negative gap steps away from the neighbour."""
    x = np.asarray(x, dtype=np.float64)
    gap = np.asarray(gap, dtype=np.float64)
    if x.ndim == 2:
        gap = gap.reshape(-1, 1)
    return x + gap * (np.asarray(neighbor, dtype=np.float64) - x)


def scaled(X):
    scaler = MinMaxScaling(X)
    return scaler, scaler.transform(X)


def largest_remainder(weights, total):
    """Split ``total`` integer units proportionally to ``weights``.

    Floors first, then hands the remaining units to the largest fractional
    parts (ties to the lowest index). All-zero weights split evenly.
    """
    w = np.asarray(weights, dtype=np.float64)
    if w.sum() <= 0:
        w = np.ones_like(w)
    share = w / w.sum() * total
    out = np.floor(share).astype(np.int64)
    rest = int(total - out.sum())
    if rest > 0:
        order = np.lexsort((np.arange(len(w)), -(share - out)))
        out[order[:rest]] += 1
    return out
