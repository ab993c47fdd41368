"""Confusion counts and the label-based scores built on them.

Every score is reported in percent. A zero denominator yields 0.
"""

from dataclasses import dataclass

import numpy as np

from ..exceptions import MetricError


@dataclass(frozen=True, eq=False)
class ConfusionCounts:
    """Count matrix indexed ``[true, predicted]``.

    The binary view (``tp``, ``tn``, ``fp``, ``fn``) is taken relative to
    ``positive``; with more than two classes every non-positive class is
    pooled into the negative side.
    """

    matrix: np.ndarray
    positive: int = 1

    @property
    def n_classes(self):
        return self.matrix.shape[0]

    @property
    def total(self):
        return int(self.matrix.sum())

    @property
    def tp(self):
        return int(self.matrix[self.positive, self.positive])

    @property
    def fn(self):
        return int(self.matrix[self.positive].sum()) - self.tp

    @property
    def fp(self):
        return int(self.matrix[:, self.positive].sum()) - self.tp

    @property
    def tn(self):
        return self.total - self.tp - self.fn - self.fp

    def with_positive(self, positive):
        return ConfusionCounts(self.matrix, int(positive))


def confusion(y_true, y_pred, n_classes=None, positive=1):
    y_true = np.asarray(y_true, dtype=np.int64).ravel()
    y_pred = np.asarray(y_pred, dtype=np.int64).ravel()
    if len(y_true) != len(y_pred):
        raise MetricError(
            f"y_true has {len(y_true)} labels but y_pred has {len(y_pred)}")
    if n_classes is None:
        n_classes = int(max(y_true.max(initial=1), y_pred.max(initial=1))) + 1
    for name, y in (("y_true", y_true), ("y_pred", y_pred)):
        if len(y) and (y.min() < 0 or y.max() >= n_classes):
            raise MetricError(f"{name} holds labels outside 0..{n_classes - 1}")
    M = np.zeros((n_classes, n_classes), dtype=np.int64)
    np.add.at(M, (y_true, y_pred), 1)
    return ConfusionCounts(M, positive)


def _ratio(num, den):
    return float(100.0 * num / den) if den > 0 else 0.0


def accuracy(counts):
    if counts.total == 0:
        raise MetricError("accuracy of an empty prediction set is undefined")
    return _ratio(np.trace(counts.matrix), counts.total)


def precision_recall_f1(counts, positive=None):
    """(precision, recall, F1) in percent for one designated class."""
    c = counts if positive is None else counts.with_positive(positive)
    tp, fp, fn = c.tp, c.fp, c.fn
    p = _ratio(tp, tp + fp)
    r = _ratio(tp, tp + fn)
    # F1 from counts avoids a 0/0 when both rates vanish
    f1 = _ratio(2 * tp, 2 * tp + fp + fn)
    return p, r, f1


def f1_per_class(counts):
    return np.array([precision_recall_f1(counts, c)[2]
                     for c in range(counts.n_classes)])


def f1_averaged(counts, mode="macro"):
    if counts.n_classes < 2:
        raise MetricError("averaged F1 needs at least two classes")
    per_class = f1_per_class(counts)
    if mode == "macro":
        return float(per_class.mean())
    if mode == "weighted":
        support = counts.matrix.sum(axis=1)
        if support.sum() == 0:
            return 0.0
        return float(np.dot(per_class, support) / support.sum())
    if mode == "micro":
        M = counts.matrix
        tp = np.trace(M)
        # pooled false positives and false negatives are both the off-diagonal mass
        off = M.sum() - tp
        return _ratio(2 * tp, 2 * tp + 2 * off)
    raise MetricError(f"unknown F1 averaging mode {mode!r}")
