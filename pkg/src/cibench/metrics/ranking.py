"""Rank-based ROC-AUC for binary and multi-class probability outputs."""

import numpy as np
from scipy.stats import rankdata

from ..exceptions import MetricError


def roc_auc_binary(y_true, scores):
    """Probability (in %) that a random positive outscores a random negative.

    ``y_true`` is boolean-like with 1 marking positives. Ties earn half
    credit, computed through average ranks.
    """
    y = np.asarray(y_true).ravel().astype(bool)
    s = np.asarray(scores, dtype=np.float64).ravel()
    if len(y) != len(s):
        raise MetricError("labels and scores differ in length")
    n_pos = int(y.sum())
    n_neg = len(y) - n_pos
    if n_pos == 0 or n_neg == 0:
        raise MetricError("ROC-AUC needs both classes among the scored rows")
    ranks = rankdata(s)
    # twice the Mann-Whitney U, an exact integer
    u2 = 2.0 * ranks[y].sum() - n_pos * (n_pos + 1.0)
    return float(100.0 * u2 / (2.0 * n_pos * n_neg))


def auc_single_threshold(counts, positive=None):
    """Single operating-point AUC, ``(1 + TPR - FPR) / 2`` in percent."""
    c = counts if positive is None else counts.with_positive(positive)
    tpr = c.tp / (c.tp + c.fn) if c.tp + c.fn else 0.0
    fpr = c.fp / (c.fp + c.tn) if c.fp + c.tn else 0.0
    return 100.0 * (1.0 + tpr - fpr) / 2.0


def _pair_auc(y, P, a, b):
    """Mean of A(a|b) and A(b|a). Both directions are scored because
    ``p_a / (p_a + p_b)`` and ``p_b / (p_a + p_b)`` need not rank near-tied
    rows in opposite order in floating point."""
    rows = (y == a) | (y == b)
    pa, pb = P[rows, a], P[rows, b]
    den = pa + pb
    sa = np.divide(pa, den, out=np.full_like(pa, 0.5), where=den > 0)
    sb = np.divide(pb, den, out=np.full_like(pb, 0.5), where=den > 0)
    return 0.5 * (roc_auc_binary(y[rows] == a, sa)
                  + roc_auc_binary(y[rows] == b, sb))


def auc_multiclass(y_true, proba, scheme="ovr", average="macro"):
    """One-vs-one or one-vs-rest AUC, macro or prevalence weighted.

    OvO scores each class pair on the rows of those two classes by
    ``p_a / (p_a + p_b)`` and ``p_b / (p_a + p_b)``, averaging both
    directions. Weighted OvO weights a pair by its combined row count,
    weighted OvR by class prevalence. Two-class input reduces to :func:`roc_auc_binary`.
    """
    y = np.asarray(y_true, dtype=np.int64).ravel()
    P = np.asarray(proba, dtype=np.float64)
    if P.ndim != 2 or len(P) != len(y):
        raise MetricError("proba must be an (n_rows, n_classes) matrix")
    if scheme not in ("ovo", "ovr"):
        raise MetricError(f"unknown AUC scheme {scheme!r}")
    if average not in ("macro", "weighted"):
        raise MetricError(f"unknown AUC average {average!r}")
    C = P.shape[1]
    if C == 2:
        return roc_auc_binary(y == 1, P[:, 1])
    support = np.bincount(y, minlength=C)
    present = support > 0
    if average == "macro" and not present.all():
        missing = np.flatnonzero(~present).tolist()
        raise MetricError(f"classes {missing} absent; macro AUC undefined")
    values, weights = [], []
    if scheme == "ovr":
        for c in np.flatnonzero(present):
            values.append(roc_auc_binary(y == c, P[:, c]))
            weights.append(support[c])
    else:
        idx = np.flatnonzero(present)
        for i, a in enumerate(idx):
            for b in idx[i + 1:]:
                values.append(_pair_auc(y, P, a, b))
                weights.append(support[a] + support[b])
    if not values:
        raise MetricError("no scorable class among the rows")
    values = np.array(values)
    if average == "macro":
        return float(values.mean())
    w = np.array(weights, dtype=np.float64)
    return float(np.dot(values, w) / w.sum())
