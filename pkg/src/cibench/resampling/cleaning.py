"""Edited-nearest-neighbour cleaning and the combined SMOTE-ENN sampler."""

from dataclasses import replace

import numpy as np

from .._validation import MinMaxScaling
from ..exceptions import CleanError
from ..learners.neighbors import KNNIndex
from .base import check_train
from .samplers import smote


def enn_mask(Z, y, n_neighbors=3):
    """Rows whose neighbours' modal label (ties to the lowest index)
    differs from their own label. Self matches are excluded."""
    k = min(n_neighbors, len(Z) - 1)
    nn = KNNIndex(Z).query_self(k)
    n_classes = int(y.max()) + 1
    votes = np.zeros((len(Z), n_classes), dtype=np.int64)
    np.add.at(votes, (np.repeat(np.arange(len(Z)), k), y[nn].ravel()), 1)
    return np.argmax(votes, axis=1) != y


def edited_nearest_neighbours(res, n_neighbors=3, scaler=None):
    """Remove disagreeing rows of any class from a resampling result.

    Raises :class:`CleanError` when the cleaning would empty a class.
    """
    scaler = scaler or MinMaxScaling(res.X)
    Z = scaler.transform(res.X)
    drop = enn_mask(Z, res.y, n_neighbors)
    before = np.bincount(res.y)
    after = np.bincount(res.y[~drop], minlength=len(before))
    lost = np.flatnonzero((before > 0) & (after == 0))
    if len(lost):
        raise CleanError(f"ENN would remove every row of class(es) {lost.tolist()}")
    keep = ~drop
    return replace(
        res, X=res.X[keep], y=res.y[keep], provenance=res.provenance[keep],
        source=res.source[keep], neighbor=res.neighbor[keep],
        gap=res.gap[keep],
        removed_tags=np.concatenate([res.removed_tags, res.provenance[drop]]),
        info={**res.info, "enn_removed": np.flatnonzero(drop)})


def smote_enn(X, y, k_neighbors=5, enn_neighbors=3, seed=0):
    """SMOTE followed by ENN over originals and synthetics alike.

    The result may be unbalanced. If cleaning would wipe out a class the
    SMOTE output is returned unchanged with a warning.
    """
    X, y, _ = check_train(X, y)
    res = smote(X, y, k_neighbors, seed)
    res = replace(res, method="smote_enn")
    try:
        return edited_nearest_neighbours(res, enn_neighbors, MinMaxScaling(X))
    except CleanError as exc:
        return replace(res, warnings=res.warnings + (f"smote_enn: {exc}; "
                                                     "cleaning skipped",))
