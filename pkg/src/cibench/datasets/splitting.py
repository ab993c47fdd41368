"""Seeded shuffle-and-cut train/test splitting."""

from dataclasses import dataclass

import numpy as np

from ..exceptions import SplitError

MAX_REDRAWS = 100


@dataclass(frozen=True, eq=False)
class SplitPair:
    train: object
    test: object
    seed: int
    train_fraction: float
    train_index: np.ndarray
    test_index: np.ndarray
    attempts: int = 1


def split(ds, train_fraction=0.6, seed=0):
    """Shuffle rows uniformly and cut off the first ``floor(n * fraction)``.

    The split is not stratified. When a class is missing from the train part
    the shuffle is redrawn with ``seed + 1``, ``seed + 2`` and so on.
    """
    if not 0.0 < train_fraction < 1.0:
        raise SplitError(f"train_fraction must lie in (0, 1), got {train_fraction}")
    n = ds.n_samples
    n_train = int(np.floor(n * train_fraction))
    if n_train < ds.n_classes or n_train >= n:
        raise SplitError(f"{ds.name}: {n} rows cannot be split at {train_fraction}")

    for attempt in range(MAX_REDRAWS):
        rng = np.random.default_rng((int(seed) + attempt) & ((1 << 64) - 1))
        order = rng.permutation(n)
        train_idx = order[:n_train]
        if np.all(np.bincount(ds.y[train_idx], minlength=ds.n_classes) > 0):
            test_idx = order[n_train:]
            for idx in (train_idx, test_idx):
                idx.setflags(write=False)
            return SplitPair(ds.subset(train_idx), ds.subset(test_idx), int(seed),
                             float(train_fraction), train_idx, test_idx,
                             attempt + 1)
    raise SplitError(f"{ds.name}: no split with every class in train after "
                     f"{MAX_REDRAWS} attempts")
