"""Histogram boosting with gradient-based one-side sampling (GOSS).

Features are quantile-binned once; every tree is grown leaf-wise on the
histograms of the sampled rows.
"""

import numpy as np

from .._validation import derive_seed, rng_from
from ..learners.tree import Tree
from ._kernels import build_hist_tree
from .base import BoostedTrees, OneVsRestBooster, base_log_odds, log_loss, sigmoid


def bin_edges(x, max_bin):
    """Upper bin edges for one feature.

    With at most ``max_bin`` distinct values the edges are the midpoints
    between consecutive values, so every value gets its own bin. Otherwise
    edges sit at evenly spaced quantiles.
    """
    distinct = np.unique(x)
    if len(distinct) <= max_bin:
        mids = 0.5 * (distinct[:-1] + distinct[1:])
        return np.where(mids >= distinct[1:], distinct[:-1], mids)
    qs = np.quantile(x, np.linspace(0.0, 1.0, max_bin + 1)[1:-1])
    edges = np.unique(qs)
    return edges[edges < distinct[-1]]


def apply_bins(X, edges):
    """Bin index per value: the number of edges strictly below it."""
    B = np.empty(X.shape, dtype=np.int64)
    for j, e in enumerate(edges):
        B[:, j] = np.searchsorted(e, X[:, j], side="left")
    return B


def goss_sample(g, a, b, rng):
    """Rows kept by GOSS and their gradient multipliers.

    The ``a`` fraction with the largest ``|g|`` is kept as is; a random
    ``b`` fraction of the rest is kept with weight ``(1 - a) / b``.
    """
    n = len(g)
    if a >= 1.0 or a + b >= 1.0:
        return np.arange(n), np.ones(n)
    n_top = int(a * n)
    n_rand = int(b * n)
    order = np.argsort(-np.abs(g), kind="stable")
    top, rest = order[:n_top], order[n_top:]
    picked = rng.choice(rest, size=min(n_rand, len(rest)), replace=False)
    rows = np.sort(np.concatenate([top, picked]))
    mult = np.ones(n)
    mult[picked] = (1.0 - a) / b
    return rows, mult[rows]


class HistGradientBoostingClassifier(OneVsRestBooster):
    """Leaf-wise histogram boosting of log-loss with GOSS row sampling.

    The first ``goss_warmup`` rounds use every row (default
    ``int(1 / learning_rate)``, as in the reference GOSS implementation).
    Boosting stops at the first round whose tree cannot split, so with
    fewer rows than ``2 * min_data_in_leaf`` the model stays at the base
    score.
    """

    def __init__(self, n_estimators=100, learning_rate=0.1, num_leaves=31,
                 max_depth=-1, max_bin=255, min_data_in_leaf=20,
                 min_sum_hessian_in_leaf=1e-3, reg_lambda=0.0,
                 min_split_gain=0.0, goss_a=0.2, goss_b=0.1, goss_warmup=None,
                 random_state=0):
        self.n_estimators = n_estimators
        self.learning_rate = learning_rate
        self.num_leaves = num_leaves
        self.max_depth = max_depth
        self.max_bin = max_bin
        self.min_data_in_leaf = min_data_in_leaf
        self.min_sum_hessian_in_leaf = min_sum_hessian_in_leaf
        self.reg_lambda = reg_lambda
        self.min_split_gain = min_split_gain
        self.goss_a = goss_a
        self.goss_b = goss_b
        self.goss_warmup = goss_warmup
        self.random_state = random_state

    def _prepare(self, X):
        self.bin_edges_ = [bin_edges(X[:, j], self.max_bin) for j in range(X.shape[1])]
        self.n_bins_ = np.array([len(e) + 1 for e in self.bin_edges_], dtype=np.int64)
        self._binned = apply_bins(X, self.bin_edges_)

    def _to_tree(self, arrays):
        feature, split_bin, left, right, value, gain = arrays
        threshold = np.zeros(len(feature))
        for i in np.flatnonzero(feature >= 0):
            threshold[i] = self.bin_edges_[feature[i]][split_bin[i]]
        return Tree(feature, threshold, left, right, value, gain=gain)

    def _fit_binary(self, X, t, member):
        B = self._binned
        rng = rng_from(derive_seed("histgbm", self.random_state, member))
        F = np.full(len(t), base_log_odds(t))
        model = BoostedTrees(float(F[0]), self.learning_rate)
        model.train_loss.append(log_loss(t, F))
        depth = -1 if self.max_depth is None else int(self.max_depth)
        warmup = (int(1.0 / self.learning_rate) if self.goss_warmup is None
                  else int(self.goss_warmup))
        for it in range(self.n_estimators):
            p = sigmoid(F)
            g = p - t
            h = p * (1.0 - p)
            if it < warmup:
                rows, mult = np.arange(len(t)), np.ones(len(t))
            else:
                rows, mult = goss_sample(g, self.goss_a, self.goss_b, rng)
            gw = np.zeros(len(t))
            hw = np.zeros(len(t))
            gw[rows] = g[rows] * mult
            hw[rows] = h[rows] * mult
            arrays = build_hist_tree(B, rows.astype(np.int64), gw, hw,
                                     self.n_bins_, int(self.num_leaves), depth,
                                     float(self.reg_lambda),
                                     float(self.min_split_gain),
                                     int(self.min_data_in_leaf),
                                     float(self.min_sum_hessian_in_leaf))
            tree = self._to_tree(arrays)
            if tree.n_leaves == 1:
                # no admissible split: boosting has converged for this sample
                break
            F = F + self.learning_rate * tree.predict_value(X)
            model.trees.append(tree)
            model.train_loss.append(log_loss(t, F))
        return model

    def fit(self, X, y):
        super().fit(X, y)
        del self._binned
        return self


def fit_histgbm(X, y, n_rounds=100, learning_rate=0.1, num_leaves=31,
                max_bin=255, min_data_in_leaf=20, goss_a=0.2, goss_b=0.1,
                seed=0, **params):
    return HistGradientBoostingClassifier(
        n_estimators=n_rounds, learning_rate=learning_rate,
        num_leaves=num_leaves, max_bin=max_bin,
        min_data_in_leaf=min_data_in_leaf, goss_a=goss_a, goss_b=goss_b,
        random_state=seed, **params).fit(X, y)
