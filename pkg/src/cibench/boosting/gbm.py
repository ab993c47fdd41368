"""Gradient boosting with the log-likelihood loss and Newton leaf values."""

import numpy as np

from ..learners.tree import Tree
from ._kernels import build_mse_tree
from .base import (BoostedTrees, OneVsRestBooster, base_log_odds, log_loss,
                   make_tree, sigmoid)


def pseudo_residual(y, F, loss="log"):
    """Negative gradient of the loss at raw score ``F``.

    ``log``: ``y - sigmoid(F)``; ``squared`` (loss ``(y - F)^2 / 2``): ``y - F``.
    """
    y = np.asarray(y, dtype=np.float64)
    if loss == "squared":
        return y - F
    return y - sigmoid(F)


class GradientBoostingClassifier(OneVsRestBooster):
    """Stage-wise boosting of least-squares trees fit to ``y - p``.

    Each leaf's value is replaced by the one-step Newton estimate
    ``sum(r) / sum(p * (1 - p))`` over its training rows before shrinkage.
    """

    def __init__(self, n_estimators=100, learning_rate=0.1, max_depth=3,
                 min_samples_split=2, min_samples_leaf=1):
        self.n_estimators = n_estimators
        self.learning_rate = learning_rate
        self.max_depth = max_depth
        self.min_samples_split = min_samples_split
        self.min_samples_leaf = min_samples_leaf

    def _fit_binary(self, X, t, member):
        F = np.full(len(t), base_log_odds(t))
        model = BoostedTrees(float(F[0]), self.learning_rate)
        model.train_loss.append(log_loss(t, F))
        for _ in range(self.n_estimators):
            p = sigmoid(F)
            r = pseudo_residual(t, F)
            tree = make_tree(build_mse_tree(X, r, int(self.max_depth),
                                            int(self.min_samples_split),
                                            int(self.min_samples_leaf)))
            leaves = tree.apply(X)
            num = np.bincount(leaves, r, minlength=tree.n_nodes)
            den = np.bincount(leaves, p * (1.0 - p), minlength=tree.n_nodes)
            newton = np.where(np.abs(den) < 1e-150, 0.0,
                              num / np.where(den == 0, 1.0, den))
            value = np.where(tree.is_leaf, newton, tree.value)
            tree = Tree(tree.feature, tree.threshold, tree.left, tree.right,
                        value, gain=tree.gain)
            F = F + self.learning_rate * value[leaves]
            model.trees.append(tree)
            model.train_loss.append(log_loss(t, F))
        return model


def fit_gbm(X, y, n_stages=100, learning_rate=0.1, max_depth=3, min_split=2,
            min_leaf=1):
    return GradientBoostingClassifier(n_stages, learning_rate, max_depth,
                                      min_split, min_leaf).fit(X, y)
