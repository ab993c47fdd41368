"""Second-order regularized tree boosting with exact greedy splits."""

import numpy as np

from ._kernels import build_xgb_tree
from .base import (BoostedTrees, OneVsRestBooster, base_log_odds, log_loss,
                   make_tree, sigmoid)


def leaf_weight(G, H, reg_lambda):
    return -G / (H + reg_lambda)


def structure_score(G, H, reg_lambda, gamma=0.0, n_leaves=1):
    """Objective of a tree whose leaves hold gradient sums ``G``, ``H``."""
    G, H = np.atleast_1d(G), np.atleast_1d(H)
    return float(-0.5 * np.sum(G * G / (H + reg_lambda)) + gamma * n_leaves)


class XGBClassifier(OneVsRestBooster):
    """Newton boosting of log-loss.

    Gradients ``g = p - y`` and hessians ``h = p (1 - p)`` drive an exact
    greedy split search scored by
    ``0.5 * [GL^2/(HL+lam) + GR^2/(HR+lam) - G^2/(H+lam)] - gamma``.
    """

    def __init__(self, n_estimators=100, learning_rate=0.3, reg_lambda=1.0,
                 gamma=0.0, max_depth=6, min_child_weight=1.0):
        self.n_estimators = n_estimators
        self.learning_rate = learning_rate
        self.reg_lambda = reg_lambda
        self.gamma = gamma
        self.max_depth = max_depth
        self.min_child_weight = min_child_weight

    def _fit_binary(self, X, t, member):
        F = np.full(len(t), base_log_odds(t))
        model = BoostedTrees(float(F[0]), self.learning_rate)
        model.train_loss.append(log_loss(t, F))
        depth = -1 if self.max_depth is None else int(self.max_depth)
        for _ in range(self.n_estimators):
            p = sigmoid(F)
            g = p - t
            h = p * (1.0 - p)
            tree = make_tree(build_xgb_tree(X, g, h, depth,
                                            float(self.reg_lambda),
                                            float(self.gamma),
                                            float(self.min_child_weight)))
            F = F + self.learning_rate * tree.predict_value(X)
            model.trees.append(tree)
            model.train_loss.append(log_loss(t, F))
        return model


def fit_xgbm(X, y, n_rounds=100, eta=0.3, reg_lambda=1.0, gamma_leaf=0.0,
             max_depth=6, min_child_weight=1.0):
    return XGBClassifier(n_rounds, eta, reg_lambda, gamma_leaf, max_depth,
                         min_child_weight).fit(X, y)
