"""Random forest of bootstrap-trained CART trees."""

import numpy as np

from .._validation import (check_is_fitted, check_n_features, check_X_y,
                           derive_seed, rng_from)
from .base import ProbabilisticClassifier
from .tree import _resolve_max_features, fit_cart


class RandomForestClassifier(ProbabilisticClassifier):
    """Bagged Gini trees with per-split feature subsampling.

    Each tree sees a bootstrap sample of size n, expressed as integer
    sample weights. Class probabilities are the mean of the tree leaf
    distributions.
    """

    def __init__(self, n_estimators=100, max_features="sqrt", bootstrap=True,
                 max_depth=None, min_samples_leaf=1, random_state=0):
        self.n_estimators = n_estimators
        self.max_features = max_features
        self.bootstrap = bootstrap
        self.max_depth = max_depth
        self.min_samples_leaf = min_samples_leaf
        self.random_state = random_state

    def fit(self, X, y, sample_weight=None):
        X, y_enc, self.classes_ = check_X_y(X, y)
        n, f = X.shape
        self.n_features_in_ = f
        n_classes = len(self.classes_)
        k = _resolve_max_features(self.max_features, f)
        base_w = np.ones(n) if sample_weight is None else np.asarray(
            sample_weight, dtype=np.float64)
        self.estimators_ = []
        self.tree_seeds_ = []
        for t in range(self.n_estimators):
            seed = derive_seed("forest", self.random_state, t)
            w = base_w
            if self.bootstrap:
                draw = rng_from(seed).integers(0, n, n)
                w = base_w * np.bincount(draw, minlength=n)
            self.tree_seeds_.append(seed)
            self.estimators_.append(fit_cart(
                X, y_enc, self.max_depth, self.min_samples_leaf, k, seed, w,
                n_classes))
        return self

    def predict_proba(self, X):
        check_is_fitted(self)
        X = check_n_features(X, self.n_features_in_)
        P = np.zeros((len(X), len(self.classes_)))
        for tree in self.estimators_:
            P += tree.predict_value(X)
        return P / len(self.estimators_)


def fit_forest(X, y, n_trees=100, seed=0, **params):
    return RandomForestClassifier(n_estimators=n_trees, random_state=seed,
                                  **params).fit(X, y)
