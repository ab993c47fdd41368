"""AdaBoost over depth-1 Gini stumps (SAMME for more than two classes)."""

import numpy as np

from .._validation import check_is_fitted, check_n_features, check_X_y
from ..exceptions import FitError
from ..learners.base import ProbabilisticClassifier
from ..learners.tree import fit_cart

ALPHA_CAP = 0.5 * np.log(1e10)


def stump_influence(error, n_classes=2, learning_rate=1.0):
    """Vote weight of a stump with weighted error ``error``.

    Binary: ``0.5 * ln((1 - e) / e)``. More classes: ``ln((1 - e) / e) +
    ln(C - 1)``. A perfect stump gets the capped value.
    """
    if error <= 0.0:
        return learning_rate * ALPHA_CAP
    ratio = np.log((1.0 - error) / error)
    if n_classes == 2:
        return learning_rate * 0.5 * ratio
    return learning_rate * (ratio + np.log(n_classes - 1))


class AdaBoostClassifier(ProbabilisticClassifier):
    """Discrete AdaBoost.

    Sample weights start at ``1/N``; after each round they are multiplied by
    ``exp(+alpha)`` on misclassified rows and ``exp(-alpha)`` on the rest,
    then renormalized. With more than two classes the SAMME influence is
    used and the exponent is halved, matching SAMME's reweighting. Boosting stops after a perfect stump (kept with a
    capped alpha) or a stump no better than chance (discarded).
    """

    def __init__(self, n_estimators=50, learning_rate=1.0, random_state=0):
        self.n_estimators = n_estimators
        self.learning_rate = learning_rate
        self.random_state = random_state

    def fit(self, X, y):
        X, y_enc, self.classes_ = check_X_y(X, y)
        C = len(self.classes_)
        if C < 2:
            raise FitError("AdaBoost needs at least two classes")
        self.n_features_in_ = X.shape[1]
        n = len(X)
        w = np.full(n, 1.0 / n)
        self.estimators_, self.alphas_, self.errors_ = [], [], []
        self.weight_history_ = [w.copy()]
        for _ in range(self.n_estimators):
            stump = fit_cart(X, y_enc, max_depth=1, sample_weight=w, n_classes=C)
            if stump.n_nodes != 3:
                if not self.estimators_:
                    raise FitError("no valid stump: features do not separate any rows")
                break
            pred = np.argmax(stump.predict_value(X), axis=1)
            miss = pred != y_enc
            err = float(w[miss].sum())
            if err >= 1.0 - 1.0 / C:
                if not self.estimators_:
                    raise FitError("first stump is no better than chance")
                break
            alpha = stump_influence(err, C, self.learning_rate)
            self.estimators_.append(stump)
            self.alphas_.append(alpha)
            self.errors_.append(err)
            if err <= 0.0:
                break
            # SAMME reweights by exp(alpha) on mistakes only, which after
            # renormalization is the +-alpha/2 rule; binary uses +-alpha
            step = alpha if C == 2 else 0.5 * alpha
            w = w * np.exp(np.where(miss, step, -step))
            w /= w.sum()
            self.weight_history_.append(w.copy())
        self.alphas_ = np.array(self.alphas_)
        self.errors_ = np.array(self.errors_)
        return self

    def class_scores(self, X):
        """Sum of stump influences voting for each class."""
        check_is_fitted(self)
        X = check_n_features(X, self.n_features_in_)
        S = np.zeros((len(X), len(self.classes_)))
        rows = np.arange(len(X))
        for stump, alpha in zip(self.estimators_, self.alphas_):
            S[rows, np.argmax(stump.predict_value(X), axis=1)] += alpha
        return S

    def predict_proba(self, X):
        S = self.class_scores(X)
        total = self.alphas_.sum()
        if total <= 0:
            return np.full_like(S, 1.0 / S.shape[1])
        return S / total


def fit_adaboost(X, y, n_rounds=50, learning_rate=1.0, seed=0):
    return AdaBoostClassifier(n_rounds, learning_rate, seed).fit(X, y)
