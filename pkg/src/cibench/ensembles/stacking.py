"""Two-level stacking with out-of-fold meta-features."""

import numpy as np
from sklearn.base import clone

from .._validation import (check_is_fitted, check_n_features, check_X_y,
                           derive_seed)
from ..exceptions import FitError
from ..learners.base import ProbabilisticClassifier
from ..learners.linear import LogisticRegression

MAX_FOLD_DRAWS = 100


def make_folds(y, n_folds=5, seed=0):
    """Fold index per row such that every training complement sees every
    class. Shuffles are redrawn up to 100 times, then the fold count drops
    by one; below two folds a :class:`FitError` is raised."""
    y = np.asarray(y)
    n = len(y)
    classes = np.unique(y)
    k = min(int(n_folds), n)
    while k >= 2:
        for attempt in range(MAX_FOLD_DRAWS):
            rng = np.random.default_rng(derive_seed("folds", seed, k, attempt))
            fold = np.empty(n, dtype=np.int64)
            fold[rng.permutation(n)] = np.arange(n) % k
            if all(len(np.unique(y[fold != j])) == len(classes) for j in range(k)):
                return fold, k
        k -= 1
    raise FitError("could not build stacking folds with every class in "
                   "every training part")


def _full_width(est, X, n_classes):
    P = np.zeros((len(X), n_classes))
    P[:, est.classes_] = est.predict_proba(X)
    return P


class StackingClassifier(ProbabilisticClassifier):
    """Base learners feed out-of-fold class probabilities to a meta-learner.

    Meta-features hold one block of ``n_classes`` columns per base learner.
    After the meta-learner is fit, the base learners are refit on all rows
    and used for inference.
    """

    def __init__(self, estimators, final_estimator=None, n_folds=5,
                 random_state=0):
        self.estimators = estimators
        self.final_estimator = final_estimator
        self.n_folds = n_folds
        self.random_state = random_state

    def fit(self, X, y):
        if not self.estimators:
            raise FitError("stacking needs at least one base learner")
        X, y_enc, self.classes_ = check_X_y(X, y)
        self.n_features_in_ = X.shape[1]
        C = len(self.classes_)
        self.fold_, self.n_folds_ = make_folds(y_enc, self.n_folds,
                                               self.random_state)
        B = len(self.estimators)
        meta = np.zeros((len(X), B * C))
        for j in range(self.n_folds_):
            test = self.fold_ == j
            for b, (_, est) in enumerate(self.estimators):
                model = clone(est).fit(X[~test], y_enc[~test])
                meta[test, b * C:(b + 1) * C] = _full_width(model, X[test], C)
        self.meta_features_ = meta
        final = self.final_estimator or LogisticRegression()
        self.final_estimator_ = clone(final).fit(meta, y_enc)
        self.estimators_ = [clone(est).fit(X, y_enc) for _, est in self.estimators]
        return self

    def transform(self, X):
        """Meta-feature rows from the refit base learners."""
        check_is_fitted(self)
        X = check_n_features(X, self.n_features_in_)
        C = len(self.classes_)
        return np.hstack([_full_width(est, X, C) for est in self.estimators_])

    def predict_proba(self, X):
        meta = self.transform(X)
        P = np.zeros((len(meta), len(self.classes_)))
        P[:, self.final_estimator_.classes_] = self.final_estimator_.predict_proba(meta)
        return P


def fit_stacking(pool, X, y, n_folds=5, seed=0):
    ests = [(spec.kind, spec.build(derive_seed("stack-member", seed, i)))
            for i, spec in enumerate(pool)]
    return StackingClassifier(ests, n_folds=n_folds, random_state=seed).fit(X, y)


def predict_stacking(model, X):
    return model.predict_proba(X)
