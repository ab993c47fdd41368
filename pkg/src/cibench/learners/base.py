"""Shared classifier behaviour."""

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin

from .._validation import (argmax_rows, check_is_fitted, check_n_features,
                           check_X_y)


class ProbabilisticClassifier(ClassifierMixin, BaseEstimator):
    """Crisp labels are the argmax of ``predict_proba``.

    For two classes this is the 0.5 threshold on the class-1 probability,
    with exact ties resolved toward class 0.
    """

    def predict(self, X):
        check_is_fitted(self)
        return self.classes_[argmax_rows(self.predict_proba(X))]


def normalize_rows(P):
    s = P.sum(axis=1, keepdims=True)
    with np.errstate(invalid="ignore", divide="ignore"):
        out = np.where(s > 0, P / s, 1.0 / P.shape[1])
    return out


class MajorityClassifier(ProbabilisticClassifier):
    """Predicts the most frequent training class with probability 1.

    Ties between equally frequent classes go to the lowest label.
    """

    def fit(self, X, y):
        X, y_enc, self.classes_ = check_X_y(X, y)
        self.n_features_in_ = X.shape[1]
        self.majority_ = int(np.argmax(np.bincount(y_enc)))
        return self

    def predict_proba(self, X):
        check_is_fitted(self)
        X = check_n_features(X, self.n_features_in_)
        P = np.zeros((len(X), len(self.classes_)))
        P[:, self.majority_] = 1.0
        return P
