"""Shared machinery for the sigmoid-link boosting learners."""

from dataclasses import dataclass, field

import numpy as np

from .._validation import check_is_fitted, check_n_features, check_X_y
from ..exceptions import FitError
from ..learners.base import ProbabilisticClassifier, normalize_rows
from ..learners.tree import Tree


def sigmoid(z):
    return 0.5 * (1.0 + np.tanh(0.5 * np.asarray(z, dtype=np.float64)))


def log_loss(t, F):
    """Mean binary log-loss of raw scores ``F`` against 0/1 targets ``t``."""
    return float(np.mean(np.logaddexp(0.0, F) - t * F))


def base_log_odds(t):
    p = float(np.clip(np.mean(t), 1e-12, 1 - 1e-12))
    return np.log(p / (1.0 - p))


@dataclass(eq=False)
class BoostedTrees:
    """Additive raw-score model ``base_score + lr * sum(tree(x))``."""

    base_score: float
    learning_rate: float
    trees: list = field(default_factory=list)
    train_loss: list = field(default_factory=list)

    def decision(self, X, n_stages=None):
        F = np.full(len(X), self.base_score)
        for tree in self.trees[:n_stages]:
            F += self.learning_rate * tree.predict_value(X)
        return F

    def staged_decision(self, X):
        F = np.full(len(X), self.base_score)
        yield F.copy()
        for tree in self.trees:
            F += self.learning_rate * tree.predict_value(X)
            yield F.copy()


def make_tree(arrays):
    feature, threshold, left, right, value, gain = arrays
    return Tree(feature, threshold, left, right, value, gain=gain)


class OneVsRestBooster(ProbabilisticClassifier):
    """Binary sigmoid boosting, extended to C classes by one-vs-rest.

    Subclasses implement ``_fit_binary(X, t, member)`` returning a
    :class:`BoostedTrees`. Multi-class probabilities are the per-class
    sigmoids normalized to sum to one.
    """

    def fit(self, X, y):
        X, y_enc, self.classes_ = check_X_y(X, y)
        if len(self.classes_) < 2:
            raise FitError(f"{type(self).__name__} needs at least two classes")
        self.n_features_in_ = X.shape[1]
        self._prepare(X)
        targets = [1] if len(self.classes_) == 2 else range(len(self.classes_))
        self.boosters_ = [self._fit_binary(X, (y_enc == c).astype(np.float64), c)
                          for c in targets]
        return self

    def _prepare(self, X):
        pass

    def decision_function(self, X):
        check_is_fitted(self)
        X = check_n_features(X, self.n_features_in_)
        return np.column_stack([b.decision(X) for b in self.boosters_])

    def _proba_from_scores(self, F):
        P = sigmoid(F)
        if P.shape[1] == 1:
            return np.column_stack([1.0 - P[:, 0], P[:, 0]])
        return normalize_rows(P)

    def predict_proba(self, X):
        return self._proba_from_scores(self.decision_function(X))

    def staged_predict_proba(self, X):
        check_is_fitted(self)
        X = check_n_features(X, self.n_features_in_)
        stages = [list(b.staged_decision(X)) for b in self.boosters_]
        for parts in zip(*stages):
            yield self._proba_from_scores(np.column_stack(parts))

    @property
    def train_loss_(self):
        """Per-round training log-loss of each one-vs-rest member."""
        return [np.array(b.train_loss) for b in self.boosters_]
