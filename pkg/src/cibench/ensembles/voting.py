"""Hard and soft voting over independently fitted members."""

import numpy as np
from sklearn.base import clone

from .._validation import check_is_fitted, check_n_features, check_X_y
from ..exceptions import VoteError
from ..learners.base import ProbabilisticClassifier


def hard_vote(label_votes, n_classes=None):
    """Modal label of a sequence of class indices; ties go to the lowest."""
    votes = np.asarray(label_votes, dtype=np.int64).ravel()
    if votes.size == 0:
        raise VoteError("cannot vote without any ballots")
    return int(np.argmax(np.bincount(votes, minlength=n_classes or 0)))


def soft_vote(prob_rows, atol=1e-9):
    """Mean probability vector and its argmax label."""
    try:
        P = np.asarray(prob_rows, dtype=np.float64)
    except ValueError:
        raise VoteError("probability rows differ in width") from None
    if P.ndim != 2 or len(P) == 0:
        raise VoteError("soft voting needs a non-empty list of equal-width rows")
    if np.any(np.abs(P.sum(axis=1) - 1.0) > atol):
        raise VoteError("every probability row must sum to 1")
    mean = P.mean(axis=0)
    return mean, int(np.argmax(mean))


class VotingClassifier(ProbabilisticClassifier):
    """Unweighted vote over ``estimators`` (a list of ``(name, model)``).

    With ``voting="soft"`` the probabilities are the member average. With
    ``voting="hard"`` they are the share of members voting for each class,
    so the crisp prediction is the modal member label, ties to the lowest
    class.
    """

    def __init__(self, estimators, voting="hard"):
        self.estimators = estimators
        self.voting = voting

    def fit(self, X, y):
        if self.voting not in ("hard", "soft"):
            raise VoteError(f"voting must be 'hard' or 'soft', got {self.voting!r}")
        if not self.estimators:
            raise VoteError("a voting ensemble needs at least one member")
        X, y_enc, self.classes_ = check_X_y(X, y)
        self.n_features_in_ = X.shape[1]
        self.estimators_ = [clone(est).fit(X, y_enc) for _, est in self.estimators]
        return self

    def member_proba(self, X):
        check_is_fitted(self)
        X = check_n_features(X, self.n_features_in_)
        C = len(self.classes_)
        out = []
        for est in self.estimators_:
            P = np.zeros((len(X), C))
            P[:, est.classes_] = est.predict_proba(X)
            out.append(P)
        return np.stack(out)

    def predict_proba(self, X):
        members = self.member_proba(X)
        if self.voting == "soft":
            return members.mean(axis=0)
        labels = np.argmax(members, axis=2)
        C = members.shape[2]
        shares = np.stack([np.mean(labels == c, axis=0) for c in range(C)], axis=1)
        return shares
