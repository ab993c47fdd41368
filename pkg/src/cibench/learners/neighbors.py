"""Exact Euclidean nearest-neighbour search and the KNN classifier."""

import numpy as np
from numba import njit

from .._validation import (MinMaxScaling, check_array, check_is_fitted,
                           check_n_features, check_X_y)
from ..exceptions import QueryError
from .base import ProbabilisticClassifier


@njit(cache=True, nogil=True)
def _knn_kernel(P, Q, k, exclude):
    nq = Q.shape[0]
    n, f = P.shape
    out = np.empty((nq, k), np.int64)
    dist = np.empty((nq, k))
    for q in range(nq):
        best_i = np.full(k, -1, np.int64)
        best_d = np.full(k, np.inf)
        filled = 0
        for i in range(n):
            if i == exclude[q]:
                continue
            d = 0.0
            for j in range(f):
                t = Q[q, j] - P[i, j]
                d += t * t
            # scanning in index order and inserting only on strict
            # improvement resolves equal distances toward the lower index
            if filled < k:
                pos = filled
                filled += 1
            elif d < best_d[k - 1]:
                pos = k - 1
            else:
                continue
            while pos > 0 and best_d[pos - 1] > d:
                best_d[pos] = best_d[pos - 1]
                best_i[pos] = best_i[pos - 1]
                pos -= 1
            best_d[pos] = d
            best_i[pos] = i
        out[q] = best_i
        dist[q] = np.sqrt(best_d)
    return out, dist


class KNNIndex:
    """Brute-force index over a fixed point set.

    Queries return neighbours by ascending distance; equal distances are
    ordered by ascending point index.
    """

    def __init__(self, points):
        self.points = check_array(points, "points")

    def __len__(self):
        return len(self.points)

    def query(self, Q, k, exclude=None, return_distance=False):
        """``k`` nearest indexed points for every row of ``Q``.

        ``exclude`` optionally names one point index per query row that must
        be skipped (typically the query row itself); use -1 for none.
        """
        k = int(k)
        if k <= 0:
            raise QueryError(f"k must be positive, got {k}")
        Q = check_array(Q, "Q")
        if Q.shape[1] != self.points.shape[1]:
            raise QueryError("query width differs from the indexed points")
        if exclude is None:
            exclude = np.full(len(Q), -1, dtype=np.int64)
        else:
            exclude = np.asarray(exclude, dtype=np.int64)
        available = len(self) - (1 if np.any(exclude >= 0) else 0)
        if k > available:
            raise QueryError(f"k={k} exceeds the {available} available points")
        idx, dist = _knn_kernel(self.points, Q, k, exclude)
        return (idx, dist) if return_distance else idx

    def query_self(self, k, rows=None):
        """Neighbours of indexed points among the others, excluding self."""
        rows = np.arange(len(self)) if rows is None else np.asarray(rows)
        return self.query(self.points[rows], k, exclude=rows)


def knn_query(points, q, k):
    q = np.atleast_2d(np.asarray(q, dtype=np.float64))
    return KNNIndex(points).query(q, k)[0]


class KNeighborsClassifier(ProbabilisticClassifier):
    """Uniform-vote KNN on features min-max scaled with the training data.

    When fewer than ``n_neighbors`` training rows exist, all of them vote.
    """

    def __init__(self, n_neighbors=5, scale=True):
        self.n_neighbors = n_neighbors
        self.scale = scale

    def fit(self, X, y):
        X, self.y_, self.classes_ = check_X_y(X, y)
        self.n_features_in_ = X.shape[1]
        self.scaler_ = MinMaxScaling(X) if self.scale else None
        self.index_ = KNNIndex(self._scaled(X))
        return self

    def _scaled(self, X):
        return self.scaler_.transform(X) if self.scaler_ is not None else X

    def kneighbors(self, X):
        check_is_fitted(self)
        X = check_n_features(X, self.n_features_in_)
        k = min(int(self.n_neighbors), len(self.index_))
        return self.index_.query(self._scaled(X), k)

    def predict_proba(self, X):
        nbrs = self.kneighbors(X)
        C = len(self.classes_)
        votes = self.y_[nbrs]
        P = np.zeros((len(votes), C))
        for c in range(C):
            P[:, c] = np.mean(votes == c, axis=1)
        return P
