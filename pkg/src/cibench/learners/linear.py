"""L2-regularized logistic regression and a linear soft-margin SVM."""

from dataclasses import dataclass

import numpy as np
from numba import njit
from sklearn.base import BaseEstimator, ClassifierMixin

from .._validation import (check_is_fitted, check_n_features, check_X_y,
                           derive_seed)
from ..exceptions import FitError
from .base import ProbabilisticClassifier, normalize_rows


@dataclass(frozen=True, eq=False)
class LinearModel:
    weights: np.ndarray
    bias: float
    kind: str
    support_indices: np.ndarray = None


def _sigmoid(z):
    out = np.empty_like(z)
    pos = z >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-z[pos]))
    ez = np.exp(z[~pos])
    out[~pos] = ez / (1.0 + ez)
    return out


def logistic_objective(w, b, X, t, l2):
    """Mean log-loss plus ``l2 / (2n) * ||w||^2``; the bias is not penalized."""
    z = X @ w + b
    n = len(t)
    return float(np.mean(np.logaddexp(0.0, z) - t * z) + 0.5 * l2 / n * (w @ w))


def logistic_gradient(w, b, X, t, l2):
    n = len(t)
    r = _sigmoid(X @ w + b) - t
    return X.T @ r / n + l2 / n * w, float(np.mean(r))


def _fit_binary_logistic(X, t, l2, step, max_iter, tol, backtrack):
    w = np.zeros(X.shape[1])
    b = 0.0
    loss = logistic_objective(w, b, X, t, l2)
    trace = [loss]
    n_iter = 0
    for n_iter in range(1, max_iter + 1):
        gw, gb = logistic_gradient(w, b, X, t, l2)
        gnorm2 = gw @ gw + gb * gb
        if np.sqrt(gnorm2) < tol:
            n_iter -= 1
            break
        eta = step
        while True:
            w_new, b_new = w - eta * gw, b - eta * gb
            new = logistic_objective(w_new, b_new, X, t, l2)
            if not backtrack or new <= loss - 1e-4 * eta * gnorm2 or eta < 1e-12:
                break
            eta *= 0.5
        if not np.isfinite(new):
            raise FitError("logistic loss became non-finite")
        w, b, loss = w_new, b_new, new
        trace.append(loss)
    return w, b, n_iter, np.array(trace)


class LogisticRegression(ProbabilisticClassifier):
    """Gradient-descent logistic regression, one-vs-rest for many classes.

    Each step starts at ``step_size`` and halves until the Armijo condition
    holds (disable with ``backtracking=False`` for a fixed step). Stops when
    the gradient norm drops below ``tol`` or after ``max_iter`` steps.
    """

    def __init__(self, l2=1.0, step_size=0.1, max_iter=1000, tol=1e-6,
                 backtracking=True):
        self.l2 = l2
        self.step_size = step_size
        self.max_iter = max_iter
        self.tol = tol
        self.backtracking = backtracking

    def fit(self, X, y):
        X, y_enc, self.classes_ = check_X_y(X, y)
        self.n_features_in_ = X.shape[1]
        C = len(self.classes_)
        targets = [y_enc == 1] if C == 2 else [y_enc == c for c in range(C)]
        if C < 2:
            targets = [np.ones(len(y_enc), dtype=bool)]
        coefs, biases, iters, traces = [], [], [], []
        for t in targets:
            w, b, it, tr = _fit_binary_logistic(
                X, t.astype(np.float64), self.l2, self.step_size,
                self.max_iter, self.tol, self.backtracking)
            coefs.append(w)
            biases.append(b)
            iters.append(it)
            traces.append(tr)
        self.coef_ = np.array(coefs)
        self.intercept_ = np.array(biases)
        self.n_iter_ = np.array(iters)
        self.loss_curve_ = traces
        return self

    def decision_function(self, X):
        check_is_fitted(self)
        X = check_n_features(X, self.n_features_in_)
        return X @ self.coef_.T + self.intercept_

    def predict_proba(self, X):
        Z = self.decision_function(X)
        if len(self.classes_) == 1:
            return np.ones((len(Z), 1))
        if len(self.classes_) == 2:
            p = _sigmoid(Z[:, 0])
            return np.column_stack([1.0 - p, p])
        return normalize_rows(_sigmoid(Z))

    def as_linear_model(self):
        return LinearModel(self.coef_[0].copy(), float(self.intercept_[0]),
                           "logistic")


def fit_logistic(X, y, l2=1.0, max_iters=1000, tol=1e-6):
    return LogisticRegression(l2=l2, max_iter=max_iters, tol=tol).fit(X, y)


@njit(cache=True, nogil=True)
def _svm_dual_cd(Xa, s, C, max_epochs, tol, seed):
    np.random.seed(seed)
    n, f = Xa.shape
    alpha = np.zeros(n)
    w = np.zeros(f)
    qd = np.empty(n)
    for i in range(n):
        qd[i] = Xa[i] @ Xa[i]
    for ep in range(max_epochs):
        perm = np.random.permutation(n)
        pg_max = -np.inf
        pg_min = np.inf
        for ii in range(n):
            i = perm[ii]
            G = s[i] * (w @ Xa[i]) - 1.0
            pg = G
            if alpha[i] <= 0.0:
                pg = min(G, 0.0)
            elif alpha[i] >= C:
                pg = max(G, 0.0)
            pg_max = max(pg_max, pg)
            pg_min = min(pg_min, pg)
            if pg != 0.0 and qd[i] > 0.0:
                old = alpha[i]
                alpha[i] = min(max(old - G / qd[i], 0.0), C)
                w += (alpha[i] - old) * s[i] * Xa[i]
        if pg_max - pg_min < tol:
            return w, alpha, ep + 1
    return w, alpha, max_epochs


def svm_objective(w, b, X, s, C):
    """``0.5 * (||w||^2 + b^2) + C * sum(hinge)`` with labels ``s`` in {-1, +1}."""
    margin = s * (X @ w + b)
    return float(0.5 * (w @ w + b * b) + C * np.maximum(0.0, 1.0 - margin).sum())


class LinearSVM(ClassifierMixin, BaseEstimator):
    """Soft-margin linear SVM solved by dual coordinate descent.

    The bias is handled as the weight of a constant feature, so it is
    regularized together with ``w``. Support vectors are the training rows
    whose functional margin is at most ``1 + margin_tol``.
    """

    def __init__(self, C=1.0, max_epochs=2000, tol=1e-9, margin_tol=1e-6,
                 random_state=0):
        self.C = C
        self.max_epochs = max_epochs
        self.tol = tol
        self.margin_tol = margin_tol
        self.random_state = random_state

    def fit(self, X, y):
        X, y_enc, self.classes_ = check_X_y(X, y)
        if len(self.classes_) != 2:
            raise FitError(f"linear SVM needs exactly two classes, got "
                           f"{len(self.classes_)}")
        self.n_features_in_ = X.shape[1]
        s = np.where(y_enc == 1, 1.0, -1.0)
        Xa = np.hstack([X, np.ones((len(X), 1))])
        seed = derive_seed("svm", self.random_state) & 0xFFFFFFFF
        wa, alpha, self.n_iter_ = _svm_dual_cd(Xa, s, float(self.C),
                                               int(self.max_epochs), self.tol,
                                               seed)
        self.coef_ = wa[:-1]
        self.intercept_ = float(wa[-1])
        self.dual_coef_ = alpha
        margin = s * (X @ self.coef_ + self.intercept_)
        self.support_ = np.flatnonzero(margin <= 1.0 + self.margin_tol)
        return self

    def decision_function(self, X):
        check_is_fitted(self)
        X = check_n_features(X, self.n_features_in_)
        return X @ self.coef_ + self.intercept_

    def predict(self, X):
        return self.classes_[(self.decision_function(X) > 0).astype(int)]

    def as_linear_model(self):
        return LinearModel(self.coef_.copy(), self.intercept_, "svm",
                           self.support_.copy())


def fit_linear_svm(X, y, C=1.0, epochs=2000, seed=0):
    return LinearSVM(C=C, max_epochs=epochs, random_state=seed).fit(X, y)
