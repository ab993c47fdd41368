"""CART classification trees with the Gini criterion."""

from dataclasses import dataclass

import numpy as np

from .._validation import (check_is_fitted, check_n_features, check_X_y,
                           derive_seed)
from ..exceptions import FitError
from ._cart import apply_tree, build_gini_tree
from .base import ProbabilisticClassifier


@dataclass(frozen=True, eq=False)
class Tree:
    """Array-encoded binary tree.

    ``value`` holds the per-class distribution for classifiers (one row per
    node) or a scalar per node for regression trees. Leaves have
    ``feature == -1``. Boosting trees record each internal node's split
    gain in ``gain``.
    """

    feature: np.ndarray
    threshold: np.ndarray
    left: np.ndarray
    right: np.ndarray
    value: np.ndarray
    impurity: np.ndarray = None
    weight: np.ndarray = None
    gain: np.ndarray = None

    @property
    def n_nodes(self):
        return len(self.feature)

    @property
    def is_leaf(self):
        return self.feature == -1

    @property
    def n_leaves(self):
        return int(self.is_leaf.sum())

    def depth(self):
        d = np.zeros(self.n_nodes, dtype=np.int64)
        for i in range(self.n_nodes):
            if self.feature[i] != -1:
                d[self.left[i]] = d[self.right[i]] = d[i] + 1
        return int(d.max())

    def paths(self):
        """Every root-to-leaf path as a list of node ids."""
        out, stack = [], [[0]]
        while stack:
            path = stack.pop()
            node = path[-1]
            if self.feature[node] == -1:
                out.append(path)
            else:
                stack.append(path + [self.right[node]])
                stack.append(path + [self.left[node]])
        return out

    def apply(self, X):
        return apply_tree(self.feature, self.threshold, self.left, self.right,
                          np.ascontiguousarray(X, dtype=np.float64))

    def predict_value(self, X):
        return self.value[self.apply(X)]


def fit_cart(X, y, max_depth=None, min_leaf=1, feature_subset=None, seed=0,
             sample_weight=None, n_classes=None):
    """Fit a Gini tree on integer labels ``y`` in ``0..n_classes-1``.

    ``feature_subset`` is the number of features tried per split (all by
    default). Rows with zero weight are ignored.
    """
    X = np.ascontiguousarray(X, dtype=np.float64)
    y = np.asarray(y, dtype=np.int64)
    if len(X) == 0:
        raise FitError("cannot fit a tree on zero rows")
    if min_leaf < 1:
        raise FitError("min_leaf must be at least 1")
    n_classes = int(y.max()) + 1 if n_classes is None else int(n_classes)
    w = np.ones(len(X)) if sample_weight is None else np.asarray(
        sample_weight, dtype=np.float64)
    keep = w > 0
    if not keep.any():
        raise FitError("all sample weights are zero")
    if not keep.all():
        X, y, w = X[keep], y[keep], w[keep]
    f = X.shape[1]
    k = f if feature_subset is None else max(1, min(int(feature_subset), f))
    depth = -1 if max_depth is None else int(max_depth)
    arrays = build_gini_tree(X, y, np.ascontiguousarray(w), n_classes, depth,
                             int(min_leaf), k, int(seed) & 0xFFFFFFFF)
    return Tree(*arrays)


def predict_proba_tree(tree, x):
    """Leaf distribution for one row (1-D input) or for each row (2-D)."""
    x = np.asarray(x, dtype=np.float64)
    if x.ndim == 1:
        return tree.predict_value(x[None, :])[0]
    return tree.predict_value(x)


def _resolve_max_features(max_features, n_features):
    if max_features is None:
        return n_features
    if max_features == "sqrt":
        return max(1, int(np.sqrt(n_features)))
    if max_features == "log2":
        return max(1, int(np.log2(n_features)))
    if isinstance(max_features, float):
        return max(1, int(max_features * n_features))
    return max(1, min(int(max_features), n_features))


class DecisionTreeClassifier(ProbabilisticClassifier):
    """CART classifier; unlimited depth and single-row leaves by default."""

    def __init__(self, max_depth=None, min_samples_leaf=1, max_features=None,
                 random_state=0):
        self.max_depth = max_depth
        self.min_samples_leaf = min_samples_leaf
        self.max_features = max_features
        self.random_state = random_state

    def fit(self, X, y, sample_weight=None):
        X, y_enc, self.classes_ = check_X_y(X, y)
        self.n_features_in_ = X.shape[1]
        k = _resolve_max_features(self.max_features, X.shape[1])
        seed = derive_seed("cart", self.random_state)
        self.tree_ = fit_cart(X, y_enc, self.max_depth, self.min_samples_leaf,
                              k, seed, sample_weight, len(self.classes_))
        return self

    def predict_proba(self, X):
        check_is_fitted(self)
        X = check_n_features(X, self.n_features_in_)
        return self.tree_.predict_value(X)

    def apply(self, X):
        check_is_fitted(self)
        return self.tree_.apply(check_n_features(X, self.n_features_in_))
