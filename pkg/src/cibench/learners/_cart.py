"""Numba kernels for Gini classification trees and array-tree traversal.

Trees are stored as flat arrays: ``feature[i] == -1`` marks a leaf, and an
internal node sends ``x[feature[i]] <= threshold[i]`` to ``left[i]``.
"""

import numpy as np
from numba import njit

LEAF = -1


@njit(cache=True)
def _gini(counts, total):
    if total <= 0.0:
        return 0.0
    s = 0.0
    for c in range(counts.shape[0]):
        p = counts[c] / total
        s += p * p
    return 1.0 - s


@njit(cache=True)
def _midpoint(a, b):
    t = 0.5 * (a + b)
    if t >= b:
        t = a
    return t


@njit(cache=True, nogil=True)
def build_gini_tree(X, y, w, n_classes, max_depth, min_leaf, max_features,
                    seed):
    """Grow a weighted Gini tree depth-first.

    ``max_depth < 0`` means unlimited. ``max_features`` features are drawn
    without replacement per node; constant features do not count toward
    that budget, so a split is only skipped when no drawn feature varies.
    Returns the node arrays plus per-node impurity and weight.
    """
    np.random.seed(seed)
    n, f = X.shape
    cap = 2 * n + 1
    feature = np.full(cap, -1, np.int64)
    threshold = np.zeros(cap)
    left = np.full(cap, -1, np.int64)
    right = np.full(cap, -1, np.int64)
    value = np.zeros((cap, n_classes))
    impurity = np.zeros(cap)
    weight = np.zeros(cap)

    idx = np.arange(n)
    # stack of (node, start, end, depth)
    stack = np.zeros((cap, 4), np.int64)
    stack[0, 0] = 0
    stack[0, 1] = 0
    stack[0, 2] = n
    stack[0, 3] = 0
    top = 1
    n_nodes = 1

    feats = np.arange(f)
    counts = np.zeros(n_classes)
    lcounts = np.zeros(n_classes)
    rcounts = np.zeros(n_classes)

    while top > 0:
        top -= 1
        node = stack[top, 0]
        start = stack[top, 1]
        end = stack[top, 2]
        depth = stack[top, 3]
        m = end - start

        counts[:] = 0.0
        for i in range(start, end):
            counts[y[idx[i]]] += w[idx[i]]
        total = counts.sum()
        for c in range(n_classes):
            value[node, c] = counts[c] / total
        imp = _gini(counts, total)
        impurity[node] = imp
        weight[node] = total

        if imp <= 1e-15 or depth == max_depth or m < 2 * min_leaf:
            continue

        best_feat = -1
        best_thr = 0.0
        best_child = imp * total
        # Fisher-Yates over features; stop once enough varying ones were seen
        for j in range(f):
            feats[j] = j
        visited = 0
        for jj in range(f):
            if visited >= max_features:
                break
            if max_features < f:
                r = jj + np.random.randint(0, f - jj)
                tmp = feats[jj]
                feats[jj] = feats[r]
                feats[r] = tmp
            j = feats[jj]
            vals = np.empty(m)
            for i in range(m):
                vals[i] = X[idx[start + i], j]
            order = np.argsort(vals, kind="mergesort")
            if vals[order[m - 1]] <= vals[order[0]]:
                continue
            visited += 1
            lcounts[:] = 0.0
            wl = 0.0
            for i in range(m - 1):
                s = idx[start + order[i]]
                lcounts[y[s]] += w[s]
                wl += w[s]
                v0 = vals[order[i]]
                v1 = vals[order[i + 1]]
                if v1 <= v0:
                    continue
                if i + 1 < min_leaf or m - i - 1 < min_leaf:
                    continue
                wr = total - wl
                for c in range(n_classes):
                    rcounts[c] = counts[c] - lcounts[c]
                child = wl * _gini(lcounts, wl) + wr * _gini(rcounts, wr)
                if child < best_child - 1e-12 * total:
                    best_child = child
                    best_feat = j
                    best_thr = _midpoint(v0, v1)

        if best_feat < 0:
            continue

        # partition idx[start:end] in place
        lo = start
        hi = end - 1
        while lo <= hi:
            if X[idx[lo], best_feat] <= best_thr:
                lo += 1
            else:
                tmp = idx[lo]
                idx[lo] = idx[hi]
                idx[hi] = tmp
                hi -= 1
        feature[node] = best_feat
        threshold[node] = best_thr
        li = n_nodes
        ri = n_nodes + 1
        n_nodes += 2
        left[node] = li
        right[node] = ri
        # push right first so the left subtree is numbered first
        stack[top, 0] = ri
        stack[top, 1] = lo
        stack[top, 2] = end
        stack[top, 3] = depth + 1
        top += 1
        stack[top, 0] = li
        stack[top, 1] = start
        stack[top, 2] = lo
        stack[top, 3] = depth + 1
        top += 1

    return (feature[:n_nodes].copy(), threshold[:n_nodes].copy(),
            left[:n_nodes].copy(), right[:n_nodes].copy(),
            value[:n_nodes].copy(), impurity[:n_nodes].copy(),
            weight[:n_nodes].copy())


@njit(cache=True, nogil=True)
def apply_tree(feature, threshold, left, right, X):
    """Leaf index reached by every row of ``X``."""
    n = X.shape[0]
    out = np.empty(n, np.int64)
    for i in range(n):
        node = 0
        while feature[node] != -1:
            if X[i, feature[node]] <= threshold[node]:
                node = left[node]
            else:
                node = right[node]
        out[i] = node
    return out
