"""Numba tree builders for the gradient-boosting learners.

All builders return flat node arrays in the same layout as the CART
kernels (``feature == -1`` for leaves, ``x <= threshold`` goes left) plus a
per-node split gain (zero on leaves).
"""

import numpy as np
from numba import njit


@njit(cache=True)
def _midpoint(a, b):
    t = 0.5 * (a + b)
    if t >= b:
        t = a
    return t


@njit(cache=True, nogil=True)
def build_mse_tree(X, r, max_depth, min_split, min_leaf):
    """Depth-limited least-squares regression tree on targets ``r``."""
    n, f = X.shape
    cap = 2 * n + 1
    feature = np.full(cap, -1, np.int64)
    threshold = np.zeros(cap)
    left = np.full(cap, -1, np.int64)
    right = np.full(cap, -1, np.int64)
    value = np.zeros(cap)
    gain = np.zeros(cap)
    idx = np.arange(n)
    stack = np.zeros((cap, 4), np.int64)
    stack[0, 2] = n
    top = 1
    n_nodes = 1
    while top > 0:
        top -= 1
        node, start, end, depth = stack[top, 0], stack[top, 1], stack[top, 2], stack[top, 3]
        m = end - start
        S = 0.0
        SS = 0.0
        for i in range(start, end):
            S += r[idx[i]]
            SS += r[idx[i]] * r[idx[i]]
        value[node] = S / m
        if m < min_split or depth == max_depth or SS - S * S / m <= 1e-14 * m:
            continue
        base = S * S / m
        best = base + 1e-12 * (1.0 + abs(base))
        best_f = -1
        best_t = 0.0
        for j in range(f):
            vals = np.empty(m)
            for i in range(m):
                vals[i] = X[idx[start + i], j]
            order = np.argsort(vals, kind="mergesort")
            SL = 0.0
            for i in range(m - 1):
                SL += r[idx[start + order[i]]]
                v0 = vals[order[i]]
                v1 = vals[order[i + 1]]
                if v1 <= v0 or i + 1 < min_leaf or m - i - 1 < min_leaf:
                    continue
                nl = i + 1
                nr = m - nl
                score = SL * SL / nl + (S - SL) * (S - SL) / nr
                if score > best:
                    best = score
                    best_f = j
                    best_t = _midpoint(v0, v1)
        if best_f < 0:
            continue
        lo = start
        hi = end - 1
        while lo <= hi:
            if X[idx[lo], best_f] <= best_t:
                lo += 1
            else:
                tmp = idx[lo]
                idx[lo] = idx[hi]
                idx[hi] = tmp
                hi -= 1
        feature[node] = best_f
        threshold[node] = best_t
        gain[node] = best - base
        left[node] = n_nodes
        right[node] = n_nodes + 1
        stack[top, 0] = n_nodes + 1
        stack[top, 1] = lo
        stack[top, 2] = end
        stack[top, 3] = depth + 1
        top += 1
        stack[top, 0] = n_nodes
        stack[top, 1] = start
        stack[top, 2] = lo
        stack[top, 3] = depth + 1
        top += 1
        n_nodes += 2
    return (feature[:n_nodes].copy(), threshold[:n_nodes].copy(),
            left[:n_nodes].copy(), right[:n_nodes].copy(),
            value[:n_nodes].copy(), gain[:n_nodes].copy())


@njit(cache=True)
def split_gain(GL, HL, GR, HR, lam, gamma):
    G = GL + GR
    H = HL + HR
    return 0.5 * (GL * GL / (HL + lam) + GR * GR / (HR + lam)
                  - G * G / (H + lam)) - gamma


@njit(cache=True, nogil=True)
def build_xgb_tree(X, g, h, max_depth, lam, gamma, min_child_weight):
    """Exact greedy second-order tree; leaf weight ``-G / (H + lam)``.

    A split is kept only when its gain is strictly positive and both
    children carry hessian mass of at least ``min_child_weight``.
    """
    n, f = X.shape
    cap = 2 * n + 1
    feature = np.full(cap, -1, np.int64)
    threshold = np.zeros(cap)
    left = np.full(cap, -1, np.int64)
    right = np.full(cap, -1, np.int64)
    value = np.zeros(cap)
    gain = np.zeros(cap)
    idx = np.arange(n)
    stack = np.zeros((cap, 4), np.int64)
    stack[0, 2] = n
    top = 1
    n_nodes = 1
    while top > 0:
        top -= 1
        node, start, end, depth = stack[top, 0], stack[top, 1], stack[top, 2], stack[top, 3]
        m = end - start
        G = 0.0
        H = 0.0
        for i in range(start, end):
            G += g[idx[i]]
            H += h[idx[i]]
        value[node] = -G / (H + lam)
        if depth == max_depth or m < 2:
            continue
        best = 0.0
        best_f = -1
        best_t = 0.0
        for j in range(f):
            vals = np.empty(m)
            for i in range(m):
                vals[i] = X[idx[start + i], j]
            order = np.argsort(vals, kind="mergesort")
            GL = 0.0
            HL = 0.0
            for i in range(m - 1):
                s = idx[start + order[i]]
                GL += g[s]
                HL += h[s]
                v0 = vals[order[i]]
                v1 = vals[order[i + 1]]
                if v1 <= v0:
                    continue
                HR = H - HL
                if HL < min_child_weight or HR < min_child_weight:
                    continue
                gn = split_gain(GL, HL, G - GL, HR, lam, gamma)
                if gn > best:
                    best = gn
                    best_f = j
                    best_t = _midpoint(v0, v1)
        if best_f < 0:
            continue
        lo = start
        hi = end - 1
        while lo <= hi:
            if X[idx[lo], best_f] <= best_t:
                lo += 1
            else:
                tmp = idx[lo]
                idx[lo] = idx[hi]
                idx[hi] = tmp
                hi -= 1
        feature[node] = best_f
        threshold[node] = best_t
        gain[node] = best
        left[node] = n_nodes
        right[node] = n_nodes + 1
        stack[top, 0] = n_nodes + 1
        stack[top, 1] = lo
        stack[top, 2] = end
        stack[top, 3] = depth + 1
        top += 1
        stack[top, 0] = n_nodes
        stack[top, 1] = start
        stack[top, 2] = lo
        stack[top, 3] = depth + 1
        top += 1
        n_nodes += 2
    return (feature[:n_nodes].copy(), threshold[:n_nodes].copy(),
            left[:n_nodes].copy(), right[:n_nodes].copy(),
            value[:n_nodes].copy(), gain[:n_nodes].copy())


@njit(cache=True)
def _best_hist_split(B, rows, start, end, g, h, n_bins, lam, gamma, min_data,
                     min_hess):
    f = B.shape[1]
    max_b = 0
    for j in range(f):
        max_b = max(max_b, n_bins[j])
    hg = np.zeros((f, max_b))
    hh = np.zeros((f, max_b))
    hc = np.zeros((f, max_b), np.int64)
    G = 0.0
    H = 0.0
    for i in range(start, end):
        r = rows[i]
        G += g[r]
        H += h[r]
        for j in range(f):
            b = B[r, j]
            hg[j, b] += g[r]
            hh[j, b] += h[r]
            hc[j, b] += 1
    m = end - start
    best = 0.0
    best_f = -1
    best_b = -1
    for j in range(f):
        GL = 0.0
        HL = 0.0
        CL = 0
        for b in range(n_bins[j] - 1):
            GL += hg[j, b]
            HL += hh[j, b]
            CL += hc[j, b]
            if hc[j, b] == 0:
                continue
            CR = m - CL
            if CL < min_data or CR < min_data:
                continue
            HR = H - HL
            if HL < min_hess or HR < min_hess:
                continue
            gn = split_gain(GL, HL, G - GL, HR, lam, gamma)
            if gn > best:
                best = gn
                best_f = j
                best_b = b
    return best, best_f, best_b, G, H


@njit(cache=True, nogil=True)
def build_hist_tree(B, rows, g, h, n_bins, num_leaves, max_depth, lam, gamma,
                    min_data, min_hess):
    """Leaf-wise histogram tree over pre-binned features ``B``.

    Only ``rows`` take part (the GOSS sample); ``g`` and ``h`` already carry
    the sampling weights. The leaf with the largest positive gain is split
    next until ``num_leaves`` leaves exist or no leaf can improve. Returns
    the split *bin* per internal node in the threshold slot.
    """
    m = rows.shape[0]
    cap = 2 * num_leaves + 1
    feature = np.full(cap, -1, np.int64)
    split_bin = np.zeros(cap, np.int64)
    left = np.full(cap, -1, np.int64)
    right = np.full(cap, -1, np.int64)
    value = np.zeros(cap)
    gain = np.zeros(cap)
    rows = rows.copy()
    # per node: start, end, depth, best feature, best bin
    state = np.zeros((cap, 5), np.int64)
    best_gain = np.full(cap, -1.0)
    is_open = np.zeros(cap, np.bool_)

    bg, bf, bb, G, H = _best_hist_split(B, rows, 0, m, g, h, n_bins, lam, gamma,
                                        min_data, min_hess)
    value[0] = -G / (H + lam)
    state[0, 1] = m
    state[0, 3] = bf
    state[0, 4] = bb
    best_gain[0] = bg
    is_open[0] = True
    n_nodes = 1
    n_leaves = 1
    while n_leaves < num_leaves:
        pick = -1
        top_gain = 0.0
        for node in range(n_nodes):
            if is_open[node] and state[node, 3] >= 0 and best_gain[node] > top_gain:
                top_gain = best_gain[node]
                pick = node
        if pick < 0:
            break
        start, end, depth = state[pick, 0], state[pick, 1], state[pick, 2]
        j, b = state[pick, 3], state[pick, 4]
        lo = start
        hi = end - 1
        while lo <= hi:
            if B[rows[lo], j] <= b:
                lo += 1
            else:
                tmp = rows[lo]
                rows[lo] = rows[hi]
                rows[hi] = tmp
                hi -= 1
        feature[pick] = j
        split_bin[pick] = b
        gain[pick] = top_gain
        is_open[pick] = False
        for child, cs, ce in ((n_nodes, start, lo), (n_nodes + 1, lo, end)):
            cg, cf, cb, CG, CH = _best_hist_split(B, rows, cs, ce, g, h, n_bins,
                                                  lam, gamma, min_data, min_hess)
            value[child] = -CG / (CH + lam)
            state[child, 0] = cs
            state[child, 1] = ce
            state[child, 2] = depth + 1
            if max_depth >= 0 and depth + 1 >= max_depth:
                cf = -1
            state[child, 3] = cf
            state[child, 4] = cb
            best_gain[child] = cg
            is_open[child] = True
        left[pick] = n_nodes
        right[pick] = n_nodes + 1
        n_nodes += 2
        n_leaves += 1
    return (feature[:n_nodes].copy(), split_bin[:n_nodes].copy(),
            left[:n_nodes].copy(), right[:n_nodes].copy(),
            value[:n_nodes].copy(), gain[:n_nodes].copy())
