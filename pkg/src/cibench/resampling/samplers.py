"""Random and SMOTE-family resamplers with the 'auto' balancing strategy.

Every oversampler raises each class to the majority count; ``rus`` lowers
each class to the minority count. Neighbour searches run on features
min-max scaled with the training rows, while new rows are interpolated in
the original units (the scaling is affine, so segments are preserved).
"""

import warnings as _warnings
from dataclasses import replace

import numpy as np
from sklearn.cluster import KMeans

from .._validation import derive_seed, rng_from
from ..learners.linear import LinearSVM
from ..learners.neighbors import KNNIndex
from .base import (DUPLICATE, SYNTHETIC, _Builder, check_train, deficits,
                   interpolate, largest_remainder, scaled)


def ros(X, y, seed=0):
    """Duplicate random rows of every non-majority class."""
    X, y, counts = check_train(X, y)
    rng = rng_from(seed)
    b = _Builder(X, y)
    for c, need in enumerate(deficits(counts)):
        if need > 0 and counts[c] > 0:
            src = rng.choice(np.flatnonzero(y == c), size=need, replace=True)
            b.add(X[src], c, DUPLICATE, src)
    return b.build("ros")


def rus(X, y, seed=0):
    """Drop random rows of every class down to the minority count."""
    X, y, counts = check_train(X, y)
    rng = rng_from(seed)
    target = counts[counts > 0].min()
    b = _Builder(X, y)
    for c in np.flatnonzero(counts > target):
        rows = np.flatnonzero(y == c)
        keep = rng.choice(rows, size=target, replace=False)
        b.drop(np.setdiff1d(rows, keep))
    return b.build("rus")


def _class_neighbors(Z, rows, k, query_rows=None):
    """``k`` same-class neighbours (global indices) of ``query_rows``."""
    index = KNNIndex(Z[rows])
    local = np.searchsorted(rows, rows if query_rows is None else query_rows)
    return rows[index.query_self(k, local)]


def _effective_k(k, count, b, c, method):
    if count - 1 < k:
        b.warnings.append(f"{method}: class {c} has {count} rows, "
                          f"k lowered to {count - 1}")
    return min(k, count - 1)


def _add_interpolated(b, X, c, seeds, nbrs, gap):
    b.add(interpolate(X[seeds], X[nbrs], gap), c, SYNTHETIC, seeds, nbrs, gap)


def _smote_class(b, X, Z, y, c, need, k, rng, pool=None, method="smote"):
    """Append ``need`` SMOTE rows of class ``c`` seeded from ``pool``."""
    rows = np.flatnonzero(y == c)
    if len(rows) == 1:
        b.warnings.append(f"{method}: class {c} has a single row, "
                          f"duplicating instead")
        b.add(X[np.repeat(rows, need)], c, DUPLICATE, np.repeat(rows, need))
        return
    k = _effective_k(k, len(rows), b, c, method)
    pool = rows if pool is None else np.asarray(pool)
    nn = _class_neighbors(Z, rows, k, pool)
    pick = rng.integers(0, len(pool), size=need)
    col = rng.integers(0, k, size=need)
    gap = rng.random(need)
    _add_interpolated(b, X, c, pool[pick], nn[pick, col], gap)


def smote(X, y, k_neighbors=5, seed=0):
    """Interpolate random class rows toward one of their ``k`` class
    neighbours until every class matches the majority."""
    X, y, counts = check_train(X, y)
    rng = rng_from(seed)
    _, Z = scaled(X)
    b = _Builder(X, y)
    for c, need in enumerate(deficits(counts)):
        if need > 0 and counts[c] > 0:
            _smote_class(b, X, Z, y, c, need, k_neighbors, rng)
    return b.build("smote")


def _all_class_neighbors(Z, m, rows):
    m = min(m, len(Z) - 1)
    return KNNIndex(Z).query_self(m, rows), m


def danger_mask(Z, y, c, m_neighbors=10):
    """Borderline rows of class ``c``: among their ``m`` nearest rows of any
    class, at least half but not all belong to other classes."""
    rows = np.flatnonzero(y == c)
    nn, m = _all_class_neighbors(Z, m_neighbors, rows)
    other = np.sum(y[nn] != c, axis=1)
    return rows, (2 * other >= m) & (other < m)


def borderline_smote(X, y, k_neighbors=5, m_neighbors=10, seed=0):
    """SMOTE seeded only from borderline (DANGER) rows, borderline-1 kind."""
    X, y, counts = check_train(X, y)
    rng = rng_from(seed)
    _, Z = scaled(X)
    b = _Builder(X, y)
    danger = {}
    for c, need in enumerate(deficits(counts)):
        if need == 0 or counts[c] == 0:
            continue
        rows, mask = danger_mask(Z, y, c, m_neighbors)
        danger[c] = rows[mask]
        if not mask.any():
            b.warnings.append(f"borderline_smote: no borderline rows in class "
                              f"{c}, plain SMOTE used")
            _smote_class(b, X, Z, y, c, need, k_neighbors, rng)
        else:
            _smote_class(b, X, Z, y, c, need, k_neighbors, rng, rows[mask],
                         "borderline_smote")
    b.info["danger"] = danger
    return b.build("borderline_smote")


def svm_support_seeds(Z, y, c, C=1.0, seed=0):
    """Rows of class ``c`` on or inside the margin of a class-vs-rest SVM."""
    svm = LinearSVM(C=C, random_state=derive_seed("svm_smote", seed, c))
    svm.fit(Z, (y == c).astype(np.int64))
    sv = svm.support_
    return sv[y[sv] == c]


def svm_smote(X, y, k_neighbors=5, m_neighbors=10, out_step=0.5, C=1.0,
              seed=0):
    """SMOTE seeded from minority support vectors of a linear SVM.

    Seeds whose ``m`` neighbourhood is mostly other-class interpolate toward
    a class neighbour; the rest extrapolate away from it by up to
    ``out_step`` times the seed-neighbour distance.
    """
    X, y, counts = check_train(X, y)
    rng = rng_from(seed)
    _, Z = scaled(X)
    b = _Builder(X, y)
    seeds_used = {}
    for c, need in enumerate(deficits(counts)):
        if need == 0 or counts[c] == 0:
            continue
        rows = np.flatnonzero(y == c)
        sv = svm_support_seeds(Z, y, c, C, seed) if len(rows) > 1 else rows[:0]
        seeds_used[c] = sv
        if len(sv) == 0:
            b.warnings.append(f"svm_smote: no support vectors in class {c}, "
                              f"plain SMOTE used")
            _smote_class(b, X, Z, y, c, need, k_neighbors, rng)
            continue
        k = _effective_k(k_neighbors, len(rows), b, c, "svm_smote")
        nn = _class_neighbors(Z, rows, k, sv)
        mnn, m = _all_class_neighbors(Z, m_neighbors, sv)
        inward = 2 * np.sum(y[mnn] != c, axis=1) > m
        pick = rng.integers(0, len(sv), size=need)
        col = rng.integers(0, k, size=need)
        u = rng.random(need)
        gap = np.where(inward[pick], u, -out_step * u)
        _add_interpolated(b, X, c, sv[pick], nn[pick, col], gap)
    b.info["seeds"] = seeds_used
    return b.build("svm_smote")


def cluster_sparsity(Z):
    """Mean pairwise Euclidean distance among the rows of ``Z``."""
    n = len(Z)
    if n < 2:
        return 0.0
    D = np.sqrt(((Z[:, None, :] - Z[None, :, :]) ** 2).sum(axis=-1))
    return float(D.sum() / (n * (n - 1)))


def kmeans_smote(X, y, k_neighbors=2, n_clusters=8,
                 cluster_balance_threshold=0.5, seed=0):
    """Cluster all rows, then run SMOTE inside clusters dominated by the
    class being oversampled.

    A cluster qualifies for class ``c`` when more than
    ``cluster_balance_threshold`` of its rows are ``c`` and it holds at
    least two of them. The synthetic budget is shared across qualifying
    clusters in proportion to their sparsity (mean pairwise distance of
    the class rows). Without a qualifying cluster plain SMOTE is used.
    """
    X, y, counts = check_train(X, y)
    _, Z = scaled(X)
    n_clusters = min(int(n_clusters), len(X))
    km = KMeans(n_clusters=n_clusters, n_init=3,
                random_state=derive_seed("kmeans", seed) & 0x7FFFFFFF)
    with _warnings.catch_warnings():
        # duplicate rows can leave fewer distinct clusters than requested
        _warnings.simplefilter("ignore")
        labels = km.fit_predict(Z)
    need_all = deficits(counts)
    kept = {}
    for c, need in enumerate(need_all):
        if need == 0 or counts[c] == 0:
            continue
        ok = []
        for q in range(n_clusters):
            members = labels == q
            n_c = int(np.sum(members & (y == c)))
            if members.any() and n_c >= 2 and \
                    n_c / members.sum() > cluster_balance_threshold:
                ok.append(q)
        kept[c] = ok
    if kept and not any(kept.values()):
        res = smote(X, y, k_neighbors, seed)
        note = "kmeans_smote: no qualifying cluster, plain SMOTE used"
        return replace(res, method="kmeans_smote",
                       warnings=res.warnings + (note,),
                       info={"clusters": labels, "kept": kept})
    rng = rng_from(seed)
    b = _Builder(X, y)
    alloc = {}
    for c, clusters in kept.items():
        if not clusters:
            b.warnings.append(f"kmeans_smote: no qualifying cluster for "
                              f"class {c}, plain SMOTE used")
            _smote_class(b, X, Z, y, c, need_all[c], k_neighbors, rng)
            continue
        weights = [cluster_sparsity(Z[(labels == q) & (y == c)]) for q in clusters]
        share = largest_remainder(weights, need_all[c])
        alloc[c] = dict(zip(clusters, share.tolist()))
        for q, n_new in zip(clusters, share):
            if n_new == 0:
                continue
            rows = np.flatnonzero((labels == q) & (y == c))
            k = min(k_neighbors, len(rows) - 1)
            nn = _class_neighbors(Z, rows, k)
            pick = rng.integers(0, len(rows), size=n_new)
            col = rng.integers(0, k, size=n_new)
            _add_interpolated(b, X, c, rows[pick], nn[pick, col],
                              rng.random(n_new))
    b.info.update(clusters=labels, kept=kept, allocation=alloc)
    return b.build("kmeans_smote")


def adasyn_allocation(ratios, total):
    """Per-row synthetic counts from neighbourhood hardness ratios.

    ``round(r_i / sum(r) * total)``, then corrected to sum exactly to
    ``total`` by adjusting the rows with the largest counts. An all-zero
    ratio vector is spread evenly.
    """
    r = np.asarray(ratios, dtype=np.float64)
    total = int(total)
    if r.sum() <= 0:
        g = np.full(len(r), total // len(r), dtype=np.int64)
        g[:total % len(r)] += 1
        return g
    g = np.floor(r / r.sum() * total + 0.5).astype(np.int64)
    diff = total - int(g.sum())
    order = np.lexsort((np.arange(len(g)), -g))
    i = 0
    while diff != 0:
        j = order[i % len(g)]
        if diff > 0:
            g[j] += 1
            diff -= 1
        elif g[j] > 0:
            g[j] -= 1
            diff += 1
        i += 1
    return g


def adasyn(X, y, n_neighbors=5, seed=0):
    """SMOTE with per-row budgets proportional to the share of other-class
    rows among each row's ``n_neighbors`` nearest neighbours."""
    X, y, counts = check_train(X, y)
    rng = rng_from(seed)
    _, Z = scaled(X)
    b = _Builder(X, y)
    allocation = {}
    for c, need in enumerate(deficits(counts)):
        if need == 0 or counts[c] == 0:
            continue
        rows = np.flatnonzero(y == c)
        if len(rows) == 1:
            _smote_class(b, X, Z, y, c, need, n_neighbors, rng, method="adasyn")
            continue
        nn, m = _all_class_neighbors(Z, n_neighbors, rows)
        ratios = np.sum(y[nn] != c, axis=1) / m
        if ratios.sum() == 0:
            b.warnings.append(f"adasyn: class {c} neighbourhoods are pure, "
                              f"even allocation used")
        g = adasyn_allocation(ratios, need)
        allocation[c] = g
        k = _effective_k(n_neighbors, len(rows), b, c, "adasyn")
        cnn = _class_neighbors(Z, rows, k)
        seeds = np.repeat(np.arange(len(rows)), g)
        col = rng.integers(0, k, size=len(seeds))
        _add_interpolated(b, X, c, rows[seeds], cnn[seeds, col],
                          rng.random(len(seeds)))
    b.info["allocation"] = allocation
    return b.build("adasyn")
