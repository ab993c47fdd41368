import numpy as np
import pytest

from cibench.boosting import (AdaBoostClassifier, GradientBoostingClassifier,
                              HistGradientBoostingClassifier, XGBClassifier,
                              apply_bins, bin_edges, goss_sample, leaf_weight,
                              pseudo_residual, sigmoid, structure_score,
                              stump_influence)
from cibench.exceptions import FitError, PredictError


def _fixture(seed, n=60, f=3, classes=2):
    rng = np.random.default_rng(seed)
    X = rng.normal(size=(n, f))
    score = X @ rng.normal(size=f) + 0.7 * rng.normal(size=n)
    if classes == 2:
        y = (score > np.median(score) + 0.3).astype(int)
    else:
        y = np.digitize(score, np.quantile(score, np.linspace(0, 1, classes + 1)[1:-1]))
    return X, y


def _sigmoid_loss(t, F):
    p = 1 / (1 + np.exp(-F))
    return -np.mean(t * np.log(p) + (1 - t) * np.log(1 - p))


# -- AdaBoost -----------------------------------------------------------------

def test_influence_examples():
    assert stump_influence(0.5) == 0.0
    assert stump_influence(1 / (1 + np.e ** 2)) == pytest.approx(1.0)
    assert stump_influence(0.0) == pytest.approx(0.5 * np.log(1e10))
    e = 0.3
    assert stump_influence(e, 3) == pytest.approx(np.log(0.7 / 0.3) + np.log(2))
    assert stump_influence(e, 2, 0.5) == pytest.approx(0.25 * np.log(0.7 / 0.3))


def test_adaboost_initial_weights():
    X = np.array([[0.0], [1.0], [2.0], [3.0]])
    clf = AdaBoostClassifier(n_estimators=3).fit(X, [0, 1, 0, 1])
    np.testing.assert_allclose(clf.weight_history_[0], 0.25)
    assert clf.weight_history_[0].sum() == pytest.approx(1.0)


@pytest.mark.parametrize("classes", [2, 3])
def test_adaboost_weights_are_distributions(classes):
    X, y = _fixture(1, n=90, classes=classes)
    clf = AdaBoostClassifier().fit(X, y)
    for w in clf.weight_history_:
        assert abs(w.sum() - 1.0) < 1e-12
        assert np.all(w > 0)
    assert np.all(clf.errors_ < 1 - 1 / classes)
    for stump in clf.estimators_:
        assert stump.n_nodes == 3


def test_adaboost_replays_weight_update():
    X, y = _fixture(2, n=40)
    clf = AdaBoostClassifier(n_estimators=5).fit(X, y)
    w = np.full(40, 1 / 40)
    for t, (stump, alpha) in enumerate(zip(clf.estimators_, clf.alphas_)):
        miss = np.argmax(stump.predict_value(X), axis=1) != y
        err = w[miss].sum()
        assert err == pytest.approx(clf.errors_[t], abs=1e-12)
        assert alpha == pytest.approx(0.5 * np.log((1 - err) / err))
        w = w * np.exp(np.where(miss, alpha, -alpha))
        w /= w.sum()
        if t + 1 < len(clf.weight_history_):
            np.testing.assert_allclose(clf.weight_history_[t + 1], w, atol=1e-14)


def test_adaboost_single_stump_vote():
    X = np.array([[0.0], [1.0]])
    clf = AdaBoostClassifier(n_estimators=1).fit(X, [0, 1])
    assert clf.errors_[0] == 0.0
    clf.alphas_ = np.array([1.0])
    np.testing.assert_array_equal(clf.predict_proba([[5.0]]), [[0.0, 1.0]])


def test_adaboost_identical_features():
    with pytest.raises(FitError):
        AdaBoostClassifier().fit(np.ones((6, 2)), [0, 1, 0, 1, 0, 1])


def test_adaboost_margin_probability():
    X, y = _fixture(3)
    clf = AdaBoostClassifier(n_estimators=10).fit(X, y)
    P = clf.predict_proba(X)
    S = np.zeros_like(P)
    for stump, a in zip(clf.estimators_, clf.alphas_):
        S[np.arange(len(X)), np.argmax(stump.predict_value(X), 1)] += a
    np.testing.assert_allclose(P, S / clf.alphas_.sum())


# -- gradient boosting ----------------------------------------------------------

def test_pseudo_residual_examples():
    assert pseudo_residual(3.0, 1.0, "squared") == 2.0
    assert pseudo_residual(1.0, 0.0) == pytest.approx(0.5)


def test_gbm_zero_stages_is_base_rate():
    X = np.random.default_rng(0).normal(size=(10, 2))
    y = np.array([1, 1, 1] + [0] * 7)
    clf = GradientBoostingClassifier(n_estimators=0).fit(X, y)
    np.testing.assert_allclose(clf.predict_proba(X), np.tile([0.7, 0.3], (10, 1)))


def test_gbm_newton_leaf_values():
    X, y = _fixture(4, n=50)
    clf = GradientBoostingClassifier(n_estimators=3).fit(X, y)
    booster = clf.boosters_[0]
    F = np.full(50, booster.base_score)
    for tree in booster.trees:
        p = sigmoid(F)
        leaves = tree.apply(X)
        for leaf in np.unique(leaves):
            m = leaves == leaf
            expect = (y[m] - p[m]).sum() / (p[m] * (1 - p[m])).sum()
            assert tree.value[leaf] == pytest.approx(expect, rel=1e-10)
        assert tree.depth() <= 3
        F = F + 0.1 * tree.value[leaves]


def test_gbm_separable_loss_trace():
    rng = np.random.default_rng(5)
    X = rng.normal(size=(30, 2))
    y = (X[:, 0] > 0).astype(int)
    clf = GradientBoostingClassifier(n_estimators=50).fit(X, y)
    loss = clf.train_loss_[0]
    assert np.all(np.diff(loss) < 0)
    F = clf.decision_function(X)[:, 0]
    assert loss[-1] == pytest.approx(_sigmoid_loss(y, F), rel=1e-9)


def test_gbm_single_class():
    with pytest.raises(FitError):
        GradientBoostingClassifier().fit(np.ones((4, 1)), [1, 1, 1, 1])


# -- second-order boosting ----------------------------------------------------

def test_leaf_weight_and_structure_score():
    assert structure_score(2.0, 1.0, 1.0) == pytest.approx(-1.0)
    assert leaf_weight(2.0, 1.0, 1.0) == pytest.approx(-1.0)


def test_xgb_large_lambda_keeps_base_score():
    X, y = _fixture(6)
    clf = XGBClassifier(n_estimators=5, reg_lambda=1e12).fit(X, y)
    base = sigmoid(clf.boosters_[0].base_score)
    np.testing.assert_allclose(clf.predict_proba(X)[:, 1], base, atol=1e-9)


def _brute_gain(X, g, h, lam):
    G, H = g.sum(), h.sum()
    best = (0.0, None, None)
    for j in range(X.shape[1]):
        vals = np.unique(X[:, j])
        for a, b in zip(vals[:-1], vals[1:]):
            m = X[:, j] <= (a + b) / 2
            gl, hl = g[m].sum(), h[m].sum()
            gain = 0.5 * (gl ** 2 / (hl + lam) + (G - gl) ** 2 / (H - hl + lam)
                          - G ** 2 / (H + lam))
            if gain > best[0]:
                best = (gain, j, (a + b) / 2)
    return best


@pytest.mark.parametrize("seed", range(6))
def test_xgb_stump_matches_exhaustive_gain(seed):
    rng = np.random.default_rng(seed)
    X = rng.integers(0, 6, size=(8, 2)).astype(float)
    y = np.array([0, 1] * 4)
    rng.shuffle(y)
    clf = XGBClassifier(n_estimators=1, max_depth=1, min_child_weight=0.0).fit(X, y)
    tree = clf.boosters_[0].trees[0]
    p = np.full(8, 0.5)
    gain, j, t = _brute_gain(X, p - y, p * (1 - p), 1.0)
    if j is None:
        assert tree.n_nodes == 1
    else:
        assert (tree.feature[0], tree.threshold[0]) == (j, t)
        assert tree.gain[0] == pytest.approx(gain, rel=1e-12)


def test_xgb_gains_positive_and_leaf_weights_exact():
    X, y = _fixture(7, n=80)
    clf = XGBClassifier(n_estimators=8).fit(X, y)
    booster = clf.boosters_[0]
    F = np.full(80, booster.base_score)
    for tree in booster.trees:
        p = sigmoid(F)
        g, h = p - y, p * (1 - p)
        assert np.all(tree.gain[~tree.is_leaf] > 0)
        leaves = tree.apply(X)
        for leaf in np.unique(leaves):
            m = leaves == leaf
            assert tree.value[leaf] == pytest.approx(-g[m].sum() / (h[m].sum() + 1.0),
                                                     rel=1e-12, abs=1e-15)
        F = F + 0.3 * tree.value[leaves]


# -- histogram boosting -------------------------------------------------------

def test_bins_and_edges():
    x = np.array([3.0, 1.0, 2.0, 2.0, 5.0])
    e = bin_edges(x, 255)
    np.testing.assert_allclose(e, [1.5, 2.5, 4.0])
    np.testing.assert_array_equal(apply_bins(x[:, None], [e])[:, 0], [2, 0, 1, 1, 3])
    many = np.random.default_rng(0).normal(size=1000)
    assert len(bin_edges(many, 16)) + 1 <= 16
    assert len(bin_edges(np.ones(9), 255)) == 0


def test_goss_sample_weights():
    g = np.arange(100, dtype=float) - 50
    rows, mult = goss_sample(g, 0.2, 0.1, np.random.default_rng(0))
    assert len(rows) == 30
    top = set(np.argsort(-np.abs(g), kind="stable")[:20].tolist())
    assert top <= set(rows.tolist())
    assert sorted(np.unique(mult).tolist()) == [1.0, 8.0]
    assert np.sum(mult == 8.0) == 10


@pytest.mark.parametrize("seed", range(4))
def test_hist_without_goss_matches_exact_greedy(seed):
    X, y = _fixture(10 + seed, n=20)
    hist = HistGradientBoostingClassifier(
        n_estimators=5, learning_rate=0.3, num_leaves=10**6, goss_a=1.0,
        min_data_in_leaf=1, min_sum_hessian_in_leaf=0.0, reg_lambda=1.0).fit(X, y)
    xgb = XGBClassifier(n_estimators=5, learning_rate=0.3, max_depth=None,
                        min_child_weight=0.0).fit(X, y)
    for th, tx in zip(hist.boosters_[0].trees, xgb.boosters_[0].trees):
        gh = np.sort(th.gain[~th.is_leaf])
        gx = np.sort(tx.gain[~tx.is_leaf])
        np.testing.assert_allclose(gh, gx, rtol=0, atol=1e-9)
    np.testing.assert_allclose(hist.predict_proba(X), xgb.predict_proba(X), atol=1e-9)


def test_hist_two_leaves_are_stumps():
    X, y = _fixture(8, n=200)
    clf = HistGradientBoostingClassifier(num_leaves=2, n_estimators=10).fit(X, y)
    for tree in clf.boosters_[0].trees:
        assert tree.n_leaves <= 2


def test_hist_leaf_cap_and_constant_feature():
    X, y = _fixture(9, n=300)
    X[:, 1] = 4.2
    clf = HistGradientBoostingClassifier(n_estimators=10, min_data_in_leaf=5).fit(X, y)
    for tree in clf.boosters_[0].trees:
        assert tree.n_leaves <= 31
        assert 1 not in tree.feature


def test_hist_small_data_is_constant():
    X, y = _fixture(11, n=18)
    clf = HistGradientBoostingClassifier().fit(X, y)
    assert clf.boosters_[0].trees == []
    np.testing.assert_allclose(clf.predict_proba(X)[:, 1], y.mean())


# -- shared properties --------------------------------------------------------

LEARNERS = [
    GradientBoostingClassifier,
    XGBClassifier,
    lambda: HistGradientBoostingClassifier(min_data_in_leaf=5, goss_a=1.0),
]


@pytest.mark.parametrize("make", LEARNERS)
@pytest.mark.parametrize("seed", [0, 1, 2])
def test_training_loss_non_increasing(make, seed):
    X, y = _fixture(seed, n=120)
    clf = make().fit(X, y)
    for loss in clf.train_loss_:
        assert np.all(np.diff(loss) <= 1e-12)


@pytest.mark.parametrize("seed", range(6))
def test_hist_goss_loss_decreases_overall(seed):
    # row sampling may raise the full-data loss in a single round, but the
    # trend over the boosting run is downward
    X, y = _fixture(seed, n=300)
    loss = HistGradientBoostingClassifier().fit(X, y).train_loss_[0]
    assert len(loss) > 11
    assert loss[-1] < 0.7 * loss[0]
    assert np.all(np.diff(loss[:11]) <= 1e-12)


@pytest.mark.parametrize("make", LEARNERS + [AdaBoostClassifier])
def test_probabilities_deterministic_and_normalized(make):
    X, y = _fixture(3, n=100, classes=3)
    Q = np.random.default_rng(9).normal(size=(100, 3))
    a, b = make().fit(X, y), make().fit(X, y)
    P = a.predict_proba(Q)
    np.testing.assert_array_equal(P, b.predict_proba(Q))
    np.testing.assert_allclose(P.sum(axis=1), 1.0, atol=1e-9)
    assert np.all(P >= 0)
    Xb, yb = _fixture(3, n=100)
    Pb = make().fit(Xb, yb).predict_proba(Q)
    np.testing.assert_allclose(Pb.sum(axis=1), 1.0, atol=1e-12)
    with pytest.raises(PredictError):
        a.predict_proba(Q[:, :2])


def test_multiclass_adaboost_matches_reference_samme():
    import warnings
    from sklearn.ensemble import AdaBoostClassifier as RefAda
    from sklearn.tree import DecisionTreeClassifier as RefTree
    rng = np.random.default_rng(5)
    X = rng.normal(size=(150, 4))
    y = (X[:, 0] > 0).astype(int) + (X[:, 1] > 0.5).astype(int) + (X[:, 2] > 1)
    ours = AdaBoostClassifier(n_estimators=20).fit(X, y)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        ref = RefAda(RefTree(max_depth=1), n_estimators=20).fit(X, y)
    k = len(ours.errors_)
    np.testing.assert_allclose(ours.errors_, ref.estimator_errors_[:k], atol=1e-12)
    assert np.array_equal(ours.predict(X), ref.predict(X))
