import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from sklearn.base import BaseEstimator, clone

from cibench.ensembles import (KINDS, PAPER_MODELS, ModelSpec,
                               StackingClassifier, VotingClassifier,
                               hard_vote, make_folds, soft_vote)
from cibench.exceptions import ConfigError, FitError, PredictError, VoteError
from cibench.learners import (DecisionTreeClassifier, LogisticRegression,
                              ProbabilisticClassifier)


def _fixture(n=80, seed=0):
    rng = np.random.default_rng(seed)
    X = rng.normal(size=(n, 3))
    y = (X[:, 0] + 0.5 * rng.normal(size=n) > 0.3).astype(int)
    return X, y


class FixedProba(ProbabilisticClassifier):
    """Returns the same probability row everywhere."""

    def __init__(self, row=(0.5, 0.5)):
        self.row = row

    def fit(self, X, y):
        self.classes_ = np.unique(y)
        self.n_features_in_ = np.asarray(X).shape[1]
        return self

    def predict_proba(self, X):
        return np.tile(np.asarray(self.row, float), (len(X), 1))


class Oracle(ProbabilisticClassifier):
    """Perfect on the sign of the first feature."""

    def fit(self, X, y):
        self.classes_ = np.unique(y)
        return self

    def predict_proba(self, X):
        p = (np.asarray(X)[:, 0] > 0).astype(float)
        return np.c_[1 - p, p]


# -- voting -------------------------------------------------------------------

def test_hard_vote_examples():
    assert hard_vote([0, 0, 1]) == 0
    assert hard_vote([0, 1]) == 0
    assert hard_vote([2, 1, 1, 2]) == 1
    with pytest.raises(VoteError):
        hard_vote([])


def test_soft_vote_examples():
    mean, label = soft_vote([[1, 0], [0, 1]])
    assert mean.tolist() == [0.5, 0.5] and label == 0
    mean, _ = soft_vote([[0.2, 0.8]] * 3)
    np.testing.assert_allclose(mean, [0.2, 0.8], rtol=0, atol=1e-15)
    rng = np.random.default_rng(1)
    rows = rng.dirichlet(np.ones(4), size=3)
    mean, _ = soft_vote(rows)
    manual = [(rows[0][c] + rows[1][c] + rows[2][c]) / 3 for c in range(4)]
    np.testing.assert_allclose(mean, manual, atol=1e-12)
    with pytest.raises(VoteError):
        soft_vote([[0.5, 0.5], [0.2, 0.3, 0.5]])
    with pytest.raises(VoteError):
        soft_vote([[0.5, 0.4]])


def test_voting_i_hard_equals_hand_tally():
    X, y = _fixture()
    model = ModelSpec("voting_i_hard").build(3).fit(X[:60], y[:60])
    members = model.member_proba(X[60:])
    assert members.shape[0] == 4
    for r in range(20):
        tally = [0, 0]
        for m in range(4):
            tally[int(members[m, r, 1] > members[m, r, 0])] += 1
        assert model.predict(X[60 + r:61 + r])[0] == (1 if tally[1] > tally[0] else 0)


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(2, 5), st.integers(1, 7))
def test_hard_vote_ignores_monotone_rescaling(seed, C, M):
    rng = np.random.default_rng(seed)
    P = rng.dirichlet(np.ones(C), size=M)
    rescaled = 2.0 + np.exp(3.0 * P)
    assert hard_vote(P.argmax(axis=1), C) == hard_vote(rescaled.argmax(axis=1), C)


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_soft_vote_permutation_invariant(seed):
    X, y = _fixture(60, seed % 1000)
    members = [("a", FixedProba((0.3, 0.7))), ("b", DecisionTreeClassifier(max_depth=2)),
               ("c", LogisticRegression())]
    order = np.random.default_rng(seed).permutation(3)
    a = VotingClassifier(members, "soft").fit(X, y).predict_proba(X)
    b = VotingClassifier([members[i] for i in order], "soft").fit(X, y).predict_proba(X)
    np.testing.assert_allclose(a, b, rtol=0, atol=1e-15)


def test_voting_errors():
    X, y = _fixture()
    with pytest.raises(VoteError):
        VotingClassifier([], "soft").fit(X, y)
    with pytest.raises(VoteError):
        VotingClassifier([("a", FixedProba())], "median").fit(X, y)


# -- stacking -----------------------------------------------------------------

def test_stacking_i_meta_width():
    X, y = _fixture()
    model = ModelSpec("stacking_i").build(0).fit(X, y)
    assert model.meta_features_.shape == (80, 8)
    P = model.predict_proba(X)
    np.testing.assert_allclose(P.sum(axis=1), 1.0, atol=1e-9)


def test_stacking_single_perfect_learner():
    rng = np.random.default_rng(0)
    X = rng.normal(size=(60, 2))
    y = (X[:, 0] > 0).astype(int)
    model = StackingClassifier([("o", Oracle())]).fit(X, y)
    assert np.mean(model.predict(X) == y) == 1.0


def test_stacking_out_of_fold_provenance():
    X, y = _fixture(70, 2)
    cart = DecisionTreeClassifier(max_depth=3, random_state=1)
    model = StackingClassifier([("cart", cart), ("fixed", FixedProba((0.4, 0.6)))],
                               n_folds=5, random_state=4).fit(X, y)
    for j in range(model.n_folds_):
        held = model.fold_ == j
        refit = clone(cart).fit(X[~held], y[~held])
        block = model.meta_features_[held, 0:2]
        np.testing.assert_array_equal(block, refit.predict_proba(X[held]))
        # the learner that saw fold j would fit those rows exactly
        assert not np.array_equal(block, model.estimators_[0].predict_proba(X[held])) or \
            np.all(block.max(axis=1) == 1)


def test_stacking_manual_composition():
    X, y = _fixture()
    model = StackingClassifier([("a", DecisionTreeClassifier(max_depth=2)),
                                ("b", FixedProba((0.1, 0.9)))]).fit(X, y)
    row = X[:1]
    meta = np.hstack([model.estimators_[0].predict_proba(row), [[0.1, 0.9]]])
    np.testing.assert_allclose(model.predict_proba(row),
                               model.final_estimator_.predict_proba(meta), atol=0)


def test_stacking_unanimous_certain_members():
    X, y = _fixture()
    model = StackingClassifier([("a", FixedProba((0.0, 1.0))),
                                ("b", Oracle())]).fit(X, y)
    pos = X[:, 0] > 0
    assert np.all(model.predict(X[pos]) == 1)


def test_stacking_feature_mismatch():
    X, y = _fixture()
    model = ModelSpec("stacking_ii").build(0).fit(X, y)
    with pytest.raises(PredictError):
        model.predict_proba(X[:, :2])


def test_make_folds_rules():
    y = np.r_[np.zeros(20, int), np.ones(3, int)]
    fold, k = make_folds(y, 5, seed=1)
    assert k == 5
    for j in range(k):
        assert set(y[fold != j]) == {0, 1}
    # two minority rows only need to land in different folds
    fold, k = make_folds(np.r_[np.zeros(10, int), 1, 1], 5)
    assert k == 5 and fold[10] != fold[11]
    # a single row always leaves its own training part without that class
    with pytest.raises(FitError):
        make_folds(np.r_[np.zeros(10, int), 1], 5)


# -- registry -----------------------------------------------------------------

def test_model_specs():
    assert len(PAPER_MODELS) == 9 and set(PAPER_MODELS) <= set(KINDS)
    assert [m.kind for m in ModelSpec("voting_i_soft").pool] == ["cart", "forest", "knn", "xgbm"]
    assert [m.kind for m in ModelSpec("stacking_ii").pool] == ["forest", "xgbm"]
    assert ModelSpec("forest", {"n_estimators": 10}).build(0).n_estimators == 10
    with pytest.raises(ConfigError):
        ModelSpec("svm")
    with pytest.raises(ConfigError):
        ModelSpec("forest", {"depth": 3})


@pytest.mark.parametrize("kind", KINDS)
def test_every_kind_fits_and_is_deterministic(kind):
    X, y = _fixture(60)
    a = ModelSpec(kind).build(5).fit(X, y).predict_proba(X)
    b = ModelSpec(kind).build(5).fit(X, y).predict_proba(X)
    assert a.shape == (60, 2)
    np.testing.assert_array_equal(a, b)
    np.testing.assert_allclose(a.sum(axis=1), 1.0, atol=1e-9)
