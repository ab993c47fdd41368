import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cibench.datasets import load_dataset
from cibench.exceptions import MetricError
from cibench.metrics import (accuracy, auc_multiclass, auc_single_threshold,
                             confusion, evaluate, f1_averaged, f1_per_class,
                             metric_names, precision_recall_f1, predict_labels,
                             roc_auc_binary)


# -- independent oracles --------------------------------------------------------

def trapezoid_auc(y, s):
    """Area under the empirical ROC curve, one vertex per distinct score."""
    y = np.asarray(y, bool)
    P, N = y.sum(), (~y).sum()
    tpr, fpr = [0.0], [0.0]
    for t in sorted(set(s.tolist()), reverse=True):
        hit = s >= t
        tpr.append((hit & y).sum() / P)
        fpr.append((hit & ~y).sum() / N)
    area = 0.0
    for i in range(1, len(tpr)):
        area += (fpr[i] - fpr[i - 1]) * (tpr[i] + tpr[i - 1]) / 2
    return 100 * area


def pairwise_auc(y, s):
    pos = [v for v, t in zip(s, y) if t]
    neg = [v for v, t in zip(s, y) if not t]
    credit = sum(1.0 if p > n else 0.5 if p == n else 0.0
                 for p in pos for n in neg)
    return 100 * credit / (len(pos) * len(neg))


def brute_multiclass(y, P, scheme, average):
    C = P.shape[1]
    vals, w = [], []
    if scheme == "ovr":
        for c in range(C):
            vals.append(pairwise_auc([t == c for t in y], P[:, c].tolist()))
            w.append(sum(t == c for t in y))
    else:
        for a, b in itertools.permutations(range(C), 2):
            rows = [i for i in range(len(y)) if y[i] in (a, b)]
            s = [P[i, a] / (P[i, a] + P[i, b]) for i in rows]
            vals.append(pairwise_auc([y[i] == a for i in rows], s))
            w.append(len(rows))
    if average == "macro":
        return sum(vals) / len(vals)
    return sum(v * x for v, x in zip(vals, w)) / sum(w)


def hand_tally(y, p, C):
    M = [[0] * C for _ in range(C)]
    for a, b in zip(y, p):
        M[a][b] += 1
    return M


# -- confusion / accuracy -----------------------------------------------------

def test_confusion_examples():
    np.testing.assert_array_equal(confusion([0, 1, 2], [0, 1, 2]).matrix, np.eye(3))
    c = confusion([1, 0, 0, 1], [1, 0, 1, 0], 2)
    np.testing.assert_array_equal(c.matrix, [[1, 1], [1, 1]])
    assert (c.tp, c.tn, c.fp, c.fn) == (1, 1, 1, 1)
    rng = np.random.default_rng(4)
    y, p = rng.integers(0, 3, 40), rng.integers(0, 3, 40)
    assert confusion(y, p, 3).matrix.tolist() == hand_tally(y, p, 3)
    with pytest.raises(MetricError):
        confusion([0, 1], [0])


def test_accuracy_examples():
    assert accuracy(confusion([1, 0, 0, 1], [1, 0, 1, 0], 2)) == 50.0
    assert accuracy(confusion([0, 1, 2, 2], [0, 1, 2, 2], 3)) == 100.0
    with pytest.raises(MetricError):
        accuracy(confusion([], [], 2))


def test_all_majority_accuracy_yeast_1289vs7():
    ds = load_dataset("Yeast-1289vs7")
    acc = accuracy(confusion(ds.y, np.zeros_like(ds.y), 2))
    assert round(acc, 2) == 96.83


def test_precision_recall_f1_examples():
    assert precision_recall_f1(confusion([1, 0], [1, 0], 2))[2] == 100.0
    assert precision_recall_f1(confusion([1, 0], [0, 1], 2)) == (0.0, 0.0, 0.0)
    assert precision_recall_f1(confusion([0, 0], [0, 0], 2)) == (0.0, 0.0, 0.0)
    p, r, f = precision_recall_f1(confusion([1, 0], [1, 1], 2))
    assert (p, r) == (50.0, 100.0)
    assert f == pytest.approx(66.67, abs=0.005)


def test_f1_averaged_examples():
    perfect = confusion([0, 1, 2, 1], [0, 1, 2, 1], 3)
    for mode in ("macro", "micro", "weighted"):
        assert f1_averaged(perfect, mode) == 100.0
    # skewed fixture: true counts 6/3/1
    y = [0] * 6 + [1] * 3 + [2]
    p = [0, 0, 0, 0, 0, 1, 1, 1, 0, 0]
    c = confusion(y, p, 3)
    f0, f1_, f2 = 2 * 5 / (2 * 5 + 2 + 1), 2 * 2 / (2 * 2 + 1 + 1), 0.0
    assert f1_averaged(c, "macro") == pytest.approx(100 * (f0 + f1_ + f2) / 3)
    assert f1_averaged(c, "weighted") == pytest.approx(100 * (6 * f0 + 3 * f1_) / 10)
    assert f1_averaged(c, "micro") == pytest.approx(70.0)
    with pytest.raises(MetricError):
        f1_averaged(c, "median")


@settings(max_examples=60, deadline=None)
@given(st.integers(3, 6), st.integers(1, 60), st.integers(0, 2**32 - 1))
def test_micro_f1_equals_accuracy(C, n, seed):
    rng = np.random.default_rng(seed)
    c = confusion(rng.integers(0, C, n), rng.integers(0, C, n), C)
    assert f1_averaged(c, "micro") == pytest.approx(accuracy(c), abs=1e-12)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_macro_not_above_weighted_when_majority_best(seed):
    rng = np.random.default_rng(seed)
    # a majority class predicted perfectly, minority classes noisy
    y = np.r_[np.zeros(30, int), rng.integers(1, 3, 10)]
    p = y.copy()
    flip = rng.random(10) < 0.6
    p[30:][flip] = rng.integers(1, 3, flip.sum())
    c = confusion(y, p, 3)
    per = f1_per_class(c)
    if per[0] >= per.max():
        assert f1_averaged(c, "macro") <= f1_averaged(c, "weighted") + 1e-12


# -- binary AUC ---------------------------------------------------------------

def test_roc_auc_examples():
    y = np.array([0, 0, 1, 1])
    assert roc_auc_binary(y, [0.1, 0.2, 0.8, 0.9]) == 100.0
    assert roc_auc_binary(y, [0.9, 0.8, 0.2, 0.1]) == 0.0
    assert roc_auc_binary(y, [0.5] * 4) == 50.0
    with pytest.raises(MetricError):
        roc_auc_binary([1, 1], [0.2, 0.3])


def test_roc_auc_twelve_point_fixture():
    rng = np.random.default_rng(12)
    y = np.array([0, 1] * 6)
    s = np.round(rng.random(12), 1)  # coarse rounding forces ties
    assert roc_auc_binary(y, s) == pytest.approx(trapezoid_auc(y, s), abs=1e-9)


@pytest.mark.parametrize("seed", range(20))
def test_rank_auc_matches_trapezoid_oracle(seed):
    rng = np.random.default_rng(100 + seed)
    n = int(rng.integers(6, 60))
    y = rng.integers(0, 2, n)
    y[:2] = [0, 1]
    s = np.round(rng.normal(size=n) + y, int(rng.integers(0, 3)))
    got = roc_auc_binary(y, s)
    assert got == pytest.approx(trapezoid_auc(y, s), abs=1e-9)
    assert got == pytest.approx(pairwise_auc(y, s), abs=1e-9)


@settings(max_examples=60, deadline=None)
@given(st.integers(4, 50), st.integers(0, 2**32 - 1))
def test_auc_monotone_invariance_and_complement(n, seed):
    rng = np.random.default_rng(seed)
    y = rng.integers(0, 2, n)
    y[:2] = [0, 1]
    s = np.round(rng.normal(size=n), 1)
    base = roc_auc_binary(y, s)
    assert roc_auc_binary(y, np.exp(s)) == base
    assert roc_auc_binary(y, 3.0 * s + 7.0) == base
    assert base + roc_auc_binary(y, -s) == pytest.approx(100.0, abs=1e-12)


def test_auc_single_threshold_examples():
    perfect = confusion([0, 1], [0, 1], 2)
    assert auc_single_threshold(perfect) == 100.0
    assert auc_single_threshold(confusion([0, 1, 0, 1], [1, 1, 0, 0], 2)) == 50.0
    assert auc_single_threshold(confusion([0, 1], [1, 0], 2)) == 0.0


# -- multi-class AUC ----------------------------------------------------------

def _simplex(rng, n, C):
    P = rng.random((n, C)) + 0.05
    return P / P.sum(axis=1, keepdims=True)


def test_two_class_reduces_to_binary():
    rng = np.random.default_rng(3)
    y = np.array([0, 1] * 8)
    P = _simplex(rng, 16, 2)
    ref = roc_auc_binary(y, P[:, 1])
    for scheme in ("ovo", "ovr"):
        for avg in ("macro", "weighted"):
            assert auc_multiclass(y, P, scheme, avg) == ref


def test_perfect_multiclass():
    y = np.array([0, 1, 2] * 4)
    P = np.eye(3)[y] * 0.9 + 0.05
    for scheme in ("ovo", "ovr"):
        for avg in ("macro", "weighted"):
            assert auc_multiclass(y, P, scheme, avg) == 100.0


@pytest.mark.parametrize("seed", range(10))
@pytest.mark.parametrize("scheme", ["ovo", "ovr"])
@pytest.mark.parametrize("average", ["macro", "weighted"])
def test_multiclass_matches_pair_enumeration(seed, scheme, average):
    rng = np.random.default_rng(seed)
    y = np.r_[0, 1, 2, rng.integers(0, 3, 12)]
    P = np.round(_simplex(rng, 15, 3), 2)
    got = auc_multiclass(y, P, scheme, average)
    assert got == pytest.approx(brute_multiclass(y, P, scheme, average), abs=1e-9)


def test_ovo_pair_scores_both_directions():
    # rows 0 and 1 tie in exact arithmetic but not after float division:
    # row 0 outranks row 1 under both p_a/(p_a+p_b) and p_b/(p_a+p_b)
    y = np.array([1, 2, 0])
    P = np.array([[0.7, 0.10000000000000002, 0.20000000000000004],
                  [0.7, 0.1, 0.2], [0.8, 0.1, 0.1]])
    A = P[:, 1] / (P[:, 1] + P[:, 2])
    B = P[:, 2] / (P[:, 1] + P[:, 2])
    assert A[0] > A[1] and B[0] > B[1]
    # A(1|2) = 1, A(2|1) = 0; classes 0-1 and 0-2 are perfect
    expected = 100.0 * (1.0 + 1.0 + 0.5) / 3
    assert auc_multiclass(y, P, "ovo", "macro") == pytest.approx(expected)


def test_multiclass_absent_class():
    y = np.array([0, 1, 0, 1])
    P = np.full((4, 3), 1 / 3)
    with pytest.raises(MetricError):
        auc_multiclass(y, P, "ovr", "macro")
    assert auc_multiclass(y, P, "ovr", "weighted") == 50.0


# -- records ------------------------------------------------------------------

def test_predict_labels_threshold():
    P = np.array([[0.5, 0.5], [0.4, 0.6], [0.2, 0.3]])
    assert predict_labels(P[:2]).tolist() == [0, 1]
    assert predict_labels(np.array([[0.4, 0.4, 0.2]])).tolist() == [0]


def test_constant_predictor_record():
    y = np.array([0] * 9 + [1])
    P = np.tile([1.0, 0.0], (10, 1))
    rec = evaluate(y, P, f1_table="majority").as_dict()
    assert rec["f1"] == 0.0
    assert rec["auc"] == 50.0
    assert rec["accuracy"] == 90.0
    assert rec["f1_table"] == rec["f1_c0"]


def test_single_class_test_records_missing_auc():
    rec = evaluate([0, 0, 0], np.tile([0.7, 0.3], (3, 1)))
    assert np.isnan(rec.auc_binary)
    assert rec.notes


def test_multiclass_record_values_in_range():
    rng = np.random.default_rng(0)
    y = np.r_[0, 1, 2, 3, rng.integers(0, 4, 30)]
    rec = evaluate(y, _simplex(rng, 34, 4)).as_dict()
    assert "auc" not in rec and "auc_ovr_macro" in rec
    assert all(0 <= v <= 100 for v in rec.values())


@pytest.mark.parametrize("n_classes, tag", [(2, None), (2, "majority"),
                                            (2, "minority"), (3, None),
                                            (4, None)])
def test_metric_names_match_record_keys(n_classes, tag):
    y = np.arange(2 * n_classes) % n_classes
    P = np.eye(n_classes)[y]
    rec = evaluate(y, P, f1_table=tag)
    assert list(rec.as_dict()) == metric_names(n_classes, tag)
