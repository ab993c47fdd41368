"""Score one run: probability matrix in, flat metric record out."""

import math
from dataclasses import dataclass, field

import numpy as np

from ..exceptions import MetricError
from .classification import (accuracy, confusion, f1_averaged, f1_per_class,
                             precision_recall_f1)
from .ranking import auc_multiclass, auc_single_threshold, roc_auc_binary

THRESHOLD = 0.5
NAN = float("nan")


def predict_labels(proba, threshold=THRESHOLD):
    """Crisp labels: binary rows go to class 1 iff ``p1 > threshold``;
    wider rows take the argmax (ties to the lowest index)."""
    P = np.asarray(proba, dtype=np.float64)
    if P.shape[1] == 2:
        return (P[:, 1] > threshold).astype(np.int64)
    return np.argmax(P, axis=1)


@dataclass(frozen=True)
class MetricsRecord:
    """Percent-valued scores of one evaluated run.

    AUC fields hold NaN when the test rows cannot support them (a single
    class present, or a class missing under macro averaging).
    ``f1_table`` selects which per-class F1 a published table reports
    ("minority" or "majority"); ``f1`` is always the positive class.
    """

    accuracy: float
    f1_per_class: tuple
    f1_macro: float
    f1_micro: float
    f1_weighted: float
    auc_binary: float = NAN
    auc_threshold: float = NAN
    auc_ovo_macro: float = NAN
    auc_ovo_weighted: float = NAN
    auc_ovr_macro: float = NAN
    auc_ovr_weighted: float = NAN
    positive_class: int = 1
    threshold: float = THRESHOLD
    f1_table: str = None
    notes: tuple = field(default=())

    @property
    def n_classes(self):
        return len(self.f1_per_class)

    @property
    def f1(self):
        return self.f1_per_class[self.positive_class]

    def as_dict(self):
        """Flat ``name -> value`` map used by the harness."""
        out = {"accuracy": self.accuracy}
        if self.n_classes == 2:
            out["f1"] = self.f1
            neg = 1 - self.positive_class
            if self.f1_table == "majority":
                out["f1_table"] = self.f1_per_class[neg]
            elif self.f1_table == "minority":
                out["f1_table"] = self.f1_per_class[self.positive_class]
        for c, v in enumerate(self.f1_per_class):
            out[f"f1_c{c}"] = v
        out["f1_macro"] = self.f1_macro
        out["f1_micro"] = self.f1_micro
        out["f1_weighted"] = self.f1_weighted
        if self.n_classes == 2:
            out["auc"] = self.auc_binary
            out["auc_threshold"] = self.auc_threshold
        else:
            out["auc_ovo_macro"] = self.auc_ovo_macro
            out["auc_ovo_weighted"] = self.auc_ovo_weighted
            out["auc_ovr_macro"] = self.auc_ovr_macro
            out["auc_ovr_weighted"] = self.auc_ovr_weighted
        return out


def metric_names(n_classes, f1_table=None):
    """Keys of :meth:`MetricsRecord.as_dict` for a given class count."""
    names = ["accuracy"]
    if n_classes == 2:
        names.append("f1")
        if f1_table in ("majority", "minority"):
            names.append("f1_table")
    names += [f"f1_c{c}" for c in range(n_classes)]
    names += ["f1_macro", "f1_micro", "f1_weighted"]
    if n_classes == 2:
        names += ["auc", "auc_threshold"]
    else:
        names += [f"auc_{s}_{a}" for s in ("ovo", "ovr")
                  for a in ("macro", "weighted")]
    return names


def _guarded(fn, notes, *args):
    try:
        return fn(*args)
    except MetricError as exc:
        notes.append(str(exc))
        return NAN


def evaluate(y_true, proba, positive_class=1, f1_table=None,
             threshold=THRESHOLD):
    """Score a probability matrix against true class indices."""
    P = np.asarray(proba, dtype=np.float64)
    y = np.asarray(y_true, dtype=np.int64).ravel()
    if P.ndim != 2 or len(P) != len(y):
        raise MetricError("proba must be an (n_rows, n_classes) matrix "
                          "aligned with y_true")
    C = P.shape[1]
    counts = confusion(y, predict_labels(P, threshold), C, positive_class)
    notes = []
    kw = dict(
        accuracy=accuracy(counts),
        f1_per_class=tuple(float(v) for v in f1_per_class(counts)),
        f1_macro=f1_averaged(counts, "macro"),
        f1_micro=f1_averaged(counts, "micro"),
        f1_weighted=f1_averaged(counts, "weighted"),
        positive_class=positive_class, threshold=threshold,
        f1_table=f1_table)
    if C == 2:
        kw["auc_binary"] = _guarded(roc_auc_binary, notes, y == positive_class,
                                    P[:, positive_class])
        kw["auc_threshold"] = auc_single_threshold(counts)
    else:
        for scheme in ("ovo", "ovr"):
            for avg in ("macro", "weighted"):
                kw[f"auc_{scheme}_{avg}"] = _guarded(auc_multiclass, notes, y,
                                                     P, scheme, avg)
    return MetricsRecord(notes=tuple(notes), **kw)


def is_missing(value):
    return value is None or (isinstance(value, float) and math.isnan(value))
