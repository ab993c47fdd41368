"""Evaluation metrics: confusion-based scores, ROC-AUC variants and run
records. All values are percentages."""

from .classification import (ConfusionCounts, accuracy, confusion,
                             f1_averaged, f1_per_class, precision_recall_f1)
from .ranking import auc_multiclass, auc_single_threshold, roc_auc_binary
from .record import (THRESHOLD, MetricsRecord, evaluate, is_missing,
                     metric_names, predict_labels)

__all__ = [
    "ConfusionCounts", "accuracy", "confusion", "f1_averaged", "f1_per_class",
    "precision_recall_f1", "auc_multiclass", "auc_single_threshold",
    "roc_auc_binary", "THRESHOLD", "MetricsRecord", "evaluate", "is_missing",
    "metric_names", "predict_labels",
]
