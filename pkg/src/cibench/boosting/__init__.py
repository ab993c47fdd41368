"""Boosting learners: AdaBoost, gradient boosting, second-order and
histogram tree boosting."""

from .adaboost import AdaBoostClassifier, fit_adaboost, stump_influence
from .base import BoostedTrees, log_loss, sigmoid
from .gbm import GradientBoostingClassifier, fit_gbm, pseudo_residual
from .hist import (HistGradientBoostingClassifier, apply_bins, bin_edges,
                   fit_histgbm, goss_sample)
from .xgb import XGBClassifier, fit_xgbm, leaf_weight, structure_score

__all__ = [
    "AdaBoostClassifier", "BoostedTrees", "GradientBoostingClassifier",
    "HistGradientBoostingClassifier", "XGBClassifier", "apply_bins",
    "bin_edges", "fit_adaboost", "fit_gbm", "fit_histgbm", "fit_xgbm",
    "goss_sample", "leaf_weight", "log_loss", "pseudo_residual", "sigmoid",
    "structure_score", "stump_influence",
]
