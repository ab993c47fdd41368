"""Train-split resamplers: random over/under-sampling, the SMOTE family,
ADASYN and edited-nearest-neighbour cleaning."""

from .base import (DUPLICATE, ORIGINAL, SYNTHETIC, ResampledTrain, deficits,
                   interpolate, largest_remainder)
from .cleaning import edited_nearest_neighbours, enn_mask, smote_enn
from .samplers import (adasyn, adasyn_allocation, borderline_smote,
                       cluster_sparsity, danger_mask, kmeans_smote, ros, rus,
                       smote, svm_smote, svm_support_seeds)
from .spec import (ADASYN, DEFAULTS, LABELS, METHODS, SMOTE, SMOTEENN, SVMSMOTE,
                   AugmenterSpec, BorderlineSMOTE, KMeansSMOTE,
                   RandomOverSampler, RandomUnderSampler, Resampler, augment)

__all__ = [
    "DUPLICATE", "ORIGINAL", "SYNTHETIC", "ResampledTrain", "deficits",
    "interpolate", "largest_remainder", "edited_nearest_neighbours",
    "enn_mask", "smote_enn", "adasyn", "adasyn_allocation",
    "borderline_smote", "cluster_sparsity", "danger_mask", "kmeans_smote",
    "ros", "rus", "smote", "svm_smote", "svm_support_seeds", "ADASYN",
    "DEFAULTS", "LABELS", "METHODS", "SMOTE", "SMOTEENN", "SVMSMOTE",
    "AugmenterSpec", "BorderlineSMOTE", "KMeansSMOTE", "RandomOverSampler",
    "RandomUnderSampler", "Resampler", "augment",
]
