"""Augmenter identifiers, their default parameters and a uniform entry point."""

from dataclasses import dataclass, field

import numpy as np
from sklearn.base import BaseEstimator

from ..exceptions import ConfigError
from .base import _Builder, check_train
from .cleaning import smote_enn
from .samplers import (adasyn, borderline_smote, kmeans_smote, ros, rus,
                       smote, svm_smote)


def _identity(X, y, seed=0):
    X, y, _ = check_train(X, y)
    return _Builder(X, y).build("none")


def _ctgan(X, y, seed=0, **params):
    from ..gan import GanConfig, ctgan_augment
    return ctgan_augment(X, y, GanConfig(**params), seed)


DEFAULTS = {
    "none": {},
    "ros": {},
    "rus": {},
    "smote": {"k_neighbors": 5},
    "smote_enn": {"k_neighbors": 5, "enn_neighbors": 3},
    "borderline_smote": {"k_neighbors": 5, "m_neighbors": 10},
    "svm_smote": {"k_neighbors": 5, "m_neighbors": 10, "out_step": 0.5,
                  "C": 1.0},
    "kmeans_smote": {"k_neighbors": 2, "n_clusters": 8,
                     "cluster_balance_threshold": 0.5},
    "adasyn": {"n_neighbors": 5},
    "ctgan": {"noise_dim": 16, "epochs": 1000, "batch_size": 64,
              "learning_rate": 1e-3},
}

_FUNCS = {
    "none": _identity, "ros": ros, "rus": rus, "smote": smote,
    "smote_enn": smote_enn, "borderline_smote": borderline_smote,
    "svm_smote": svm_smote, "kmeans_smote": kmeans_smote, "adasyn": adasyn,
    "ctgan": _ctgan,
}

METHODS = tuple(DEFAULTS)

# display names used in reports
LABELS = {
    "none": "None", "ros": "ROS", "rus": "RUS", "smote": "SMOTE",
    "smote_enn": "SMOTE-ENN", "borderline_smote": "Borderline-SMOTE",
    "svm_smote": "SVM-SMOTE", "kmeans_smote": "K-means SMOTE",
    "adasyn": "ADASYN", "ctgan": "CT-GAN",
}


def _coerce(value, default):
    if isinstance(default, bool) or default is None:
        return value
    if isinstance(default, int):
        if float(value) != int(float(value)):
            raise ConfigError(f"expected an integer, got {value!r}")
        return int(float(value))
    if isinstance(default, float):
        return float(value)
    return value


@dataclass(frozen=True)
class AugmenterSpec:
    """A resampling method, its parameters and its seed."""

    method: str
    params: dict = field(default_factory=dict)
    seed: int = 0

    def __post_init__(self):
        if self.method not in DEFAULTS:
            raise ConfigError(f"unknown augmenter {self.method!r}; "
                              f"choose from {', '.join(METHODS)}")
        defaults = DEFAULTS[self.method]
        unknown = set(self.params) - set(defaults)
        if unknown:
            raise ConfigError(f"{self.method} does not accept "
                              f"{', '.join(sorted(unknown))}")
        merged = dict(defaults)
        try:
            merged.update({k: _coerce(v, defaults[k])
                           for k, v in self.params.items()})
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"{self.method}: {exc}") from None
        object.__setattr__(self, "params", merged)

    @property
    def label(self):
        return LABELS[self.method]

    def with_seed(self, seed):
        return AugmenterSpec(self.method, dict(self.params), seed)

    def apply(self, X, y):
        return _FUNCS[self.method](X, y, seed=self.seed, **self.params)


def augment(spec, X, y):
    return spec.apply(X, y)


class Resampler(BaseEstimator):
    """``fit_resample`` wrapper around one augmenter method."""

    method = None

    def _spec(self):
        params = {k: v for k, v in self.get_params().items()
                  if k != "random_state"}
        return AugmenterSpec(self.method, params, self.random_state)

    def fit_resample(self, X, y):
        self.result_ = self._spec().apply(X, np.asarray(y))
        return self.result_.X, self.result_.y


class RandomOverSampler(Resampler):
    method = "ros"

    def __init__(self, random_state=0):
        self.random_state = random_state


class RandomUnderSampler(Resampler):
    method = "rus"

    def __init__(self, random_state=0):
        self.random_state = random_state


class SMOTE(Resampler):
    method = "smote"

    def __init__(self, k_neighbors=5, random_state=0):
        self.k_neighbors = k_neighbors
        self.random_state = random_state


class SMOTEENN(Resampler):
    method = "smote_enn"

    def __init__(self, k_neighbors=5, enn_neighbors=3, random_state=0):
        self.k_neighbors = k_neighbors
        self.enn_neighbors = enn_neighbors
        self.random_state = random_state


class BorderlineSMOTE(Resampler):
    method = "borderline_smote"

    def __init__(self, k_neighbors=5, m_neighbors=10, random_state=0):
        self.k_neighbors = k_neighbors
        self.m_neighbors = m_neighbors
        self.random_state = random_state


class SVMSMOTE(Resampler):
    method = "svm_smote"

    def __init__(self, k_neighbors=5, m_neighbors=10, out_step=0.5, C=1.0,
                 random_state=0):
        self.k_neighbors = k_neighbors
        self.m_neighbors = m_neighbors
        self.out_step = out_step
        self.C = C
        self.random_state = random_state


class KMeansSMOTE(Resampler):
    method = "kmeans_smote"

    def __init__(self, k_neighbors=2, n_clusters=8,
                 cluster_balance_threshold=0.5, random_state=0):
        self.k_neighbors = k_neighbors
        self.n_clusters = n_clusters
        self.cluster_balance_threshold = cluster_balance_threshold
        self.random_state = random_state


class ADASYN(Resampler):
    method = "adasyn"

    def __init__(self, n_neighbors=5, random_state=0):
        self.n_neighbors = n_neighbors
        self.random_state = random_state
