"""Voting and stacking meta-ensembles plus the model registry."""

from .registry import KINDS, LABELS, PAPER_MODELS, POOLS, ModelSpec, defaults
from .stacking import (StackingClassifier, fit_stacking, make_folds,
                       predict_stacking)
from .voting import VotingClassifier, hard_vote, soft_vote

__all__ = [
    "KINDS", "LABELS", "PAPER_MODELS", "POOLS", "ModelSpec", "defaults",
    "StackingClassifier", "fit_stacking", "make_folds", "predict_stacking",
    "VotingClassifier", "hard_vote", "soft_vote",
]
