"""From-scratch base learners: CART, random forest, KNN, linear models."""

from .base import MajorityClassifier, ProbabilisticClassifier
from .forest import RandomForestClassifier, fit_forest
from .linear import (LinearModel, LinearSVM, LogisticRegression,
                     fit_linear_svm, fit_logistic, logistic_gradient,
                     logistic_objective, svm_objective)
from .neighbors import KNeighborsClassifier, KNNIndex, knn_query
from .tree import DecisionTreeClassifier, Tree, fit_cart, predict_proba_tree

__all__ = [
    "DecisionTreeClassifier", "KNNIndex", "KNeighborsClassifier",
    "LinearModel", "LinearSVM", "MajorityClassifier", "LogisticRegression", "ProbabilisticClassifier",
    "RandomForestClassifier", "Tree", "fit_cart", "fit_forest",
    "fit_linear_svm", "fit_logistic", "knn_query", "logistic_gradient",
    "logistic_objective", "predict_proba_tree", "svm_objective",
]
