"""Model identifiers, default parameters and construction."""

from dataclasses import dataclass, field

from .._validation import derive_seed
from ..boosting import (AdaBoostClassifier, GradientBoostingClassifier,
                        HistGradientBoostingClassifier, XGBClassifier)
from ..exceptions import ConfigError
from ..learners import (DecisionTreeClassifier, KNeighborsClassifier,
                        LogisticRegression, MajorityClassifier,
                        RandomForestClassifier)
from .stacking import StackingClassifier
from .voting import VotingClassifier

_BASE = {
    "majority": (MajorityClassifier, {}),
    "cart": (DecisionTreeClassifier, {"max_depth": None,
                                      "min_samples_leaf": 1}),
    "forest": (RandomForestClassifier, {"n_estimators": 100,
                                        "max_depth": None}),
    "knn": (KNeighborsClassifier, {"n_neighbors": 5}),
    "logistic": (LogisticRegression, {"l2": 1.0, "max_iter": 1000}),
    "adaboost": (AdaBoostClassifier, {"n_estimators": 50,
                                      "learning_rate": 1.0}),
    "gbm": (GradientBoostingClassifier, {"n_estimators": 100,
                                         "learning_rate": 0.1, "max_depth": 3,
                                         "min_samples_split": 2,
                                         "min_samples_leaf": 1}),
    "xgbm": (XGBClassifier, {"n_estimators": 100, "learning_rate": 0.3,
                             "gamma": 0.0, "max_depth": 6,
                             "min_child_weight": 1.0, "reg_lambda": 1.0}),
    "histgbm": (HistGradientBoostingClassifier, {"n_estimators": 100,
                                                 "learning_rate": 0.1,
                                                 "max_depth": -1,
                                                 "min_data_in_leaf": 20,
                                                 "num_leaves": 31}),
}

POOLS = {
    "i": ("cart", "forest", "knn", "xgbm"),
    "ii": ("forest", "xgbm"),
}

_ENSEMBLE = {
    "voting_i_hard": ("voting", "i", {"voting": "hard"}),
    "voting_i_soft": ("voting", "i", {"voting": "soft"}),
    "voting_ii_hard": ("voting", "ii", {"voting": "hard"}),
    "voting_ii_soft": ("voting", "ii", {"voting": "soft"}),
    "stacking_i": ("stacking", "i", {"n_folds": 5}),
    "stacking_ii": ("stacking", "ii", {"n_folds": 5}),
}

KINDS = tuple(_BASE) + tuple(_ENSEMBLE)

# the nine learners of the published result tables; the unlabelled voting
# rows map to the larger pool
PAPER_MODELS = ("forest", "adaboost", "gbm", "xgbm", "histgbm", "stacking_i",
                "stacking_ii", "voting_i_hard", "voting_i_soft")

LABELS = {
    "majority": "Majority", "cart": "Decision Tree", "forest": "Random Forest",
    "knn": "KNN", "logistic": "Logistic Regression", "adaboost": "AdaBoost",
    "gbm": "Gradient Boosting", "xgbm": "XGBoost", "histgbm": "LightGBM",
    "voting_i_hard": "Voting-Hard", "voting_i_soft": "Voting-Soft",
    "voting_ii_hard": "Voting-II-Hard", "voting_ii_soft": "Voting-II-Soft",
    "stacking_i": "Stacking-I", "stacking_ii": "Stacking-II",
}


def defaults(kind):
    if kind in _BASE:
        return dict(_BASE[kind][1])
    return dict(_ENSEMBLE[kind][2])


def _seeded(cls, params, seed):
    if "random_state" in cls().get_params():
        params = {**params, "random_state": seed}
    return cls(**params)


@dataclass(frozen=True)
class ModelSpec:
    """A learner identifier and its parameters; ``build`` returns an unfit
    estimator whose randomness derives from the given seed."""

    kind: str
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ConfigError(f"unknown model {self.kind!r}; choose from "
                              f"{', '.join(KINDS)}")
        base = defaults(self.kind)
        if self.kind in _BASE:
            allowed = set(_BASE[self.kind][0]().get_params()) - {"random_state"}
        else:
            allowed = set(base)
        unknown = set(self.params) - allowed
        if unknown:
            raise ConfigError(f"{self.kind} does not accept "
                              f"{', '.join(sorted(unknown))}")
        object.__setattr__(self, "params", {**base, **self.params})

    @property
    def label(self):
        return LABELS[self.kind]

    @property
    def pool(self):
        if self.kind in _ENSEMBLE:
            return tuple(ModelSpec(k) for k in POOLS[_ENSEMBLE[self.kind][1]])
        return ()

    def build(self, seed=0):
        if self.kind in _BASE:
            return _seeded(_BASE[self.kind][0], self.params, seed)
        family = _ENSEMBLE[self.kind][0]
        members = [(m.kind, m.build(derive_seed("member", seed, m.kind)))
                   for m in self.pool]
        if family == "voting":
            return VotingClassifier(members, voting=self.params["voting"])
        return StackingClassifier(members, n_folds=self.params["n_folds"],
                                  random_state=seed)
