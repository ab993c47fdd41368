"""Rankings of augmenters (model fixed) and models (augmenter fixed) across a
dataset family."""

import math
from dataclasses import dataclass

import numpy as np

from ..ensembles import LABELS as MODEL_LABELS
from ..exceptions import RankError
from ..resampling import LABELS as AUGMENTER_LABELS


@dataclass(frozen=True)
class RankEntry:
    """One bar of a ranking chart: family-mean score and its spread."""

    name: str
    label: str
    mean: float
    error: float
    n_datasets: int
    per_dataset: tuple = ()


def family_datasets(table, family):
    """Datasets of ``table`` whose name starts with the family prefix."""
    prefix = family.lower()
    return [d for d in table.datasets() if d.lower().startswith(prefix)]


def _metric_for(summary, metric):
    """Resolve an F1 name per cell: ``f1_table`` falls back to ``f1`` on
    untagged datasets, and ``f1`` to macro F1 on multi-class ones."""
    if metric in summary.stats:
        return metric
    if metric == "f1_table" and "f1" in summary.stats:
        return "f1"
    if metric in ("f1", "f1_table") and "f1_macro" in summary.stats:
        return "f1_macro"
    return metric


def _rank(table, family, axis, fixed, metric, labels):
    datasets = family_datasets(table, family)
    if not datasets:
        raise RankError(f"no datasets of family {family!r} in the table")
    other = "model" if axis == "augmenter" else "augmenter"
    rows = [s for s in table if s.dataset in datasets
            and getattr(s, other) == fixed]
    if not rows:
        raise RankError(f"no rows with {other} {fixed!r} for family {family!r}")
    candidates = list(dict.fromkeys(getattr(s, axis) for s in rows))
    found = {(s.dataset, getattr(s, axis)): s for s in rows}
    missing = []
    scores = {c: [] for c in candidates}
    for d in datasets:
        for c in candidates:
            s = found.get((d, c))
            stat = None
            if s is not None:
                stat = s.stats.get(_metric_for(s, metric))
            if stat is None or stat.n_ok == 0 or not math.isfinite(stat.mean):
                missing.append(f"{d}/{c}/{fixed}" if axis == "augmenter"
                               else f"{d}/{fixed}/{c}")
            else:
                scores[c].append(stat.mean)
    if missing:
        raise RankError(f"missing {metric} rows for family {family!r}: "
                        f"{', '.join(missing)}")
    entries = [RankEntry(c, labels.get(c, c), float(np.mean(v)),
                         float(np.std(v)), len(v), tuple(v))
               for c, v in scores.items()]
    order = {c: i for i, c in enumerate(candidates)}
    return sorted(entries, key=lambda e: (-e.mean, order[e.name]))


def rank_augmenters(table, family, fixed_model="histgbm", metric="f1"):
    """Augmenters by mean score across the family's datasets, model fixed.

    The error bar is the population std of the per-dataset means.
    """
    return _rank(table, family, "augmenter", fixed_model, metric,
                 AUGMENTER_LABELS)


def rank_models(table, family, augmenter="none", metric="f1"):
    """Models by mean score across the family's datasets, augmenter fixed."""
    return _rank(table, family, "model", augmenter, metric, MODEL_LABELS)
