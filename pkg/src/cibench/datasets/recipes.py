"""Dataset type, recipe transforms and the recipe catalog."""

import configparser
import functools
import os
from dataclasses import dataclass, field

import numpy as np

from ..exceptions import IngestError, MetricError, RecipeError
from .tables import load_table

DATA_DIR = os.path.join(os.path.dirname(__file__), "data")
CATALOG_PATH = os.path.join(DATA_DIR, "catalog.ini")


@dataclass(frozen=True, eq=False)
class Dataset:
    """Labelled feature matrix with class indices ``0..C-1``.

    Arrays are made read-only on construction so a dataset can be shared
    freely between threads and grid cells.
    """

    name: str
    X: np.ndarray
    y: np.ndarray
    class_names: tuple
    positive_class: int = None
    f1_table: str = None
    feature_names: tuple = field(default=())

    def __post_init__(self):
        X = np.ascontiguousarray(self.X, dtype=np.float64)
        y = np.ascontiguousarray(self.y, dtype=np.int64)
        if X.ndim != 2 or len(X) != len(y):
            raise RecipeError(f"{self.name}: X and y disagree in length")
        X.setflags(write=False)
        y.setflags(write=False)
        object.__setattr__(self, "X", X)
        object.__setattr__(self, "y", y)
        object.__setattr__(self, "class_names", tuple(self.class_names))

    @property
    def n_samples(self):
        return self.X.shape[0]

    @property
    def n_features(self):
        return self.X.shape[1]

    @property
    def n_classes(self):
        return len(self.class_names)

    @property
    def is_binary(self):
        return self.n_classes == 2

    def class_counts(self):
        return np.bincount(self.y, minlength=self.n_classes)

    def subset(self, index):
        """Rows ``index`` as a new dataset with the same class layout."""
        index = np.asarray(index, dtype=np.int64)
        return Dataset(self.name, self.X[index], self.y[index],
                       self.class_names, self.positive_class, self.f1_table,
                       self.feature_names)

    def validate(self):
        counts = self.class_counts()
        if len(counts) > self.n_classes or np.any(counts == 0):
            raise RecipeError(f"{self.name}: every class must occur: "
                              f"counts {counts.tolist()}")
        return self


def _label_set(labels):
    return {str(v).strip() for v in labels}


def derive_binary(raw, positive_labels, negative_labels, name,
                  positive_class=None, f1_table=None):
    """Binary dataset from two disjoint label sets of ``raw``.

    ``negative_labels=None`` means every label outside ``positive_labels``.
    Rows in neither set are dropped. Negative rows become class 0 and
    positive rows class 1. ``positive_class`` defaults to the minority.
    """
    labels = np.array([str(v).strip() for v in raw.labels], dtype=object)
    present = set(labels)
    pos = _label_set(positive_labels)
    neg = present - pos if negative_labels is None else _label_set(negative_labels)
    if not pos or not neg:
        raise RecipeError(f"{name}: positive and negative sets must be nonempty")
    if pos & neg:
        raise RecipeError(f"{name}: labels {sorted(pos & neg)} in both sets")
    missing = (pos | neg) - present
    if missing:
        raise RecipeError(f"{name}: labels {sorted(missing)} absent from table")

    is_pos = np.isin(labels, list(pos))
    keep = is_pos | np.isin(labels, list(neg))
    y = is_pos[keep].astype(np.int64)
    counts = np.bincount(y, minlength=2)
    if np.any(counts == 0):
        raise RecipeError(f"{name}: a class is empty after relabelling")
    if positive_class is None:
        positive_class = 1 if counts[1] <= counts[0] else 0
    class_names = ("|".join(sorted(neg)), "|".join(sorted(pos)))
    return Dataset(name, raw.rows[keep], y, class_names, positive_class,
                   f1_table, raw.feature_names)


def bin_rings(raw, edges, name="binned"):
    """Multi-class dataset by binning an integer label into ranges.

    ``edges`` is a sequence of inclusive ``(lo, hi)`` bounds in strictly
    increasing, non-overlapping order. Rows outside every bin are dropped.
    """
    bounds = [(int(lo), int(hi)) for lo, hi in edges]
    for (lo, hi), nxt in zip(bounds, bounds[1:] + [None]):
        if hi < lo or (nxt is not None and nxt[0] <= hi):
            raise RecipeError(f"{name}: bins must be increasing and disjoint")
    try:
        value = np.array([int(float(v)) for v in raw.labels])
    except ValueError as exc:
        raise RecipeError(f"{name}: label column is not integer: {exc}") from None

    y = np.full(len(value), -1, dtype=np.int64)
    for c, (lo, hi) in enumerate(bounds):
        y[(value >= lo) & (value <= hi)] = c
    keep = y >= 0
    y = y[keep]
    counts = np.bincount(y, minlength=len(bounds))
    if np.any(counts == 0):
        empty = [f"{lo}-{hi}" for (lo, hi), n in zip(bounds, counts) if n == 0]
        raise RecipeError(f"{name}: no rows in bins {empty}")
    if len(bounds) < 2:
        raise RecipeError(f"{name}: at least two bins are required")
    class_names = tuple(f"{lo}-{hi}" for lo, hi in bounds)
    return Dataset(name, raw.rows[keep], y, class_names,
                   feature_names=raw.feature_names)


def merge_classes(ds, groups, name=None):
    """Merge groups of class indices into single classes.

    Group ``g`` becomes class ``g``; classes not named in any group are
    dropped together with their rows.
    """
    name = ds.name if name is None else name
    groups = [sorted({int(c) for c in g}) for g in groups]
    if len(groups) < 2:
        raise RecipeError(f"{name}: merging needs at least two groups")
    seen = set()
    for g in groups:
        if not g:
            raise RecipeError(f"{name}: empty group")
        if seen & set(g):
            raise RecipeError(f"{name}: groups overlap on {sorted(seen & set(g))}")
        bad = [c for c in g if not 0 <= c < ds.n_classes]
        if bad:
            raise RecipeError(f"{name}: unknown class indices {bad}")
        seen |= set(g)

    mapping = np.full(ds.n_classes, -1, dtype=np.int64)
    for new, g in enumerate(groups):
        mapping[g] = new
    y = mapping[ds.y]
    keep = y >= 0
    names = tuple("+".join(ds.class_names[c] for c in g) for g in groups)
    out = Dataset(name, ds.X[keep], y[keep], names,
                  feature_names=ds.feature_names)
    return out.validate()


def imbalance_ratio(ds):
    """Majority count divided by minority count of a binary dataset."""
    if not ds.is_binary:
        raise MetricError(f"{ds.name}: imbalance ratio needs a binary dataset, "
                          f"got {ds.n_classes} classes")
    counts = ds.class_counts()
    return float(counts.max() / counts.min())


@dataclass(frozen=True, eq=False)
class Recipe:
    """A named dataset constructor; call it to materialize the dataset."""

    name: str
    family: str
    source: dict
    transform: dict
    aliases: tuple = ()
    f1_table: str = None
    reference: dict = field(default_factory=dict)

    @property
    def is_binary(self):
        return "positive" in self.transform

    def __call__(self):
        raw = _load_source(self.source["path"], self.source["label_column"],
                           self.source["columns"])
        t = self.transform
        if self.is_binary:
            return derive_binary(raw, t["positive"], t["negative"], self.name,
                                 f1_table=self.f1_table).validate()
        ds = bin_rings(raw, t["rings"], self.name)
        if t.get("groups"):
            ds = merge_classes(ds, t["groups"], self.name)
        return ds.validate()

    materialize = __call__


@functools.lru_cache(maxsize=None)
def _load_source(path, label_column, columns):
    return load_table(path, label_column=label_column, feature_names=columns)


def _csv(value):
    return [v.strip() for v in value.split(",") if v.strip()]


def _parse_bins(value):
    bins = []
    for part in _csv(value):
        lo, _, hi = part.partition("-")
        bins.append((int(lo), int(hi)))
    return bins


def _parse_reference(section):
    ref = {}
    for key, value in section.items():
        if not key.startswith("ref_"):
            continue
        key = key[4:]
        if key == "counts":
            ref[key] = [int(v) for v in _csv(value)]
        elif key == "instances":
            ref[key] = int(value)
        else:
            ref[key] = float(value)
    return ref


@functools.lru_cache(maxsize=None)
def _read_catalog(path):
    parser = configparser.ConfigParser(interpolation=None,
                                       inline_comment_prefixes=None)
    parser.optionxform = str
    if not parser.read(path, encoding="utf8"):
        raise IngestError(f"catalog file not found: {path}")
    base = os.path.dirname(path)

    sources = {}
    for sec in parser.sections():
        if sec.startswith("source:"):
            s = parser[sec]
            sources[sec[len("source:"):]] = {
                "path": os.path.join(base, s["file"]),
                "label_column": int(s.get("label_column", "-1")),
                "columns": tuple(_csv(s["columns"])) if "columns" in s else None,
            }

    recipes = []
    for sec in parser.sections():
        if sec.startswith("source:"):
            continue
        s = parser[sec]
        if s.get("source") not in sources:
            raise RecipeError(f"recipe {sec}: unknown source {s.get('source')!r}")
        if "positive" in s:
            neg = s.get("negative", "*").strip()
            transform = {"positive": _csv(s["positive"]),
                         "negative": None if neg == "*" else _csv(neg)}
        elif "rings" in s:
            groups = None
            if "groups" in s:
                groups = [[int(c) - 1 for c in _csv(g)]
                          for g in s["groups"].split("|")]
            transform = {"rings": _parse_bins(s["rings"]), "groups": groups}
        else:
            raise RecipeError(f"recipe {sec}: no transformation given")
        recipes.append(Recipe(
            name=sec,
            family=s.get("family", sec.split("-")[0].lower()),
            source=sources[s["source"]],
            transform=transform,
            aliases=tuple(_csv(s.get("aliases", ""))),
            f1_table=s.get("f1_table"),
            reference=_parse_reference(s),
        ))
    return tuple(recipes)


def catalog(path=None):
    """All registered recipes in catalog order."""
    return list(_read_catalog(os.path.abspath(path or CATALOG_PATH)))


def get_recipe(name, path=None):
    for r in catalog(path):
        if name == r.name or name in r.aliases:
            return r
    raise RecipeError(f"unknown dataset recipe {name!r}")


def load_dataset(name, path=None):
    """Materialize the recipe called ``name``."""
    return get_recipe(name, path)()


def families(path=None):
    out = {}
    for r in catalog(path):
        out.setdefault(r.family, []).append(r.name)
    return out
