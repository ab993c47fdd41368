"""Grid-cell execution and aggregation over seeded runs."""

import json
import math
import os
import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .._validation import derive_seed
from ..datasets import Dataset, Recipe, get_recipe, split
from ..ensembles import ModelSpec
from ..exceptions import CellError, CIBenchError, ReportIOError
from ..metrics import evaluate, metric_names
from ..resampling import AugmenterSpec

# failures that cost a run but not the grid
RUN_ERRORS = (CIBenchError, ValueError, ArithmeticError, np.linalg.LinAlgError)


def split_seed(base_seed, dataset, run):
    """Seed of run ``run``'s train/test split on ``dataset``.

    Every grid cell on the same dataset sees the same splits, so cells are
    compared on paired data.
    """
    return derive_seed("split", int(base_seed), dataset, int(run))


@dataclass(frozen=True)
class MetricStat:
    mean: float
    best: float
    std: float
    n_ok: int
    n_err: int


@dataclass(frozen=True)
class RunRecord:
    """Outcome of one run: metric values or the error that ended it."""

    run: int
    seed: int
    metrics: dict = field(default_factory=dict)
    error: str = None
    notes: tuple = ()
    info: dict = field(default_factory=dict)

    def to_json(self):
        return {"run": self.run, "seed": self.seed, "metrics": self.metrics,
                "error": self.error, "notes": list(self.notes),
                "info": self.info}

    @classmethod
    def from_json(cls, obj):
        return cls(obj["run"], obj["seed"], dict(obj["metrics"]),
                   obj.get("error"), tuple(obj.get("notes", ())),
                   dict(obj.get("info", {})))


def aggregate(records, names):
    """Per-metric mean, best (max) and population std over the runs that
    produced a finite value."""
    out = {}
    n = len(records)
    for name in names:
        vals = np.array([r.metrics[name] for r in records
                         if r.error is None and name in r.metrics
                         and math.isfinite(r.metrics[name])])
        if len(vals):
            stat = MetricStat(float(np.mean(vals)), float(np.max(vals)),
                              float(np.std(vals)), len(vals), n - len(vals))
        else:
            stat = MetricStat(math.nan, math.nan, math.nan, 0, n)
        out[name] = stat
    return out


@dataclass(frozen=True, eq=False)
class RunSummary:
    """Aggregated scores of one grid cell."""

    dataset: str
    augmenter: str
    model: str
    stats: dict
    n_runs: int
    errors: tuple = ()
    seeds: tuple = ()
    runs: tuple = ()
    cell_error: str = None

    @property
    def key(self):
        return (self.dataset, self.augmenter, self.model)

    @property
    def ok(self):
        return self.cell_error is None

    @property
    def n_errors(self):
        return self.stats["accuracy"].n_err if "accuracy" in self.stats else 0

    def metric(self, name):
        return self.stats[name]

    def raise_for_error(self):
        if self.cell_error is not None:
            raise CellError(self.cell_error)


def _fmt(value):
    return "nan" if not math.isfinite(value) else f"{value:.3f}"


@dataclass(eq=False)
class ResultTable:
    """One summary per grid cell plus the provenance needed to rerun it."""

    summaries: list
    provenance: dict = field(default_factory=dict)

    def __len__(self):
        return len(self.summaries)

    def __iter__(self):
        return iter(self.summaries)

    def rows(self):
        """Flat (cell, metric) rows as printed in reports: three decimals."""
        out = []
        for s in self.summaries:
            for name, st in s.stats.items():
                out.append((s.dataset, s.augmenter, s.model, name,
                            _fmt(st.mean), _fmt(st.best), _fmt(st.std),
                            st.n_ok, st.n_err))
        return out

    def __eq__(self, other):
        if not isinstance(other, ResultTable):
            return NotImplemented
        return self.rows() == other.rows()

    def get(self, dataset, augmenter, model):
        for s in self.summaries:
            if s.key == (dataset, augmenter, model):
                return s
        raise KeyError((dataset, augmenter, model))

    def datasets(self):
        return list(dict.fromkeys(s.dataset for s in self.summaries))

    def augmenters(self, dataset=None):
        return list(dict.fromkeys(s.augmenter for s in self.summaries
                                  if dataset is None or s.dataset == dataset))

    def models(self, dataset=None):
        return list(dict.fromkeys(s.model for s in self.summaries
                                  if dataset is None or s.dataset == dataset))

    def select(self, dataset=None, augmenter=None, model=None):
        return [s for s in self.summaries
                if (dataset is None or s.dataset == dataset)
                and (augmenter is None or s.augmenter == augmenter)
                and (model is None or s.model == model)]

    def best(self, dataset, metric):
        """Cell with the highest mean ``metric`` on ``dataset``."""
        cells = [s for s in self.select(dataset) if metric in s.stats
                 and math.isfinite(s.stats[metric].mean)]
        if not cells:
            raise KeyError((dataset, metric))
        return max(cells, key=lambda s: s.stats[metric].mean)

    @property
    def failed(self):
        return [s for s in self.summaries if not s.ok]


def _dataset(source):
    if isinstance(source, Dataset):
        return source
    if isinstance(source, Recipe):
        return source()
    return get_recipe(source)()


def _full_proba(model, X, n_classes):
    P = np.asarray(model.predict_proba(X), dtype=np.float64)
    classes = np.asarray(model.classes_, dtype=np.int64)
    if P.shape[1] == n_classes and np.array_equal(classes, np.arange(n_classes)):
        return P
    full = np.zeros((len(P), n_classes))
    full[:, classes] = P
    return full


def run_once(ds, augmenter, model, seed, train_fraction=0.6):
    """Split, augment the train part, fit, and score the test part."""
    pair = split(ds, train_fraction, seed)
    aug = augmenter.with_seed(derive_seed("augment", seed, augmenter.method))
    res = aug.apply(pair.train.X, pair.train.y)
    est = model.build(derive_seed("model", seed, model.kind))
    est.fit(res.X, res.y)
    P = _full_proba(est, pair.test.X, ds.n_classes)
    positive = 1 if ds.positive_class is None else ds.positive_class
    rec = evaluate(pair.test.y, P, positive_class=positive,
                   f1_table=ds.f1_table)
    return rec, res, pair


def cell_id(dataset, augmenter, model):
    return re.sub(r"[^A-Za-z0-9_.-]+", "_", f"{dataset}__{augmenter}__{model}")


def run_cell(dataset, augmenter, model, n_runs=30, base_seed=0,
             train_fraction=0.6, record_dir=None):
    """Execute ``n_runs`` seeded runs of one grid cell and aggregate them.

    Runs that raise are recorded with their message and left out of the
    aggregates. When every run fails the summary carries a cell error
    instead of raising. With ``record_dir`` the per-run records are written
    to one JSON file for the cell.
    """
    ds = _dataset(dataset)
    if not isinstance(augmenter, AugmenterSpec):
        augmenter = AugmenterSpec(augmenter)
    if not isinstance(model, ModelSpec):
        model = ModelSpec(model)
    names = metric_names(ds.n_classes, ds.f1_table)
    records = []
    for r in range(int(n_runs)):
        seed = split_seed(base_seed, ds.name, r)
        try:
            rec, res, pair = run_once(ds, augmenter, model, seed,
                                      train_fraction)
        except RUN_ERRORS as exc:
            records.append(RunRecord(r, seed, {},
                                     f"{type(exc).__name__}: {exc}"))
            continue
        info = {"train_counts": res.class_counts().tolist(),
                "test_rows": int(pair.test.n_samples)}
        if res.info.get("loss_trace") is not None:
            trace = np.asarray(res.info["loss_trace"])
            info.update(loss_epochs=len(trace),
                        losses_finite=bool(np.all(np.isfinite(trace))),
                        restarts=int(res.info.get("restarts", 0)))
        records.append(RunRecord(r, seed, rec.as_dict(), None, rec.notes,
                                 info))
    errors = tuple(f"run {r.run}: {r.error}" for r in records if r.error)
    cell_error = None
    if len(errors) == len(records):
        cell_error = (f"{ds.name} / {augmenter.method} / {model.kind}: all "
                      f"{len(records)} runs failed; first: {errors[0]}")
    summary = RunSummary(ds.name, augmenter.method, model.kind,
                         aggregate(records, names), len(records), errors,
                         tuple(r.seed for r in records), tuple(records),
                         cell_error)
    if record_dir is not None:
        write_records(summary, record_dir)
    return summary


def write_records(summary, record_dir):
    path = os.path.join(record_dir, cell_id(*summary.key) + ".json")
    payload = {"dataset": summary.dataset, "augmenter": summary.augmenter,
               "model": summary.model,
               "runs": [r.to_json() for r in summary.runs]}
    try:
        os.makedirs(record_dir, exist_ok=True)
        with open(path, "w", encoding="utf8") as fh:
            json.dump(payload, fh, indent=1, sort_keys=True)
    except OSError as exc:
        raise ReportIOError(f"cannot write run records to {path}: "
                            f"{exc.strerror}") from None
    return path


def read_records(path):
    """Per-run records of one cell as written by :func:`write_records`."""
    with open(path, encoding="utf8") as fh:
        payload = json.load(fh)
    return [RunRecord.from_json(r) for r in payload["runs"]]


def sort_summaries(summaries, dataset_order=None):
    """Group by dataset, best mean accuracy first; failed cells last."""
    order = dataset_order or list(dict.fromkeys(s.dataset for s in summaries))
    pos = {s.key: i for i, s in enumerate(summaries)}

    def key(s):
        acc = s.stats.get("accuracy")
        m = acc.mean if acc is not None and math.isfinite(acc.mean) else -math.inf
        return (order.index(s.dataset), -m, pos[s.key])

    return sorted(summaries, key=key)


def run_grid(config, n_jobs=None, record_dir=None, progress=None):
    """Run every cell of ``config``; cells execute on a thread pool.

    Each cell's seeds come from its identity, so the table does not depend
    on ``n_jobs`` or on completion order. ``progress`` is called with each
    finished summary.
    """
    datasets = {name: get_recipe(name)() for name in config.datasets}
    cells = config.cells()

    def work(cell):
        d, a, m = cell
        s = run_cell(datasets[d], a, m, config.n_runs, config.base_seed,
                     config.train_fraction, record_dir)
        if progress is not None:
            progress(s)
        return s

    jobs = int(n_jobs or config.n_jobs)
    if jobs == 1:
        summaries = [work(c) for c in cells]
    else:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            summaries = list(pool.map(work, cells))
    provenance = {
        "config_hash": config.digest(),
        "base_seed": config.base_seed,
        "n_runs": config.n_runs,
        "train_fraction": float(config.train_fraction),
        "seeds": {d: [split_seed(config.base_seed, d, r)
                      for r in range(config.n_runs)] for d in config.datasets},
    }
    return ResultTable(sort_summaries(summaries, list(config.datasets)),
                       provenance)
