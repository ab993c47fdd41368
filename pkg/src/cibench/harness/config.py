"""Grid configuration: which datasets, augmenters and models to cross, and
how many seeded runs each cell gets."""

import ast
import configparser
import fnmatch
import hashlib
import os
from dataclasses import dataclass, field, replace

from ..datasets import catalog
from ..ensembles import PAPER_MODELS, ModelSpec
from ..exceptions import CIBenchError, ConfigError
from ..resampling import METHODS, AugmenterSpec

DEFAULT_CONFIG = os.path.join(os.path.dirname(__file__), "grid.ini")

_RUN_KEYS = {"n_runs", "base_seed", "train_fraction", "out", "skip_ctgan",
             "n_jobs"}


def _literal(text):
    """INI value to a Python scalar: numbers, booleans and ``none`` are
    recognised, anything else stays a string."""
    low = text.strip().lower()
    if low in ("true", "yes", "on"):
        return True
    if low in ("false", "no", "off"):
        return False
    if low in ("none", "null"):
        return None
    try:
        return ast.literal_eval(text.strip())
    except (ValueError, SyntaxError):
        return text.strip()


def _names(text):
    return [v.strip() for v in text.replace("\n", ",").split(",") if v.strip()]


def select_datasets(patterns, recipes=None):
    """Catalog names matching any of ``patterns``.

    A pattern is a shell-style glob (case-insensitive), an exact name or
    alias, or ``family:<name>``. Result keeps catalog order.
    """
    recipes = catalog() if recipes is None else recipes
    chosen = []
    for pat in patterns:
        hits = []
        for r in recipes:
            if pat.lower().startswith("family:"):
                ok = r.family == pat.split(":", 1)[1].strip().lower()
            else:
                names = (r.name,) + r.aliases
                ok = any(fnmatch.fnmatch(n.lower(), pat.lower()) for n in names)
            if ok:
                hits.append(r.name)
        if not hits:
            raise ConfigError(f"dataset pattern {pat!r} matches no recipe")
        chosen.extend(hits)
    order = [r.name for r in recipes]
    return tuple(sorted(set(chosen), key=order.index))


def _keyed_params(section, known, what):
    """Split ``<id>.<param> = value`` keys of a section by identifier."""
    params = {}
    for key, value in section.items():
        if "." not in key:
            continue
        ident, _, name = key.partition(".")
        if ident not in known:
            raise ConfigError(f"[{what}] parameter {key!r} names unknown "
                              f"{what[:-1]} {ident!r}")
        params.setdefault(ident, {})[name] = _literal(value)
    return params


@dataclass(frozen=True)
class GridConfig:
    """The (dataset x augmenter x model) grid and its run settings."""

    datasets: tuple
    augmenters: tuple
    models: tuple
    n_runs: int = 30
    base_seed: int = 0
    train_fraction: float = 0.6
    out_dir: str = "results"
    skip_ctgan: bool = False
    n_jobs: int = 1
    extra: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if int(self.n_runs) < 1:
            raise ConfigError(f"n_runs must be at least 1, got {self.n_runs}")
        if int(self.n_jobs) < 1:
            raise ConfigError(f"n_jobs must be at least 1, got {self.n_jobs}")
        if not 0.0 < float(self.train_fraction) < 1.0:
            raise ConfigError("train_fraction must lie in (0, 1)")
        known = {r.name for r in catalog()}
        missing = [d for d in self.datasets if d not in known]
        if missing:
            raise ConfigError(f"unknown dataset recipes: {', '.join(missing)}")
        for name, items in (("datasets", self.datasets),
                            ("augmenters", self.augmenters),
                            ("models", self.models)):
            if not items:
                raise ConfigError(f"the grid has no {name}")
        object.__setattr__(self, "datasets", tuple(self.datasets))
        object.__setattr__(self, "augmenters", tuple(
            a if isinstance(a, AugmenterSpec) else AugmenterSpec(a)
            for a in self.augmenters))
        object.__setattr__(self, "models", tuple(
            m if isinstance(m, ModelSpec) else ModelSpec(m)
            for m in self.models))
        object.__setattr__(self, "n_runs", int(self.n_runs))
        object.__setattr__(self, "n_jobs", int(self.n_jobs))
        object.__setattr__(self, "base_seed", int(self.base_seed))

    @property
    def active_augmenters(self):
        if self.skip_ctgan:
            return tuple(a for a in self.augmenters if a.method != "ctgan")
        return self.augmenters

    def cells(self):
        """Every (dataset, augmenter, model) triple in grid order."""
        return [(d, a, m) for d in self.datasets
                for a in self.active_augmenters for m in self.models]

    def canonical(self):
        """Stable text form of everything that affects results."""
        parts = [f"datasets={','.join(self.datasets)}"]
        for a in self.active_augmenters:
            parts.append(f"augmenter={a.method}:{sorted(a.params.items())}")
        for m in self.models:
            parts.append(f"model={m.kind}:{sorted(m.params.items())}")
        parts.append(f"n_runs={self.n_runs};base_seed={self.base_seed};"
                     f"train_fraction={float(self.train_fraction)!r}")
        return "\n".join(parts)

    def digest(self):
        return hashlib.blake2b(self.canonical().encode("utf8"),
                               digest_size=8).hexdigest()

    def override(self, n_runs=None, datasets=None, skip_ctgan=None,
                 out_dir=None, n_jobs=None):
        """Copy with reduced-scale settings applied; ``datasets`` is a list
        of patterns filtered against the configured datasets."""
        changes = {}
        if n_runs is not None:
            changes["n_runs"] = n_runs
        if datasets:
            recipes = [r for r in catalog() if r.name in self.datasets]
            changes["datasets"] = select_datasets(datasets, recipes)
        if skip_ctgan:
            changes["skip_ctgan"] = True
        if out_dir is not None:
            changes["out_dir"] = out_dir
        if n_jobs is not None:
            changes["n_jobs"] = n_jobs
        return replace(self, **changes)


def parse_config(text, source="<config>"):
    """Build a :class:`GridConfig` from INI text.

    Sections: ``[datasets] names``, ``[augmenters] methods`` with optional
    ``<method>.<param>`` keys, ``[models] kinds`` with ``<kind>.<param>``
    keys, and ``[run]`` settings.
    """
    parser = configparser.ConfigParser(interpolation=None,
                                       inline_comment_prefixes=("#", ";"))
    parser.optionxform = str
    try:
        parser.read_string(text, source=source)
    except configparser.Error as exc:
        raise ConfigError(f"{source}: {exc}") from None
    for sec in ("datasets", "augmenters", "models"):
        if not parser.has_section(sec):
            raise ConfigError(f"{source}: missing [{sec}] section")
    unknown = set(parser.sections()) - {"datasets", "augmenters", "models",
                                        "run"}
    if unknown:
        raise ConfigError(f"{source}: unknown sections {sorted(unknown)}")
    try:
        datasets = select_datasets(_names(parser["datasets"].get("names", "*")))
        aug = parser["augmenters"]
        methods = _names(aug.get("methods", ",".join(METHODS)))
        aug_params = _keyed_params(aug, set(METHODS), "augmenters")
        augmenters = [AugmenterSpec(m, aug_params.get(m, {})) for m in methods]
        mod = parser["models"]
        kinds = _names(mod.get("kinds", ",".join(PAPER_MODELS)))
        model_params = _keyed_params(mod, set(kinds), "models")
        models = [ModelSpec(k, model_params.get(k, {})) for k in kinds]
        run = dict(parser["run"]) if parser.has_section("run") else {}
        bad = set(run) - _RUN_KEYS
        if bad:
            raise ConfigError(f"[run] does not accept {sorted(bad)}")
        run = {k: _literal(v) for k, v in run.items()}
        if "out" in run:
            run["out_dir"] = str(run.pop("out"))
        return GridConfig(datasets, tuple(augmenters), tuple(models), **run)
    except ConfigError as exc:
        raise ConfigError(f"{source}: {exc}") from None
    except (CIBenchError, TypeError, ValueError) as exc:
        raise ConfigError(f"{source}: {exc}") from None


def load_config(path=None):
    path = path or DEFAULT_CONFIG
    try:
        with open(path, encoding="utf8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc.strerror}") from None
    return parse_config(text, source=path)
