"""Delimited-text ingestion into :class:`RawTable`."""

import os
from dataclasses import dataclass, field

import numpy as np

from ..exceptions import IngestError


@dataclass(frozen=True)
class RawTable:
    rows: np.ndarray
    labels: np.ndarray
    feature_names: tuple = field(default=())

    def __post_init__(self):
        if self.rows.ndim != 2:
            raise IngestError("rows must form a 2-D matrix")
        if len(self.labels) != len(self.rows):
            raise IngestError(
                f"{len(self.rows)} rows but {len(self.labels)} labels")
        self.rows.setflags(write=False)
        self.labels.setflags(write=False)

    @property
    def n_rows(self):
        return self.rows.shape[0]

    @property
    def n_features(self):
        return self.rows.shape[1]


def _split_line(line, delimiter):
    if delimiter is None:
        delimiter = "," if "," in line else None
    return [p.strip() for p in line.split(delimiter)]


def load_table(path, label_column=-1, delimiter=None, feature_names=None):
    """Parse a delimiter-separated numeric table with one label column.

    ``delimiter=None`` accepts either commas or runs of whitespace, decided
    per line. ``label_column`` is a 0-based index (negative counts from the
    end) or a column name when ``feature_names`` lists every column.
    Blank lines and lines starting with ``#`` are skipped.
    """
    if not os.path.exists(path):
        raise IngestError(f"source file not found: {path}")

    rows, labels = [], []
    width = None
    label_idx = None
    with open(path, encoding="utf8") as fh:
        for lineno, line in enumerate(fh, start=1):
            stripped = line.strip()
            if not stripped or stripped.startswith("#"):
                continue
            parts = _split_line(stripped, delimiter)
            if width is None:
                width = len(parts)
                label_idx = _resolve_label_column(label_column, width,
                                                  feature_names)
            elif len(parts) != width:
                raise IngestError(
                    f"{path}:{lineno}: expected {width} columns, "
                    f"found {len(parts)}")
            values = []
            for col, token in enumerate(parts):
                if col == label_idx:
                    continue
                try:
                    values.append(float(token))
                except ValueError:
                    raise IngestError(
                        f"{path}:{lineno}: column {col} holds non-numeric "
                        f"value {token!r}") from None
            if not np.all(np.isfinite(values)):
                raise IngestError(f"{path}:{lineno}: missing or non-finite value")
            rows.append(values)
            labels.append(parts[label_idx])

    if not rows:
        raise IngestError(f"{path}: no data rows")
    names = ()
    if feature_names is not None:
        names = tuple(n for i, n in enumerate(feature_names) if i != label_idx)
    return RawTable(np.array(rows, dtype=np.float64),
                    np.array(labels, dtype=object), names)


def _resolve_label_column(label_column, width, feature_names):
    if isinstance(label_column, str):
        if feature_names is None or label_column not in feature_names:
            raise IngestError(f"unknown label column {label_column!r}")
        return list(feature_names).index(label_column)
    idx = label_column if label_column >= 0 else width + label_column
    if not 0 <= idx < width:
        raise IngestError(f"label column {label_column} out of range for "
                          f"{width} columns")
    return idx
