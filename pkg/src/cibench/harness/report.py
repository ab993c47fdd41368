"""Report artifacts: CSV result tables, markdown tables and SVG heatmaps."""

import csv
import io
import math
import os
from xml.sax.saxutils import escape

from ..ensembles import LABELS as MODEL_LABELS
from ..exceptions import ReportError, ReportIOError
from ..resampling import LABELS as AUGMENTER_LABELS
from .runner import MetricStat, ResultTable, RunSummary

CSV_HEADER = ("dataset", "augmenter", "model", "metric", "mean", "best",
              "std", "n_ok", "n_err")

METRIC_LABELS = {
    "accuracy": "Accuracy", "f1": "F1", "f1_table": "F1", "f1_macro": "F1-macro",
    "f1_micro": "F1-micro", "f1_weighted": "F1-weighted", "auc": "AUC",
    "auc_threshold": "AUC (threshold)", "auc_ovo_macro": "AUC-OvO-macro",
    "auc_ovo_weighted": "AUC-OvO-weighted", "auc_ovr_macro": "AUC-OvR-macro",
    "auc_ovr_weighted": "AUC-OvR-weighted",
}

PERCENTILES = (100, 90, 80, 70, 60, 50, 40, 30, 20, 10, 0)


def _write(path, text):
    try:
        parent = os.path.dirname(os.path.abspath(path))
        os.makedirs(parent, exist_ok=True)
        with open(path, "w", encoding="utf8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise ReportIOError(f"cannot write {path}: "
                            f"{exc.strerror or exc}") from None
    return path


def _require_rows(table):
    if len(table) == 0:
        raise ReportError("the result table is empty")


# -- CSV ----------------------------------------------------------------------

def csv_text(table):
    _require_rows(table)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    w.writerows(table.rows())
    return buf.getvalue()


def emit_csv(table, path):
    """One row per (cell, metric), values with three decimals."""
    return _write(path, csv_text(table))


def parse_csv(text, source="<csv>"):
    """Rebuild a :class:`ResultTable` from :func:`emit_csv` output."""
    reader = csv.reader(io.StringIO(text))
    header = next(reader, None)
    if header is None or tuple(header) != CSV_HEADER:
        raise ReportError(f"{source}: expected header {','.join(CSV_HEADER)}")
    cells = {}
    for lineno, row in enumerate(reader, start=2):
        if not row:
            continue
        if len(row) != len(CSV_HEADER):
            raise ReportError(f"{source}:{lineno}: expected {len(CSV_HEADER)} "
                              f"fields, got {len(row)}")
        d, a, m, name = row[:4]
        try:
            stat = MetricStat(float(row[4]), float(row[5]), float(row[6]),
                              int(row[7]), int(row[8]))
        except ValueError as exc:
            raise ReportError(f"{source}:{lineno}: {exc}") from None
        cells.setdefault((d, a, m), {})[name] = stat
    summaries = []
    for (d, a, m), stats in cells.items():
        first = next(iter(stats.values()))
        n_runs = first.n_ok + first.n_err
        acc = stats.get("accuracy", first)
        error = None
        if acc.n_ok == 0:
            error = f"{d} / {a} / {m}: all {n_runs} runs failed"
        summaries.append(RunSummary(d, a, m, stats, n_runs, cell_error=error))
    return ResultTable(summaries)


def read_csv(path):
    try:
        with open(path, encoding="utf8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ReportIOError(f"cannot read {path}: {exc.strerror}") from None
    return parse_csv(text, source=path)


# -- markdown -----------------------------------------------------------------

def format_stat(stat):
    """``mean(best, std)`` with three decimals."""
    if stat is None or stat.n_ok == 0 or not math.isfinite(stat.mean):
        return "n/a"
    return f"{stat.mean:.3f}({stat.best:.3f}, {stat.std:.3f})"


def _default_metrics(summary):
    names = summary.stats
    if "f1" in names:
        f1 = "f1_table" if "f1_table" in names else "f1"
        return ["accuracy", f1, "auc"]
    return ["accuracy", "f1_macro", "f1_micro", "f1_weighted",
            "auc_ovo_macro", "auc_ovr_macro"]


def percentile_rows(summaries, percentiles=PERCENTILES):
    """Rows at the given mean-accuracy percentiles, highest first.

    Percentile ``p`` picks the cell of rank ``round((1 - p/100) * (n - 1))``
    in the accuracy-descending order.
    """
    ranked = sorted((s for s in summaries if s.ok),
                    key=lambda s: -s.stats["accuracy"].mean)
    out = []
    if not ranked:
        return out
    for p in percentiles:
        i = int(round((1 - p / 100) * (len(ranked) - 1)))
        out.append((p, ranked[i]))
    return out


def _md_table(header, rows):
    lines = ["| " + " | ".join(header) + " |",
             "|" + "|".join("---" for _ in header) + "|"]
    lines += ["| " + " | ".join(r) + " |" for r in rows]
    return lines


def markdown_text(table, metrics=None, percentiles=True):
    _require_rows(table)
    lines = ["# Results", "",
             "Cells show mean(best, std) over the successful runs."]
    for d in table.datasets():
        cells = table.select(d)
        names = metrics or _default_metrics(cells[0])
        header = (["Augmenter", "Model"]
                  + [METRIC_LABELS.get(n, n) for n in names] + ["Runs ok"])

        def row(s, lead=()):
            n_ok = s.stats["accuracy"].n_ok if "accuracy" in s.stats else 0
            return (list(lead)
                    + [AUGMENTER_LABELS.get(s.augmenter, s.augmenter),
                       MODEL_LABELS.get(s.model, s.model)]
                    + [format_stat(s.stats.get(n)) for n in names]
                    + [f"{n_ok}/{s.n_runs}"])

        lines += ["", f"## {d}", ""]
        lines += _md_table(header, [row(s) for s in cells])
        if percentiles:
            picked = percentile_rows(cells)
            if picked:
                lines += ["", f"### {d}: accuracy percentiles", ""]
                lines += _md_table(["Percentile"] + header,
                                   [row(s, [f"{p}th"]) for p, s in picked])
    return "\n".join(lines) + "\n"


def emit_markdown(table, path, metrics=None, percentiles=True):
    """Per-dataset tables of every cell, plus accuracy-percentile rows."""
    return _write(path, markdown_text(table, metrics, percentiles))


# -- heatmap ------------------------------------------------------------------

_LOW = (247, 251, 255)
_HIGH = (8, 48, 107)


def _color(t):
    rgb = [round(lo + (hi - lo) * t) for lo, hi in zip(_LOW, _HIGH)]
    return "#%02x%02x%02x" % tuple(rgb)


def heatmap_svg(table, dataset, metric="f1"):
    """SVG grid with augmenters as rows and models as columns; each cell is
    shaded by the metric's mean and annotated with its value."""
    cells = table.select(dataset)
    if not cells:
        raise ReportError(f"no rows for dataset {dataset!r}")
    if metric not in cells[0].stats and metric == "f1":
        metric = "f1_macro"
    rows = table.augmenters(dataset)
    cols = table.models(dataset)
    values = {}
    for s in cells:
        st = s.stats.get(metric)
        if st is not None and st.n_ok > 0 and math.isfinite(st.mean):
            values[(s.augmenter, s.model)] = st.mean
    if not values:
        raise ReportError(f"{dataset}: no finite {metric!r} values")
    lo, hi = min(values.values()), max(values.values())
    span = hi - lo if hi > lo else 1.0
    cw, ch, left, top = 78, 30, 140, 110
    width = left + cw * len(cols) + 20
    height = top + ch * len(rows) + 20
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
           f'height="{height}" font-family="sans-serif" font-size="11">',
           f'<title>{escape(dataset)}: {escape(METRIC_LABELS.get(metric, metric))}'
           f'</title>',
           f'<text x="{left}" y="18" font-size="14">{escape(dataset)} '
           f'{escape(METRIC_LABELS.get(metric, metric))}</text>']
    for j, m in enumerate(cols):
        x = left + cw * j + cw / 2
        out.append(f'<text x="{x}" y="{top - 8}" text-anchor="start" '
                   f'transform="rotate(-40 {x} {top - 8})">'
                   f'{escape(MODEL_LABELS.get(m, m))}</text>')
    for i, a in enumerate(rows):
        y = top + ch * i
        out.append(f'<text x="{left - 6}" y="{y + ch / 2 + 4}" '
                   f'text-anchor="end">'
                   f'{escape(AUGMENTER_LABELS.get(a, a))}</text>')
        for j, m in enumerate(cols):
            x = left + cw * j
            v = values.get((a, m))
            if v is None:
                fill, label, ink = "#d9d9d9", "n/a", "#000000"
            else:
                t = (v - lo) / span
                fill, label = _color(t), f"{v:.3f}"
                ink = "#ffffff" if t > 0.55 else "#000000"
            out.append(f'<rect class="cell" x="{x}" y="{y}" width="{cw}" '
                       f'height="{ch}" fill="{fill}" stroke="#ffffff" '
                       f'data-augmenter="{escape(a)}" data-model="{escape(m)}"/>')
            out.append(f'<text x="{x + cw / 2}" y="{y + ch / 2 + 4}" '
                       f'text-anchor="middle" fill="{ink}">{label}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def emit_heatmap(table, dataset, metric, path):
    return _write(path, heatmap_svg(table, dataset, metric))


# -- rankings -----------------------------------------------------------------

def ranking_csv_text(entries):
    """Bar-chart data: one bar per entry with its error bar."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(("rank", "name", "label", "mean", "error", "n_datasets"))
    for i, e in enumerate(entries, start=1):
        w.writerow((i, e.name, e.label, f"{e.mean:.3f}", f"{e.error:.3f}",
                    e.n_datasets))
    return buf.getvalue()


def emit_ranking(entries, path):
    return _write(path, ranking_csv_text(entries))
