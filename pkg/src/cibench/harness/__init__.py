"""Benchmark grid driver: seeded runs per cell, rankings and reports."""

from .config import (DEFAULT_CONFIG, GridConfig, load_config, parse_config,
                     select_datasets)
from .ranking import RankEntry, family_datasets, rank_augmenters, rank_models
from .report import (CSV_HEADER, emit_csv, emit_heatmap, emit_markdown,
                     emit_ranking, format_stat, heatmap_svg, parse_csv,
                     percentile_rows, read_csv)
from .runner import (MetricStat, ResultTable, RunRecord, RunSummary,
                     aggregate, read_records, run_cell, run_grid, run_once,
                     split_seed)

__all__ = [
    "DEFAULT_CONFIG", "GridConfig", "load_config", "parse_config",
    "select_datasets", "RankEntry", "family_datasets", "rank_augmenters",
    "rank_models", "CSV_HEADER", "emit_csv", "emit_heatmap", "emit_markdown",
    "emit_ranking", "format_stat", "heatmap_svg", "parse_csv",
    "percentile_rows", "read_csv", "MetricStat", "ResultTable", "RunRecord",
    "RunSummary", "aggregate", "read_records", "run_cell", "run_grid",
    "run_once", "split_seed",
]
