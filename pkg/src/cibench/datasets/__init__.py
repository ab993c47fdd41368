"""Raw-table ingestion, benchmark dataset recipes and splitting."""

from .recipes import (Dataset, Recipe, bin_rings, catalog, derive_binary,
                      families, get_recipe, imbalance_ratio, load_dataset,
                      merge_classes)
from .splitting import SplitPair, split
from .tables import RawTable, load_table

__all__ = [
    "Dataset", "RawTable", "Recipe", "SplitPair", "bin_rings", "catalog",
    "derive_binary", "families", "get_recipe", "imbalance_ratio",
    "load_dataset", "load_table", "merge_classes", "split",
]
