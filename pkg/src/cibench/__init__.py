"""Imbalanced-classification toolkit and benchmark harness."""

__version__ = "0.1.0"
