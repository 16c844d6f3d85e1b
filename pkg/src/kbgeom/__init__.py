"""Geometric satisfaction semantics for region-based knowledge-base embeddings."""

__version__ = "0.1.0"
