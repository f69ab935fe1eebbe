"""Exact counting for the bounded-coordinate sums-vs-differences construction."""

__version__ = "0.1.0"
