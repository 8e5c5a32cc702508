# fourap/__init__.py
"""Exact-arithmetic certificates for four squares in arithmetic progression."""

__version__ = "1.0.0"
