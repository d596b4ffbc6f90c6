"""Exact local invariants of function germs relative to a variety."""

__version__ = "0.1.0"
