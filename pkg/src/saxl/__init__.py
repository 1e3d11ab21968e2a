"""Saxl-graph valencies and subdegrees of finite primitive permutation groups."""

__version__ = "0.1.0"
