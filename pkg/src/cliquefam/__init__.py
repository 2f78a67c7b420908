"""Cliques with restricted intersections: constructions, counts, checks and exact search."""

__version__ = "0.1.0"
