"""Exact combinatorial engine for Berge-path-free extremal hypergraphs."""

__version__ = "0.1.0"
