"""Exact certification of particle-loss-resistant multipartite states."""

__version__ = "0.1.0"
