"""Exact star products on reduced manifolds of C^{1+n}."""
__version__ = "0.1.0"
