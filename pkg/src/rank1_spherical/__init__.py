"""Exact verification of spherical subalgebras in rank-one simple Lie algebras."""

__version__ = "0.1.0"
