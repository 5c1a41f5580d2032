"""Orthomin(k) solvers, spectral test problems and convergence-rate analytics."""

__version__ = "0.1.0"
