"""Exact Ricci-tensor and conformal Ricci collineation computations for
three-dimensional Lorentzian Lie algebras."""

__version__ = "0.1.0"
