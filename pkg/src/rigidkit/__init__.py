"""Exact computations for toric surfaces, quotient singularities and their deformations."""

__version__ = "0.1.0"
