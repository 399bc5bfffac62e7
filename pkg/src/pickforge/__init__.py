"""Numerical transform calculus for Nevanlinna-Pick functions and subordinators."""
__version__ = "0.1.0"
