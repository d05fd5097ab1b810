"""Artin-Schreier curves over F_2, their zeta functions and Newton slopes."""

__version__ = "0.1.0"
