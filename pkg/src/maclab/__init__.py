"""Exact Macdonald polynomials, the Gamma-operator calculus and Macdonald characters."""

from __future__ import annotations

__version__ = "0.1.0"
