"""Invariants and exact sequences of reductive group data.

The package computes character groups, Picard groups (mu*), fundamental
groups, and two-term fundamental complexes of root data with optional
finite-group twists, on top of an exact integer linear algebra core.
"""

__version__ = "0.1.0"
