"""Dimension invariants of difference algebraic subgroups of G_a^s and G_m^s."""

__version__ = "0.1.0"
