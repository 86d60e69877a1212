"""Exact computations on simplicial complete toric threefolds: divisors, cohomology,
regularity and Noether-Lefschetz codimension bounds."""

__version__ = "0.1.0"
