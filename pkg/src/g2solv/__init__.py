"""Certified lattices, torsion calculus and coflow dynamics for a family of
solvable Lie groups carrying left-invariant G2-structures."""

from . import cli, coflow, config, forms, g2core, liealg, numberlat

__all__ = [
    "cli",
    "coflow",
    "config",
    "forms",
    "g2core",
    "liealg",
    "numberlat",
]

__version__ = "0.1.0"
