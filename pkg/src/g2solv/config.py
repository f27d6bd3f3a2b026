"""Numerical tolerances shared across the package.

All thresholds live on a single mutable instance so that callers (and the
command line front end) can tighten or relax them in one place.
"""

from dataclasses import dataclass


@dataclass
class Tolerances:
    # coefficient pruning applied after every floating-point form operation
    prune: float = 1e-14
    # a form counts as zero when its norm is below this (forms here have O(1) scale)
    zero_form: float = 1e-10
    # eigenvalues are accepted as real when |imag| stays below this
    eig_imag: float = 1e-9
    # relative singular-value cutoff for rank decisions
    rank_rel: float = 1e-9
    # smallest singular value of the unit log-embedding matrix that still
    # certifies multiplicative independence
    unit_log_sigma: float = 1e-6
    # max off-diagonal residual accepted by the simultaneous diagonalization
    diag_residual: float = 1e-9
    # convergence target for Newton polishing of polynomial roots
    newton: float = 1e-12


TOL = Tolerances()
