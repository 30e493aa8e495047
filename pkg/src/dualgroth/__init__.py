"""Dual Grothendieck polynomials and the column law of geometric last-passage
percolation, with exhaustive, Monte Carlo and closed-form cross-checks."""

from .partitions import conjugate, enumerate_partitions, enumerate_plane_partitions
from .bijection import phi, phi_inverse, shape_via_max_paths
from .symfunc import EvalPoint, g_eval, h_eval, e_eval, schur_eval
from .lpp import (
    GeometricParams,
    JointDistribution,
    theorem_distribution,
    cdf_distribution,
    oracle_distribution,
    monte_carlo_distribution,
)

__version__ = "0.1.0"
