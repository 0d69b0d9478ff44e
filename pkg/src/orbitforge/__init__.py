"""Exact equations for nilpotent orbit closures in gl_n and sp_2m."""

__version__ = "0.1.0"

from .partitions import Partition, dominance_leq, enumerate_partitions, rank_sequence  # noqa: E402
from .polyalg import Polynomial, SymbolicMatrix, generic_matrix  # noqa: E402
from .orbits_gl import (  # noqa: E402
    EquationSet,
    closure_equations,
    localization_charts,
    membership_test,
    sample_orbit_point,
)

__all__ = [
    "EquationSet",
    "Partition",
    "Polynomial",
    "SymbolicMatrix",
    "closure_equations",
    "dominance_leq",
    "enumerate_partitions",
    "generic_matrix",
    "localization_charts",
    "membership_test",
    "rank_sequence",
    "sample_orbit_point",
]
