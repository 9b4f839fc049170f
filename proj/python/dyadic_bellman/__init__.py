"""Bellman function of the tree maximal operator: exact values on the
critical surface, the general upper bound, and an exact tree simulator."""

from ._core import (
    CapacityError,
    DivergenceError,
    Error,
    RepresentationError,
    SurfaceError,
    bellman_on_surface,
    critical_f,
    extremal_lower_bound,
    extremal_z,
    h_inv,
    hp,
    integrate,
    maximal_operator,
    omega,
    run_suite,
    two_var_bellman,
    upper_bound,
)

__all__ = [
    "CapacityError",
    "DivergenceError",
    "Error",
    "RepresentationError",
    "SurfaceError",
    "bellman_on_surface",
    "critical_f",
    "extremal_lower_bound",
    "extremal_z",
    "h_inv",
    "hp",
    "integrate",
    "maximal_operator",
    "omega",
    "run_suite",
    "two_var_bellman",
    "upper_bound",
]
