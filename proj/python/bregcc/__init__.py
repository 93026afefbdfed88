"""Bregman circumcenters: distances, projections, and circumcenter solvers."""

from ._bregcc import (
    DomainError,
    InputError,
    SolveError,
    UnsupportedError,
    backward_circumcenter,
    backward_pseudo_circumcenter,
    bregman_distance,
    check_pseudo_duality,
    forward_circumcenter,
    forward_pseudo_circumcenter,
    list_functions,
    project_backward,
    project_forward,
    verify_equidistance,
)

__version__ = "0.1.0"

__all__ = [
    "DomainError",
    "InputError",
    "SolveError",
    "UnsupportedError",
    "backward_circumcenter",
    "backward_pseudo_circumcenter",
    "bregman_distance",
    "check_pseudo_duality",
    "forward_circumcenter",
    "forward_pseudo_circumcenter",
    "list_functions",
    "project_backward",
    "project_forward",
    "verify_equidistance",
]
