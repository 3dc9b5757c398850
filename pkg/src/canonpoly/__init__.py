"""Canonical (generalized Appell) polynomial systems in exact rational arithmetic."""

from .canonical import (
    CanonicalSystem,
    CoeffMatrix,
    compose_systems,
    inverse_system,
    new_system,
    p_matrix,
    p_poly,
    poisson_subordinate,
    poisson_subordinator,
    q_matrix,
    q_poly,
    umbral_compose,
)
from .fps import Series
from .poly import Poly
from .systems import build

__version__ = "0.1.0"

__all__ = [
    "CanonicalSystem",
    "CoeffMatrix",
    "Poly",
    "Series",
    "build",
    "compose_systems",
    "inverse_system",
    "new_system",
    "p_matrix",
    "p_poly",
    "poisson_subordinate",
    "poisson_subordinator",
    "q_matrix",
    "q_poly",
    "umbral_compose",
]
