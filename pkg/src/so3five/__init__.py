"""Exact algebra of the irreducible SO(3) structure on 5-manifolds."""

from .errors import (
    DegreeLimitExceeded,
    EnvironmentMismatch,
    InconsistencyError,
    LookupFailure,
    ShapeError,
    So3FiveError,
    StructureError,
)
from .field import QSqrt3
from .matrix import PolyMatrix
from .poly import MultiPoly, VarEnv, parse_poly

__version__ = "0.1.0"
