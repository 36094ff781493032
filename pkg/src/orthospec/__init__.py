"""Orthospectra of compact hyperbolic surfaces with geodesic boundary.

Surfaces are given in Ushijima coordinates (arc lengths of a hexagon
decomposition); the package solves the hexagons, develops the surface into
the upper half-plane, enumerates orthogeodesics and closed geodesics, and
verifies the boundary-length identity, the collar inequality suite, and the
one-holed-torus reconstruction from the simple orthospectrum.
"""

from .errors import (
    DomainError,
    NeedsLargerCutoffError,
    NotHyperbolicError,
    OrthospecError,
    PrecisionError,
    ResourceError,
    SameCarrierError,
    ValidationError,
)

__all__ = [
    "DomainError",
    "NeedsLargerCutoffError",
    "NotHyperbolicError",
    "OrthospecError",
    "PrecisionError",
    "ResourceError",
    "SameCarrierError",
    "ValidationError",
]

__version__ = "0.1.0"
