"""Exception types shared across the package."""

from __future__ import annotations


class OrthospecError(Exception):
    """Base class for all package errors."""


class DomainError(OrthospecError, ValueError):
    """An input is outside the mathematical domain of an operation."""


class NotHyperbolicError(OrthospecError, ValueError):
    """A matrix expected to be hyperbolic is elliptic or (numerically) parabolic.

    ``kind`` is ``"parabolic"`` when |tr| lies in the band [2 - 1e-12, 2 + 1e-12]
    and ``"elliptic"`` when |tr| < 2 - 1e-12.
    """

    def __init__(self, message: str, kind: str, trace: float):
        super().__init__(message)
        self.kind = kind
        self.trace = trace


class SameCarrierError(OrthospecError, ValueError):
    """Two segments lie on the same geodesic; crossing is undefined here."""


class ValidationError(OrthospecError, ValueError):
    """Structural or topological invalidity of surface input data."""


class ResourceError(OrthospecError, RuntimeError):
    """A search exceeded its frontier guard.

    ``certified_cutoff`` is the largest cutoff for which the partial
    result is still known to be complete (may be 0.0).
    """

    def __init__(self, message: str, certified_cutoff: float = 0.0):
        super().__init__(message)
        self.certified_cutoff = certified_cutoff


class NeedsLargerCutoffError(OrthospecError, RuntimeError):
    """A requested quantity is not certified at the current cutoff.

    ``suggested_cutoff`` is a cutoff at which the caller should retry.
    """

    def __init__(self, message: str, suggested_cutoff: float):
        super().__init__(message)
        self.suggested_cutoff = suggested_cutoff


class PrecisionError(OrthospecError, RuntimeError):
    """A computation hit a configuration too degenerate to resolve reliably
    (near-tangential crossing, same-carrier overlap, cosh argument at 1)."""
