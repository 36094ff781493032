"""Closed-form hyperbolic trigonometry of right-angled polygons.

Everything here is a pure function of side lengths: solvers for right-angled
hexagons (alternate sides determine the rest), the right-angled octagon
perpendicular, the trirectangle angle, and the named bounds used by the
verification suites (Basmajian summand, collar widths, orthosystole/boundary
bound, pants tau bound).

Inputs are validated strictly: non-positive or non-finite lengths raise
:class:`~orthospec.errors.DomainError`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError, PrecisionError

# Relative tolerance for kernel identities; derived lengths are good to ~1e-9.
HEXAGON_RELATION_RTOL = 1e-10


def stable_acosh(x: float) -> float:
    """acosh with full precision near 1.

    Uses acosh(1+u) = log1p(u + sqrt(u*(2+u))), which avoids the digit loss
    of log(x + sqrt(x*x - 1)) when x is close to 1.
    """
    u = x - 1.0
    if u < 0.0:
        raise DomainError(f"acosh argument {x} < 1")
    return math.log1p(u + math.sqrt(u * (2.0 + u)))


def _check_length(value: float, name: str) -> float:
    if not (isinstance(value, (int, float)) and math.isfinite(value) and value > 0):
        raise DomainError(f"{name} must be a positive finite length, got {value!r}")
    return float(value)


@dataclass(frozen=True)
class RightHexagon:
    """A right-angled hexagon by its side lengths.

    Sides in cyclic order are a0, b0, a1, b1, a2, b2: the arc sides a_k
    alternate with the boundary sides b_k, and b_k lies between a_k and
    a_{(k+1) % 3}.
    """

    a0: float
    a1: float
    a2: float
    b0: float
    b1: float
    b2: float

    @property
    def arc_sides(self) -> tuple[float, float, float]:
        return (self.a0, self.a1, self.a2)

    @property
    def boundary_sides(self) -> tuple[float, float, float]:
        return (self.b0, self.b1, self.b2)

    def sides_cyclic(self) -> tuple[float, ...]:
        """All six sides in cyclic order a0, b0, a1, b1, a2, b2."""
        return (self.a0, self.b0, self.a1, self.b1, self.a2, self.b2)

    def relation_residual(self, k: int) -> float:
        """Relative defect of the hexagon side relation at boundary side k."""
        a = (self.a0, self.a1, self.a2)
        b = (self.b0, self.b1, self.b2)
        lhs = math.cosh(b[k]) * math.sinh(a[k]) * math.sinh(a[(k + 1) % 3])
        rhs = math.cosh(a[(k + 2) % 3]) + math.cosh(a[k]) * math.cosh(a[(k + 1) % 3])
        return abs(lhs - rhs) / rhs


def hexagon_boundary_side(a: float, b: float, c: float) -> float:
    """Side between the alternate sides a and b of a right-angled hexagon
    whose third alternate side is c.

    cosh(side) = (cosh c + cosh a cosh b) / (sinh a sinh b); the argument
    always exceeds 1 for positive inputs, so the result is well defined.
    """
    a = _check_length(a, "a")
    b = _check_length(b, "b")
    c = _check_length(c, "c")
    num = math.cosh(c) + math.cosh(a) * math.cosh(b)
    den = math.sinh(a) * math.sinh(b)
    return stable_acosh(num / den)


def solve_hexagon(a0: float, a1: float, a2: float) -> RightHexagon:
    """Right-angled hexagon with prescribed alternate (arc) sides."""
    return RightHexagon(
        a0=_check_length(a0, "a0"),
        a1=_check_length(a1, "a1"),
        a2=_check_length(a2, "a2"),
        b0=hexagon_boundary_side(a0, a1, a2),
        b1=hexagon_boundary_side(a1, a2, a0),
        b2=hexagon_boundary_side(a2, a0, a1),
    )


def trirectangle_angle(sigma: float, tau: float) -> float:
    """The non-right angle of a trirectangle with adjacent sides sigma, tau.

    Returns phi = arccos(tanh(sigma) tanh(tau)) in (0, pi/2).
    """
    sigma = _check_length(sigma, "sigma")
    tau = _check_length(tau, "tau")
    return math.acos(math.tanh(sigma) * math.tanh(tau))


def octagon_perpendicular(
    alpha: float, d1: float, d2: float, d3: float, d4: float
) -> float:
    """Length of the second orthogonal arc of a right-angled octagon.

    The octagon has four pairwise disjoint sides d1, d2, d3, d4 (in cyclic
    order) and one orthogonal arc of length ``alpha`` joining the two opposite
    remaining sides; the returned value is the length of the orthogonal arc
    joining the other two opposite sides.  Computed by splitting along alpha
    into the hexagons (alpha, d1, d2) and (alpha, d3, d4), adding the two
    pieces of the split side, and closing up through the hexagon (beta, d4, d1):

        cosh x  = (cosh d2 + cosh d1 cosh alpha) / (sinh d1 sinh alpha)
        cosh x' = (cosh d3 + cosh d4 cosh alpha) / (sinh d4 sinh alpha)
        cosh beta = sinh d1 sinh d4 cosh(x + x') - cosh d1 cosh d4
    """
    alpha = _check_length(alpha, "alpha")
    d1 = _check_length(d1, "d1")
    d2 = _check_length(d2, "d2")
    d3 = _check_length(d3, "d3")
    d4 = _check_length(d4, "d4")
    x = hexagon_boundary_side(d1, alpha, d2)
    xp = hexagon_boundary_side(d4, alpha, d3)
    cosh_beta = math.sinh(d1) * math.sinh(d4) * math.cosh(x + xp) - math.cosh(
        d1
    ) * math.cosh(d4)
    if cosh_beta <= 1.0:
        raise PrecisionError(
            f"octagon perpendicular collapsed: cosh(beta) = {cosh_beta} <= 1 "
            f"for inputs alpha={alpha}, d=({d1}, {d2}, {d3}, {d4})"
        )
    return stable_acosh(cosh_beta)


def basmajian_term(length: float) -> float:
    """Boundary contribution 2 asinh(1 / sinh(l)) of one orthogeodesic."""
    length = _check_length(length, "length")
    return 2.0 * math.asinh(1.0 / math.sinh(length))


def orthosystole_boundary_bound(t: float, genus: int, boundary: int) -> float:
    """Upper bound on total boundary length given orthosystole t.

    Returns (24g + 12b - 24) asinh(1 / (2 sinh 2t)) for a genus-g surface
    with b boundary components.
    """
    t = _check_length(t, "t")
    if genus < 0 or boundary < 1 or 2 - 2 * genus - boundary >= 0:
        raise DomainError(
            f"invalid topology: genus={genus}, boundary={boundary} "
            "(need g >= 0, b >= 1, negative Euler characteristic)"
        )
    coeff = 24 * genus + 12 * boundary - 24
    return coeff * math.asinh(1.0 / (2.0 * math.sinh(2.0 * t)))


def pants_tau_bound(l_alpha: float, l_gamma: float) -> float:
    """Upper bound 2 asinh(cosh(l_alpha/2) / sinh(l_gamma/4)) on the length of
    the unique simple orthogeodesic of a pair of pants with both endpoints on
    the cuff of length l_gamma; l_alpha is the longer of the two other cuffs.
    """
    l_alpha = _check_length(l_alpha, "l_alpha")
    l_gamma = _check_length(l_gamma, "l_gamma")
    return 2.0 * math.asinh(math.cosh(l_alpha / 2.0) / math.sinh(l_gamma / 4.0))


def half_collar_width(l_gamma: float) -> float:
    """Half-collar width w = asinh(1 / sinh(l/2)) of a geodesic of length l."""
    l_gamma = _check_length(l_gamma, "l_gamma")
    return math.asinh(1.0 / math.sinh(l_gamma / 2.0))


def collar_test(l_alpha: float, l_beta: float, kind: str) -> bool:
    """Necessary intersection condition for two geodesics, one of them simple.

    kind="closed" tests sinh(a/2) sinh(b/2) > 1 (closed geodesics);
    kind="ortho" tests sinh(a) sinh(b) > 1 (orthogeodesics).  A False result
    certifies the two cannot intersect.
    """
    l_alpha = _check_length(l_alpha, "l_alpha")
    l_beta = _check_length(l_beta, "l_beta")
    if kind == "closed":
        return math.sinh(l_alpha / 2.0) * math.sinh(l_beta / 2.0) > 1.0
    if kind == "ortho":
        return math.sinh(l_alpha) * math.sinh(l_beta) > 1.0
    raise DomainError(f"unknown collar test kind {kind!r}")
