"""Geometry of the upper half-plane.

Points are complex numbers with positive imaginary part, ideal points are
reals together with a single point at infinity (``math.inf``), geodesics are
vertical rays or semicircles centred on the real axis, and orientation
preserving isometries are real 2x2 matrices of determinant one identified
with their negatives, acting by Moebius transformations.

Each geodesic carries a canonical unit-speed parametrisation; see
:meth:`Geodesic.param_of` for how parameters relate to points.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError, NotHyperbolicError, SameCarrierError
from .trig import stable_acosh

INF = math.inf

# |det - 1| above this triggers renormalisation inside compose().
DET_DRIFT = 1e-13
# Ideal endpoints closer than this are treated as shared.
SHARED_ENDPOINT_TOL = 1e-12
# Band of |tr| around 2 reported as parabolic rather than hyperbolic/elliptic.
PARABOLIC_BAND = 1e-12
# Strictness tolerance for "parameter strictly inside an interval".
SEGMENT_STRICT_TOL = 1e-10


def is_ideal(x: float) -> bool:
    return x == INF or (isinstance(x, (int, float)) and math.isfinite(x))


def det_noise_floor(a: float, b: float, c: float, d: float) -> float:
    """Rounding-noise bound for evaluating a*d - b*c in double precision."""
    return 16.0 * 2.220446049250313e-16 * (abs(a * d) + abs(b * c))


def _check_interior(p: complex, name: str = "point") -> complex:
    p = complex(p)
    if not (math.isfinite(p.real) and math.isfinite(p.imag)) or p.imag <= 0.0:
        raise DomainError(f"{name} {p} is not in the open upper half-plane")
    return p


@dataclass(frozen=True)
class Isometry:
    """Orientation-preserving isometry as a determinant-one matrix up to sign."""

    a: float
    b: float
    c: float
    d: float

    @staticmethod
    def identity() -> "Isometry":
        return Isometry(1.0, 0.0, 0.0, 1.0)

    @staticmethod
    def translation(length: float) -> "Isometry":
        """Translation by ``length`` along the imaginary axis, upward."""
        e = math.exp(length / 2.0)
        return Isometry(e, 0.0, 0.0, 1.0 / e)

    @staticmethod
    def rotation(theta: float) -> "Isometry":
        """Rotation by ``theta`` (counterclockwise) about the point i."""
        c = math.cos(theta / 2.0)
        s = math.sin(theta / 2.0)
        return Isometry(c, s, -s, c)

    def det(self) -> float:
        return self.a * self.d - self.b * self.c

    def trace(self) -> float:
        return self.a + self.d

    def compose(self, other: "Isometry") -> "Isometry":
        """self o other, renormalised to determinant one when drift exceeds
        DET_DRIFT.

        The evaluated determinant of a matrix with entries of size E carries
        rounding noise of order E^2 * eps, so for large entries the trigger
        is the noise floor rather than the absolute DET_DRIFT (renormalising
        by a noise-dominated determinant would only inject error).
        """
        a = self.a * other.a + self.b * other.c
        b = self.a * other.b + self.b * other.d
        c = self.c * other.a + self.d * other.c
        d = self.c * other.b + self.d * other.d
        det = a * d - b * c
        if abs(det - 1.0) > max(DET_DRIFT, det_noise_floor(a, b, c, d)):
            s = 1.0 / math.sqrt(det)
            a, b, c, d = a * s, b * s, c * s, d * s
        return Isometry(a, b, c, d)

    def __matmul__(self, other: "Isometry") -> "Isometry":
        return self.compose(other)

    def inverse(self) -> "Isometry":
        return Isometry(self.d, -self.b, -self.c, self.a)

    def normalized(self) -> "Isometry":
        """Sign-canonical representative: first entry of absolute value above
        1e-12 (row-major) is made positive."""
        for v in (self.a, self.b, self.c, self.d):
            if abs(v) > 1e-12:
                if v < 0:
                    return Isometry(-self.a, -self.b, -self.c, -self.d)
                return self
        return self

    def apply_point(self, z: complex) -> complex:
        den = self.c * z + self.d
        return (self.a * z + self.b) / den

    def apply_ideal(self, x: float) -> float:
        if x == INF:
            if self.c == 0.0:
                return INF
            return self.a / self.c
        den = self.c * x + self.d
        if den == 0.0:
            return INF
        return (self.a * x + self.b) / den

    def apply_geodesic(self, g: "Geodesic") -> "Geodesic":
        return Geodesic(self.apply_ideal(g.e1), self.apply_ideal(g.e2))

    def distance_from_identity(self) -> float:
        """Max-norm distance to +-identity, for closure/consistency checks."""
        d_plus = max(
            abs(self.a - 1.0), abs(self.b), abs(self.c), abs(self.d - 1.0)
        )
        d_minus = max(
            abs(self.a + 1.0), abs(self.b), abs(self.c), abs(self.d + 1.0)
        )
        return min(d_plus, d_minus)


def apply(m: Isometry, obj):
    """Moebius action on an ideal point, a Geodesic, or an interior point."""
    if isinstance(obj, Geodesic):
        return m.apply_geodesic(obj)
    if isinstance(obj, complex):
        return m.apply_point(obj)
    if isinstance(obj, (int, float)):
        return m.apply_ideal(float(obj))
    raise DomainError(f"cannot apply isometry to {obj!r}")


def classify_trace(m: Isometry) -> str:
    t = abs(m.trace())
    if t > 2.0 + PARABOLIC_BAND:
        return "hyperbolic"
    if t >= 2.0 - PARABOLIC_BAND:
        return "parabolic"
    return "elliptic"


def translation_length(m: Isometry) -> float:
    """2 acosh(|tr|/2) for a hyperbolic element."""
    t = abs(m.trace())
    kind = classify_trace(m)
    if kind != "hyperbolic":
        raise NotHyperbolicError(
            f"matrix with |trace| = {t} is {kind}, not hyperbolic", kind, t
        )
    return 2.0 * stable_acosh(t / 2.0)


def axis(m: Isometry) -> "Geodesic":
    """Axis of a hyperbolic element: the geodesic through its fixed points."""
    t = m.trace()
    kind = classify_trace(m)
    if kind != "hyperbolic":
        raise NotHyperbolicError(
            f"matrix with |trace| = {abs(t)} is {kind}, has no axis", kind, abs(t)
        )
    if m.c == 0.0:
        # One fixed point at infinity; the other solves (a - d) x + b = 0.
        if m.a == m.d:  # identity-like, excluded by the trace test
            raise NotHyperbolicError("degenerate matrix", "parabolic", abs(t))
        return Geodesic(m.b / (m.d - m.a), INF)
    # Fixed points solve c x^2 + (d - a) x - b = 0; the discriminant is
    # (a - d)^2 + 4 b c = tr^2 - 4 > 0.  Use the numerically stable root pair.
    disc = math.sqrt(t * t - 4.0)
    lin = m.d - m.a
    if lin == 0.0:
        x1 = disc / (2.0 * m.c)
        x2 = -x1
    else:
        q = -0.5 * (lin + math.copysign(disc, lin))
        x1 = q / m.c
        x2 = -m.b / q
    return Geodesic(x1, x2)


@dataclass(frozen=True)
class Geodesic:
    """Unordered pair of distinct ideal endpoints, stored canonically:
    (finite, INF) for vertical rays, otherwise (smaller, larger)."""

    e1: float
    e2: float

    def __post_init__(self):
        x, y = float(self.e1), float(self.e2)
        if not (is_ideal(x) and is_ideal(y)):
            raise DomainError(f"invalid ideal endpoints ({x}, {y})")
        if x == y:
            raise DomainError(f"degenerate geodesic with equal endpoints {x}")
        if x == 0.0:
            x = 0.0
        if y == 0.0:
            y = 0.0
        if y == INF:
            pass
        elif x == INF:
            x, y = y, INF
        elif x > y:
            x, y = y, x
        object.__setattr__(self, "e1", x)
        object.__setattr__(self, "e2", y)

    @property
    def vertical(self) -> bool:
        return self.e2 == INF

    @property
    def center(self) -> float:
        return (self.e1 + self.e2) / 2.0

    @property
    def radius(self) -> float:
        return (self.e2 - self.e1) / 2.0

    def point_at(self, t: float) -> complex:
        """Point at signed arclength parameter t.

        Vertical rays: x + i e^t.  Semicircles from e1 to e2:
        center + radius (tanh t + i sech t), increasing toward e2.
        """
        if self.vertical:
            return complex(self.e1, math.exp(t))
        m, r = self.center, self.radius
        return complex(m + r * math.tanh(t), r / math.cosh(t))

    def param_of(self, z: complex) -> float:
        """Signed arclength parameter of the projection of z onto the geodesic.

        For points on the geodesic this is the inverse of point_at.
        """
        z = _check_interior(z)
        if self.vertical:
            return math.log(abs(z - self.e1))
        return math.log(abs(z - self.e1)) - math.log(abs(z - self.e2))

    def distance_to(self, z: complex) -> float:
        """Hyperbolic distance from an interior point to the geodesic."""
        z = _check_interior(z)
        if self.vertical:
            s = abs(z.real - self.e1) / z.imag
        else:
            m, r = self.center, self.radius
            s = abs(abs(z - m) ** 2 - r * r) / (2.0 * r * z.imag)
        return math.asinh(s)

    def contains_projection_of(self, z: complex) -> complex:
        """Foot of the perpendicular from z (the point at param_of(z))."""
        return self.point_at(self.param_of(z))

    def tangent_at(self, z: complex) -> complex:
        """Unit (Euclidean) tangent direction at a point on the geodesic,
        oriented toward increasing parameter."""
        if self.vertical:
            return 1j
        v = 1j * (z - self.center)  # counterclockwise tangent
        v /= abs(v)
        # Counterclockwise on the semicircle runs from e2 toward e1.
        return -v


def geodesic_through(z1: complex, z2: complex) -> Geodesic:
    """The geodesic through two distinct interior points."""
    z1 = _check_interior(z1, "z1")
    z2 = _check_interior(z2, "z2")
    dx = z1.real - z2.real
    if abs(dx) < 1e-14 * max(1.0, abs(z1), abs(z2)):
        return Geodesic(0.5 * (z1.real + z2.real), INF)
    m = (abs(z1) ** 2 - abs(z2) ** 2) / (2.0 * dx)
    r = abs(z1 - m)
    return Geodesic(m - r, m + r)


def point_distance(p: complex, q: complex) -> float:
    """Hyperbolic distance between two interior points."""
    p = _check_interior(p, "p")
    q = _check_interior(q, "q")
    u = abs(p - q) ** 2 / (2.0 * p.imag * q.imag)
    return stable_acosh(1.0 + u)


def _orient(u: float, v: float, w: float) -> float:
    """Sign of the cyclic order of three distinct boundary points."""
    if u == INF:
        return math.copysign(1.0, w - v)
    if v == INF:
        return math.copysign(1.0, u - w)
    if w == INF:
        return math.copysign(1.0, v - u)
    return math.copysign(1.0, (v - u) * (w - v) * (w - u))


@dataclass(frozen=True)
class Crossing:
    """Marker result: the two geodesics intersect transversally."""

    point: complex


@dataclass(frozen=True)
class SharedEndpoint:
    """Marker result: the two geodesics share an ideal endpoint (within
    tolerance), so no common perpendicular exists."""

    endpoint: float


@dataclass(frozen=True)
class PerpResult:
    """Common perpendicular between two disjoint geodesics.

    foot1/foot2 are signed arclength parameters along the respective carriers;
    point1/point2 the corresponding points; carrier the perpendicular itself.
    """

    length: float
    foot1: float
    foot2: float
    point1: complex
    point2: complex
    carrier: Geodesic


def _shares_endpoint(g1: Geodesic, g2: Geodesic):
    for x in (g1.e1, g1.e2):
        for y in (g2.e1, g2.e2):
            if x == INF and y == INF:
                return SharedEndpoint(INF)
            if x != INF and y != INF and abs(x - y) <= SHARED_ENDPOINT_TOL:
                return SharedEndpoint(x)
    return None


def geodesics_cross(g1: Geodesic, g2: Geodesic) -> bool:
    """Whether the ideal endpoints interleave (transversal crossing)."""
    s1 = _orient(g1.e1, g2.e1, g1.e2)
    s2 = _orient(g1.e1, g2.e2, g1.e2)
    return s1 * s2 < 0


def crossing_point(g1: Geodesic, g2: Geodesic) -> complex:
    """Intersection point of two crossing geodesics."""
    if g1.vertical and g2.vertical:
        raise SameCarrierError("two vertical geodesics never cross")
    if g1.vertical:
        x = g1.e1
        m, r = g2.center, g2.radius
        y2 = r * r - (x - m) ** 2
        if y2 <= 0:
            raise DomainError("geodesics do not cross")
        return complex(x, math.sqrt(y2))
    if g2.vertical:
        return crossing_point(g2, g1)
    m1, r1 = g1.center, g1.radius
    m2, r2 = g2.center, g2.radius
    if m1 == m2:
        raise DomainError("concentric geodesics do not cross")
    x = (r1 * r1 - r2 * r2 + m2 * m2 - m1 * m1) / (2.0 * (m2 - m1))
    y2 = r1 * r1 - (x - m1) ** 2
    if y2 <= 0:
        raise DomainError("geodesics do not cross")
    return complex(x, math.sqrt(y2))


def crossing_angle(g1: Geodesic, g2: Geodesic, at: complex) -> float:
    """Unsigned angle in (0, pi/2] between two geodesics at a crossing point."""
    t1 = g1.tangent_at(at)
    t2 = g2.tangent_at(at)
    cross = abs(t1.real * t2.imag - t1.imag * t2.real)
    dot = abs(t1.real * t2.real + t1.imag * t2.imag)
    return math.atan2(cross, dot)


def common_perpendicular(g1: Geodesic, g2: Geodesic):
    """Common perpendicular of two geodesics.

    Returns a PerpResult for disjoint geodesics, a Crossing when the ideal
    endpoints interleave, and a SharedEndpoint when they share an endpoint
    within tolerance (including near-tangency).  Symmetric in its arguments:
    the computation runs in a canonical argument order, so swapping the
    inputs swaps the feet and reproduces the length bit-for-bit.
    """
    shared = _shares_endpoint(g1, g2)
    if shared is not None:
        return shared
    swap = _geodesic_sort_key(g2) < _geodesic_sort_key(g1)
    if swap:
        res = common_perpendicular(g2, g1)
        if isinstance(res, PerpResult):
            return PerpResult(
                length=res.length,
                foot1=res.foot2,
                foot2=res.foot1,
                point1=res.point2,
                point2=res.point1,
                carrier=res.carrier,
            )
        return res
    if geodesics_cross(g1, g2):
        return Crossing(crossing_point(g1, g2))

    carrier = _perpendicular_carrier(g1, g2)
    p1 = _perp_foot(carrier, g1)
    p2 = _perp_foot(carrier, g2)
    length = point_distance(p1, p2)
    if length <= SHARED_ENDPOINT_TOL:
        # Near-tangency below resolution: report as shared endpoint.
        return SharedEndpoint(g1.e1)
    return PerpResult(
        length=length,
        foot1=g1.param_of(p1),
        foot2=g2.param_of(p2),
        point1=p1,
        point2=p2,
        carrier=carrier,
    )


def _geodesic_sort_key(g: Geodesic):
    return (0 if g.vertical else 1, g.e1, g.e2 if not g.vertical else 0.0)


def _perp_foot(carrier: Geodesic, g: Geodesic) -> complex:
    """Point where ``carrier`` meets the geodesic ``g`` it is orthogonal to.

    Exploits orthogonality: for two orthogonal circles the center distance
    satisfies (m - x0)^2 = rho^2 + r^2, which removes the cancellation of the
    generic two-circle intersection.
    """
    if carrier.vertical:
        # g is a semicircle centred at the carrier's foot; meet at its top.
        return complex(g.center, g.radius)
    x0, rho = carrier.center, carrier.radius
    if g.vertical:
        # The carrier is centred at g's foot; meet at the carrier's top.
        return complex(g.e1, rho)
    m, r = g.center, g.radius
    hyp = math.hypot(rho, r)
    x = m - r * r / (m - x0)
    y = r * rho / hyp
    return complex(x, y)


def _perpendicular_carrier(g1: Geodesic, g2: Geodesic) -> Geodesic:
    """Carrier geodesic orthogonal to two disjoint geodesics."""
    if g1.vertical and g2.vertical:
        raise SameCarrierError("two vertical geodesics share the endpoint at infinity")
    if g1.vertical or g2.vertical:
        v, c = (g1, g2) if g1.vertical else (g2, g1)
        x = v.e1
        m, r = c.center, c.radius
        rho2 = (x - m) ** 2 - r * r
        if rho2 <= 0:
            raise DomainError("geodesics cross; no common perpendicular")
        rho = math.sqrt(rho2)
        return Geodesic(x - rho, x + rho)
    m1, r1 = g1.center, g1.radius
    m2, r2 = g2.center, g2.radius
    if m1 == m2:
        # Concentric semicircles: the vertical ray through the center.
        return Geodesic(m1, INF)
    x0 = ((m1 * m1 - r1 * r1) - (m2 * m2 - r2 * r2)) / (2.0 * (m1 - m2))
    rho2 = (x0 - m1) ** 2 - r1 * r1
    if rho2 <= 0:
        raise DomainError("geodesics cross; no common perpendicular")
    rho = math.sqrt(rho2)
    return Geodesic(x0 - rho, x0 + rho)


@dataclass(frozen=True)
class GeodesicSegment:
    """Closed sub-arc of a carrier geodesic given by a parameter interval."""

    carrier: Geodesic
    t1: float
    t2: float

    def __post_init__(self):
        if not (self.t1 < self.t2):
            raise DomainError(
                f"degenerate parameter interval [{self.t1}, {self.t2}]"
            )

    @property
    def length(self) -> float:
        return self.t2 - self.t1

    def endpoints(self) -> tuple[complex, complex]:
        return (self.carrier.point_at(self.t1), self.carrier.point_at(self.t2))


def segments_cross(s1: GeodesicSegment, s2: GeodesicSegment) -> bool:
    """Whether two segments on distinct carriers cross transversally, with the
    crossing parameter strictly inside both intervals (tolerance 1e-10)."""
    if s1.carrier == s2.carrier:
        raise SameCarrierError("segments lie on the same carrier geodesic")
    if not geodesics_cross(s1.carrier, s2.carrier):
        return False
    p = crossing_point(s1.carrier, s2.carrier)
    u = s1.carrier.param_of(p)
    v = s2.carrier.param_of(p)
    eps = SEGMENT_STRICT_TOL
    return (
        s1.t1 + eps < u < s1.t2 - eps and s2.t1 + eps < v < s2.t2 - eps
    )
