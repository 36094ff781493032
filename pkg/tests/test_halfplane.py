"""Upper half-plane geometry: isometries, distances, perpendiculars."""

import math
import random

import pytest

from orthospec.errors import DomainError, NotHyperbolicError, SameCarrierError
from orthospec import halfplane as hp


def random_isometry(rng):
    """Random hyperbolic-ish matrix as a product of a rotation, a translation,
    and another rotation (Cartan decomposition reaches everything)."""
    m = hp.Isometry.rotation(rng.uniform(0, 2 * math.pi))
    m = m.compose(hp.Isometry.translation(rng.uniform(-2.0, 2.0)))
    return m.compose(hp.Isometry.rotation(rng.uniform(0, 2 * math.pi)))


def random_point(rng):
    return complex(rng.uniform(-3, 3), rng.uniform(0.2, 4.0))


def golden_section(f, a, b, tol=1e-12):
    phi = (math.sqrt(5) - 1) / 2
    c = b - phi * (b - a)
    d = a + phi * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - phi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + phi * (b - a)
            fd = f(d)
    return 0.5 * (a + b)


def min_distance_oracle(g1, g2):
    """Nested golden-section minimization of the point distance."""

    def inner(t):
        p = g1.point_at(t)

        def over_s(s):
            return hp.point_distance(p, g2.point_at(s))

        s_best = golden_section(over_s, -40.0, 40.0, tol=1e-11)
        return over_s(s_best)

    t_best = golden_section(inner, -40.0, 40.0, tol=1e-11)
    return inner(t_best)


class TestApply:
    def test_identity_fixes(self):
        m = hp.Isometry.identity()
        assert hp.apply(m, 1.25) == 1.25
        assert hp.apply(m, hp.INF) == hp.INF
        assert hp.apply(m, 0.3 + 1.7j) == 0.3 + 1.7j
        g = hp.Geodesic(-1.0, 2.0)
        assert hp.apply(m, g) == g

    def test_diagonal_fixed_points(self):
        m = hp.Isometry(2.0, 0.0, 0.0, 0.5)
        assert hp.apply(m, 0.0) == 0.0
        assert hp.apply(m, hp.INF) == hp.INF

    def test_preserves_distance(self):
        rng = random.Random(7)
        for _ in range(100):
            m = random_isometry(rng)
            p, q = random_point(rng), random_point(rng)
            before = hp.point_distance(p, q)
            after = hp.point_distance(m.apply_point(p), m.apply_point(q))
            assert after == pytest.approx(before, abs=1e-12)


class TestTranslationLength:
    def test_diagonal(self):
        lam = 3.7
        m = hp.Isometry(lam, 0.0, 0.0, 1.0 / lam)
        assert hp.translation_length(m) == pytest.approx(2 * math.log(lam), abs=1e-12)

    def test_trace_three(self):
        m = hp.Isometry(2.0, 1.0, 1.0, 1.0)  # trace 3
        assert hp.translation_length(m) == pytest.approx(
            2 * math.acosh(1.5), abs=1e-13
        )

    def test_elliptic_error(self):
        m = hp.Isometry.rotation(1.0)
        with pytest.raises(NotHyperbolicError) as err:
            hp.translation_length(m)
        assert err.value.kind == "elliptic"

    def test_parabolic_error(self):
        m = hp.Isometry(1.0, 1.0, 0.0, 1.0)
        with pytest.raises(NotHyperbolicError) as err:
            hp.translation_length(m)
        assert err.value.kind == "parabolic"

    def test_conjugation_invariant(self):
        rng = random.Random(8)
        m = hp.Isometry.translation(1.3)
        for _ in range(100):
            g = random_isometry(rng)
            conj = g.compose(m).compose(g.inverse())
            assert hp.translation_length(conj) == pytest.approx(1.3, abs=1e-12)


class TestAxis:
    def test_diagonal_axis(self):
        m = hp.Isometry(2.0, 0.0, 0.0, 0.5)
        assert hp.axis(m) == hp.Geodesic(0.0, hp.INF)

    def test_axis_invariant(self):
        rng = random.Random(9)
        for _ in range(50):
            g = random_isometry(rng)
            m = g.compose(hp.Isometry.translation(2.1)).compose(g.inverse())
            ax = hp.axis(m)
            img = m.apply_geodesic(ax)
            assert _geodesic_close(ax, img, 1e-10)

    def test_equivariance(self):
        rng = random.Random(10)
        m = hp.Isometry.translation(1.7)
        for _ in range(100):
            g = random_isometry(rng)
            conj = g.compose(m).compose(g.inverse())
            expected = g.apply_geodesic(hp.axis(m))
            assert _geodesic_close(hp.axis(conj), expected, 1e-10)

    def test_fixed_points_against_root_oracle(self):
        rng = random.Random(11)
        for _ in range(50):
            g = random_isometry(rng)
            m = g.compose(hp.Isometry.translation(rng.uniform(0.5, 3))).compose(
                g.inverse()
            )
            ax = hp.axis(m)
            for x in (ax.e1, ax.e2):
                if x == hp.INF:
                    assert abs(m.c) < 1e-9
                else:
                    # Fixed point equation c x^2 + (d - a) x - b = 0.
                    res = m.c * x * x + (m.d - m.a) * x - m.b
                    assert abs(res) <= 1e-10 * max(1.0, x * x)


def _geodesic_close(g1, g2, tol):
    def close(a, b):
        if a == hp.INF or b == hp.INF:
            return a == b
        return abs(a - b) <= tol * max(1.0, abs(a), abs(b))

    return (close(g1.e1, g2.e1) and close(g1.e2, g2.e2)) or (
        close(g1.e1, g2.e2) and close(g1.e2, g2.e1)
    )


class TestPointDistance:
    def test_vertical(self):
        assert hp.point_distance(1j, 3j) == pytest.approx(math.log(3), abs=1e-14)

    def test_symmetric(self):
        rng = random.Random(12)
        for _ in range(50):
            p, q = random_point(rng), random_point(rng)
            assert hp.point_distance(p, q) == hp.point_distance(q, p)

    def test_triangle_inequality(self):
        rng = random.Random(13)
        for _ in range(1000):
            p, q, r = (random_point(rng) for _ in range(3))
            assert hp.point_distance(p, r) <= hp.point_distance(
                p, q
            ) + hp.point_distance(q, r) + 1e-12

    def test_zero_iff_equal(self):
        p = 0.3 + 0.9j
        assert hp.point_distance(p, p) == 0.0
        assert hp.point_distance(p, p + 0.1) > 0.0

    def test_domain(self):
        with pytest.raises(DomainError):
            hp.point_distance(1j, 1.0 + 0j)


class TestCommonPerpendicular:
    def test_concentric_semicircles(self):
        for radius in (2.0, 5.0, 77.0):
            res = hp.common_perpendicular(
                hp.Geodesic(-1.0, 1.0), hp.Geodesic(-radius, radius)
            )
            assert isinstance(res, hp.PerpResult)
            assert res.length == pytest.approx(math.log(radius), abs=1e-12)
            assert res.point1 == pytest.approx(1j, abs=1e-12)
            assert res.point2 == pytest.approx(radius * 1j, abs=1e-12)

    def test_crossing(self):
        res = hp.common_perpendicular(hp.Geodesic(-1, 1), hp.Geodesic(0, hp.INF))
        assert isinstance(res, hp.Crossing)

    def test_shared_endpoint(self):
        res = hp.common_perpendicular(hp.Geodesic(0, 1), hp.Geodesic(0, hp.INF))
        assert isinstance(res, hp.SharedEndpoint)

    def test_symmetry_bit_for_bit(self):
        rng = random.Random(14)
        for _ in range(200):
            g1, g2 = _random_disjoint_pair(rng)
            r12 = hp.common_perpendicular(g1, g2)
            r21 = hp.common_perpendicular(g2, g1)
            assert r12.length == r21.length
            assert r12.foot1 == r21.foot2 and r12.foot2 == r21.foot1

    def test_against_minimization_oracle(self):
        rng = random.Random(15)
        for _ in range(120):
            g1, g2 = _random_disjoint_pair(rng)
            res = hp.common_perpendicular(g1, g2)
            assert isinstance(res, hp.PerpResult)
            assert res.length == pytest.approx(
                min_distance_oracle(g1, g2), abs=1e-8
            )

    def test_feet_orthogonality(self):
        rng = random.Random(16)
        for _ in range(100):
            g1, g2 = _random_disjoint_pair(rng)
            res = hp.common_perpendicular(g1, g2)
            a1 = hp.crossing_angle(res.carrier, g1, res.point1)
            a2 = hp.crossing_angle(res.carrier, g2, res.point2)
            assert a1 == pytest.approx(math.pi / 2, abs=1e-9)
            assert a2 == pytest.approx(math.pi / 2, abs=1e-9)

    def test_deck_invariance(self):
        # Translating one geodesic by an isometry fixing the other's carrier
        # preserves the perpendicular length.
        m = hp.Isometry.translation(1.1)  # axis (0, inf)
        axis = hp.Geodesic(0.0, hp.INF)
        g = hp.Geodesic(1.0, 2.0)
        l1 = hp.common_perpendicular(axis, g).length
        l2 = hp.common_perpendicular(axis, m.apply_geodesic(g)).length
        assert l2 == pytest.approx(l1, abs=1e-10)


def _random_disjoint_pair(rng):
    """Two disjoint geodesics: partition four sorted reals into nested or
    side-by-side pairs, occasionally using a vertical ray."""
    if rng.random() < 0.15:
        xs = sorted(rng.uniform(-5, 5) for _ in range(3))
        if rng.random() < 0.5:
            return hp.Geodesic(xs[0], hp.INF), hp.Geodesic(xs[1], xs[2])
        return hp.Geodesic(xs[1], xs[2]), hp.Geodesic(xs[0], hp.INF)
    xs = sorted(rng.uniform(-5, 5) for _ in range(4))
    if min(xs[1] - xs[0], xs[2] - xs[1], xs[3] - xs[2]) < 1e-3:
        return _random_disjoint_pair(rng)
    if rng.random() < 0.5:
        return hp.Geodesic(xs[0], xs[1]), hp.Geodesic(xs[2], xs[3])
    return hp.Geodesic(xs[0], xs[3]), hp.Geodesic(xs[1], xs[2])


class TestSegments:
    def test_crossing_at_i(self):
        s1 = hp.GeodesicSegment(hp.Geodesic(-1, 1), -0.7, 0.7)
        s2 = hp.GeodesicSegment(hp.Geodesic(0, hp.INF), -0.5, 0.5)
        assert hp.segments_cross(s1, s2) is True

    def test_disjoint_carriers(self):
        s1 = hp.GeodesicSegment(hp.Geodesic(-2, -1), -5, 5)
        s2 = hp.GeodesicSegment(hp.Geodesic(1, 2), -5, 5)
        assert hp.segments_cross(s1, s2) is False

    def test_crossing_outside_interval(self):
        s1 = hp.GeodesicSegment(hp.Geodesic(-1, 1), 1.0, 2.0)
        s2 = hp.GeodesicSegment(hp.Geodesic(0, hp.INF), -0.5, 0.5)
        assert hp.segments_cross(s1, s2) is False

    def test_same_carrier(self):
        s1 = hp.GeodesicSegment(hp.Geodesic(-1, 1), -1, 0)
        s2 = hp.GeodesicSegment(hp.Geodesic(-1, 1), 0.5, 1.5)
        with pytest.raises(SameCarrierError):
            hp.segments_cross(s1, s2)

    def test_against_dense_sampling(self):
        rng = random.Random(17)
        for _ in range(200):
            c1 = hp.Geodesic(*sorted((rng.uniform(-3, 0), rng.uniform(0, 3))))
            x = sorted((rng.uniform(-3, 3), rng.uniform(-3, 3)))
            if abs(x[1] - x[0]) < 1e-2:
                continue
            c2 = hp.Geodesic(x[0], x[1])
            if c1 == c2:
                continue
            t = sorted((rng.uniform(-2, 2), rng.uniform(-2, 2)))
            s = sorted((rng.uniform(-2, 2), rng.uniform(-2, 2)))
            if t[1] - t[0] < 1e-2 or s[1] - s[0] < 1e-2:
                continue
            seg1 = hp.GeodesicSegment(c1, t[0], t[1])
            seg2 = hp.GeodesicSegment(c2, s[0], s[1])
            expected = _sampling_cross_oracle(seg1, seg2)
            if expected is None:
                continue  # too close to an endpoint to decide robustly
            assert hp.segments_cross(seg1, seg2) == expected


def _sampling_cross_oracle(seg1, seg2, n=4000):
    """Count sign changes of the side of seg2's carrier along seg1, then check
    the crossing parameter against seg2's interval."""

    def side(z, g):
        if g.vertical:
            return z.real - g.e1
        return abs(z - g.center) ** 2 - g.radius**2

    prev = None
    crossing_t = None
    for k in range(n + 1):
        t = seg1.t1 + (seg1.t2 - seg1.t1) * k / n
        sgn = side(seg1.carrier.point_at(t), seg2.carrier)
        if prev is not None and sgn * prev < 0:
            crossing_t = t
            break
        prev = sgn
    if crossing_t is None:
        return False
    p = hp.crossing_point(seg1.carrier, seg2.carrier)
    u = seg1.carrier.param_of(p)
    v = seg2.carrier.param_of(p)
    margin = 1e-6
    if (
        abs(u - seg1.t1) < margin
        or abs(u - seg1.t2) < margin
        or abs(v - seg2.t1) < margin
        or abs(v - seg2.t2) < margin
    ):
        return None
    return seg1.t1 < u < seg1.t2 and seg2.t1 < v < seg2.t2


class TestOrientationPreservation:
    def test_cross_ratio_sign_preserved(self):
        rng = random.Random(18)
        for _ in range(100):
            m = random_isometry(rng)
            pts = sorted(rng.uniform(-4, 4) for _ in range(4))
            before = _cross_ratio_sign(*pts)
            imgs = [m.apply_ideal(x) for x in pts]
            if any(abs(v) > 1e8 or v == hp.INF for v in imgs):
                continue
            after = _cross_ratio_sign(*imgs)
            assert before == after


def _cross_ratio_sign(a, b, c, d):
    return math.copysign(
        1.0, ((c - a) * (d - b)) / ((c - b) * (d - a))
    )
