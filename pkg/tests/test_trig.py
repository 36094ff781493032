"""Kernel tests: closed-form solvers against extended-precision oracles."""

import math
import random

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from orthospec.errors import DomainError
from orthospec import trig

mpmath.mp.dps = 50


def mp_boundary_side(a, b, c):
    a, b, c = mpmath.mpf(a), mpmath.mpf(b), mpmath.mpf(c)
    return mpmath.acosh(
        (mpmath.cosh(c) + mpmath.cosh(a) * mpmath.cosh(b))
        / (mpmath.sinh(a) * mpmath.sinh(b))
    )


# Frozen extended-precision oracle values.
BOUNDARY_111 = 1.7049128323580139  # mp_boundary_side(1, 1, 1)
TAU_BOUND_2_4 = 2.1727477060199817  # 2 asinh(cosh(1)/sinh(1))
B5 = 0.026952195877213268  # 2 asinh(1/sinh(5))
HALF_COLLAR_4 = 0.27234146891181596  # asinh(1/sinh(2))
TRIRECT = 1.3181160716528177  # arccos(1/4)

side_lengths = st.floats(min_value=0.1, max_value=5.0, allow_nan=False)


class TestHexagonBoundarySide:
    def test_regular_fixed_point(self):
        s = math.acosh(2.0)
        assert trig.hexagon_boundary_side(s, s, s) == pytest.approx(s, abs=1e-12)

    def test_unit_hexagon_oracle(self):
        value = trig.hexagon_boundary_side(1.0, 1.0, 1.0)
        assert value == pytest.approx(float(mp_boundary_side(1, 1, 1)), abs=1e-14)
        assert value == pytest.approx(BOUNDARY_111, abs=1e-12)

    @given(a=side_lengths, b=side_lengths, c=side_lengths)
    def test_symmetric_in_first_two(self, a, b, c):
        assert trig.hexagon_boundary_side(a, b, c) == trig.hexagon_boundary_side(
            b, a, c
        )

    @pytest.mark.parametrize("bad", [0.0, -1.0, math.inf, math.nan])
    def test_domain_errors(self, bad):
        with pytest.raises(DomainError):
            trig.hexagon_boundary_side(bad, 1.0, 1.0)


class TestSolveHexagon:
    def test_regular(self):
        s = math.acosh(2.0)
        hexagon = trig.solve_hexagon(s, s, s)
        for side in hexagon.sides_cyclic():
            assert side == pytest.approx(s, abs=1e-12)

    def test_unit(self):
        hexagon = trig.solve_hexagon(1.0, 1.0, 1.0)
        assert hexagon.boundary_sides == pytest.approx(
            (BOUNDARY_111,) * 3, abs=1e-12
        )

    def test_cyclic_relabeling(self):
        h1 = trig.solve_hexagon(0.7, 1.2, 2.3)
        h2 = trig.solve_hexagon(1.2, 2.3, 0.7)
        assert h2.boundary_sides == pytest.approx(
            (h1.b1, h1.b2, h1.b0), abs=1e-14
        )

    @given(a0=side_lengths, a1=side_lengths, a2=side_lengths)
    @settings(max_examples=300)
    def test_relation_residuals(self, a0, a1, a2):
        hexagon = trig.solve_hexagon(a0, a1, a2)
        for k in range(3):
            assert hexagon.relation_residual(k) <= 1e-10


class TestTrirectangle:
    def test_degenerate_limit(self):
        assert trig.trirectangle_angle(1e-9, 1.0) == pytest.approx(
            math.pi / 2, abs=1e-8
        )

    def test_oracle_value(self):
        phi = trig.trirectangle_angle(math.atanh(0.5), math.atanh(0.5))
        assert phi == pytest.approx(TRIRECT, abs=1e-12)
        assert phi == pytest.approx(math.acos(0.25), abs=1e-14)

    @given(s=side_lengths, t=side_lengths)
    def test_symmetric(self, s, t):
        assert trig.trirectangle_angle(s, t) == trig.trirectangle_angle(t, s)

    @given(s=side_lengths, t=side_lengths)
    def test_range(self, s, t):
        phi = trig.trirectangle_angle(s, t)
        assert 0.0 < phi < math.pi / 2


class TestOctagonPerpendicular:
    def test_reflection_symmetry(self):
        rng = random.Random(20240901)
        for _ in range(1000):
            vals = [rng.uniform(0.1, 3.0) for _ in range(5)]
            a, x, y, z, t = vals
            left = trig.octagon_perpendicular(a, x, y, z, t)
            right = trig.octagon_perpendicular(a, t, z, y, x)
            assert abs(left - right) <= 1e-10 * max(1.0, left)

    def test_inverse_composition_roundtrip(self):
        # Build octagons by choosing beta and the four sides freely, derive
        # alpha through the two hexagon pairs of the other splitting, and
        # close the loop.
        def alpha_from_beta(beta, d1, d2, d3, d4):
            v = mp_boundary_side(d4, beta, d1)
            vp = mp_boundary_side(d3, beta, d2)
            cosh_alpha = mpmath.sinh(d3) * mpmath.sinh(d4) * mpmath.cosh(
                v + vp
            ) - mpmath.cosh(d3) * mpmath.cosh(d4)
            return float(mpmath.acosh(cosh_alpha))

        rng = random.Random(999)
        for _ in range(1000):
            beta = rng.uniform(0.2, 3.0)
            d = [rng.uniform(0.2, 3.0) for _ in range(4)]
            alpha = alpha_from_beta(beta, *d)
            assert trig.octagon_perpendicular(alpha, *d) == pytest.approx(
                beta, abs=1e-9
            )

    def test_monotone_decreasing_in_alpha(self):
        alphas = [0.3 + 0.2 * k for k in range(12)]
        values = [
            trig.octagon_perpendicular(a, 0.8, 1.1, 0.6, 1.4) for a in alphas
        ]
        assert all(u > v for u, v in zip(values, values[1:]))


class TestBasmajianTerm:
    def test_unit_sinh(self):
        l = math.asinh(1.0)
        assert trig.basmajian_term(l) == pytest.approx(2 * math.asinh(1.0), abs=1e-14)

    def test_decreasing(self):
        assert trig.basmajian_term(1.0) > trig.basmajian_term(2.0)
        sample = [0.1 * k for k in range(1, 60)]
        values = [trig.basmajian_term(x) for x in sample]
        assert all(u > v for u, v in zip(values, values[1:]))
        assert all(v > 0 for v in values)

    def test_b5_oracle(self):
        assert trig.basmajian_term(5.0) == pytest.approx(B5, abs=1e-12)


class TestOrthosystoleBoundaryBound:
    def test_torus_coefficient(self):
        # g=1, b=1 gives 24 + 12 - 24 = 12.
        t = 0.7
        assert trig.orthosystole_boundary_bound(t, 1, 1) == pytest.approx(
            12 * math.asinh(1.0 / (2 * math.sinh(2 * t))), abs=1e-14
        )

    def test_decreasing_in_t(self):
        values = [
            trig.orthosystole_boundary_bound(0.1 * k, 0, 3) for k in range(1, 30)
        ]
        assert all(u > v for u, v in zip(values, values[1:]))

    def test_algebraic_identity(self):
        t = math.asinh(0.5) / 2.0
        assert trig.orthosystole_boundary_bound(t, 2, 2) == pytest.approx(
            (24 * 2 + 12 * 2 - 24) * math.asinh(1.0), abs=1e-12
        )

    @pytest.mark.parametrize("g,b", [(0, 1), (0, 2), (-1, 3), (1, 0)])
    def test_bad_topology(self, g, b):
        with pytest.raises(DomainError):
            trig.orthosystole_boundary_bound(1.0, g, b)


class TestPantsTauBound:
    def test_oracle_value(self):
        assert trig.pants_tau_bound(2.0, 4.0) == pytest.approx(
            TAU_BOUND_2_4, abs=1e-12
        )
        assert trig.pants_tau_bound(2.0, 4.0) == pytest.approx(
            2 * math.asinh(math.cosh(1.0) / math.sinh(1.0)), abs=1e-14
        )

    def test_increasing_in_alpha(self):
        values = [trig.pants_tau_bound(0.5 + 0.3 * k, 3.0) for k in range(10)]
        assert all(u < v for u, v in zip(values, values[1:]))

    def test_decreasing_in_gamma(self):
        values = [trig.pants_tau_bound(3.0, 0.5 + 0.3 * k) for k in range(10)]
        assert all(u > v for u, v in zip(values, values[1:]))


class TestHalfCollarWidth:
    def test_self_dual(self):
        l = 2 * math.asinh(1.0)
        assert trig.half_collar_width(l) == pytest.approx(math.asinh(1.0), abs=1e-14)

    @given(x=st.floats(min_value=0.05, max_value=4.0))
    def test_involution(self, x):
        assert trig.half_collar_width(
            2 * trig.half_collar_width(2 * x)
        ) == pytest.approx(x, rel=1e-10)

    def test_oracle_value(self):
        assert trig.half_collar_width(4.0) == pytest.approx(HALF_COLLAR_4, abs=1e-12)


class TestCollarTest:
    def test_ortho_short(self):
        assert trig.collar_test(0.25, 0.25, "ortho") is False

    def test_closed_boundary_case(self):
        l = 2 * math.asinh(1.0)
        assert trig.collar_test(l, l, "closed") is False

    def test_ortho_unit(self):
        assert trig.collar_test(1.0, 1.0, "ortho") is True

    def test_unknown_kind(self):
        with pytest.raises(DomainError):
            trig.collar_test(1.0, 1.0, "diagonal")


def test_deterministic():
    args = (0.7312, 1.492, 2.0031)
    assert trig.hexagon_boundary_side(*args) == trig.hexagon_boundary_side(*args)
    h1, h2 = trig.solve_hexagon(*args), trig.solve_hexagon(*args)
    assert h1 == h2
