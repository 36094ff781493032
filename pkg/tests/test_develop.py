"""Development integrity: placements, generators, holonomies, axes."""

import math
import random

import pytest

from orthospec.errors import PrecisionError, ValidationError
from orthospec import develop as dv
from orthospec import surface as sf
from orthospec.halfplane import Isometry, point_distance


def build(name, coords):
    return sf.build_surface(sf.builtin(name), coords)


class TestDevelop:
    def test_torus_generator_count_and_holonomy(self):
        d = dv.develop(build("one_holed_torus", (1, 1, 1)))
        assert len(d.generators) == 2
        assert d.seeds[0].length == pytest.approx(6 * 1.7049128323580139, abs=1e-8)

    def test_pants_three_seeds(self):
        d = dv.develop(build("pair_of_pants", (1, 1, 1)))
        assert len(d.generators) == 2
        assert len(d.seeds) == 3
        for seed in d.seeds:
            assert seed.length == pytest.approx(2 * 1.7049128323580139, abs=1e-8)

    def test_canonical_base_placement(self):
        d = dv.develop(build("one_holed_torus", (0.9, 1.2, 1.5)))
        # First corner at i, first arc side up the imaginary axis.
        assert d.hexes[0].corners[0] == pytest.approx(1j, abs=1e-14)
        assert d.hexes[0].corners[1] == pytest.approx(
            1j * math.exp(0.9), abs=1e-12
        )
        assert d.placements[0] == Isometry.identity()

    def test_verify_reports_pass(self):
        rng = random.Random(42)
        for _ in range(25):
            name = rng.choice(("one_holed_torus", "pair_of_pants"))
            coords = tuple(rng.uniform(0.3, 3.0) for _ in range(3))
            rep = dv.verify_development(dv.develop(build(name, coords)))
            assert rep.passed, (name, coords, rep)

    def test_tree_independence(self):
        rng = random.Random(43)
        for _ in range(10):
            name = rng.choice(("one_holed_torus", "pair_of_pants"))
            coords = tuple(rng.uniform(0.3, 3.0) for _ in range(3))
            s = build(name, coords)
            d1 = dv.develop(s)
            d2 = dv.develop(s, root=1, slot_order=(2, 1, 0))
            for s1, s2 in zip(d1.seeds, d2.seeds):
                assert abs(s1.length - s2.length) <= 1e-8

    def test_fault_injection(self):
        d = dv.develop(build("one_holed_torus", (1, 1, 1)))
        bad = dv.perturb_generator(d, 0, 1e-3)
        rep = dv.verify_development(bad)
        assert not rep.passed
        # The 1e-3 entry perturbation shows up at the same order of magnitude.
        assert 1e-5 < max(rep.generator_residuals) < 1e-1

    def test_report_deterministic(self):
        d = dv.develop(build("pair_of_pants", (0.8, 1.1, 1.6)))
        r1 = dv.verify_development(d)
        r2 = dv.verify_development(d)
        assert r1 == r2

    def test_invalid_root(self):
        with pytest.raises(ValidationError):
            dv.develop(build("one_holed_torus", (1, 1, 1)), root=5)


class TestSeeds:
    def test_seed_count(self):
        assert len(dv.boundary_lifts_seed(dv.develop(build("one_holed_torus", (1, 1, 1))))) == 1
        assert len(dv.boundary_lifts_seed(dv.develop(build("pair_of_pants", (1, 1, 1))))) == 3

    def test_axis_invariant_under_holonomy(self):
        d = dv.develop(build("pair_of_pants", (0.7, 1.9, 1.1)))
        for _, axis, holonomy in dv.boundary_lifts_seed(d):
            image = holonomy.apply_geodesic(axis)
            for x, y in ((axis.e1, image.e1), (axis.e2, image.e2)):
                if x == math.inf or y == math.inf:
                    assert x == y
                else:
                    assert abs(x - y) <= 1e-10 * max(1.0, abs(x))

    def test_boundary_segment_on_axis(self):
        rng = random.Random(44)
        for _ in range(10):
            name = rng.choice(("one_holed_torus", "pair_of_pants"))
            coords = tuple(rng.uniform(0.4, 2.5) for _ in range(3))
            d = dv.develop(build(name, coords))
            for seed in d.seeds:
                comp = d.surface.boundary[seed.component]
                h, k = comp[0].hexagon, comp[0].slot
                p = seed.charts[0].apply_point(
                    d.hexes[h].corners[(2 * k + 1) % 6]
                )
                q = seed.charts[0].apply_point(
                    d.hexes[h].corners[(2 * k + 2) % 6]
                )
                assert seed.axis.distance_to(p) <= 1e-8
                assert seed.axis.distance_to(q) <= 1e-8

    def test_holonomy_word_consistency(self):
        d = dv.develop(build("one_holed_torus", (0.8, 1.3, 2.0)))
        seed = d.seeds[0]
        # The one-holed torus boundary is a commutator word of length 4.
        assert len(seed.word) == 4
        assert sorted(abs(l) for l in seed.word) == [1, 1, 2, 2]
        recomposed = d.word_to_isometry(seed.word)
        diff = recomposed.compose(seed.holonomy.inverse())
        assert diff.distance_from_identity() <= 1e-10

    def test_period_reach_consistency(self):
        d = dv.develop(build("pair_of_pants", (1.2, 0.6, 2.3)))
        for seed in d.seeds:
            lo = seed.axis.point_at(seed.window_center - seed.length / 2)
            hi = seed.axis.point_at(seed.window_center + seed.length / 2)
            expected = max(
                point_distance(d.base_point, lo), point_distance(d.base_point, hi)
            )
            assert seed.period_reach == pytest.approx(expected, abs=1e-12)


class TestPingPong:
    @pytest.mark.parametrize("name", ["one_holed_torus", "pair_of_pants"])
    def test_no_short_word_near_identity(self, name):
        d = dv.develop(build(name, (1, 1, 1)))
        gens = d.generator_letters()

        def walk(prefix, m, depth):
            if depth > 0:
                assert m.normalized().distance_from_identity() > 1e-6, prefix
            if depth == 8:
                return
            for letter in range(len(gens)):
                code = letter + 1 if letter < d.rank else -(letter - d.rank + 1)
                if prefix and prefix[-1] == -code:
                    continue
                walk(prefix + [code], m.compose(gens[letter]), depth + 1)

        walk([], Isometry.identity(), 0)

    def test_tiles_disjoint(self):
        # No nontrivial element maps the base point back into the domain's
        # inner half (crude overlap check).
        from orthospec._ball import compute_ball

        d = dv.develop(build("one_holed_torus", (0.9, 1.4, 1.9)))
        ball = compute_ball(list(d.generators), d.base_point, 8.0)
        for idx in range(1, len(ball)):
            m = ball.isometry(idx)
            moved = point_distance(d.base_point, m.apply_point(d.base_point))
            assert moved > 0.3
