"""Developing a hexagon-decomposed surface into the upper half-plane.

Each hexagon is first built canonically (first corner at i, first arc side
running up the imaginary axis) by walking its six sides with a moving frame,
turning left by a right angle at every corner; the walk must close up to
+-identity, which is checked.  Hexagons are then placed by breadth-first
unfolding along a spanning tree of the dual graph, composing edge-crossing
isometries.  The pairing isometries of the non-tree arcs generate the
holonomy group (a free group of rank 2g + b - 1); the boundary walks unfold
to straight geodesics and their return maps are the boundary holonomies,
whose axes seed the orthogeodesic search.

Failure is loud: closure or matching residuals above tolerance raise instead
of producing a silently wrong domain.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .errors import PrecisionError, ValidationError
from .halfplane import (
    Geodesic,
    Isometry,
    axis as axis_of,
    det_noise_floor,
    point_distance,
    translation_length,
)
from .surface import GeometricSurface, Slot, _boundary_walks

# A placed hexagon whose closing side mismatches by more than this aborts.
CLOSURE_TOL = 1e-8
GENERATOR_MATCH_TOL = 1e-9
HOLONOMY_LENGTH_TOL = 1e-8
AXIS_INCIDENCE_TOL = 1e-8

_QUARTER_TURN = Isometry.rotation(math.pi / 2.0)
_HALF_TURN = Isometry.rotation(math.pi)


@dataclass(frozen=True)
class CanonicalHexagon:
    """A solved hexagon realized at the canonical position.

    corners[j] starts side j in the cyclic order a0, b0, a1, b1, a2, b2;
    slot_frames[k] maps the canonical start frame to the frame at the start
    of arc side k, pointing along it.
    """

    corners: tuple[complex, ...]
    slot_frames: tuple[Isometry, Isometry, Isometry]
    closure_residual: float


def realize_hexagon(sides: tuple[float, ...]) -> CanonicalHexagon:
    """Walk the six sides with left quarter-turns at the corners."""
    frame = Isometry.identity()
    corners = []
    frames = []
    for j, length in enumerate(sides):
        frames.append(frame)
        corners.append(frame.apply_point(1j))
        frame = frame.compose(Isometry.translation(length)).compose(_QUARTER_TURN)
    residual = frame.distance_from_identity()
    return CanonicalHexagon(
        corners=tuple(corners),
        slot_frames=(frames[0], frames[2], frames[4]),
        closure_residual=residual,
    )


def _edge_crossing(
    hexes: tuple[CanonicalHexagon, ...],
    arc_length: float,
    src: Slot,
    dst: Slot,
) -> Isometry:
    """Isometry positioning hexagon dst's canonical copy adjacent to hexagon
    src's canonical copy across the glued arc, orientation reversing."""
    h1, k1 = src
    h2, k2 = dst
    n1 = hexes[h1].slot_frames[k1]
    n2 = hexes[h2].slot_frames[k2]
    return (
        n1.compose(Isometry.translation(arc_length))
        .compose(_HALF_TURN)
        .compose(n2.inverse())
    )


@dataclass(frozen=True)
class SeedLift(object):
    """One lift of a boundary component: the axis of its holonomy.

    The developed boundary segments of the fundamental domain's walk lie on
    the axis starting at parameter ``origin`` and running in direction
    ``direction`` (+1 toward increasing axis parameter); ``charts`` maps the
    canonical copy of each walk segment's hexagon onto its unfolded position,
    and ``word`` is the generator word (1-based signed letters) read off the
    walk, whose composition is the holonomy.
    """

    component: int
    axis: Geodesic
    holonomy: Isometry
    length: float
    origin: float
    direction: float
    charts: tuple[Isometry, ...]
    word: tuple[int, ...]
    # Canonical fundamental-period window on the axis, centred (in parameter)
    # on the projection of the domain base point.  period_reach is the max
    # distance from the base point to the window; it, not the domain radius,
    # bounds how far a window-canonical orthogeodesic foot can sit from the
    # base point, so it drives the enumeration pruning margin.
    window_center: float = 0.0
    period_reach: float = 0.0

    def position_of(self, z: complex) -> float:
        """Position in [0, length) along the component of a point on (or
        projected to) the axis."""
        t = self.axis.param_of(z)
        return (self.direction * (t - self.origin)) % self.length

    def position_of_param(self, t: float) -> float:
        return (self.direction * (t - self.origin)) % self.length


@dataclass(frozen=True)
class DevelopedDomain:
    """Hexagon placements, face-pairing generators, and boundary data."""

    surface: GeometricSurface
    hexes: tuple[CanonicalHexagon, ...]
    placements: tuple[Isometry, ...]
    tree_arcs: tuple[int, ...]
    generator_arcs: tuple[int, ...]
    generators: tuple[Isometry, ...]
    seeds: tuple[SeedLift, ...]
    base_point: complex
    domain_radius: float

    @property
    def rank(self) -> int:
        return len(self.generators)

    def max_seed_distance(self) -> float:
        """Largest distance from the base point to a seed axis."""
        return max(s.axis.distance_to(self.base_point) for s in self.seeds)

    def generator_letters(self) -> list[Isometry]:
        """Generators and inverses indexed by signed letter: entry ``i`` holds
        the isometry of letter i+1 for i < rank, letter -(i-rank+1) after."""
        gens = list(self.generators)
        return gens + [g.inverse() for g in gens]

    def word_to_isometry(self, word: tuple[int, ...]) -> Isometry:
        out = Isometry.identity()
        for letter in word:
            g = self.generators[abs(letter) - 1]
            out = out.compose(g if letter > 0 else g.inverse())
        return out


def _hyperbolic_midpoint(p: complex, q: complex) -> complex:
    from .halfplane import geodesic_through

    g = geodesic_through(p, q)
    return g.point_at(0.5 * (g.param_of(p) + g.param_of(q)))


def develop(
    surface: GeometricSurface,
    root: int = 0,
    slot_order: tuple[int, int, int] = (0, 1, 2),
) -> DevelopedDomain:
    """Unfold the surface along a BFS spanning tree of the dual graph.

    ``root`` and ``slot_order`` pick the tree (defaults give the canonical
    development); any choice yields the same surface up to conjugation, which
    verify_development and the spectra tests rely on.
    """
    comb = surface.combinatorics
    n = comb.hexagon_count
    if not (0 <= root < n):
        raise ValidationError(f"root hexagon {root} out of range")
    hexes = tuple(realize_hexagon(h.sides_cyclic()) for h in surface.hexagons)
    for h, ch in enumerate(hexes):
        if ch.closure_residual > CLOSURE_TOL:
            raise PrecisionError(
                f"hexagon {h} failed to close: residual {ch.closure_residual:.3e}"
            )

    partner = comb.partner()
    slot_arc = comb.slot_to_arc()
    arc_lengths = surface.coords.coords

    placements: dict[int, Isometry] = {root: Isometry.identity()}
    tree_arcs: list[int] = []
    queue = [root]
    while queue:
        h = queue.pop(0)
        for k in slot_order:
            h2, k2 = partner[(h, k)]
            if h2 in placements:
                continue
            arc = slot_arc[(h, k)]
            cross = _edge_crossing(hexes, arc_lengths[arc], (h, k), (h2, k2))
            placements[h2] = placements[h].compose(cross)
            tree_arcs.append(arc)
            queue.append(h2)
    if len(placements) != n:
        raise ValidationError("dual graph disconnected during development")
    placed = tuple(placements[h] for h in range(n))

    tree_set = set(tree_arcs)
    generator_arcs = tuple(
        a for a in range(comb.arc_count) if a not in tree_set
    )
    generators = []
    for a in generator_arcs:
        (h1, k1), (h2, k2) = comb.matching[a]
        cross = _edge_crossing(hexes, arc_lengths[a], (h1, k1), (h2, k2))
        g = placed[h1].compose(cross).compose(placed[h2].inverse())
        generators.append(g)
    generators = tuple(generators)
    gen_index = {a: i + 1 for i, a in enumerate(generator_arcs)}

    expected_rank = 2 * surface.topology.genus + surface.topology.boundary_count - 1
    if len(generators) != expected_rank:
        raise ValidationError(
            f"got {len(generators)} generators, expected {expected_rank}"
        )

    base = _hyperbolic_midpoint(hexes[root].corners[0], hexes[root].corners[3])

    # Unfold each boundary walk.  Crossing a tree arc keeps the running
    # translate; crossing generator arc a multiplies by g_a^(+-1) according
    # to the direction the walk crosses the stored slot pair.
    seeds = []
    lengths = surface.boundary_lengths()
    for ci, walk in enumerate(_boundary_walks(comb)):
        gamma = Isometry.identity()
        charts = []
        word: list[int] = []
        for h, k in walk:
            charts.append(gamma.compose(placed[h]))
            slot = (h, (k + 1) % 3)
            arc = slot_arc[slot]
            if arc in tree_set:
                continue
            pair = comb.matching[arc]
            letter = gen_index[arc] if slot == pair[0] else -gen_index[arc]
            g = generators[abs(letter) - 1]
            gamma = gamma.compose(g if letter > 0 else g.inverse())
            word.append(letter)
        holonomy = gamma
        ax = axis_of(holonomy)
        length = translation_length(holonomy)
        if abs(length - lengths[ci]) > HOLONOMY_LENGTH_TOL:
            raise PrecisionError(
                f"boundary holonomy {ci} has translation length {length}, "
                f"expected {lengths[ci]}"
            )
        h0, k0 = walk[0]
        p_start = charts[0].apply_point(hexes[h0].corners[(2 * k0 + 1) % 6])
        p_end = charts[0].apply_point(hexes[h0].corners[(2 * k0 + 2) % 6])
        if ax.distance_to(p_start) > AXIS_INCIDENCE_TOL:
            raise PrecisionError(
                f"developed boundary segment of component {ci} misses its "
                f"axis by {ax.distance_to(p_start):.3e}"
            )
        t_start = ax.param_of(p_start)
        t_end = ax.param_of(p_end)
        direction = math.copysign(1.0, t_end - t_start)
        center = ax.param_of(base)
        reach = max(
            point_distance(base, ax.point_at(center - length / 2.0)),
            point_distance(base, ax.point_at(center + length / 2.0)),
        )
        seeds.append(
            SeedLift(
                component=ci,
                axis=ax,
                holonomy=holonomy,
                length=length,
                origin=t_start,
                direction=direction,
                charts=tuple(charts),
                word=tuple(word),
                window_center=center,
                period_reach=reach,
            )
        )

    radius = max(
        point_distance(base, placed[h].apply_point(c))
        for h in range(n)
        for c in hexes[h].corners
    )
    return DevelopedDomain(
        surface=surface,
        hexes=hexes,
        placements=placed,
        tree_arcs=tuple(tree_arcs),
        generator_arcs=generator_arcs,
        generators=generators,
        seeds=tuple(seeds),
        base_point=base,
        domain_radius=radius,
    )


@dataclass(frozen=True)
class DevelopmentReport:
    closure_residuals: tuple[float, ...]
    generator_residuals: tuple[float, ...]
    holonomy_length_residuals: tuple[float, ...]
    holonomy_word_residuals: tuple[float, ...]
    axis_incidence_residuals: tuple[float, ...]
    det_drift: float
    passed: bool


def verify_development(domain: DevelopedDomain) -> DevelopmentReport:
    """Recheck every development invariant and report residuals."""
    comb = domain.surface.combinatorics
    hexes = domain.hexes
    placed = domain.placements

    gen_res = []
    for gi, a in enumerate(domain.generator_arcs):
        (h1, k1), (h2, k2) = comb.matching[a]
        g = domain.generators[gi]
        src_start = placed[h2].apply_point(hexes[h2].corners[2 * k2])
        src_end = placed[h2].apply_point(hexes[h2].corners[2 * k2 + 1])
        tgt_start = placed[h1].apply_point(hexes[h1].corners[2 * k1])
        tgt_end = placed[h1].apply_point(hexes[h1].corners[2 * k1 + 1])
        # Orientation-reversing gluing: source start lands on target end.
        r = max(
            point_distance(g.apply_point(src_start), tgt_end),
            point_distance(g.apply_point(src_end), tgt_start),
        )
        gen_res.append(r)

    lengths = domain.surface.boundary_lengths()
    len_res = []
    word_res = []
    axis_res = []
    for seed in domain.seeds:
        len_res.append(
            abs(translation_length(seed.holonomy) - lengths[seed.component])
        )
        recomposed = domain.word_to_isometry(seed.word)
        diff = recomposed.compose(seed.holonomy.inverse())
        word_res.append(diff.distance_from_identity())
        h0, k0 = domain.surface.boundary[seed.component][0].hexagon, (
            domain.surface.boundary[seed.component][0].slot
        )
        p = seed.charts[0].apply_point(hexes[h0].corners[(2 * k0 + 1) % 6])
        axis_res.append(seed.axis.distance_to(p))

    # For matrices with large entries the evaluated determinant is noise
    # dominated; measure drift relative to the evaluation noise floor.
    drift = 0.0
    drift_ok = True
    for m in list(placed) + list(domain.generators) + [
        s.holonomy for s in domain.seeds
    ]:
        dd = abs(m.det() - 1.0)
        drift = max(drift, dd)
        if dd > max(1e-12, det_noise_floor(m.a, m.b, m.c, m.d)):
            drift_ok = False
    passed = (
        all(r <= CLOSURE_TOL for r in (h.closure_residual for h in hexes))
        and all(r <= GENERATOR_MATCH_TOL for r in gen_res)
        and all(r <= HOLONOMY_LENGTH_TOL for r in len_res)
        and all(r <= 1e-10 for r in word_res)
        and all(r <= AXIS_INCIDENCE_TOL for r in axis_res)
        and drift_ok
    )
    return DevelopmentReport(
        closure_residuals=tuple(h.closure_residual for h in hexes),
        generator_residuals=tuple(gen_res),
        holonomy_length_residuals=tuple(len_res),
        holonomy_word_residuals=tuple(word_res),
        axis_incidence_residuals=tuple(axis_res),
        det_drift=drift,
        passed=passed,
    )


def boundary_lifts_seed(
    domain: DevelopedDomain,
) -> list[tuple[int, Geodesic, Isometry]]:
    """One seed lift per boundary component: (component, axis, holonomy)."""
    return [(s.component, s.axis, s.holonomy) for s in domain.seeds]


def perturb_generator(
    domain: DevelopedDomain, index: int, epsilon: float
) -> DevelopedDomain:
    """Copy of the domain with one generator entry perturbed (test fixture)."""
    g = domain.generators[index]
    bad = Isometry(g.a + epsilon, g.b, g.c, g.d)
    gens = list(domain.generators)
    gens[index] = bad
    return replace(domain, generators=tuple(gens))
