"""Hexagon-decomposed surfaces in Ushijima coordinates.

A surface of genus g with b > 0 boundary components and negative Euler
characteristic is encoded by a gluing of 4g + 2b - 4 right-angled hexagons
along 6g + 3b - 6 arcs.  Every hexagon has three arc slots (0, 1, 2)
alternating with three boundary slots; a perfect matching on the arc slots
describes the gluing.  All hexagons carry the same cyclic orientation
(arc slot 0, boundary slot 0, arc slot 1, boundary slot 1, arc slot 2,
boundary slot 2) and matched slots are glued reversing the induced side
orientation, so the glued complex is always an oriented surface with
boundary; validation checks connectivity and derives the topology.

The coordinates of a surface are the arc lengths, one per matched pair,
indexed by the order of the matching list.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError, ValidationError
from .trig import RightHexagon, solve_hexagon

Slot = tuple[int, int]  # (hexagon index, arc-slot index in {0, 1, 2})


@dataclass(frozen=True)
class Topology:
    genus: int
    boundary_count: int

    def __post_init__(self):
        if self.genus < 0 or self.boundary_count < 1:
            raise ValidationError(
                f"invalid topology (g={self.genus}, b={self.boundary_count})"
            )
        if self.euler_characteristic >= 0:
            raise ValidationError(
                f"Euler characteristic {self.euler_characteristic} is not negative "
                f"(g={self.genus}, b={self.boundary_count})"
            )

    @property
    def euler_characteristic(self) -> int:
        return 2 - 2 * self.genus - self.boundary_count

    @property
    def arc_count(self) -> int:
        return 6 * self.genus + 3 * self.boundary_count - 6

    @property
    def hexagon_count(self) -> int:
        return 4 * self.genus + 2 * self.boundary_count - 4

    @property
    def area(self) -> float:
        return 2.0 * math.pi * (-self.euler_characteristic)


@dataclass(frozen=True)
class HexCombinatorics:
    """Gluing pattern: a perfect matching on (hexagon, arc-slot) pairs.

    The position of a pair in ``matching`` is the index of the arc it
    defines, which is also the index of its coordinate.
    """

    hexagon_count: int
    matching: tuple[tuple[Slot, Slot], ...]

    def __post_init__(self):
        object.__setattr__(
            self,
            "matching",
            tuple(
                (tuple(p[0]), tuple(p[1]))  # type: ignore[arg-type]
                for p in self.matching
            ),
        )

    @property
    def arc_count(self) -> int:
        return len(self.matching)

    def slot_to_arc(self) -> dict[Slot, int]:
        return {
            slot: i for i, pair in enumerate(self.matching) for slot in pair
        }

    def partner(self) -> dict[Slot, Slot]:
        out: dict[Slot, Slot] = {}
        for s, t in self.matching:
            out[s] = t
            out[t] = s
        return out

    def check_structure(self) -> None:
        """Raise unless the matching is a perfect fixpoint-free matching on
        all 3 * hexagon_count arc slots."""
        if self.hexagon_count < 1:
            raise ValidationError("hexagon_count must be positive")
        seen: set[Slot] = set()
        for pair in self.matching:
            for h, k in pair:
                if not (0 <= h < self.hexagon_count) or k not in (0, 1, 2):
                    raise ValidationError(f"slot {(h, k)} out of range")
            if pair[0] == pair[1]:
                raise ValidationError(f"slot {pair[0]} matched to itself")
            for slot in pair:
                if slot in seen:
                    raise ValidationError(f"slot {slot} matched twice")
                seen.add(slot)
        expected = 3 * self.hexagon_count
        if len(seen) != expected:
            missing = sorted(
                (h, k)
                for h in range(self.hexagon_count)
                for k in range(3)
                if (h, k) not in seen
            )
            raise ValidationError(
                f"matching is not perfect: {len(seen)}/{expected} slots matched, "
                f"unmatched {missing[:4]}"
            )


def builtin(name: str) -> HexCombinatorics:
    """Canonical two-hexagon combinatorics for the smallest topologies.

    ``one_holed_torus``: the three arcs matched across the two hexagons with
    a cyclic slot offset, producing a single boundary component (g=1, b=1).
    ``pair_of_pants``: matched across the two hexagons with a slot
    transposition, producing three boundary components of two sides each
    (g=0, b=3).
    """
    if name == "one_holed_torus":
        return HexCombinatorics(
            hexagon_count=2,
            matching=(
                ((0, 0), (1, 1)),
                ((0, 1), (1, 2)),
                ((0, 2), (1, 0)),
            ),
        )
    if name == "pair_of_pants":
        return HexCombinatorics(
            hexagon_count=2,
            matching=(
                ((0, 0), (1, 0)),
                ((0, 1), (1, 2)),
                ((0, 2), (1, 1)),
            ),
        )
    raise ValidationError(f"unknown builtin surface {name!r}")


BUILTIN_NAMES = ("one_holed_torus", "pair_of_pants")


def _boundary_successor(comb: HexCombinatorics) -> dict[Slot, Slot]:
    """Successor map of the boundary walk on (hexagon, boundary-slot) sides.

    Walking boundary side k of hexagon h in the hexagon's cyclic direction
    ends at the corner starting arc slot k+1; the gluing identifies that
    corner with the end corner of the partner slot (h', k'), which starts
    boundary side k' of h'.
    """
    partner = comb.partner()
    succ: dict[Slot, Slot] = {}
    for h in range(comb.hexagon_count):
        for k in range(3):
            succ[(h, k)] = partner[(h, (k + 1) % 3)]
    return succ


def _boundary_walks(comb: HexCombinatorics) -> list[list[Slot]]:
    """Boundary components as cyclic lists of (hexagon, boundary-slot) sides,
    each starting at its lexicographically smallest side, components ordered
    by that smallest side."""
    succ = _boundary_successor(comb)
    remaining = set(succ)
    walks = []
    while remaining:
        start = min(remaining)
        walk = [start]
        remaining.discard(start)
        cur = succ[start]
        while cur != start:
            walk.append(cur)
            remaining.discard(cur)
            cur = succ[cur]
        walks.append(walk)
    return walks


def validate(comb: HexCombinatorics) -> Topology:
    """Check a gluing and return the topology it realizes.

    Verifies the matching structure, connectivity of the glued complex, and
    consistency of the Euler characteristic computed from identified cells
    (V - E + F) with the hexagon count.
    """
    comb.check_structure()
    n = comb.hexagon_count

    # Connectivity of the dual graph (hexagons joined along matched slots).
    adj: dict[int, set[int]] = {h: set() for h in range(n)}
    for (h1, _), (h2, _) in comb.matching:
        adj[h1].add(h2)
        adj[h2].add(h1)
    seen = {0}
    stack = [0]
    while stack:
        for nb in adj[stack.pop()]:
            if nb not in seen:
                seen.add(nb)
                stack.append(nb)
    if len(seen) != n:
        raise ValidationError(
            f"glued complex is disconnected: component of hexagon 0 has "
            f"{len(seen)} of {n} hexagons"
        )

    # Corner identification.  Corner c_j of a hexagon (j = 0..5 cyclically)
    # is the start of side j; arc slot k spans corners (2k, 2k+1) and the
    # orientation-reversing gluing identifies start with end corners.
    parent = list(range(6 * n))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    def union(i: int, j: int) -> None:
        parent[find(i)] = find(j)

    for (h1, k1), (h2, k2) in comb.matching:
        union(6 * h1 + 2 * k1, 6 * h2 + 2 * k2 + 1)
        union(6 * h1 + 2 * k1 + 1, 6 * h2 + 2 * k2)

    vertices = len({find(i) for i in range(6 * n)})
    edges = len(comb.matching) + 3 * n  # glued arcs + free boundary sides
    faces = n
    chi = vertices - edges + faces

    walks = _boundary_walks(comb)
    b = len(walks)
    if (2 - b - chi) % 2 != 0:
        raise ValidationError(
            f"non-orientable or inconsistent gluing: chi={chi}, b={b}"
        )
    g = (2 - b - chi) // 2
    if g < 0:
        raise ValidationError(f"negative genus from chi={chi}, b={b}")
    topo = Topology(genus=g, boundary_count=b)
    if topo.hexagon_count != n or topo.arc_count != len(comb.matching):
        raise ValidationError(
            f"cell counts inconsistent with topology (g={g}, b={b}): "
            f"{n} hexagons, {len(comb.matching)} arcs"
        )
    return topo


@dataclass(frozen=True)
class UshijimaPoint:
    """Arc lengths of the hexagon decomposition, indexed by arc."""

    coords: tuple[float, ...]

    def __post_init__(self):
        coords = tuple(float(v) for v in self.coords)
        for i, v in enumerate(coords):
            if not (math.isfinite(v) and v > 0):
                raise DomainError(f"coordinate {i} = {v!r} is not a positive length")
        object.__setattr__(self, "coords", coords)

    def __len__(self) -> int:
        return len(self.coords)


@dataclass(frozen=True)
class BoundarySegment:
    hexagon: int
    slot: int  # boundary-slot index
    length: float


@dataclass(frozen=True)
class GeometricSurface:
    """A solved hyperbolic surface: combinatorics plus realized hexagons."""

    topology: Topology
    combinatorics: HexCombinatorics
    coords: UshijimaPoint
    hexagons: tuple[RightHexagon, ...]
    boundary: tuple[tuple[BoundarySegment, ...], ...]

    @property
    def area(self) -> float:
        return self.topology.area

    def arc_length(self, hexagon: int, slot: int) -> float:
        arc = self.combinatorics.slot_to_arc()[(hexagon, slot)]
        return self.coords.coords[arc]

    def boundary_lengths(self) -> tuple[float, ...]:
        return tuple(
            math.fsum(seg.length for seg in comp) for comp in self.boundary
        )

    def total_boundary(self) -> float:
        return math.fsum(self.boundary_lengths())


def build_surface(comb: HexCombinatorics, coords: UshijimaPoint | tuple) -> GeometricSurface:
    """Solve every hexagon from the arc coordinates and trace the boundary."""
    topo = validate(comb)
    if not isinstance(coords, UshijimaPoint):
        coords = UshijimaPoint(tuple(coords))
    if len(coords) != comb.arc_count:
        raise ValidationError(
            f"expected {comb.arc_count} coordinates, got {len(coords)}"
        )
    slot_arc = comb.slot_to_arc()
    hexagons = tuple(
        solve_hexagon(
            coords.coords[slot_arc[(h, 0)]],
            coords.coords[slot_arc[(h, 1)]],
            coords.coords[slot_arc[(h, 2)]],
        )
        for h in range(comb.hexagon_count)
    )
    boundary = tuple(
        tuple(
            BoundarySegment(h, k, hexagons[h].boundary_sides[k])
            for (h, k) in walk
        )
        for walk in _boundary_walks(comb)
    )
    return GeometricSurface(
        topology=topo,
        combinatorics=comb,
        coords=coords,
        hexagons=hexagons,
        boundary=boundary,
    )


def boundary_lengths(surface: GeometricSurface) -> tuple[float, ...]:
    """Per-component boundary lengths in canonical component order."""
    return surface.boundary_lengths()
