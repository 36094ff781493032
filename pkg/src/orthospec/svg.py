"""SVG export of a developed domain in the upper half-plane.

Geodesic segments are emitted as sampled polylines (robust against arc-flag
conventions); the picture is clipped to a rectangular window.  The two
developed copies of each face-pairing arc share the same id attribute so
they can be matched up visually.
"""

from __future__ import annotations

from .develop import DevelopedDomain
from .halfplane import Geodesic, Isometry

SAMPLES_PER_SEGMENT = 24


class _View:
    def __init__(self, x0: float, x1: float, ymax: float, width: float = 800.0):
        self.x0 = x0
        self.x1 = x1
        self.ymax = ymax
        self.scale = width / (x1 - x0)
        self.width = width
        self.height = ymax * self.scale

    def to_svg(self, z: complex) -> tuple[float, float]:
        return ((z.real - self.x0) * self.scale, (self.ymax - z.imag) * self.scale)


def _fmt(v: float) -> str:
    return f"{v:.3f}"


def _polyline(points, view: _View) -> str:
    coords = []
    for z in points:
        x, y = view.to_svg(z)
        coords.append(f"{_fmt(x)},{_fmt(y)}")
    return " ".join(coords)


def _sample_segment(carrier: Geodesic, t1: float, t2: float):
    return [
        carrier.point_at(t1 + (t2 - t1) * k / SAMPLES_PER_SEGMENT)
        for k in range(SAMPLES_PER_SEGMENT + 1)
    ]


def _sample_full_geodesic(g: Geodesic, view: _View):
    if g.vertical:
        return [complex(g.e1, 1e-4), complex(g.e1, view.ymax)]
    # Sample uniformly in the circle angle: arclength samples pile up at the
    # ideal endpoints because tanh saturates.
    import math as _math

    n = 64
    m, r = g.center, g.radius
    return [
        complex(m + r * _math.cos(_math.pi * k / n), r * _math.sin(_math.pi * k / n))
        for k in range(1, n)
    ]


def _placed_corners(domain: DevelopedDomain, h: int):
    placement = domain.placements[h]
    return [placement.apply_point(c) for c in domain.hexes[h].corners]


def render_domain(
    domain: DevelopedDomain,
    window: tuple[float, float, float] | None = None,
    orthos=None,
) -> str:
    """SVG drawing of hexagon outlines, boundary segments, seed axes, and
    optionally enumerated orthogeodesic lifts."""
    if window is None:
        corners = [
            z for h in range(len(domain.placements)) for z in _placed_corners(domain, h)
        ]
        xs = [z.real for z in corners]
        ys = [z.imag for z in corners]
        pad = 0.25 * (max(xs) - min(xs) + 1.0)
        window = (min(xs) - pad, max(xs) + pad, max(ys) + pad)
    view = _View(*window)
    comb = domain.surface.combinatorics

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {_fmt(view.width)} '
        f'{_fmt(view.height)}" width="{_fmt(view.width)}" height="{_fmt(view.height)}">',
        f'<defs><clipPath id="window"><rect x="0" y="0" width="{_fmt(view.width)}" '
        f'height="{_fmt(view.height)}"/></clipPath></defs>',
        '<g clip-path="url(#window)" fill="none">',
        f'<rect x="0" y="0" width="{_fmt(view.width)}" height="{_fmt(view.height)}" '
        'stroke="#cccccc"/>',
    ]

    # Seed axes underneath everything.
    for seed in domain.seeds:
        pts = _sample_full_geodesic(seed.axis, view)
        parts.append(
            f'<polyline id="axis-{seed.component}" points="{_polyline(pts, view)}" '
            'stroke="#d08080" stroke-width="1" stroke-dasharray="6 4"/>'
        )

    # Hexagon outlines.
    for h in range(len(domain.placements)):
        corners = _placed_corners(domain, h)
        pts = []
        for k in range(6):
            a, b = corners[k], corners[(k + 1) % 6]
            seg = _segment_between(a, b)
            pts.extend(seg[:-1])
        pts.append(pts[0])
        parts.append(
            f'<polyline id="hex-{h}" points="{_polyline(pts, view)}" '
            'stroke="#404040" stroke-width="1"/>'
        )

    # Developed copies of the face-pairing arcs: both copies carry the same
    # id so the pairing can be read off the figure.
    for gi, arc in enumerate(domain.generator_arcs):
        (h1, k1), (h2, k2) = comb.matching[arc]
        for h, k in ((h1, k1), (h2, k2)):
            corners = _placed_corners(domain, h)
            seg = _segment_between(corners[2 * k], corners[(2 * k + 1) % 6])
            parts.append(
                f'<polyline id="arc-{arc}" points="{_polyline(seg, view)}" '
                'stroke="#3060c0" stroke-width="2"/>'
            )

    # Boundary segments.
    for ci, comp in enumerate(domain.surface.boundary):
        for si, bseg in enumerate(comp):
            corners = _placed_corners(domain, bseg.hexagon)
            k = bseg.slot
            seg = _segment_between(
                corners[(2 * k + 1) % 6], corners[(2 * k + 2) % 6]
            )
            parts.append(
                f'<polyline id="boundary-{ci}-{si}" points="{_polyline(seg, view)}" '
                'stroke="#208020" stroke-width="2.5"/>'
            )

    if orthos:
        for oi, o in enumerate(orthos):
            seg = _sample_segment(o.segment.carrier, o.segment.t1, o.segment.t2)
            parts.append(
                f'<polyline id="ortho-{oi}" points="{_polyline(seg, view)}" '
                'stroke="#c040c0" stroke-width="1.5"/>'
            )

    parts.append("</g>")
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def _segment_between(a: complex, b: complex):
    from .halfplane import geodesic_through

    g = geodesic_through(a, b)
    return _sample_segment(g, g.param_of(a), g.param_of(b))


def domain_geometry(domain: DevelopedDomain, orthos=None) -> dict:
    """JSON-ready geometry of the developed domain (same content as the SVG)."""
    comb = domain.surface.combinatorics

    def mat(m: Isometry):
        return [m.a, m.b, m.c, m.d]

    def pt(z: complex):
        return [z.real, z.imag]

    data = {
        "hexagons": [
            {
                "index": h,
                "corners": [pt(z) for z in _placed_corners(domain, h)],
                "placement": mat(domain.placements[h]),
            }
            for h in range(len(domain.placements))
        ],
        "tree_arcs": list(domain.tree_arcs),
        "generators": [
            {
                "arc": arc,
                "matrix": mat(domain.generators[gi]),
                "slots": [list(s) for s in comb.matching[arc]],
            }
            for gi, arc in enumerate(domain.generator_arcs)
        ],
        "boundary": [
            {
                "component": seed.component,
                "axis": [seed.axis.e1, seed.axis.e2 if not seed.axis.vertical else None],
                "holonomy": mat(seed.holonomy),
                "length": seed.length,
            }
            for seed in domain.seeds
        ],
        "base_point": pt(domain.base_point),
        "domain_radius": domain.domain_radius,
    }
    if orthos is not None:
        data["orthogeodesics"] = [
            {
                "length": o.length,
                "start": [o.start[0], o.start[1]],
                "end": [o.end[0], o.end[1]],
                "lift": [pt(o.lift_points[0]), pt(o.lift_points[1])],
            }
            for o in orthos
        ]
    return data
