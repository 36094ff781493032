"""Enumeration of orthogeodesics and closed geodesics.

Orthogeodesics are common perpendiculars between lifts of the boundary:
the search runs over pairs (seed axis A_i, g . A_j) with g ranging over a
displacement ball in the holonomy group.  A perpendicular of length L
between components i and j always has a representative g whose feet lie in
the fundamental periods of the two axes, and such a g moves the base point
by at most L + 2 * domain_radius; the default pruning margin adds twice the
base-to-axis slack on top of that, so the ball search is conservative (and
is validated against the unpruned brute-force enumeration in the tests).

Hits are deduplicated geometrically: feet are translated into the
fundamental period [0, boundary length) of their component, and two hits
are the same orthogeodesic when lengths and both canonical feet agree
within tolerance (up to swapping the ends).

Closed geodesics are enumerated from the same ball by trace, deduplicated
by the canonical cyclic word of the conjugacy class (merging inverses,
dropping proper powers and boundary classes).
"""

from __future__ import annotations

import math
from bisect import bisect_left
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from ._ball import GroupBall, get_ball
from .develop import DevelopedDomain
from .errors import (
    DomainError,
    NeedsLargerCutoffError,
    PrecisionError,
)
from .halfplane import (
    INF,
    Geodesic,
    GeodesicSegment,
    Isometry,
    PerpResult,
    SEGMENT_STRICT_TOL,
    SHARED_ENDPOINT_TOL,
    common_perpendicular,
    crossing_angle,
    crossing_point,
    geodesics_cross,
)

# Crossing angles below this are treated as tangencies and abort loudly.
TANGENCY_ANGLE_TOL = 1e-8
# Slack added to provable displacement bounds to absorb rounding.
BALL_PAD = 0.25


@dataclass(frozen=True)
class EnumParams:
    """Knobs of the orthogeodesic search.

    ``prune_margin`` is added to the cutoff to bound base-point displacement
    during the word search; ``None`` selects the conservative default
    2 * domain_radius + 2 * max base-to-axis distance.
    """

    cutoff: float
    dedupe_tolerance: float = 1e-9
    prune_margin: float | None = None
    max_frontier: int = 10_000_000

    def __post_init__(self):
        if not (self.cutoff > 0 and math.isfinite(self.cutoff)):
            raise DomainError(f"cutoff must be positive and finite, got {self.cutoff}")
        if self.dedupe_tolerance <= 0:
            raise DomainError("dedupe_tolerance must be positive")
        if self.prune_margin is not None and self.prune_margin <= 0:
            raise DomainError("prune_margin must be positive")


@dataclass(eq=False)
class Orthogeodesic:
    """One orthogeodesic: length, endpoints on the boundary, and its lift.

    ``start``/``end`` are (component index, position along the component in
    [0, component length)), ordered canonically.  ``simple`` and
    ``self_intersections`` are filled by :func:`is_simple` on demand.
    ``canonical_id`` is the canonical double-coset witness: the seed pair
    together with the reduced word of the representative whose perpendicular
    feet lie in the canonical axis windows (with the word of its inverse
    when both ends are on the same component, whichever is smaller).
    ``witness`` is the raw word of the group element that produced the hit.
    """

    length: float
    start: tuple[int, float]
    end: tuple[int, float]
    canonical_id: tuple
    segment: GeodesicSegment = field(repr=False)
    lift_points: tuple[complex, complex] = field(repr=False)
    witness: tuple[int, ...] = field(default=(), repr=False)
    simple: bool | None = None
    self_intersections: int | None = None

    def sort_key(self):
        return (self.length, self.start, self.end)


def _reduce_word(letters) -> tuple[int, ...]:
    """Free reduction of a letter sequence."""
    out: list[int] = []
    for s in letters:
        if out and out[-1] == -s:
            out.pop()
        else:
            out.append(s)
    return tuple(out)


def _word_power(word: tuple[int, ...], power: int) -> list[int]:
    if power >= 0:
        return list(word) * power
    inv = [-s for s in reversed(word)]
    return inv * (-power)


def _invert_word(word: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(-s for s in reversed(word))


def default_prune_margin(domain: DevelopedDomain) -> float:
    """Conservative displacement margin for the orthogeodesic word search.

    A perpendicular of length L between components i and j has a
    representative whose feet lie in the fundamental periods of the two
    axes, and such an element moves the base point by at most
    L + period_reach(i) + period_reach(j); one extra domain radius covers
    the word prefixes needed to reach it (tile chains along the geodesic
    from the base point to its translate).
    """
    reach = max(s.period_reach for s in domain.seeds)
    return 2.0 * reach + domain.domain_radius + BALL_PAD


def _circ_close(p: float, q: float, period: float, tol: float) -> bool:
    d = abs(p - q) % period
    return min(d, period - d) <= tol


def _same_orthogeodesic(a: Orthogeodesic, b: Orthogeodesic, tol: float, lengths) -> bool:
    if abs(a.length - b.length) > tol:
        return False
    for (s1, e1), (s2, e2) in (
        ((a.start, a.end), (b.start, b.end)),
        ((a.start, a.end), (b.end, b.start)),
    ):
        if (
            s1[0] == s2[0]
            and e1[0] == e2[0]
            and _circ_close(s1[1], s2[1], lengths[s1[0]], tol)
            and _circ_close(e1[1], e2[1], lengths[e1[0]], tol)
        ):
            return True
    return False


def _apply_ideal_rows(mats: np.ndarray, x: float) -> np.ndarray:
    """Images of one ideal point under every matrix row (vectorized)."""
    with np.errstate(divide="ignore", invalid="ignore"):
        if x == INF:
            return mats[:, 0] / mats[:, 2]
        return (mats[:, 0] * x + mats[:, 1]) / (mats[:, 2] * x + mats[:, 3])


def _cross_ratio_rows(u1: float, u2: float, c: np.ndarray, d: np.ndarray) -> np.ndarray:
    """Cross ratio (u1, u2; c, d) rowwise; u2 may be INF (canonical axes)."""
    with np.errstate(divide="ignore", invalid="ignore"):
        if u2 == INF:
            return (c - u1) / (d - u1)
        return ((c - u1) * (d - u2)) / ((c - u2) * (d - u1))


def _perp_candidates(
    axis_i: Geodesic,
    axis_j: Geodesic,
    ball: GroupBall,
    cutoff: float,
) -> np.ndarray:
    """Indices of ball elements that might yield a perpendicular <= cutoff.

    Purely a prefilter: every surviving index is re-examined by the careful
    scalar path; rows with overflow or degeneracy are kept as suspects.
    """
    c = _apply_ideal_rows(ball.mats, axis_j.e1)
    d = _apply_ideal_rows(ball.mats, axis_j.e2)
    finite = np.isfinite(c) & np.isfinite(d) & (np.abs(c) < 1e13) & (np.abs(d) < 1e13)
    cr = _cross_ratio_rows(axis_i.e1, axis_i.e2, c, d)
    with np.errstate(divide="ignore", invalid="ignore"):
        k = np.where(cr < 1.0, cr, 1.0 / cr)
        cosh_len = (1.0 + k) / (1.0 - k)
    ok = finite & np.isfinite(cr) & (cr > 0.0) & (cosh_len <= math.cosh(cutoff) * (1.0 + 1e-9))
    suspects = ~finite | ~np.isfinite(cr)
    return np.nonzero(ok | suspects)[0]


def _axis_normalizer(axis: Geodesic) -> Isometry:
    """Isometry sending the axis to the imaginary axis (e1 -> 0, e2 -> inf),
    chosen so that log |image| equals the canonical axis parameter."""
    if axis.vertical:
        return Isometry(1.0, -axis.e1, 0.0, 1.0)
    s = 1.0 / math.sqrt(axis.e2 - axis.e1)
    return Isometry(s, -axis.e1 * s, -s, axis.e2 * s)


def _mobius_ld(mat, x: float):
    """Moebius image of an ideal point in extended precision (mat is a
    length-4 numpy longdouble array)."""
    a, b, c, d = mat
    if x == INF:
        if c == 0.0:
            return None  # image is infinity
        return a / c
    den = c * x + d
    if den == 0.0:
        return None
    return (a * x + b) / den


def _compose_ld(m1, m2):
    a = m1[0] * m2[0] + m1[1] * m2[2]
    b = m1[0] * m2[1] + m1[1] * m2[3]
    c = m1[2] * m2[0] + m1[3] * m2[2]
    d = m1[2] * m2[1] + m1[3] * m2[3]
    return (a, b, c, d)


def _to_ld(m: Isometry):
    return (
        np.longdouble(m.a),
        np.longdouble(m.b),
        np.longdouble(m.c),
        np.longdouble(m.d),
    )


def _make_hit(
    domain: DevelopedDomain,
    i: int,
    j: int,
    m: Isometry,
    cutoff: float,
    word: tuple[int, ...],
) -> Orthogeodesic | None:
    """Careful scalar evaluation of one candidate group element.

    Works in coordinates where axis i is the imaginary axis: there the
    length and the feet of the perpendicular to the translate of axis j are
    pure ratio/log expressions of the translated ideal endpoints, which
    stay well conditioned even for distant translates, and the boundary
    holonomy acts by exact scaling, so the returned lift is the canonical
    one (feet inside the fundamental periods).  The four linear forms are
    evaluated in extended precision: candidate matrices have entries up to
    ~e^15 and double precision would leave ~1e-7 noise on the results.
    """
    seed_i = domain.seeds[i]
    seed_j = domain.seeds[j]
    norm_i = _axis_normalizer(seed_i.axis)
    mat = _compose_ld(_to_ld(norm_i), _to_ld(m))
    c = _mobius_ld(mat, seed_j.axis.e1)
    d = _mobius_ld(mat, seed_j.axis.e2)
    if c is None or d is None or c == 0.0 or d == 0.0:
        return None  # endpoint shared with the axis (or its translate)
    if (c > 0) != (d > 0):
        return None  # interleaved endpoints: the geodesics cross
    k = c / d
    if k > 1.0:
        k = 1.0 / k
    if k <= 0.0 or 1.0 - k < 1e-17:
        return None
    length = float(np.arccosh((1.0 + k) / (1.0 - k)))
    if length > cutoff or length <= SHARED_ENDPOINT_TOL:
        return None

    # Foot parameter on axis i.  Representatives whose foot lies outside the
    # canonical window by more than one period are duplicates of a
    # window-canonical representative that the ball is guaranteed to contain;
    # dropping them early also avoids the ill-conditioned deep translates.
    t_i = float(0.5 * (np.log(np.abs(c)) + np.log(np.abs(d))))
    step_i = seed_i.direction * seed_i.length
    periods = math.floor((t_i - seed_i.window_center) / step_i + 0.5)
    if abs(periods) > 1:
        return None
    norm_j = _axis_normalizer(seed_j.axis)
    mat2 = _compose_ld(_to_ld(norm_j), _to_ld(m.inverse()))
    c2 = _mobius_ld(mat2, seed_i.axis.e1)
    d2 = _mobius_ld(mat2, seed_i.axis.e2)
    if c2 is None or d2 is None or c2 == 0.0 or d2 == 0.0:
        return None
    t_j = float(0.5 * (np.log(np.abs(c2)) + np.log(np.abs(d2))))
    step_j = seed_j.direction * seed_j.length
    periods_j = math.floor((t_j - seed_j.window_center) / step_j + 0.5)
    if abs(periods_j) > 1:
        return None

    pos_i = (seed_i.direction * (t_i - seed_i.origin)) % seed_i.length
    pos_j = (seed_j.direction * (t_j - seed_j.origin)) % seed_j.length

    # Canonical lift: scale the normalized picture by the holonomy power
    # that brings the foot into the canonical window (exact diagonal
    # action), then map back with the O(1) normalizer inverse.
    cc = float(c * np.exp(np.longdouble(-periods * step_i)))
    dc = float(d * np.exp(np.longdouble(-periods * step_i)))
    rho = math.sqrt(cc * dc)
    x2 = 2.0 * cc * dc / (cc + dc)
    y2 = rho * abs(dc - cc) / abs(cc + dc)
    side = 1.0 if cc > 0 else -1.0
    back = norm_i.inverse()
    f1 = back.apply_point(complex(0.0, rho))
    f2 = back.apply_point(complex(x2, y2))
    carrier = Geodesic(back.apply_ideal(-side * rho), back.apply_ideal(side * rho))
    u1 = carrier.param_of(f1)
    u2 = carrier.param_of(f2)
    if u1 > u2:
        u1, u2 = u2, u1
        f1, f2 = f2, f1

    # Canonical double-coset word: slide the witness into the representative
    # with both feet in the canonical windows (exact integer reduction).
    slid = _reduce_word(
        _word_power(seed_i.word, -periods)
        + list(word)
        + _word_power(seed_j.word, periods_j)
    )
    if i == j:
        slid = min(slid, _invert_word(slid))

    e_start, e_end = (i, pos_i), (j, pos_j)
    p_start, p_end = f1, f2
    if e_end < e_start:
        e_start, e_end = e_end, e_start
    return Orthogeodesic(
        length=length,
        start=e_start,
        end=e_end,
        canonical_id=(i, j, slid),
        segment=GeodesicSegment(carrier, u1, u2),
        lift_points=(p_start, p_end),
        witness=word,
    )


def _confirm_hits(
    domain: DevelopedDomain,
    ball: GroupBall,
    pair: tuple[int, int],
    indices,
    cutoff: float,
) -> list[Orthogeodesic]:
    i, j = pair
    hits = []
    for idx in indices:
        idx = int(idx)
        hit = _make_hit(
            domain, i, j, ball.isometry(idx), cutoff, ball.word(idx)
        )
        if hit is not None:
            hits.append(hit)
    return hits


def _dedupe(hits: list[Orthogeodesic], tol: float, lengths) -> list[Orthogeodesic]:
    """Collapse representatives of the same orthogeodesic.

    Most duplicates fall to the exact double-coset key; the values kept per
    key come from the representative equal to the key itself (the shallow
    one, numerically the best conditioned).  A second tolerance-based pass
    merges the rare window-edge ties where representatives disagree on the
    integer period and therefore carry different keys.
    """
    by_key: dict[tuple, Orthogeodesic] = {}
    for h in hits:
        cur = by_key.get(h.canonical_id)
        if cur is None or _witness_rank(h) < _witness_rank(cur):
            by_key[h.canonical_id] = h
    unique = sorted(by_key.values(), key=Orthogeodesic.sort_key)
    accepted: list[Orthogeodesic] = []
    acc_lengths: list[float] = []
    for h in unique:
        lo = bisect_left(acc_lengths, h.length - tol)
        if any(
            _same_orthogeodesic(h, a, tol, lengths) for a in accepted[lo:]
        ):
            continue
        accepted.append(h)
        acc_lengths.append(h.length)
    return accepted


def _witness_rank(h: Orthogeodesic):
    key_word = h.canonical_id[2]
    exact = 0 if h.witness == key_word or _invert_word(h.witness) == key_word else 1
    return (exact, len(h.witness), h.witness)


def enumerate_orthogeodesics(
    domain: DevelopedDomain, params: EnumParams, threads: int = 1
) -> list[Orthogeodesic]:
    """All orthogeodesics of length <= cutoff, sorted by (length, start, end)."""
    margin = (
        params.prune_margin
        if params.prune_margin is not None
        else default_prune_margin(domain)
    )
    ball = get_ball(domain, params.cutoff + margin, params.max_frontier)
    seeds = domain.seeds
    lengths = [s.length for s in seeds]
    raw: list[Orthogeodesic] = []
    for i in range(len(seeds)):
        for j in range(i, len(seeds)):
            cand = _perp_candidates(
                seeds[i].axis, seeds[j].axis, ball, params.cutoff
            )
            if len(cand) == 0:
                continue
            if threads > 1 and len(cand) > 256:
                chunk = (len(cand) + threads - 1) // threads
                parts = [
                    cand[k : k + chunk] for k in range(0, len(cand), chunk)
                ]
                with ThreadPoolExecutor(max_workers=threads) as ex:
                    for part_hits in ex.map(
                        lambda part: _confirm_hits(
                            domain, ball, (i, j), part, params.cutoff
                        ),
                        parts,
                    ):
                        raw.extend(part_hits)
            else:
                raw.extend(
                    _confirm_hits(domain, ball, (i, j), cand, params.cutoff)
                )
    return _dedupe(raw, params.dedupe_tolerance, lengths)


def _all_reduced_words(rank: int, max_len: int):
    """All reduced words in a free group of the given rank, up to max_len."""
    letters = [i + 1 for i in range(rank)] + [-(i + 1) for i in range(rank)]
    frontier = [()]
    yield ()
    for _ in range(max_len):
        nxt = []
        for w in frontier:
            for s in letters:
                if w and w[-1] == -s:
                    continue
                nw = w + (s,)
                nxt.append(nw)
                yield nw
        frontier = nxt


def brute_force_orthogeodesics(
    domain: DevelopedDomain,
    word_len: int,
    cutoff: float,
    dedupe_tolerance: float = 1e-9,
) -> list[Orthogeodesic]:
    """Unpruned reference enumeration over all words up to word_len.

    Test oracle only: complete up to ``cutoff`` whenever every group element
    moving the base point by at most cutoff + 2 * domain_radius has word
    length <= word_len (see brute_force_certified_cutoff).
    """
    seeds = domain.seeds
    lengths = [s.length for s in seeds]
    raw: list[Orthogeodesic] = []
    for word in _all_reduced_words(domain.rank, word_len):
        m = domain.word_to_isometry(word)
        for i in range(len(seeds)):
            for j in range(i, len(seeds)):
                hit = _make_hit(domain, i, j, m, cutoff, word)
                if hit is not None:
                    raw.append(hit)
    return _dedupe(raw, dedupe_tolerance, lengths)


def brute_force_certified_cutoff(
    domain: DevelopedDomain, word_len: int
) -> float:
    """Largest cutoff to which brute force at word_len is provably complete:
    (min displacement over words of length word_len + 1) minus the default
    pruning margin."""
    best = math.inf
    base = domain.base_point
    from .halfplane import point_distance

    for word in _all_reduced_words(domain.rank, word_len + 1):
        if len(word) != word_len + 1:
            continue
        m = domain.word_to_isometry(word)
        image = m.apply_point(base)
        if image.imag <= 0.0:
            continue  # image height underflowed: displacement far beyond any bound
        best = min(best, point_distance(base, image))
    return best - default_prune_margin(domain)


# ---------------------------------------------------------------------------
# Intersection machinery


def _orient_rows(u: float, w: float, v: np.ndarray) -> np.ndarray:
    """Sign of the cyclic order (u, v, w) rowwise for fixed ideal u, w."""
    if u == INF:
        return np.sign(w - v)
    if w == INF:
        return np.sign(v - u)
    return np.sign(v - u) * np.sign(w - v) * np.sign(w - u)


def _crossing_candidates(
    carrier: Geodesic, target: Geodesic, ball: GroupBall
) -> np.ndarray:
    """Ball indices whose image of ``target`` may cross ``carrier``."""
    c = _apply_ideal_rows(ball.mats, target.e1)
    d = _apply_ideal_rows(ball.mats, target.e2)
    finite = np.isfinite(c) & np.isfinite(d)
    s1 = _orient_rows(carrier.e1, carrier.e2, c)
    s2 = _orient_rows(carrier.e1, carrier.e2, d)
    interleaved = s1 * s2 < 0
    return np.nonzero(interleaved | ~finite)[0]


def _segment_crossing(
    seg1: GeodesicSegment,
    seg2_points: tuple[complex, complex],
    m: Isometry,
    seg2_carrier: Geodesic,
) -> bool:
    """Whether m(seg2) crosses seg1 transversally, strictly inside both."""
    image = m.apply_geodesic(seg2_carrier)
    same = (
        abs(image.e1 - seg1.carrier.e1) <= SHARED_ENDPOINT_TOL
        and (
            (image.e2 == INF and seg1.carrier.e2 == INF)
            or abs(image.e2 - seg1.carrier.e2) <= SHARED_ENDPOINT_TOL
        )
    )
    if same:
        raise PrecisionError(
            "translate of an orthogeodesic lift lies on the same carrier; "
            "crossing count is ill-defined at this tolerance"
        )
    if not geodesics_cross(seg1.carrier, image):
        return False
    p = crossing_point(seg1.carrier, image)
    angle = crossing_angle(seg1.carrier, image, p)
    if angle < TANGENCY_ANGLE_TOL:
        raise PrecisionError(
            f"near-tangential crossing (angle {angle:.2e}) while counting "
            "intersections"
        )
    u = seg1.carrier.param_of(p)
    if not (seg1.t1 + SEGMENT_STRICT_TOL < u < seg1.t2 - SEGMENT_STRICT_TOL):
        return False
    q1 = m.apply_point(seg2_points[0])
    q2 = m.apply_point(seg2_points[1])
    v1 = image.param_of(q1)
    v2 = image.param_of(q2)
    if v1 > v2:
        v1, v2 = v2, v1
    v = image.param_of(p)
    return v1 + SEGMENT_STRICT_TOL < v < v2 - SEGMENT_STRICT_TOL


def is_simple(
    domain: DevelopedDomain,
    ortho: Orthogeodesic,
    max_frontier: int = 10_000_000,
) -> tuple[bool, int]:
    """Self-intersection count of an enumerated orthogeodesic.

    Counts transversal crossings of the lift with its translates over all
    group elements within displacement 2 * domain_radius + 2 * length, each
    unordered crossing pair once.  The result is cached on the orthogeodesic.
    """
    if ortho.self_intersections is not None:
        return bool(ortho.simple), int(ortho.self_intersections)
    reach = domain.seeds[ortho.start[0]].period_reach
    bound = (
        2.0 * reach
        + 2.0 * ortho.length
        + domain.domain_radius
        + BALL_PAD
    )
    ball = get_ball(domain, bound, max_frontier)
    cand = _crossing_candidates(ortho.segment.carrier, ortho.segment.carrier, ball)
    count = 0
    for idx in cand:
        idx = int(idx)
        if idx == 0:  # identity
            continue
        m = ball.isometry(idx)
        if _segment_crossing(
            ortho.segment, ortho.lift_points, m, ortho.segment.carrier
        ):
            count += 1
    if count % 2 != 0:
        raise PrecisionError(
            f"unpaired crossing translates ({count}) for orthogeodesic of "
            f"length {ortho.length}; tolerance misconfiguration likely"
        )
    ortho.self_intersections = count // 2
    ortho.simple = count == 0
    return ortho.simple, ortho.self_intersections


def crossing_count(
    domain: DevelopedDomain,
    o1: Orthogeodesic,
    o2: Orthogeodesic,
    max_frontier: int = 10_000_000,
) -> int:
    """Geometric intersection count of two distinct enumerated orthogeodesics."""
    if o1 is o2 or o1.canonical_id == o2.canonical_id:
        raise DomainError("crossing_count requires two distinct orthogeodesics")
    bound = (
        domain.seeds[o1.start[0]].period_reach
        + domain.seeds[o2.start[0]].period_reach
        + o1.length
        + o2.length
        + domain.domain_radius
        + BALL_PAD
    )
    ball = get_ball(domain, bound, max_frontier)
    cand = _crossing_candidates(o1.segment.carrier, o2.segment.carrier, ball)
    count = 0
    for idx in cand:
        m = ball.isometry(int(idx))
        if _segment_crossing(o1.segment, o2.lift_points, m, o2.segment.carrier):
            count += 1
    return count


# ---------------------------------------------------------------------------
# Closed geodesics


def _cyclic_reduce(word: tuple[int, ...]) -> tuple[int, ...]:
    w = list(word)
    while len(w) >= 2 and w[0] == -w[-1]:
        w = w[1:-1]
    return tuple(w)


def _class_key(word: tuple[int, ...]) -> tuple[int, ...]:
    """Canonical form of the unoriented conjugacy class of a word."""
    w = _cyclic_reduce(word)
    if not w:
        return ()
    inv = tuple(-l for l in reversed(w))
    best = None
    for base in (w, inv):
        for r in range(len(base)):
            rot = base[r:] + base[:r]
            if best is None or rot < best:
                best = rot
    return best


def _is_primitive(word: tuple[int, ...]) -> bool:
    n = len(word)
    for d in range(1, n):
        if n % d == 0 and word == word[d:] + word[:d]:
            return False
    return True


def enumerate_closed(
    domain: DevelopedDomain,
    cutoff: float,
    max_frontier: int = 10_000_000,
) -> list[float]:
    """Lengths of primitive essential closed geodesics up to cutoff.

    One entry per unoriented conjugacy class; classes of boundary components
    and proper powers are excluded.
    """
    if cutoff <= 0:
        raise DomainError("cutoff must be positive")
    # A class of translation length <= cutoff has a representative whose axis
    # crosses the fundamental domain; one more radius covers word prefixes.
    bound = cutoff + 3.0 * domain.domain_radius + BALL_PAD
    ball = get_ball(domain, bound, max_frontier)
    traces = np.abs(ball.mats[:, 0] + ball.mats[:, 3])
    limit = 2.0 * math.cosh(cutoff / 2.0)
    cand = np.nonzero((traces > 2.0) & (traces <= limit * (1.0 + 1e-12)))[0]
    boundary_keys = {_class_key(s.word) for s in domain.seeds}
    classes: dict[tuple[int, ...], float] = {}
    for idx in cand:
        idx = int(idx)
        if idx == 0:
            continue
        word = ball.word(idx)
        key = _class_key(word)
        if not key or not _is_primitive(key) or key in boundary_keys:
            continue
        tr = float(traces[idx])
        det = float(
            ball.mats[idx, 0] * ball.mats[idx, 3]
            - ball.mats[idx, 1] * ball.mats[idx, 2]
        )
        tr /= math.sqrt(det)
        if tr <= 2.0:
            continue
        length = 2.0 * math.acosh(tr / 2.0)
        if length > cutoff:
            continue
        prev = classes.get(key)
        if prev is None or length < prev:
            classes[key] = length
    return sorted(classes.values())


def systole(domain: DevelopedDomain, max_frontier: int = 10_000_000) -> float:
    """Length of the shortest essential closed geodesic.

    Doubles the cutoff from 0.1 until the closed enumeration is nonempty.
    """
    cutoff = 0.1
    while True:
        lengths = enumerate_closed(domain, cutoff, max_frontier)
        if lengths:
            return lengths[0]
        cutoff *= 2.0


def orthosystole(
    orthos: list[Orthogeodesic], cutoff: float | None = None
) -> float:
    """Smallest length of an enumeration known complete up to its cutoff."""
    if not orthos:
        suggestion = 2.0 * cutoff if cutoff else 1.0
        raise NeedsLargerCutoffError(
            "no orthogeodesics below the cutoff; retry with a larger one",
            suggested_cutoff=suggestion,
        )
    return min(o.length for o in orthos)


def orthosystole_adaptive(
    domain: DevelopedDomain,
    start_cutoff: float = 0.25,
    params_kwargs: dict | None = None,
) -> tuple[float, list[Orthogeodesic], float]:
    """Orthosystole by adaptive cutoff doubling.

    Returns (orthosystole, enumeration, cutoff used).
    """
    cutoff = start_cutoff
    kwargs = params_kwargs or {}
    while True:
        orthos = enumerate_orthogeodesics(
            domain, EnumParams(cutoff=cutoff, **kwargs)
        )
        if orthos:
            return orthos[0].length, orthos, cutoff
        cutoff *= 2.0
