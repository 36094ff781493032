"""Orthospectra, the boundary-length identity, and the inequality suite.

A spectrum is the multiset of orthogeodesic lengths up to a cutoff, grouped
within a tolerance (floating-point scatter inside a true multiplicity class
is far below the gaps of the discrete spectrum).  Orthogeodesics are counted
unoriented, once per geodesic arc.

The boundary-length identity is reported in both conventions: the sum of
B(l) = 2 asinh(1/sinh l) over the unoriented spectrum converges to half the
boundary length, since each arc's two feet carry a boundary interval of
width B(l) each; the doubled sum converges to the boundary length itself.
Partial sums of either kind increase strictly in the cutoff and stay below
their limits, which is what the verification suite asserts.

The orthosystole/boundary inequality is checked in the collar form
sinh(t/2) sinh(l(dX)/(24g+12b-24)) <= 1/2, which is exact (with equality)
for surfaces glued from equilateral hexagons; the report also carries the
value of sinh(2t) sinh(l(dX)/(24g+12b-24)), which exceeds 1/2 on most
surfaces and is recorded for reference only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .develop import DevelopedDomain, develop
from .errors import DomainError, NeedsLargerCutoffError
from .halfplane import common_perpendicular, geodesic_through, PerpResult
from .orthoenum import (
    EnumParams,
    Orthogeodesic,
    crossing_count,
    enumerate_orthogeodesics,
    is_simple,
)
from .surface import GeometricSurface, HexCombinatorics, UshijimaPoint, build_surface
from .trig import basmajian_term, pants_tau_bound

DEFAULT_GROUPING_TOL = 1e-7
# Slack for inequality checks that are exact equalities at symmetric points.
EQUALITY_SLACK = 1e-9


@dataclass(frozen=True)
class Spectrum:
    """Grouped multiset of orthogeodesic lengths up to a cutoff."""

    entries: tuple[tuple[float, int], ...]
    cutoff: float
    grouping_tolerance: float = DEFAULT_GROUPING_TOL
    kind: str = "full"

    def __len__(self) -> int:
        return len(self.entries)

    def total_multiplicity(self) -> int:
        return sum(m for _, m in self.entries)

    def lengths(self) -> list[float]:
        return [l for l, _ in self.entries]


def _group_lengths(
    lengths: list[float], tol: float
) -> tuple[tuple[float, int], ...]:
    """Cluster sorted lengths: a new group starts where the gap exceeds tol.

    The group representative is its smallest member, so shrinking the
    tolerance can only split groups, never merge them.
    """
    entries = []
    cur_start = None
    cur_last = None
    count = 0
    for value in sorted(lengths):
        if cur_start is None or value - cur_last > tol:
            if cur_start is not None:
                entries.append((cur_start, count))
            cur_start = value
            count = 1
        else:
            count += 1
        cur_last = value
    if cur_start is not None:
        entries.append((cur_start, count))
    return tuple(entries)


def enumerated_orthogeodesics(
    surface: GeometricSurface,
    cutoff: float,
    threads: int = 1,
    domain: DevelopedDomain | None = None,
) -> tuple[DevelopedDomain, list[Orthogeodesic]]:
    """Develop (once) and enumerate; shared entry point of this module."""
    if domain is None:
        domain = develop(surface)
    orthos = enumerate_orthogeodesics(
        domain, EnumParams(cutoff=cutoff), threads=threads
    )
    return domain, orthos


def orthospectrum(
    surface: GeometricSurface,
    cutoff: float,
    threads: int = 1,
    grouping_tolerance: float = DEFAULT_GROUPING_TOL,
) -> Spectrum:
    """Full orthospectrum up to the cutoff."""
    _, orthos = enumerated_orthogeodesics(surface, cutoff, threads)
    return Spectrum(
        entries=_group_lengths([o.length for o in orthos], grouping_tolerance),
        cutoff=cutoff,
        grouping_tolerance=grouping_tolerance,
        kind="full",
    )


def simple_orthospectrum(
    surface: GeometricSurface,
    cutoff: float,
    threads: int = 1,
    grouping_tolerance: float = DEFAULT_GROUPING_TOL,
) -> Spectrum:
    """Simple orthospectrum (self-intersection-free arcs) up to the cutoff."""
    domain, orthos = enumerated_orthogeodesics(surface, cutoff, threads)
    lengths = [o.length for o in orthos if is_simple(domain, o)[0]]
    return Spectrum(
        entries=_group_lengths(lengths, grouping_tolerance),
        cutoff=cutoff,
        grouping_tolerance=grouping_tolerance,
        kind="simple",
    )


@dataclass(frozen=True)
class BasmajianReport:
    partial_sum: float
    boundary_total: float
    residual: float
    # Both feet of an arc carry an interval of width B(l), so the doubled sum
    # is the one converging to the boundary length.
    doubled_sum: float
    doubled_residual: float
    term_count: int
    cutoff: float


def basmajian_report(surface: GeometricSurface, spec: Spectrum) -> BasmajianReport:
    """Partial Basmajian sums of a full spectrum against the boundary length."""
    if spec.kind != "full":
        raise DomainError(
            "Basmajian's identity needs the full spectrum; for the simple "
            "spectrum only the strict lower bound holds"
        )
    partial = math.fsum(m * basmajian_term(l) for l, m in spec.entries)
    total = surface.total_boundary()
    return BasmajianReport(
        partial_sum=partial,
        boundary_total=total,
        residual=total - partial,
        doubled_sum=2.0 * partial,
        doubled_residual=total - 2.0 * partial,
        term_count=spec.total_multiplicity(),
        cutoff=spec.cutoff,
    )


@dataclass(frozen=True)
class SimpleBasmajianReport:
    simple_sum: float
    boundary_total: float
    holds: bool
    per_component_bound: float
    cutoff: float


def simple_basmajian_lower_bound(
    surface: GeometricSurface, spec: Spectrum
) -> SimpleBasmajianReport:
    """Strict bound sum B < boundary length over the simple spectrum, and the
    implied per-component lower bound on the longest boundary component."""
    if spec.kind != "simple":
        raise DomainError("expected a simple-kind spectrum")
    partial = math.fsum(m * basmajian_term(l) for l, m in spec.entries)
    total = surface.total_boundary()
    b = surface.topology.boundary_count
    return SimpleBasmajianReport(
        simple_sum=partial,
        boundary_total=total,
        holds=partial < total,
        per_component_bound=partial / b,
        cutoff=spec.cutoff,
    )


@dataclass(frozen=True)
class InequalityCheck:
    name: str
    passed: bool
    detail: str
    witnesses: tuple = ()


@dataclass(frozen=True)
class InequalityReport:
    checks: tuple[InequalityCheck, ...]
    cutoff: float

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


def pants_tau_lengths(
    surface: GeometricSurface, domain: DevelopedDomain | None = None
) -> dict[int, float]:
    """Exact lengths of the self-perpendicular arcs of a pair of pants.

    For each boundary component, the unique simple orthogeodesic with both
    endpoints on it crosses the opposite seam orthogonally at its midpoint,
    so its length is twice the perpendicular between a hexagon boundary side
    and the opposite arc side.  Used to size enumeration cutoffs and as an
    independent oracle for the enumerated arc.
    """
    topo = surface.topology
    if (topo.genus, topo.boundary_count) != (0, 3):
        raise DomainError("tau arcs in this form exist only on a pair of pants")
    if domain is None:
        domain = develop(surface)
    out = {}
    for ci, comp in enumerate(surface.boundary):
        seg = comp[0]
        hexagon = domain.hexes[seg.hexagon]
        k = seg.slot
        b_side = geodesic_through(
            hexagon.corners[(2 * k + 1) % 6], hexagon.corners[(2 * k + 2) % 6]
        )
        opp = (k + 2) % 3
        a_side = geodesic_through(
            hexagon.corners[2 * opp], hexagon.corners[(2 * opp + 1) % 6]
        )
        res = common_perpendicular(b_side, a_side)
        if not isinstance(res, PerpResult):
            raise DomainError("degenerate hexagon: opposite sides intersect")
        out[ci] = 2.0 * res.length
    return out


def _collar_product(t: float, total: float, coeff: int) -> tuple[float, float]:
    """(collar-form, as-printed-form) products of the orthosystole bound."""
    s = math.sinh(total / coeff)
    return math.sinh(t / 2.0) * s, math.sinh(2.0 * t) * s


def verify_inequalities(
    surface: GeometricSurface,
    cutoff: float,
    threads: int = 1,
    domain: DevelopedDomain | None = None,
) -> InequalityReport:
    """Run every applicable inequality check on the enumerated data.

    Raises NeedsLargerCutoffError when a required witness (any orthogeodesic
    at all for the orthosystole, or the pants tau arc) is not enumerated yet.
    """
    domain, orthos = enumerated_orthogeodesics(
        surface, cutoff, threads, domain=domain
    )
    if not orthos:
        raise NeedsLargerCutoffError(
            "no orthogeodesics below the cutoff; the orthosystole check "
            "needs at least one",
            suggested_cutoff=2.0 * cutoff,
        )
    checks = []

    # Non-simple orthogeodesics are longer than 1/2.  Arcs no longer than
    # 1/2 must come out simple; longer arcs satisfy the bound vacuously and
    # their (possibly expensive) self-intersection count is not needed.
    violations = []
    for o in orthos:
        if o.length <= 0.5 + EQUALITY_SLACK:
            simple, crossings = is_simple(domain, o)
            if not simple:
                violations.append((o.length, o.start, o.end, crossings))
    checks.append(
        InequalityCheck(
            name="nonsimple_length_bound",
            passed=not violations,
            detail=f"{len(violations)} non-simple orthogeodesics at length <= 1/2",
            witnesses=tuple(violations),
        )
    )

    # Collar inequality for orthogeodesics: a pair with sinh sinh <= 1 and a
    # simple member must be disjoint.
    violations = []
    for a_idx in range(len(orthos)):
        for b_idx in range(a_idx + 1, len(orthos)):
            o1, o2 = orthos[a_idx], orthos[b_idx]
            if math.sinh(o1.length) * math.sinh(o2.length) > 1.0 - EQUALITY_SLACK:
                continue
            if not (is_simple(domain, o1)[0] or is_simple(domain, o2)[0]):
                continue
            crossings = crossing_count(domain, o1, o2)
            if crossings > 0:
                violations.append(
                    (o1.length, o2.length, crossings, o1.start, o2.start)
                )
    checks.append(
        InequalityCheck(
            name="ortho_collar",
            passed=not violations,
            detail=f"{len(violations)} intersecting pairs below the collar bound",
            witnesses=tuple(violations),
        )
    )

    # Orthosystole versus boundary length, in the collar form (equality at
    # surfaces glued from equilateral hexagons); the as-printed form of the
    # source is recorded alongside but not gated on.
    t = orthos[0].length
    topo = surface.topology
    coeff = 24 * topo.genus + 12 * topo.boundary_count - 24
    collar, printed = _collar_product(t, surface.total_boundary(), coeff)
    checks.append(
        InequalityCheck(
            name="orthosystole_boundary",
            passed=collar <= 0.5 + EQUALITY_SLACK,
            detail=(
                f"sinh(t/2) sinh(L/{coeff}) = {collar:.12f} (as-printed "
                f"sinh(2t) form: {printed:.6f})"
            ),
            witnesses=(t,),
        )
    )

    # Pants only: the self-perpendicular arc bound, one check per cuff.
    if (topo.genus, topo.boundary_count) == (0, 3):
        comp_lengths = surface.boundary_lengths()
        for ci in range(3):
            candidates = [
                o
                for o in orthos
                if o.start[0] == ci
                and o.end[0] == ci
                and is_simple(domain, o)[0]
            ]
            if not candidates:
                raise NeedsLargerCutoffError(
                    f"tau arc of boundary component {ci} not enumerated below "
                    f"cutoff {cutoff}",
                    suggested_cutoff=2.0 * cutoff,
                )
            if len(candidates) > 1:
                checks.append(
                    InequalityCheck(
                        name=f"pants_tau_unique_{ci}",
                        passed=False,
                        detail=(
                            f"{len(candidates)} simple orthogeodesics with both "
                            f"endpoints on component {ci}; expected exactly one"
                        ),
                        witnesses=tuple(o.length for o in candidates),
                    )
                )
            tau = min(o.length for o in candidates)
            others = sorted(
                comp_lengths[k] for k in range(3) if k != ci
            )
            # The bound is attained exactly when the two other cuffs have
            # equal length, so the gate allows equality up to float scatter;
            # strictness is expected (and observed) away from that locus.
            bound = pants_tau_bound(others[1], comp_lengths[ci])
            checks.append(
                InequalityCheck(
                    name=f"pants_tau_bound_{ci}",
                    passed=tau <= bound + EQUALITY_SLACK,
                    detail=f"tau = {tau:.12f} <= bound {bound:.12f}",
                    witnesses=(tau, bound),
                )
            )
    return InequalityReport(checks=tuple(checks), cutoff=cutoff)


@dataclass(frozen=True)
class SpectrumComparison:
    equal: bool
    common_cutoff: float
    first_divergence: tuple | None = None


def compare(s1: Spectrum, s2: Spectrum, tol: float) -> SpectrumComparison:
    """Equality of two spectra of the same kind up to the common cutoff."""
    if s1.kind != s2.kind:
        raise DomainError(f"cannot compare {s1.kind} spectrum with {s2.kind}")
    common = min(s1.cutoff, s2.cutoff)
    e1 = [(l, m) for l, m in s1.entries if l <= common]
    e2 = [(l, m) for l, m in s2.entries if l <= common]
    for idx, ((l1, m1), (l2, m2)) in enumerate(zip(e1, e2)):
        if abs(l1 - l2) > tol:
            return SpectrumComparison(
                False, common, (idx, (l1, m1), (l2, m2), "length mismatch")
            )
        if m1 != m2:
            return SpectrumComparison(
                False, common, (idx, (l1, m1), (l2, m2), "multiplicity mismatch")
            )
    if len(e1) != len(e2):
        idx = min(len(e1), len(e2))
        longer = e1[idx] if len(e1) > len(e2) else e2[idx]
        return SpectrumComparison(
            False, common, (idx, longer, None, "entry count mismatch")
        )
    return SpectrumComparison(True, common)


@dataclass(frozen=True)
class ProbeReport:
    sample_count: int
    filtered_count: int
    inconclusive: bool
    min_orthosystole: float | None
    max_orthosystole: float | None
    min_systole: float | None
    min_component_length: float | None
    max_component_length: float | None
    max_total_boundary: float | None
    boundary_bound: float
    boundary_bound_holds: bool


def compactness_probe(
    samples: list[UshijimaPoint | tuple],
    comb: HexCombinatorics,
    eps1: float,
    eps2: float,
    threads: int = 1,
) -> ProbeReport:
    """Empirical probe of the compactness statement.

    Filters the sampled surfaces to orthosystole in [eps1, eps2] and checks
    that every filtered surface has total boundary below the bound derived
    from eps1, reporting systole and boundary extremes over the filtered set.
    """
    from concurrent.futures import ThreadPoolExecutor

    from .orthoenum import systole
    from .trig import orthosystole_boundary_bound

    if not (0 < eps1 <= eps2):
        raise DomainError("need 0 < eps1 <= eps2")

    def examine(coords):
        surface = build_surface(comb, coords)
        domain = develop(surface)
        orthos = enumerate_orthogeodesics(
            domain, EnumParams(cutoff=eps2 * (1.0 + 1e-9))
        )
        if not orthos:
            return None  # orthosystole above eps2: outside the window
        osys = orthos[0].length
        if osys < eps1:
            return None
        return (
            osys,
            systole(domain),
            min(surface.boundary_lengths()),
            max(surface.boundary_lengths()),
            surface.total_boundary(),
        )

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            rows = list(ex.map(examine, samples))
    else:
        rows = [examine(c) for c in samples]
    filtered = [r for r in rows if r is not None]

    topo = None
    try:
        from .surface import validate

        topo = validate(comb)
    except Exception:  # pragma: no cover - comb was validated upstream
        raise
    bound = orthosystole_boundary_bound(eps1, topo.genus, topo.boundary_count)
    if not filtered:
        return ProbeReport(
            sample_count=len(samples),
            filtered_count=0,
            inconclusive=True,
            min_orthosystole=None,
            max_orthosystole=None,
            min_systole=None,
            min_component_length=None,
            max_component_length=None,
            max_total_boundary=None,
            boundary_bound=bound,
            boundary_bound_holds=True,
        )
    return ProbeReport(
        sample_count=len(samples),
        filtered_count=len(filtered),
        inconclusive=False,
        min_orthosystole=min(r[0] for r in filtered),
        max_orthosystole=max(r[0] for r in filtered),
        min_systole=min(r[1] for r in filtered),
        min_component_length=min(r[2] for r in filtered),
        max_component_length=max(r[3] for r in filtered),
        max_total_boundary=max(r[4] for r in filtered),
        boundary_bound=bound,
        boundary_bound_holds=all(r[4] <= bound for r in filtered),
    )
