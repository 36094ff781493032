"""Command-line front end.

Commands: ``spectrum`` (full or simple orthospectrum as JSON/CSV),
``verify`` (Basmajian partial sums plus the inequality suite),
``reconstruct`` (one-holed-torus rigidity round trip), ``develop``
(SVG/JSON figure of the developed domain), and ``probe`` (seeded random
sampling of the orthosystole-window compactness statement).

Exit codes: 0 success, 2 validation error, 3 resource exhaustion,
4 needs-larger-cutoff (with the suggested cutoff on stderr).
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import jsonio
from .develop import develop
from .errors import (
    DomainError,
    NeedsLargerCutoffError,
    OrthospecError,
    PrecisionError,
    ResourceError,
    ValidationError,
)
from .jsonio import SCHEMA_VERSION
from .orthoenum import EnumParams, enumerate_orthogeodesics
from .rigidity import rigidity_roundtrip
from .spectra import (
    basmajian_report,
    compactness_probe,
    orthospectrum,
    simple_basmajian_lower_bound,
    simple_orthospectrum,
    verify_inequalities,
)
from .surface import (
    BUILTIN_NAMES,
    GeometricSurface,
    HexCombinatorics,
    UshijimaPoint,
    build_surface,
    builtin,
    validate,
)
from .svg import domain_geometry, render_domain

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_RESOURCE = 3
EXIT_NEEDS_CUTOFF = 4


def load_surface_data(data: dict) -> GeometricSurface:
    """Build a surface from a parsed surface-definition document."""
    if not isinstance(data, dict):
        raise ValidationError("surface file must contain a JSON object")
    if "coordinates" not in data:
        raise ValidationError("surface file is missing 'coordinates'")
    coords = data["coordinates"]
    if not isinstance(coords, list) or not all(
        isinstance(v, (int, float)) for v in coords
    ):
        raise ValidationError("'coordinates' must be a list of numbers")

    if "builtin" in data:
        name = data["builtin"]
        if name not in BUILTIN_NAMES:
            raise ValidationError(
                f"unknown builtin {name!r}; expected one of {BUILTIN_NAMES}"
            )
        comb = builtin(name)
    else:
        for key in ("genus", "boundary", "hexagons", "matching"):
            if key not in data:
                raise ValidationError(f"surface file is missing {key!r}")
        matching = []
        for pair in data["matching"]:
            try:
                (h1, k1), (h2, k2) = pair
                matching.append(((int(h1), int(k1)), (int(h2), int(k2))))
            except (TypeError, ValueError):
                raise ValidationError(f"malformed matching pair {pair!r}")
        comb = HexCombinatorics(
            hexagon_count=int(data["hexagons"]), matching=tuple(matching)
        )
        topo = validate(comb)
        if topo.genus != int(data["genus"]) or topo.boundary_count != int(
            data["boundary"]
        ):
            raise ValidationError(
                f"declared topology (g={data['genus']}, b={data['boundary']}) "
                f"does not match the gluing (g={topo.genus}, "
                f"b={topo.boundary_count})"
            )
    return build_surface(comb, UshijimaPoint(tuple(float(v) for v in coords)))


def load_surface(path: str) -> GeometricSurface:
    import json

    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ValidationError(f"cannot read surface file {path}: {exc}")
    except json.JSONDecodeError as exc:
        raise ValidationError(f"surface file {path} is not valid JSON: {exc}")
    return load_surface_data(data)


def _write_output(text: str, out_path: str | None) -> None:
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _spectrum_json(spec) -> str:
    return jsonio.dumps(
        {
            "schema_version": SCHEMA_VERSION,
            "kind": spec.kind,
            "cutoff": float(spec.cutoff),
            "grouping_tolerance": float(spec.grouping_tolerance),
            "entries": [[float(l), int(m)] for l, m in spec.entries],
        },
        indent=2,
    )


def _spectrum_csv(spec) -> str:
    lines = ["length,multiplicity"]
    for l, m in spec.entries:
        lines.append(f"{jsonio.format_float(float(l))},{m}")
    return "\n".join(lines) + "\n"


def cmd_spectrum(args) -> int:
    surface = load_surface(args.surface)
    fn = simple_orthospectrum if args.simple else orthospectrum
    spec = fn(surface, args.cutoff, threads=args.threads)
    text = _spectrum_csv(spec) if args.format == "csv" else _spectrum_json(spec)
    _write_output(text, args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    surface = load_surface(args.surface)
    domain = develop(surface)
    report = verify_inequalities(
        surface, args.cutoff, threads=args.threads, domain=domain
    )
    full = orthospectrum(surface, args.cutoff, threads=args.threads)
    simple = simple_orthospectrum(surface, args.cutoff, threads=args.threads)
    bas = basmajian_report(surface, full)
    lower = simple_basmajian_lower_bound(surface, simple)
    bas_ok = (
        bas.partial_sum < bas.boundary_total
        and bas.doubled_sum < bas.boundary_total
        and bas.residual > 0
    )
    passed = report.passed and bas_ok and lower.holds
    doc = {
        "schema_version": SCHEMA_VERSION,
        "cutoff": float(args.cutoff),
        "passed": passed,
        "checks": [
            {
                "name": c.name,
                "passed": c.passed,
                "detail": c.detail,
                "witnesses": _plain(c.witnesses),
            }
            for c in report.checks
        ],
        "basmajian": {
            "partial_sum": bas.partial_sum,
            "doubled_sum": bas.doubled_sum,
            "boundary_total": bas.boundary_total,
            "residual": bas.residual,
            "doubled_residual": bas.doubled_residual,
            "term_count": bas.term_count,
            "passed": bas_ok,
        },
        "simple_lower_bound": {
            "simple_sum": lower.simple_sum,
            "boundary_total": lower.boundary_total,
            "holds": lower.holds,
            "per_component_bound": lower.per_component_bound,
        },
    }
    _write_output(jsonio.dumps(doc, indent=2), args.out)
    return EXIT_OK if passed else 1


def cmd_reconstruct(args) -> int:
    surface = load_surface(args.surface)
    report = rigidity_roundtrip(surface, args.cutoff, threads=args.threads)
    doc = {
        "schema_version": SCHEMA_VERSION,
        "cutoff": float(args.cutoff),
        "passed": report.passed,
        "shortest_simple_lengths": list(report.lengths),
        "intersection_counts": list(report.intersection_counts),
        "predicate_violations": _plain(report.predicate_violations),
        "reconstructed_coordinates": list(report.reconstructed_coords),
        "tie_at_third": report.tie_at_third,
        "comparison": {
            "equal": report.comparison.equal,
            "common_cutoff": report.comparison.common_cutoff,
            "first_divergence": _plain(report.comparison.first_divergence),
        },
    }
    _write_output(jsonio.dumps(doc, indent=2), args.out)
    return EXIT_OK if report.passed else 1


def cmd_develop(args) -> int:
    surface = load_surface(args.surface)
    domain = develop(surface)
    orthos = None
    if args.orthos is not None:
        orthos = enumerate_orthogeodesics(
            domain, EnumParams(cutoff=args.orthos), threads=args.threads
        )
    if args.format == "json":
        doc = {
            "schema_version": SCHEMA_VERSION,
            "geometry": domain_geometry(domain, orthos),
        }
        text = jsonio.dumps(doc, indent=2)
    else:
        window = tuple(args.window) if args.window else None
        text = render_domain(domain, window=window, orthos=orthos)
    _write_output(text, args.out)
    return EXIT_OK


def cmd_probe(args) -> int:
    comb = builtin(args.builtin)
    topo = validate(comb)
    rng = np.random.default_rng(args.seed)
    lo, hi = args.range
    samples = [
        tuple(rng.uniform(lo, hi, size=topo.arc_count))
        for _ in range(args.samples)
    ]
    report = compactness_probe(
        samples, comb, args.eps1, args.eps2, threads=args.threads
    )
    doc = {
        "schema_version": SCHEMA_VERSION,
        "builtin": args.builtin,
        "samples": args.samples,
        "range": [lo, hi],
        "eps1": args.eps1,
        "eps2": args.eps2,
        "seed": args.seed,
        "filtered_count": report.filtered_count,
        "inconclusive": report.inconclusive,
        "min_orthosystole": report.min_orthosystole,
        "max_orthosystole": report.max_orthosystole,
        "min_systole": report.min_systole,
        "min_component_length": report.min_component_length,
        "max_component_length": report.max_component_length,
        "max_total_boundary": report.max_total_boundary,
        "boundary_bound": report.boundary_bound,
        "boundary_bound_holds": report.boundary_bound_holds,
    }
    _write_output(jsonio.dumps(doc, indent=2), args.out)
    return EXIT_OK if report.boundary_bound_holds else 1


def _plain(obj):
    """Recursively convert tuples/complex values into JSON-friendly data."""
    if obj is None or isinstance(obj, (bool, int, float, str)):
        return obj
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    return repr(obj)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="orthospec",
        description="Orthospectra of hyperbolic surfaces with geodesic boundary",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, cutoff: bool = True):
        p.add_argument("--surface", required=True, help="surface definition JSON")
        if cutoff:
            p.add_argument("--cutoff", type=float, required=True)
        p.add_argument("--threads", type=int, default=1)
        p.add_argument("--out", default=None, help="output path (default stdout)")

    p = sub.add_parser("spectrum", help="compute the (simple) orthospectrum")
    common(p)
    p.add_argument("--simple", action="store_true", help="simple orthospectrum")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("verify", help="run the identity and inequality suite")
    common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("reconstruct", help="one-holed torus rigidity round trip")
    common(p)
    p.set_defaults(func=cmd_reconstruct)

    p = sub.add_parser("develop", help="export the developed domain")
    common(p, cutoff=False)
    p.add_argument(
        "--orthos",
        type=float,
        default=None,
        help="include orthogeodesic lifts up to this cutoff",
    )
    p.add_argument("--format", choices=("svg", "json"), default="svg")
    p.add_argument(
        "--window",
        type=float,
        nargs=3,
        metavar=("X0", "X1", "YMAX"),
        default=None,
        help="half-plane window to draw",
    )
    p.set_defaults(func=cmd_develop)

    p = sub.add_parser("probe", help="sampled compactness probe")
    p.add_argument("--builtin", choices=BUILTIN_NAMES, required=True)
    p.add_argument("--samples", type=int, required=True)
    p.add_argument(
        "--range", type=float, nargs=2, metavar=("LO", "HI"), required=True
    )
    p.add_argument("--eps1", type=float, required=True)
    p.add_argument("--eps2", type=float, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_probe)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except NeedsLargerCutoffError as exc:
        print(
            f"error: {exc} (suggested cutoff: {exc.suggested_cutoff})",
            file=sys.stderr,
        )
        return EXIT_NEEDS_CUTOFF
    except ResourceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (ValidationError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except PrecisionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except OrthospecError as exc:  # pragma: no cover - catch-all for safety
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
