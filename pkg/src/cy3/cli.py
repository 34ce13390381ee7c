"""Command-line interface: geometry management, searches, candidate checks.

Exit codes: 0 success with at least one valid certificate (or all checks
passing), 1 clean run without solutions or with failed checks, 2 input
error, 3 geometry validation error.  Reports are deterministic: identical
inputs produce byte-identical output regardless of worker count.  Rationals
are rendered as ``"p/q"`` strings in JSON, never as floats.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

from . import __version__
from .anomaly import anomaly_class, is_effective
from .catalog import BUILTIN_NAMES, builtin, load_geometry, save_geometry
from .chern import ExtensionSpec, extension_chern, tangent, trivial_line
from .errors import (CY3Error, DataConsistencyError, GeometryMismatch,
                     GeometryParseError, GeometryValidationError,
                     NotAmpleError, StructuralError)
from .exact import Exact, decode_exact, encode_exact, exact_tuple
from .intersection import Geometry
from .stability import (SearchConfig, check_negativity, check_orthogonal,
                        evaluate_candidate, pairing_row, search)

EXIT_OK = 0
EXIT_NO_SOLUTIONS = 1
EXIT_INPUT_ERROR = 2
EXIT_VALIDATION_ERROR = 3


@dataclass(frozen=True)
class ReportConfig:
    """Echo of the search parameters that shaped a report."""

    rank_case: str
    e1: str
    e2: str
    coord_bound: int
    multiple_range: int
    perturbation_enabled: bool
    include_failures: bool


@dataclass(frozen=True)
class CandidateReport:
    """One candidate with verdicts, Chern data and anomaly result."""

    d: tuple[Exact, ...]
    h: tuple[Exact, ...]
    orthogonal: bool
    nontrivial: bool
    negative: bool
    nonsplit: bool
    valid: bool
    chi: Exact
    c2_e: tuple[Exact, ...]
    c3_e: Exact
    w: tuple[Exact, ...]
    effective: bool
    decomposition: tuple[tuple[int, Exact], ...] | None


@dataclass(frozen=True)
class RunReport:
    """Deterministic, serializable result of one search run."""

    geometry: str
    h: tuple[Exact, ...]
    config: ReportConfig
    candidates: tuple[CandidateReport, ...]
    version: str


def build_candidate_report(g: Geometry, cert, e1, e2) -> CandidateReport:
    bundle = extension_chern(ExtensionSpec(e1, e2, cert.d))
    w = anomaly_class(g, bundle)
    verdict = is_effective(g, w)
    return CandidateReport(
        d=cert.d.coords, h=cert.h.coords,
        orthogonal=cert.checks.orthogonal, nontrivial=cert.checks.nontrivial,
        negative=cert.checks.negative, nonsplit=cert.checks.nonsplit,
        valid=cert.valid, chi=cert.chi,
        c2_e=bundle.c2.coords, c3_e=bundle.c3,
        w=w.coords, effective=verdict.effective,
        decomposition=verdict.decomposition,
    )


def build_run_report(g: Geometry, h, config: SearchConfig,
                     include_failures: bool = False) -> RunReport:
    e1, e2 = config.bundle_pair(g)
    certs = search(g, h, config, include_failures=include_failures)
    candidates = tuple(build_candidate_report(g, cert, e1, e2) for cert in certs)
    return RunReport(
        geometry=g.name, h=h.coords,
        config=ReportConfig(
            rank_case=config.rank_case, e1=e1.label, e2=e2.label,
            coord_bound=config.coord_bound, multiple_range=config.multiple_range,
            perturbation_enabled=config.perturbation_enabled,
            include_failures=include_failures),
        candidates=candidates,
        version=__version__,
    )


def report_to_dict(report: RunReport) -> dict:
    def enc_seq(values):
        return [encode_exact(v) for v in values]

    return {
        "geometry": report.geometry,
        "H": enc_seq(report.h),
        "config": {
            "rank_case": report.config.rank_case,
            "e1": report.config.e1,
            "e2": report.config.e2,
            "coord_bound": report.config.coord_bound,
            "multiple_range": report.config.multiple_range,
            "perturbation_enabled": report.config.perturbation_enabled,
            "include_failures": report.config.include_failures,
        },
        "candidates": [
            {
                "D": enc_seq(c.d),
                "H": enc_seq(c.h),
                "checks": {
                    "orthogonal": c.orthogonal,
                    "nontrivial": c.nontrivial,
                    "negative": c.negative,
                    "nonsplit": c.nonsplit,
                },
                "valid": c.valid,
                "chi": encode_exact(c.chi),
                "c2E": enc_seq(c.c2_e),
                "c3E": encode_exact(c.c3_e),
                "W": enc_seq(c.w),
                "effective": c.effective,
                "decomposition": None if c.decomposition is None
                else [[j, encode_exact(v)] for j, v in c.decomposition],
            }
            for c in report.candidates
        ],
        "version": report.version,
    }


def report_from_dict(data: dict) -> RunReport:
    cfg = data["config"]
    candidates = []
    for c in data["candidates"]:
        checks = c["checks"]
        decomposition = c["decomposition"]
        candidates.append(CandidateReport(
            d=exact_tuple(decode_exact(v) for v in c["D"]),
            h=exact_tuple(decode_exact(v) for v in c["H"]),
            orthogonal=checks["orthogonal"], nontrivial=checks["nontrivial"],
            negative=checks["negative"], nonsplit=checks["nonsplit"],
            valid=c["valid"], chi=decode_exact(c["chi"]),
            c2_e=exact_tuple(decode_exact(v) for v in c["c2E"]),
            c3_e=decode_exact(c["c3E"]),
            w=exact_tuple(decode_exact(v) for v in c["W"]),
            effective=c["effective"],
            decomposition=None if decomposition is None
            else tuple((int(j), decode_exact(v)) for j, v in decomposition),
        ))
    return RunReport(
        geometry=data["geometry"],
        h=exact_tuple(decode_exact(v) for v in data["H"]),
        config=ReportConfig(
            rank_case=cfg["rank_case"], e1=cfg["e1"], e2=cfg["e2"],
            coord_bound=cfg["coord_bound"], multiple_range=cfg["multiple_range"],
            perturbation_enabled=cfg["perturbation_enabled"],
            include_failures=cfg["include_failures"]),
        candidates=tuple(candidates),
        version=data["version"],
    )


def render_report_json(report: RunReport) -> str:
    return json.dumps(report_to_dict(report), indent=2, sort_keys=True)


def _coords_str(coords) -> str:
    return "(" + ", ".join(str(c) for c in coords) + ")"


def _bool_str(flag: bool) -> str:
    return "yes" if flag else "no"


def _table(rows: list[list[str]]) -> str:
    widths = [max(len(row[i]) for row in rows) for i in range(len(rows[0]))]
    lines = ["  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip()
             for row in rows]
    return "\n".join(lines)


def render_report_table(report: RunReport) -> str:
    head = [
        f"geometry: {report.geometry}",
        f"H = {_coords_str(report.h)}",
        f"rank case: {report.config.rank_case}"
        f"  (E1 = {report.config.e1}, E2 = {report.config.e2})"
        f"  bound = {report.config.coord_bound}"
        f"  multiples = {report.config.multiple_range}",
    ]
    if not report.candidates:
        return "\n".join(head + ["no candidates"])
    rows = [["D", "H", "chi", "orth", "nontriv", "neg", "nonsplit",
             "valid", "c2(E)", "c3(E)", "W", "effective"]]
    for c in report.candidates:
        rows.append([
            _coords_str(c.d), _coords_str(c.h), str(c.chi),
            _bool_str(c.orthogonal), _bool_str(c.nontrivial),
            _bool_str(c.negative), _bool_str(c.nonsplit), _bool_str(c.valid),
            _coords_str(c.c2_e), str(c.c3_e), _coords_str(c.w),
            _bool_str(c.effective),
        ])
    return "\n".join(head + [_table(rows)])


def _parse_coords(text: str, expected: int, what: str) -> tuple[Exact, ...]:
    parts = [p.strip() for p in text.split(",")]
    try:
        coords = exact_tuple(parts)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"cannot parse {what} coordinates {text!r}: {exc}") from exc
    if len(coords) != expected:
        raise ValueError(
            f"{what} needs {expected} coordinates for this geometry, got {len(coords)}")
    return coords


def _resolve_geometry(args) -> Geometry:
    path = getattr(args, "geometry_file", None)
    if path:
        return load_geometry(path)
    name = getattr(args, "geometry", None)
    if not name:
        raise ValueError("a geometry name or --geometry-file is required")
    return builtin(name)


def _build_config(args, g: Geometry) -> SearchConfig:
    e1_name = getattr(args, "e1", None)
    e2_name = getattr(args, "e2", None)
    presets = {"O": trivial_line, "TX": tangent}
    if e1_name or e2_name:
        rank_case = "custom"
        e1 = presets[e1_name or "O"](g)
        e2 = presets[e2_name or "O"](g)
    else:
        rank_case = "r4" if getattr(args, "rank", 2) == 4 else "r2"
        e1 = e2 = None
    workers = 1
    env = os.environ.get("CY3_THREADS")
    if env:
        try:
            workers = max(1, min(int(env), os.cpu_count() or 1))
        except ValueError as exc:
            raise ValueError(f"CY3_THREADS must be an integer, got {env!r}") from exc
    return SearchConfig(
        coord_bound=args.bound, multiple_range=args.multiples,
        rank_case=rank_case, e1=e1, e2=e2,
        perturbation_enabled=getattr(args, "perturb", False),
        workers=workers)


def _format_combo(coeffs, names) -> str:
    parts = []
    for c, name in zip(coeffs, names):
        if c == 0:
            continue
        mag = c if c > 0 else -c
        term = name if mag == 1 else f"{mag} {name}"
        if not parts:
            parts.append(term if c > 0 else f"-{term}")
        else:
            parts.append(f"+ {term}" if c > 0 else f"- {term}")
    return " ".join(parts) if parts else "0"


def _power_label(indices, names) -> str:
    parts = []
    current = None
    count = 0
    for idx in indices:
        if idx == current:
            count += 1
        else:
            if current is not None:
                parts.append(names[current] if count == 1
                             else f"{names[current]}^{count}")
            current, count = idx, 1
    parts.append(names[current] if count == 1 else f"{names[current]}^{count}")
    return ".".join(parts)


def cmd_geometry_list(args) -> int:
    for name in BUILTIN_NAMES:
        print(name)
    return EXIT_OK


def cmd_geometry_show(args) -> int:
    g = _resolve_geometry(args)
    print(f"name: {g.name}")
    print(f"divisor basis: {', '.join(g.divisor_basis)}")
    print(f"curve basis: {', '.join(g.curve_basis)}")
    print("triple intersections:")
    for i in range(g.rho):
        for j in range(i, g.rho):
            for k in range(j, g.rho):
                v = g.triple[i][j][k]
                if v:
                    print(f"  {_power_label((i, j, k), g.divisor_basis)} = {v}")
    print("pairing:")
    for i in range(g.rho):
        for a in range(g.curve_rank):
            print(f"  {g.divisor_basis[i]}.{g.curve_basis[a]} = {g.pairing[i][a]}")
    print(f"c2(X) = {_format_combo(g.c2x, g.curve_basis)}")
    print(f"c3 = {g.c3x}")
    print(f"ample cone: {', '.join(f.label for f in g.ample_inequalities)}")
    gens = ", ".join(_format_combo(gen, g.curve_basis)
                     for gen in g.effective_curve_generators)
    print(f"effective curve generators: {gens}")
    return EXIT_OK


def cmd_geometry_validate(args) -> int:
    try:
        load_geometry(args.path)
    except GeometryValidationError as exc:
        for v in exc.violations:
            print(f"violation [{v.kind}] at {v.where}: {v.message}", file=sys.stderr)
        return EXIT_VALIDATION_ERROR
    print("ok")
    return EXIT_OK


def cmd_geometry_save(args) -> int:
    g = builtin(args.geometry)
    save_geometry(g, args.path)
    print(f"wrote {args.path}")
    return EXIT_OK


def cmd_search(args) -> int:
    g = _resolve_geometry(args)
    h = g.divisor(_parse_coords(args.H, g.rho, "H"))
    config = _build_config(args, g)
    report = build_run_report(g, h, config, include_failures=args.include_failures)
    if args.format == "json":
        print(render_report_json(report))
    else:
        print(render_report_table(report))
    return EXIT_OK if any(c.valid for c in report.candidates) else EXIT_NO_SOLUTIONS


def cmd_check(args) -> int:
    g = _resolve_geometry(args)
    d = g.divisor(_parse_coords(args.D, g.rho, "D"))
    h = g.divisor(_parse_coords(args.H, g.rho, "H"))
    config = _build_config(args, g)
    e1, e2 = config.bundle_pair(g)

    orth_value = check_orthogonal(d, h)
    row = pairing_row(d, h)
    neg_value = check_negativity(d, h)
    cert = evaluate_candidate(d, h, e1, e2)
    candidate = build_candidate_report(g, cert, e1, e2)

    if args.format == "json":
        payload = report_to_dict(RunReport(
            geometry=g.name, h=h.coords,
            config=ReportConfig(
                rank_case=config.rank_case, e1=e1.label, e2=e2.label,
                coord_bound=config.coord_bound,
                multiple_range=config.multiple_range,
                perturbation_enabled=config.perturbation_enabled,
                include_failures=True),
            candidates=(candidate,), version=__version__))
        payload["values"] = {
            "orthogonality": encode_exact(orth_value),
            "pairing_row": [encode_exact(v) for v in row],
            "negativity": encode_exact(neg_value),
        }
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(f"geometry: {g.name}")
        print(f"D = {_coords_str(d.coords)}   H = {_coords_str(h.coords)}   "
              f"rank case: {config.rank_case} (E1 = {e1.label}, E2 = {e2.label})")
        checkmark = lambda b: "pass" if b else "FAIL"
        print(f"D.H^2 = {orth_value}   orthogonal: {checkmark(cert.checks.orthogonal)}")
        print(f"D.H row = {_coords_str(row)}   numerically nontrivial: "
              f"{checkmark(cert.checks.nontrivial)}")
        print(f"D^2.H = {neg_value}   negative: {checkmark(cert.checks.negative)}")
        print(f"chi = {cert.chi}   nonsplit: {checkmark(cert.checks.nonsplit)}")
        print(f"c2(E) = {_coords_str(candidate.c2_e)}   c3(E) = {candidate.c3_e}")
        print(f"W = {_coords_str(candidate.w)}   effective: "
              f"{_bool_str(candidate.effective)}")
        print(f"certificate: {'valid' if cert.valid else 'invalid'}")
    return EXIT_OK if cert.valid else EXIT_NO_SOLUTIONS


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cy3",
        description="Exact intersection-theory toolkit: stability certificates "
                    "for extension bundles and anomaly effectivity checks.")
    parser.add_argument("--version", action="version", version=f"cy3 {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    geo = sub.add_parser("geometry", help="inspect, validate and export geometries")
    geo_sub = geo.add_subparsers(dest="subcommand", required=True)
    p = geo_sub.add_parser("list", help="list built-in geometries")
    p.set_defaults(func=cmd_geometry_list)
    p = geo_sub.add_parser("show", help="print full intersection data")
    p.add_argument("geometry", nargs="?")
    p.add_argument("--geometry-file")
    p.set_defaults(func=cmd_geometry_show)
    p = geo_sub.add_parser("validate", help="validate a geometry file")
    p.add_argument("path")
    p.set_defaults(func=cmd_geometry_validate)
    p = geo_sub.add_parser("save", help="export a built-in geometry to a file")
    p.add_argument("geometry")
    p.add_argument("path")
    p.set_defaults(func=cmd_geometry_save)

    def add_common(p):
        p.add_argument("geometry", nargs="?")
        p.add_argument("--geometry-file")
        p.add_argument("--H", required=True, help='polarization coords, e.g. "1,5/2"')
        p.add_argument("--rank", type=int, choices=(2, 4), default=2)
        p.add_argument("--e1", choices=("O", "TX"))
        p.add_argument("--e2", choices=("O", "TX"))
        p.add_argument("--bound", type=int, default=3)
        p.add_argument("--multiples", type=int, default=3)
        p.add_argument("--format", choices=("table", "json"), default="table")

    p = sub.add_parser("search", help="search stability certificates and anomalies")
    add_common(p)
    p.add_argument("--include-failures", action="store_true")
    p.add_argument("--perturb", action="store_true")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("check", help="evaluate one candidate divisor end to end")
    add_common(p)
    p.add_argument("--D", required=True, help='candidate coords, e.g. "1,-1"')
    p.set_defaults(func=cmd_check, include_failures=True, perturb=False)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except GeometryValidationError as exc:
        for v in exc.violations:
            print(f"violation [{v.kind}] at {v.where}: {v.message}", file=sys.stderr)
        return EXIT_VALIDATION_ERROR
    except NotAmpleError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except KeyError as exc:
        print(f"error: {exc.args[0]}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except (GeometryParseError, GeometryMismatch, StructuralError,
            DataConsistencyError, CY3Error, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
