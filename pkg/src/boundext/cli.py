"""Command line: gen, run, verify, plot.

Exit codes: 0 success, 1 schema error, 2 capability or certificate error,
3 inconsistency error; verify exits 4 when some clause fails.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from fractions import Fraction
from pathlib import Path

from .algorithms import (
    AlgorithmInputs,
    SearchBudget,
    algorithm3_report,
    configuration_clauses,
    derive_constants,
)
from .errors import CapabilityError, DomainError, InconsistencyError, SchemaError
from .exact import RationalRect
from .serialize import encode_rect, read_file, write_file
from .svg import write_svg

__all__ = ["main", "build_parser", "decimal_outward", "render_rect", "EXIT_OK", "EXIT_SCHEMA", "EXIT_CAPABILITY", "EXIT_INCONSISTENT", "EXIT_CLAUSE"]

EXIT_OK, EXIT_SCHEMA, EXIT_CAPABILITY, EXIT_INCONSISTENT, EXIT_CLAUSE = 0, 1, 2, 3, 4
DIGITS = 20

log = logging.getLogger("boundext")


def decimal_outward(q: Fraction, up: bool, digits: int = DIGITS) -> str:
    """q rounded to `digits` decimals, towards +inf when `up` else -inf."""
    scale = 10**digits
    n = q * scale
    n = -((-n.numerator) // n.denominator) if up else n.numerator // n.denominator
    sign = "-" if n < 0 else ""
    whole, frac = divmod(abs(n), scale)
    return f"{sign}{whole}.{frac:0{digits}d}"


def render_rect(r: RationalRect) -> list[str]:
    return [
        f"x in ({r.x_lo}, {r.x_hi})",
        f"y in ({r.y_lo}, {r.y_hi})",
        "decimal (outward, not authoritative):",
        f"  x in ({decimal_outward(r.x_lo, False)}, {decimal_outward(r.x_hi, True)})",
        f"  y in ({decimal_outward(r.y_lo, False)}, {decimal_outward(r.y_hi, True)})",
    ]


def _inputs(args) -> AlgorithmInputs:
    d = Path(args.inputs)
    phi = read_file(args.phi or d / "phi.approx", "phi.approx")
    bd = read_file(args.boundary or d / "boundary.approx", "boundary.approx")
    g = read_file(args.ulac or d / "ulac.approx", "ulac.approx")
    return AlgorithmInputs(phi, bd, g)


def _budget(args, configs=()) -> SearchBudget:
    factory = None
    if args.mode == "guided" and not configs and not args.no_builder:
        from .harness import guided_candidates

        factory = guided_candidates
    return SearchBudget(
        max_chain_length=args.max_chain_len,
        mode=args.mode,
        candidate_configs=tuple(configs),
        precision=args.precision,
        candidate_factory=factory,
    )


def cmd_gen(args) -> int:
    from .harness import GroundTruth, generate_boundary_approx, generate_phi_approx, generate_ulac, parse_map_name

    try:
        m = parse_map_name(args.map)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAPABILITY
    gt = GroundTruth(m, args.resolution)
    g = generate_ulac(gt, args.ulac_length)  # certificate first: fail before heavy work
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    write_file(out / "phi.approx", generate_phi_approx(gt))
    write_file(out / "boundary.approx", generate_boundary_approx(gt))
    write_file(out / "ulac.approx", g)
    print(f"wrote phi.approx, boundary.approx, ulac.approx to {out}")
    return EXIT_OK


def _clause_record(clauses) -> list[dict]:
    return [{"name": c.name, "passed": c.passed, "detail": c.detail} for c in clauses]


def cmd_run(args) -> int:
    inputs = _inputs(args)
    p = read_file(args.point, "point.approx")
    configs = [read_file(f, "configuration") for f in args.config]
    start = time.monotonic()
    res = algorithm3_report(inputs, p, _budget(args, configs))
    wall_ms = int((time.monotonic() - start) * 1000)
    lines = ["output rectangle:"] + ["  " + s for s in render_rect(res.rect)]
    if res.fast_path:
        lines.append("fast path: interior point, intersection of matching values")
    lines.append(f"configurations found: {res.configurations_found}")
    if res.configurations_found == 0 and not res.fast_path:
        lines.append("no configuration substantiated: fallback rectangle returned")
    for c, clauses in res.logs:
        failed = [r.name for r in clauses if not r.passed]
        lines.append(f"  candidate (k1={c.k1}, k2={c.k2}): " + ("accepted" if not failed else "rejected: " + "; ".join(failed)))
    lines.append(f"wall time: {wall_ms} ms")
    print("\n".join(lines))
    if args.out:
        report = {
            "output_rect": encode_rect(res.rect),
            "fallback": res.rect == res.fallback,
            "fast_path": res.fast_path,
            "configurations_found": res.configurations_found,
            "per_config_clause_log": [
                {"k1": c.k1, "k2": c.k2, "clauses": _clause_record(clauses)} for c, clauses in res.logs
            ],
            "pruned_pairs": [list(pr) for pr in res.pruned_pairs],
            "wall_time_ms": wall_ms,
        }
        Path(args.out).write_text(json.dumps(report, sort_keys=True, indent=1) + "\n")
    return EXIT_OK


def cmd_verify(args) -> int:
    inputs = _inputs(args)
    config = read_file(args.config, "configuration")
    k0, N0, _ = derive_constants(inputs, args.precision)
    clauses = configuration_clauses(inputs, k0, N0, config, args.precision)
    for c in clauses:
        mark = "PASS" if c.passed else "FAIL"
        print(f"{mark}  {c.name}" + (f"  [{c.detail}]" if c.detail else ""))
    return EXIT_OK if all(c.passed for c in clauses) else EXIT_CLAUSE


def cmd_plot(args) -> int:
    inputs = _inputs(args)
    config = read_file(args.config, "configuration") if args.config else None
    output = None
    if args.report:
        rep = json.loads(Path(args.report).read_text())
        from .serialize import decode_rect

        output = decode_rect(rep.get("output_rect"), "output_rect")
    try:
        write_svg(args.out, inputs.bd, inputs.phi, config=config, output=output)
    except OSError as exc:
        print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
        return EXIT_CAPABILITY
    print(f"wrote {args.out}")
    return EXIT_OK


def _add_input_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--inputs", default=".", help="directory holding phi.approx, boundary.approx, ulac.approx")
    p.add_argument("--phi", help="phi.approx file (overrides --inputs)")
    p.add_argument("--boundary", help="boundary.approx file (overrides --inputs)")
    p.add_argument("--ulac", help="ulac.approx file (overrides --inputs)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="boundext", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate certified inputs for a test map")
    g.add_argument("--map", required=True, help="identity or quad:p/q")
    g.add_argument("--resolution", type=int, required=True)
    g.add_argument("--ulac-length", type=int, default=12)
    g.add_argument("--out", required=True, help="output directory")
    g.set_defaults(func=cmd_gen)

    r = sub.add_parser("run", help="enclose the boundary value at a point")
    _add_input_flags(r)
    r.add_argument("--point", required=True, help="point.approx file")
    r.add_argument("--config", action="append", default=[], help="candidate configuration file (repeatable)")
    r.add_argument("--mode", choices=("guided", "exhaustive"), default="guided")
    r.add_argument("--max-chain-len", type=int, default=6)
    r.add_argument("--precision", type=int, default=20)
    r.add_argument("--no-builder", action="store_true", help="guided mode: use only --config candidates")
    r.add_argument("--out", help="write the run report (JSON) here")
    r.set_defaults(func=cmd_run)

    v = sub.add_parser("verify", help="check every clause of one configuration")
    _add_input_flags(v)
    v.add_argument("--config", required=True)
    v.add_argument("--precision", type=int, default=20)
    v.set_defaults(func=cmd_verify)

    pl = sub.add_parser("plot", help="draw covers, chains and an output rectangle as SVG")
    _add_input_flags(pl)
    pl.add_argument("--config")
    pl.add_argument("--report", help="run report whose output rectangle is drawn")
    pl.add_argument("--out", required=True)
    pl.set_defaults(func=cmd_plot)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(name)s: %(message)s")
    if getattr(args, "resolution", 1) is not None and getattr(args, "resolution", 1) < 1:
        print("error: resolution must be at least 1", file=sys.stderr)
        return EXIT_CAPABILITY
    try:
        return args.func(args)
    except SchemaError as exc:
        print(f"schema error: {exc}", file=sys.stderr)
        return EXIT_SCHEMA
    except InconsistencyError as exc:
        print(f"inconsistency: {exc}", file=sys.stderr)
        return EXIT_INCONSISTENT
    except (CapabilityError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAPABILITY
    except FileNotFoundError as exc:
        print(f"schema error: {exc}", file=sys.stderr)
        return EXIT_SCHEMA


if __name__ == "__main__":
    sys.exit(main())
