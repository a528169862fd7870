"""Command-line front end.

Subcommands build the library's objects, run the experiments, and emit
JSON/CSV/SVG artifacts.  Runs are fully determined by their flags: the
same seed and parameters give byte-identical output files.

Exit protocol: 0 satisfied, 1 unsatisfied (a well-formed run whose answer
is negative), 2 input error, 3 certification failure.  Set CONTINUA_LOG to
a level name for diagnostics on stderr.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .cantor import (
    InsufficientIntervals,
    ExplosionSiteError,
    build_conjugacy,
    build_ternary_map,
    check_chain_property,
    explode_fixed_point,
)
from .continuum import YHomeo, YModel, YPoint, build_arc_model, build_arcwise_map
from .plmap import Orientation, PLHomeo
from .rational import parse_rational, rational_to_json
from .shadowing import (
    CoverFailure,
    estimate_shadowing_modulus,
    global_shadowing_delta,
    orbit_from_csv,
    quasi_attractor_certificate,
    sample_certificate_soundness,
    sample_global_soundness,
    shadow_on_model,
    shadowing_set,
)
from .svg import render_model, render_phase_diagram

log = logging.getLogger("continua")

EXIT_OK = 0
EXIT_UNSAT = 1
EXIT_INPUT = 2
EXIT_CERT = 3


@dataclass(frozen=True)
class ExperimentConfig:
    """Everything that determines a certification run; reruns are bit-identical."""

    seed: int
    trials: int
    epsilon: Fraction
    depth: int | None
    segments: int | None

    def to_json(self) -> dict:
        return {
            "seed": self.seed,
            "trials": self.trials,
            "epsilon": rational_to_json(self.epsilon),
            "depth": self.depth,
            "segments": self.segments,
        }


def dump_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _write(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _load_json(path: str) -> dict:
    with open(path) as fh:
        return json.load(fh)


def _load_map(path: str) -> PLHomeo:
    return PLHomeo.from_json(_load_json(path))


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def cmd_build_fstar(args) -> int:
    f = build_ternary_map(args.depth)
    if args.format == "svg":
        _write(render_phase_diagram(f), args.out)
    else:
        _write(dump_json(f.to_json()), args.out)
    return EXIT_OK


def cmd_check_peps(args) -> int:
    f = _load_map(args.map)
    witness = check_chain_property(f, parse_rational(args.epsilon))
    if witness is None:
        _write("null\n", args.out)
        return EXIT_UNSAT
    _write(dump_json(witness.to_json()), args.out)
    return EXIT_OK


def cmd_conjugate(args) -> int:
    g = _load_map(args.map)
    try:
        report = build_conjugacy(g, args.depth)
    except InsufficientIntervals as exc:
        log.error("%s", exc)
        sys.stderr.write(f"insufficient intervals: {exc}\n")
        return EXIT_UNSAT
    _write(dump_json(report.to_json()), args.out)
    return EXIT_OK


def cmd_explode(args) -> int:
    f = _load_map(args.map)
    try:
        g = explode_fixed_point(
            f,
            parse_rational(args.point),
            parse_rational(args.radius),
            Orientation(args.orient),
        )
    except ExplosionSiteError as exc:
        sys.stderr.write(f"{exc}\n")
        return EXIT_UNSAT
    _write(dump_json(g.to_json()), args.out)
    return EXIT_OK


def cmd_shadow(args) -> int:
    epsilon = parse_rational(args.epsilon)
    delta = parse_rational(args.delta)
    with open(args.orbit) as fh:
        orbit = orbit_from_csv(fh, delta)
    on_model = isinstance(orbit.points[0], YPoint)
    if args.model:
        if not on_model:
            raise ValueError("orbit file holds interval points, not model points")
        model = YModel.from_json(_load_json(args.model))
        if args.homeo:
            g = YHomeo.from_json(_load_json(args.homeo))
        else:
            g = build_arcwise_map(model, args.depth)
        witness = shadow_on_model(model, g, orbit, epsilon)
        if witness is None:
            _write("null\n", args.out)
            return EXIT_UNSAT
        _write(dump_json(witness.to_json()), args.out)
        return EXIT_OK
    if not args.map:
        raise ValueError("need --map or --model")
    if on_model:
        raise ValueError("orbit file holds model points, not interval points")
    f = _load_map(args.map)
    s = shadowing_set(f, orbit, epsilon)
    _write(dump_json(s.to_json()), args.out)
    return EXIT_UNSAT if s.is_empty else EXIT_OK


def cmd_modulus(args) -> int:
    f = _load_map(args.map)
    epsilon = parse_rational(args.epsilon)
    delta = estimate_shadowing_modulus(f, epsilon, args.trials, args.seed)
    _write(
        dump_json(
            {
                "epsilon": rational_to_json(epsilon),
                "trials": args.trials,
                "seed": args.seed,
                "delta": rational_to_json(delta),
            }
        ),
        args.out,
    )
    return EXIT_OK if delta > 0 else EXIT_UNSAT


def cmd_build_y(args) -> int:
    model = build_arc_model(args.segments)
    if args.format == "svg":
        g = build_arcwise_map(model, args.depth) if args.depth is not None else None
        _write(render_model(model, g), args.out)
    else:
        _write(dump_json(model.to_json()), args.out)
    return EXIT_OK


def cmd_certify(args) -> int:
    if args.model:
        model = YModel.from_json(_load_json(args.model))
    else:
        model = build_arc_model(args.segments)
    if args.homeo:
        g = YHomeo.from_json(_load_json(args.homeo))
    else:
        g = build_arcwise_map(model, args.depth)
    epsilon = parse_rational(args.epsilon)
    config = ExperimentConfig(args.seed, args.trials, epsilon, args.depth, model.M)

    try:
        delta, cover = global_shadowing_delta(model, g, epsilon, args.trials, args.seed)
    except CoverFailure as exc:
        bundle = {
            "config": config.to_json(),
            "status": "cover failure",
            "detail": str(exc),
            "uncovered": [p.to_json() for p in exc.uncovered],
        }
        _write(dump_json(bundle), args.out)
        return EXIT_CERT

    certs = []
    per_arc_failures = {}
    for i, arc in enumerate(model.arcs):
        cert = quasi_attractor_certificate(
            model, g, arc.id, epsilon, args.trials, args.seed * 1009 + i
        )
        certs.append(cert.to_json())
        fails = sample_certificate_soundness(
            model, g, cert, args.trials, args.seed * 31 + i
        )
        if fails:
            per_arc_failures[arc.id] = fails
    global_failures = sample_global_soundness(
        model, g, delta, epsilon, args.trials, args.seed * 17
    )

    bundle = {
        "config": config.to_json(),
        "status": "ok" if not (per_arc_failures or global_failures) else "refuted",
        "certificates": certs,
        "global_delta": rational_to_json(delta),
        "cover": [[aid, rational_to_json(d)] for aid, d in cover],
        "sampling": {
            "per_arc_failures": per_arc_failures,
            "global_failures": global_failures,
        },
    }
    _write(dump_json(bundle), args.out)
    return EXIT_OK if bundle["status"] == "ok" else EXIT_UNSAT


def cmd_render(args) -> int:
    obj = _load_json(args.input)
    if "breakpoints" in obj:
        _write(render_phase_diagram(PLHomeo.from_json(obj)), args.out)
        return EXIT_OK
    model = YModel.from_json(obj)
    g = YHomeo.from_json(_load_json(args.homeo)) if args.homeo else None
    _write(render_model(model, g), args.out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="continua",
        description="Exact PL interval dynamics, shadowing, and arc-model certificates.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build-fstar", help="build the depth-truncated alternating map")
    b.add_argument("--depth", type=int, required=True)
    b.add_argument("--out", default=None)
    b.add_argument("--format", choices=("json", "svg"), default="json")
    b.set_defaults(func=cmd_build_fstar)

    c = sub.add_parser("check-peps", help="decide the fine alternating-chain property")
    c.add_argument("map")
    c.add_argument("--epsilon", required=True)
    c.add_argument("--out", default=None)
    c.set_defaults(func=cmd_check_peps)

    j = sub.add_parser("conjugate", help="match a map against the ternary template")
    j.add_argument("map")
    j.add_argument("--depth", type=int, required=True)
    j.add_argument("--out", default=None)
    j.set_defaults(func=cmd_conjugate)

    e = sub.add_parser("explode", help="explode a fixed stretch into a wandering interval")
    e.add_argument("map")
    e.add_argument("--point", required=True)
    e.add_argument("--radius", required=True)
    e.add_argument("--orient", choices=("R", "L"), required=True)
    e.add_argument("--out", default=None)
    e.set_defaults(func=cmd_explode)

    s = sub.add_parser("shadow", help="exact shadowing set / witness for an orbit file")
    s.add_argument("--map", default=None)
    s.add_argument("--model", default=None)
    s.add_argument("--homeo", default=None)
    s.add_argument("--depth", type=int, default=3)
    s.add_argument("--orbit", required=True)
    s.add_argument("--epsilon", required=True)
    s.add_argument("--delta", default="1")
    s.add_argument("--out", default=None)
    s.set_defaults(func=cmd_shadow)

    m = sub.add_parser("modulus", help="empirical shadowing modulus estimate")
    m.add_argument("map")
    m.add_argument("--epsilon", required=True)
    m.add_argument("--trials", type=int, default=200)
    m.add_argument("--seed", type=int, default=0)
    m.add_argument("--out", default=None)
    m.set_defaults(func=cmd_modulus)

    y = sub.add_parser("build-y", help="build the truncated arc model")
    y.add_argument("--segments", type=int, required=True)
    y.add_argument("--depth", type=int, default=None)
    y.add_argument("--out", default=None)
    y.add_argument("--format", choices=("json", "svg"), default="json")
    y.set_defaults(func=cmd_build_y)

    z = sub.add_parser("certify", help="full quasi-attractor certification pipeline")
    z.add_argument("--model", default=None)
    z.add_argument("--segments", type=int, default=8)
    z.add_argument("--homeo", default=None)
    z.add_argument("--depth", type=int, default=3)
    z.add_argument("--epsilon", required=True)
    z.add_argument("--trials", type=int, default=200)
    z.add_argument("--seed", type=int, default=0)
    z.add_argument("--out", default=None)
    z.set_defaults(func=cmd_certify)

    r = sub.add_parser("render", help="SVG drawing of a map or model JSON")
    r.add_argument("input")
    r.add_argument("--homeo", default=None)
    r.add_argument("--out", default=None)
    r.set_defaults(func=cmd_render)

    return p


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=os.environ.get("CONTINUA_LOG", "WARNING").upper())
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CoverFailure as exc:
        sys.stderr.write(f"{exc}\n")
        return EXIT_CERT
    except ExplosionSiteError as exc:
        sys.stderr.write(f"{exc}\n")
        return EXIT_UNSAT
    except (OSError, json.JSONDecodeError, ValueError, KeyError) as exc:
        sys.stderr.write(f"input error: {exc}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
