"""Deterministic command-line front end.

Subcommands emit machine-readable files only: CSV tables with a header
row and 12-significant-digit values, and flat JSON objects.  Identical
invocations produce byte-identical output.  Diagnostics go to stderr.

Exit codes: 0 success, 2 unwritable output path, 3 invalid input values
(e.g. a non-unit Bloch vector), 4 mean photon number out of range.
"""

from __future__ import annotations

import argparse
import contextlib
import json
import math
import sys
from dataclasses import dataclass
from typing import IO, Iterator

import numpy as np

from .interferometer import OverlapProbe, ParticleState, build_initial, evolve_pre_detection, scan_fringes
from .linalg import ValidationError, concurrence_from_reduced, partial_trace_probe
from .measures import report_from_distinguishability, thresholds
from .ramsey import RamseyConfig, ramsey_report

EXIT_OK = 0
EXIT_UNWRITABLE = 2
EXIT_BAD_INPUT = 3
EXIT_ALPHA_RANGE = 4


@dataclass(frozen=True)
class SweepSpec:
    """Distinguishability grid for a probe-characteristics sweep."""

    d_min: float
    d_max: float
    steps: int
    p0: float

    def __post_init__(self) -> None:
        if not 0.0 <= self.d_min < self.d_max <= 1.0:
            raise ValidationError("bad-sweep", f"need 0 <= d_min < d_max <= 1, got [{self.d_min}, {self.d_max}]")
        if self.steps < 2:
            raise ValidationError("bad-sweep", f"need at least 2 steps, got {self.steps}")
        if not 0.0 <= self.p0 <= 1.0:
            raise ValidationError("bad-sweep", f"path bias must be in [0, 1], got {self.p0}")


def _fmt(x: float) -> str:
    if not math.isfinite(x):
        raise ValidationError("out-of-range", f"non-finite output value {x!r}")
    return f"{x:.12g}"


@contextlib.contextmanager
def _open_out(path: str) -> Iterator[IO[str]]:
    if path == "-":
        yield sys.stdout
    else:
        with open(path, "w", encoding="ascii", newline="") as handle:
            yield handle


def _write_json(path: str, obj: dict) -> None:
    with _open_out(path) as handle:
        handle.write(json.dumps(obj, indent=2))
        handle.write("\n")


def cmd_sweep(args: argparse.Namespace) -> int:
    sweep = SweepSpec(d_min=args.d_min, d_max=args.d_max, steps=args.steps, p0=args.p0)
    grid = np.linspace(sweep.d_min, sweep.d_max, sweep.steps)
    with _open_out(args.out) as handle:
        handle.write("D,P_probe,V_probe,C,V_particle,regime\n")
        for d in grid:
            rep = report_from_distinguishability(float(d), sweep.p0)
            row = [
                _fmt(float(d)),
                _fmt(rep.probe_predictability),
                _fmt(rep.probe_visibility),
                _fmt(rep.concurrence),
                _fmt(rep.visibility_particle),
                rep.regime.value,
            ]
            handle.write(",".join(row) + "\n")
    return EXIT_OK


def cmd_fringe(args: argparse.Namespace) -> int:
    particle = ParticleState(args.x0, args.y0, args.z0)
    probe = OverlapProbe(complex(args.gamma_re, args.gamma_im)).to_probe_model()
    rho0 = build_initial(particle, probe)
    scan = scan_fringes(rho0, probe, args.n)
    concurrence = concurrence_from_reduced(
        partial_trace_probe(evolve_pre_detection(rho0, probe, 0.0), probe.d)
    )
    sidecar = {
        "visibility": scan.visibility,
        "predictability": particle.p0,
        "concurrence": concurrence,
    }
    with _open_out(args.out) as handle:
        handle.write("phi,intensity\n")
        for phi, intensity in zip(scan.phis, scan.intensities):
            handle.write(f"{_fmt(float(phi))},{_fmt(float(intensity))}\n")
    sidecar_path = "-" if args.out == "-" else args.out + ".json"
    _write_json(sidecar_path, sidecar)
    return EXIT_OK


def cmd_ramsey(args: argparse.Namespace) -> int:
    if args.alpha2 < 0.0:
        raise ValidationError("out-of-range", f"mean photon number must be non-negative, got {args.alpha2}")
    cfg = RamseyConfig(alpha=math.sqrt(args.alpha2), rabi=args.rabi)
    result = ramsey_report(cfg)
    identity = (
        result.probe_predictability**2
        + result.probe_visibility**2
        + result.concurrence**2
        - 1.0
    )
    _write_json(
        args.out,
        {
            "alpha2": args.alpha2,
            "cutoff": cfg.cutoff,
            "t_i": result.pulse_time,
            "overlap": result.overlap.real,
            "D": result.distinguishability,
            "P_probe": result.probe_predictability,
            "V_probe": result.probe_visibility,
            "C": result.concurrence,
            "identity_residual": abs(identity),
        },
    )
    return EXIT_OK


def cmd_thresholds(args: argparse.Namespace) -> int:
    cuts = thresholds()
    _write_json(
        args.out,
        {
            "good_cut": cuts.good_cut,
            "bad_cut": cuts.bad_cut,
            "classical_cut": cuts.classical_cut,
            "delta_v": cuts.delta_v,
        },
    )
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mzprobe",
        description="Which-way probe complementarity: sweeps, fringe scans, cavity-crossing reports.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sweep = sub.add_parser("sweep", help="probe characteristics over a distinguishability grid (CSV)")
    sweep.add_argument("--d-min", type=float, default=0.0)
    sweep.add_argument("--d-max", type=float, default=1.0)
    sweep.add_argument("--steps", type=int, default=201)
    sweep.add_argument("--p0", type=float, default=0.0, help="particle path bias")
    sweep.add_argument("--out", default="-", help="output path, or - for stdout")
    sweep.set_defaults(func=cmd_sweep)

    fringe = sub.add_parser("fringe", help="detector fringe scan (CSV plus JSON sidecar)")
    fringe.add_argument("--x0", type=float, default=0.0)
    fringe.add_argument("--y0", type=float, default=0.0)
    fringe.add_argument("--z0", type=float, default=1.0)
    fringe.add_argument("--gamma-re", type=float, default=0.0, help="Re <m_-|m_+>")
    fringe.add_argument("--gamma-im", type=float, default=0.0, help="Im <m_-|m_+>")
    fringe.add_argument("--n", type=int, default=360, help="number of phase samples")
    fringe.add_argument("--out", default="-")
    fringe.set_defaults(func=cmd_fringe)

    ramsey = sub.add_parser("ramsey", help="coherent-field cavity crossing report (JSON)")
    ramsey.add_argument("--alpha2", type=float, default=1.0, help="mean photon number |alpha|^2")
    ramsey.add_argument("--rabi", type=float, default=1.0, help="vacuum Rabi frequency")
    ramsey.add_argument("--out", default="-")
    ramsey.set_defaults(func=cmd_ramsey)

    cuts = sub.add_parser("thresholds", help="regime cut points (JSON)")
    cuts.add_argument("--out", default="-")
    cuts.set_defaults(func=cmd_thresholds)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        if exc.code == "alpha-too-large":
            return EXIT_ALPHA_RANGE
        return EXIT_BAD_INPUT
    except OSError as exc:
        print(f"error: cannot write output: {exc}", file=sys.stderr)
        return EXIT_UNWRITABLE


if __name__ == "__main__":
    sys.exit(main())
