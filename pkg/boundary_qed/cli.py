"""
Command-line front end.

Subcommands:
1. rates: full rate breakdown of an atom at one point
2. sweep: rates over a grid of z, a or omega, written as CSV
3. crossing: distances where the nonthermal correction vanishes
4. units: natural-unit parameters from laboratory values
5. verify: quadrature and series-probe checks of the closed forms

Exit codes: 0 ok, 2 usage or validation error, 3 numeric-domain error,
4 output I/O error, 5 verification failure.
"""

import argparse
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional

import numpy as np

from atoms.atom_model import AtomSpec, AtomSpecError, UnknownLevelError, transitions_from
from atoms.helpers import load_atom_spec
from boundary_qed import settings
from boundary_qed.helpers import format_number, save_data_to_json, write_rates_csv
from oracle.quadrature import QuadratureConfig, QuadratureError
from oracle.series_probe import SeriesProbeError
from oracle.verification import PRESETS, expansion_verdicts, report_table, run_verification
from radiative.crossing import nonthermal_crossing
from radiative.field_correlations import Inertial, Trajectory, UniformAcceleration
from radiative.rates import BOUNDARY, UNBOUNDED, RateBreakdown, rate_for_trajectory
from radiative.series import DIAGONAL_PAIRS
from radiative.special_functions import NumericDomainError

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DOMAIN = 3
EXIT_IO = 4
EXIT_VERIFY = 5

SWEEP_VARIABLES = ("z", "a", "omega")


class UsageError(ValueError):
    """Raised for arguments that are well-formed but not acceptable."""


@dataclass(frozen=True)
class SweepPlan:
    variable: str
    start: float
    stop: float
    points: int
    atom_path: Path
    state: Optional[str] = None
    log: bool = False
    z: Optional[float] = None
    accel: Optional[float] = None
    velocity: float = 0.0
    coupling: Optional[float] = None

    def __post_init__(self):
        if self.variable not in SWEEP_VARIABLES:
            raise UsageError(f"--var must be one of {', '.join(SWEEP_VARIABLES)}, got {self.variable!r}")
        if not (math.isfinite(self.start) and math.isfinite(self.stop) and self.start < self.stop):
            raise UsageError(f"sweep range must satisfy from < to, got [{self.start}, {self.stop}]")
        if self.points < 2:
            raise UsageError(f"--points must be at least 2, got {self.points}")
        if self.log and self.start <= 0:
            raise UsageError("log spacing requires from > 0")
        if self.variable == "a" and self.start <= 0:
            raise UsageError("acceleration sweeps require from > 0")
        if self.variable != "z" and self.z is None:
            raise UsageError("--z is required unless sweeping z")
        if self.accel is not None and not (math.isfinite(self.accel) and self.accel > 0):
            raise UsageError(f"--accel must be positive, got {self.accel}")
        if self.variable == "a" and self.accel is not None:
            raise UsageError("--accel cannot be fixed while sweeping a")
        if (self.accel is not None or self.variable == "a") and self.velocity:
            raise UsageError("--accel and --velocity are mutually exclusive")

    def values(self) -> np.ndarray:
        if self.log:
            return np.geomspace(self.start, self.stop, self.points)
        return np.linspace(self.start, self.stop, self.points)


@dataclass(frozen=True)
class UnitContext:
    """Laboratory values: omega in 1/s, z in cm, a in cm/s²."""

    omega_si: Optional[float] = None
    z_si: Optional[float] = None
    a_si: Optional[float] = None

    def __post_init__(self):
        for name in ("omega_si", "z_si", "a_si"):
            value = getattr(self, name)
            if value is not None and not (math.isfinite(value) and value > 0):
                raise UsageError(f"{name} must be positive, got {value}")
        if self.omega_si is None and self.z_si is None and self.a_si is None:
            raise UsageError("give at least one of --omega, --z, --accel")

    def natural(self) -> dict:
        c = settings.SPEED_OF_LIGHT_CM
        out = {}
        if self.omega_si is not None and self.z_si is not None:
            out["sigma"] = self.omega_si * self.z_si / c
        if self.a_si is not None and self.z_si is not None:
            out["eta"] = self.a_si * self.z_si / c**2
        if self.a_si is not None and self.omega_si is not None:
            out["a_over_omega"] = self.a_si / (c * self.omega_si)
        if self.a_si is not None:
            c_si = c / 100.0
            out["unruh_temperature_K"] = self.a_si / 100.0 * settings.HBAR / (2 * math.pi * c_si * settings.BOLTZMANN)
        return out


def make_trajectory(z: float, accel: Optional[float] = None, velocity: float = 0.0) -> Trajectory:
    """Inertial unless accel is given; a given accel must be positive."""
    if accel is not None:
        if not (math.isfinite(accel) and accel > 0):
            raise UsageError(f"--accel must be positive, got {accel}")
        return Trajectory(z, UniformAcceleration(accel))
    return Trajectory(z, Inertial(velocity))


def scale_to_frequency(spec: AtomSpec, state: str, omega: float) -> AtomSpec:
    """Rescale all energies so that the largest |omega_bd| from state equals omega."""
    largest = max((abs(t.omega) for t in transitions_from(spec, state)), default=0.0)
    if largest == 0:
        raise NumericDomainError(f"state {state!r} has no transition with nonzero frequency")
    return spec.with_scaled_energies(omega / largest)


def _sweep_point(task) -> List[tuple]:
    plan, spec, state, value = task
    z, accel, current = plan.z, plan.accel, spec
    if plan.variable == "z":
        z = value
    elif plan.variable == "a":
        accel = value
    else:
        current = scale_to_frequency(spec, state, value)
    breakdown = rate_for_trajectory(current, state, make_trajectory(z, accel, plan.velocity), plan.coupling)
    return [(value,) + row for row in breakdown.rows()]


def run_sweep(plan: SweepPlan, workers: int = 1) -> List[tuple]:
    """CSV rows for every sweep point, in plan order regardless of workers."""
    spec = load_atom_spec(plan.atom_path)
    state = plan.state or spec.initial_state
    tasks = [(plan, spec, state, float(v)) for v in plan.values()]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(_sweep_point, tasks))
    else:
        chunks = [_sweep_point(task) for task in tasks]
    return [row for chunk in chunks for row in chunk]


def print_breakdown(breakdown: RateBreakdown):
    print(",".join(("z", "omega_bd", "pair", "mechanism", "part", "channel", "rate")))
    for omega, pair, mechanism, part, channel, rate in breakdown.rows():
        print(",".join((format_number(breakdown.z), format_number(omega), pair, mechanism, part, channel, format_number(rate))))
    for part in (BOUNDARY, UNBOUNDED):
        print(f"{part} total: {format_number(breakdown.total(part=part) + 0.0)}")
    print(f"grand total: {format_number(breakdown.total() + 0.0)}")


def cmd_rates(args) -> int:
    spec = load_atom_spec(args.atom)
    state = args.state or spec.initial_state
    traj = make_trajectory(args.z, args.accel, args.velocity or 0.0)
    breakdown = rate_for_trajectory(spec, state, traj, args.coupling)
    print(f"⚛️  {spec.name} in state {state} at z={args.z:g}, a={traj.accel:g}")
    print_breakdown(breakdown)
    return EXIT_OK


def cmd_sweep(args) -> int:
    plan = SweepPlan(
        variable=args.var,
        start=args.start,
        stop=args.stop,
        points=args.points,
        atom_path=Path(args.atom),
        state=args.state,
        log=args.log,
        z=args.z,
        accel=args.accel,
        velocity=args.velocity or 0.0,
        coupling=args.coupling,
    )
    rows = run_sweep(plan, args.workers or settings.SWEEP_WORKERS)
    try:
        write_rates_csv(args.out, rows)
    except OSError as e:
        print(f"❌ Cannot write {args.out}: {e}")
        return EXIT_IO
    return EXIT_OK


def cmd_crossing(args) -> int:
    if not 0 < args.zmin < args.zmax:
        raise UsageError(f"z range must satisfy 0 < zmin < zmax, got [{args.zmin}, {args.zmax}]")
    result = nonthermal_crossing(args.omega, args.accel, args.component, (args.zmin, args.zmax), args.max_roots)
    print(f"🔍 {result}")
    if not result.roots:
        print("⚠️ no roots")
    for root, residual in zip(result.roots, result.residuals):
        print(f"z={format_number(root)} residual={residual:.3g}")
    return EXIT_OK


def cmd_units(args) -> int:
    ctx = UnitContext(omega_si=args.omega, z_si=args.z, a_si=args.accel)
    for name, value in ctx.natural().items():
        print(f"{name} = {value:.6g}")
    return EXIT_OK


def cmd_verify(args) -> int:
    rel_tol = settings.VERIFY_REL_TOL if args.rel_tol is None else args.rel_tol
    reports = run_verification(args.grid, rel_tol, QuadratureConfig())
    verdicts = expansion_verdicts()
    print(report_table(reports + [v.report for v in verdicts]))

    failed = [r for r in reports if not r.passed] + [v.report for v in verdicts if not v.printed and not v.report.passed]
    rejected = [v.report.quantity_id for v in verdicts if v.printed and not v.report.passed]
    if rejected:
        print(f"💡 {len(rejected)} published expansion coefficients disagree with the probes")
    if args.json:
        records = [r.to_dict() for r in reports] + [dict(v.report.to_dict(), printed=v.printed) for v in verdicts]
        try:
            save_data_to_json(records, filename_prefix=f"verify_{args.grid}", file_prefix="failed_" if failed else "")
        except OSError as e:
            print(f"❌ Cannot save report: {e}")
            return EXIT_IO
    if failed:
        print(f"❌ {len(failed)} of {len(reports) + len(verdicts)} checks failed")
        return EXIT_VERIFY
    print(f"✅ All {len(reports)} oracle checks passed")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="manage.py", description="Radiative rates of atoms near a conducting plane.")
    sub = parser.add_subparsers(dest="command", required=True)

    rates = sub.add_parser("rates", help="rate breakdown at one point")
    rates.add_argument("--atom", required=True)
    rates.add_argument("--state")
    rates.add_argument("--z", type=float, required=True)
    motion = rates.add_mutually_exclusive_group()
    motion.add_argument("--accel", "--a", type=float)
    motion.add_argument("--velocity", type=float)
    rates.add_argument("--coupling", type=float)
    rates.set_defaults(handler=cmd_rates)

    sweep = sub.add_parser("sweep", help="rates over a parameter grid, written as CSV")
    sweep.add_argument("--atom", required=True)
    sweep.add_argument("--state")
    sweep.add_argument("--var", choices=SWEEP_VARIABLES, required=True)
    sweep.add_argument("--from", dest="start", type=float, required=True)
    sweep.add_argument("--to", dest="stop", type=float, required=True)
    sweep.add_argument("--points", type=int, required=True)
    sweep.add_argument("--log", action="store_true")
    sweep.add_argument("--z", type=float)
    sweep_motion = sweep.add_mutually_exclusive_group()
    sweep_motion.add_argument("--accel", "--a", type=float)
    sweep_motion.add_argument("--velocity", type=float)
    sweep.add_argument("--coupling", type=float)
    sweep.add_argument("--workers", type=int)
    sweep.add_argument("--out", required=True)
    sweep.set_defaults(handler=cmd_sweep)

    crossing = sub.add_parser("crossing", help="zeros of the nonthermal correction")
    crossing.add_argument("--omega", type=float, default=1.0)
    crossing.add_argument("--accel", "--a", type=float, required=True)
    crossing.add_argument("--component", choices=DIAGONAL_PAIRS, required=True)
    crossing.add_argument("--zmin", type=float, required=True)
    crossing.add_argument("--zmax", type=float, required=True)
    crossing.add_argument("--max-roots", type=int, default=10)
    crossing.set_defaults(handler=cmd_crossing)

    units = sub.add_parser("units", help="natural-unit parameters from laboratory values")
    units.add_argument("--omega", type=float, help="transition frequency in 1/s")
    units.add_argument("--z", type=float, help="distance in cm")
    units.add_argument("--accel", "--a", type=float, help="acceleration in cm/s²")
    units.set_defaults(handler=cmd_units)

    verify = sub.add_parser("verify", help="check closed forms against quadrature and series probes")
    verify.add_argument("--grid", choices=tuple(PRESETS), default="default")
    verify.add_argument("--rel-tol", type=float)
    verify.add_argument("--json", action="store_true")
    verify.set_defaults(handler=cmd_verify)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    logging.basicConfig(level=settings.LOG_LEVEL, format="%(levelname)s %(name)s: %(message)s")
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except AtomSpecError as e:
        print(f"❌ {e}")
        for violation in e.violations:
            print(f"   - {violation}")
        return EXIT_USAGE
    except (UsageError, UnknownLevelError, FileNotFoundError) as e:
        print(f"❌ {e}")
        return EXIT_USAGE
    except (NumericDomainError, SeriesProbeError) as e:
        print(f"❌ Numeric domain error: {e}")
        return EXIT_DOMAIN
    except QuadratureError as e:
        print(f"❌ Quadrature failed: {e}")
        return EXIT_VERIFY if args.command == "verify" else EXIT_DOMAIN
