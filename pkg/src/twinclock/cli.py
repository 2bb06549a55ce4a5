"""
Command line front end of the twin-paradox cavity clock simulator.

    twinclock simulate  [--config PATH] [overrides] [--out PATH] [--meta]
    twinclock sweep     --axis NAME --min X --max Y --points K [...]
    twinclock validate  [--h H ...] [--m-max M] [...]
    twinclock waveform  [--dt SECONDS] [...]

Precedence: built-in defaults < config file < command-line overrides.
Exit codes: 0 ok, 2 configuration error, 3 physics domain error (cavity
outside the Rindler wedge), 4 validation failure.
"""

from __future__ import annotations

import argparse
import datetime as _dt
import io
import json
import math
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import __version__
from .bogoliubov import closed_form_A11, closed_form_B11, phase_decomposition, trip_transform
from .config import RunConfig
from .errors import ConfigError, RindlerWedgeError
from .experiment import feasibility_check, mirror_worldlines
from .kinematics import kinematic_summary, minkowski_phase_theta_i, rindler_phase_theta_a
from .oracle import series_validation

SCHEMA_VERSION = "1.0"

EXIT_OK, EXIT_CONFIG, EXIT_DOMAIN, EXIT_VALIDATION = 0, 2, 3, 4

OVERRIDES = {
    "light_speed": ("medium", "light_speed_m_per_s", float),
    "length": ("cavity", "length_m", float),
    "mode_cutoff": ("cavity", "mode_cutoff", int),
    "acceleration": ("trajectory", "proper_acceleration_m_per_s2", float),
    "accel_duration": ("trajectory", "accel_duration_s", float),
    "inertial_duration": ("trajectory", "inertial_duration_s", float),
    "repetitions": ("trajectory", "repetitions", int),
    "sum_cutoff": ("numerics", "closed_form_sum_cutoff", int),
    "quad_tol": ("numerics", "quadrature_rel_tol", float),
}

SWEEP_AXES = {
    "acceleration": ("trajectory", "proper_acceleration_m_per_s2"),
    "length": ("cavity", "length_m"),
    "accel_duration": ("trajectory", "accel_duration_s"),
    "repetitions": ("trajectory", "repetitions"),
}

SWEEP_COLUMNS = (
    "axis_value", "relative_phase_rad", "relative_phase_deg", "theta_point", "theta_rigid",
    "theta_mix", "theta_full", "norm_clock_size", "norm_with_dce", "norm_particle_creation",
)


class ValidationFailed(Exception):
    pass


def _meta_line() -> str:
    stamp = _dt.datetime.now(_dt.timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")
    return f"twinclock {__version__} generated {stamp}"


def _fmt(value) -> str:
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return format(float(value), ".15g")


def _write_csv(out, columns, rows, meta: bool):
    if meta:
        out.write(f"# {_meta_line()}\n")
    out.write(",".join(columns) + "\n")
    for row in rows:
        out.write(",".join(_fmt(v) for v in row) + "\n")


def load_config(args) -> RunConfig:
    config = RunConfig.load(args.config) if args.config else RunConfig()
    for dest, (section, key, _) in OVERRIDES.items():
        value = getattr(args, dest, None)
        if value is not None:
            config = config.override(section, key, value)
    return config


def simulate_payload(config: RunConfig) -> dict:
    setup = config.cavity_setup()
    traj = config.trajectory_spec()
    report = phase_decomposition(setup, traj)
    kin = kinematic_summary(setup, traj)
    feas = feasibility_check(setup, traj, config.hardware_constraints())

    K = config.numerics.closed_form_sum_cutoff
    theta_a = rindler_phase_theta_a(setup, traj)
    theta_i = minkowski_phase_theta_i(setup, traj)
    T = trip_transform(setup, traj)
    dA = abs(T.A[0, 0] - closed_form_A11(theta_a, theta_i, kin.h, K))
    dB = abs(T.B[0, 0] - closed_form_B11(theta_a, theta_i, kin.h, K))

    d = report.decomposition
    return {
        "schema_version": SCHEMA_VERSION,
        "config": config.to_dict(),
        "h": kin.h,
        "relative_phase_rad": report.relative_phase_total,
        "relative_phase_deg": report.relative_phase_deg,
        "phases_rad": {
            "theta_rob_per_trip": report.theta_rob_per_trip,
            "theta_alice_per_trip": report.theta_alice_per_trip,
            "theta_rob_total": report.theta_rob_total,
            "theta_alice_total": report.repetitions * report.theta_alice_per_trip,
            "theta_a": theta_a,
            "theta_i": theta_i,
        },
        "proper_times_s": {
            "tau_rob": report.tau_rob,
            "tau_alice": report.tau_alice,
            "tau_point": report.repetitions * report.proper_time(d.theta_point),
        },
        "decomposition_rad": {
            "theta_point": d.theta_point,
            "theta_rigid": d.theta_rigid,
            "theta_mix": d.theta_mix,
            "theta_full": d.theta_full,
        },
        "normalized": {
            "clock_size": report.norm_clock_size,
            "with_dce": report.norm_with_dce,
            "particle_creation": report.norm_particle_creation,
        },
        "clock_size_excess_rad": report.excess_phase("rigid"),
        "clock_size_excess_deg": math.degrees(report.excess_phase("rigid")),
        "full_excess_deg": math.degrees(report.excess_phase("full")),
        "closed_form_deviation": max(dA, dB),
        "kinematics": {
            "h": kin.h,
            "x": kin.x,
            "gamma": kin.gamma,
            "max_velocity_mps": kin.max_velocity,
            "max_velocity_fraction": kin.max_velocity / setup.light_speed_v,
            "max_displacement_m": kin.max_displacement,
            "trip_duration_s": kin.trip_duration_tt,
        },
        "feasibility": feas.as_dict(),
    }


def cmd_simulate(config: RunConfig, out, meta: bool = False) -> int:
    payload = simulate_payload(config)
    if meta:
        payload["meta"] = _meta_line()
    out.write(json.dumps(payload, indent=2) + "\n")
    return EXIT_OK


def sweep_values(axis: str, lo: float, hi: float, points: int) -> list:
    if axis not in SWEEP_AXES:
        raise ConfigError(f"unknown sweep axis {axis!r}; choose from {sorted(SWEEP_AXES)}")
    if points < 2:
        raise ConfigError("a sweep needs at least 2 points")
    if not (lo > 0 and hi > 0):
        raise ConfigError("sweep range must be positive")
    values = np.linspace(lo, hi, points)
    if axis == "repetitions":
        return [int(round(v)) for v in values]
    return [float(v) for v in values]


def sweep_row(config: RunConfig, axis: str, value) -> tuple:
    section, key = SWEEP_AXES[axis]
    point = config.override(section, key, value)
    report = phase_decomposition(point.cavity_setup(), point.trajectory_spec())
    d = report.decomposition
    return (
        value, report.relative_phase_total, report.relative_phase_deg,
        d.theta_point, d.theta_rigid, d.theta_mix, d.theta_full,
        report.norm_clock_size, report.norm_with_dce, report.norm_particle_creation,
    )


def cmd_sweep(config: RunConfig, axis: str, lo: float, hi: float, points: int, out,
              meta: bool = False, jobs: int = 1) -> int:
    values = sweep_values(axis, lo, hi, points)
    with ThreadPoolExecutor(max_workers=max(1, jobs)) as pool:
        rows = list(pool.map(lambda v: sweep_row(config, axis, v), values))
    _write_csv(out, SWEEP_COLUMNS, rows, meta)
    return EXIT_OK


def cmd_validate(config: RunConfig, h_list, m_max: int, out, meta: bool = False,
                 err=sys.stderr) -> int:
    table = series_validation(h_list, m_max, rel_tol=config.numerics.quadrature_rel_tol)
    _write_csv(out, table.CSV_COLUMNS, table.csv_rows(), meta)
    for h, ratio in table.order_ratios.items():
        err.write(f"h = {h:g}: max error {table.max_error(h):.3e}, "
                  f"ratio to h/2 = {ratio:.3f}\n")
    if not table.passed:
        bad = sum(not r.passed for r in table.rows)
        err.write(f"validation FAILED: {bad} entries out of bound, ratios ok = {table.ratios_ok}\n")
        return EXIT_VALIDATION
    err.write("validation passed\n")
    return EXIT_OK


def cmd_waveform(config: RunConfig, dt: float, out, meta: bool = False) -> int:
    wl = mirror_worldlines(config.cavity_setup(), config.trajectory_spec(), dt)
    wl.to_csv(out, meta=_meta_line() if meta else None)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="PATH", help="JSON run configuration")
    common.add_argument("--out", metavar="PATH", help="output file (default stdout)")
    common.add_argument("--meta", action="store_true",
                        help="add a version/timestamp line (breaks byte-identical reruns)")
    group = common.add_argument_group("overrides")
    for dest, (section, key, kind) in OVERRIDES.items():
        group.add_argument("--" + dest.replace("_", "-"), dest=dest, type=kind,
                           metavar="X", help=f"override {section}.{key}")

    parser = argparse.ArgumentParser(prog="twinclock", description=__doc__.split("\n\n")[0].strip())
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("simulate", parents=[common], help="clock report as JSON")

    p = sub.add_parser("sweep", parents=[common], help="parameter sweep as CSV")
    p.add_argument("--axis", required=True, choices=sorted(SWEEP_AXES))
    p.add_argument("--min", dest="lo", type=float, required=True)
    p.add_argument("--max", dest="hi", type=float, required=True)
    p.add_argument("--points", type=int, required=True)
    p.add_argument("--jobs", type=int, default=1)

    p = sub.add_parser("validate", parents=[common], help="series vs quadrature table as CSV")
    p.add_argument("--h", dest="h_list", type=float, nargs="+", default=[1e-3, 1e-2])
    p.add_argument("--m-max", type=int, default=5)

    p = sub.add_parser("waveform", parents=[common], help="mirror trajectories as CSV")
    p.add_argument("--dt", type=float, default=1e-12)
    return parser


def run(args, out, err) -> int:
    config = load_config(args)
    if args.command == "simulate":
        return cmd_simulate(config, out, args.meta)
    if args.command == "sweep":
        return cmd_sweep(config, args.axis, args.lo, args.hi, args.points, out, args.meta, args.jobs)
    if args.command == "validate":
        if args.m_max < 1:
            raise ConfigError("--m-max must be >= 1")
        return cmd_validate(config, args.h_list, args.m_max, out, args.meta, err)
    if args.command == "waveform":
        if not args.dt > 0:
            raise ConfigError("--dt must be positive")
        return cmd_waveform(config, args.dt, out, args.meta)
    raise ConfigError(f"unknown command {args.command}")


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    buffer = io.StringIO()
    try:
        code = run(args, buffer, sys.stderr)
    except RindlerWedgeError as exc:
        print(f"twinclock: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except (ConfigError, ValueError) as exc:
        print(f"twinclock: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    if args.out:
        with open(args.out, "w", newline="\n") as fh:
            fh.write(buffer.getvalue())
    else:
        sys.stdout.write(buffer.getvalue())
    return code


if __name__ == "__main__":
    sys.exit(main())
