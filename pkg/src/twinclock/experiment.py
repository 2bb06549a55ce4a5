"""
Mirror trajectories and hardware limits for the SQUID-terminated cavity.

Rob's cavity is Born rigid: at every instant of the center's proper time the
mirrors sit at proper distance +/- L/2 along the center's simultaneity line.
During an accelerated segment each point therefore follows its own hyperbola
with proper acceleration a/(1 + sigma*a*d/v**2), and every point changes
rapidity by the same amount.
"""

from __future__ import annotations

import io
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import RindlerWedgeError
from .kinematics import (
    CavitySetup,
    TrajectorySpec,
    center_excursion,
    dimensionless_h,
    rapidity_argument,
)


@dataclass(frozen=True)
class HardwareConstraints:
    max_acceleration: float = 1.7e15
    max_displacement: float = 3e-3
    max_total_time: float = 2e-6
    min_segment_time: float = 1e-9
    plasma_frequency: float | None = None

    def __post_init__(self):
        for name in ("max_acceleration", "max_displacement", "max_total_time", "min_segment_time"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")
        if self.plasma_frequency is not None and not self.plasma_frequency > 0:
            raise ValueError("plasma_frequency must be positive when set")


@dataclass(frozen=True)
class _Piece:
    """One segment of a single worldline: constant proper acceleration
    ``accel`` (signed, 0 for coasting) starting at event (t0, x0) with
    rapidity w0."""

    t0: float
    x0: float
    w0: float
    accel: float
    duration: float

    def state(self, t, v):
        dt = t - self.t0
        if self.accel == 0.0:
            u = v * math.tanh(self.w0)
            return self.x0 + u * dt, np.full_like(dt, u)
        s = math.sinh(self.w0) + self.accel * dt / v
        w = np.arcsinh(s)
        # cosh(w) - cosh(w0) without cancellation
        dcosh = 2.0 * np.sinh(0.5 * (w + self.w0)) * np.sinh(0.5 * (w - self.w0))
        return self.x0 + v * v / self.accel * dcosh, v * s / np.sqrt(1.0 + s * s)

    def end_state(self, v):
        x, u = self.state(np.array(self.t0 + self.duration), v)
        return float(x), float(u)


@dataclass(frozen=True)
class RigidWorldline:
    """Lab-frame worldline of the cavity point at proper offset ``offset``
    from the center, for one trip; repeated periodically."""

    offset: float
    light_speed: float
    trip_duration: float
    pieces: tuple[_Piece, ...]
    _starts: np.ndarray = field(repr=False, compare=False, default=None)

    def __post_init__(self):
        object.__setattr__(self, "_starts", np.array([p.t0 for p in self.pieces]))

    def state(self, t):
        """Position and velocity at lab times ``t``."""
        t = np.atleast_1d(np.asarray(t, dtype=float))
        if self.trip_duration > 0:
            t = t - np.floor(t / self.trip_duration) * self.trip_duration
        idx = np.clip(np.searchsorted(self._starts, t, side="right") - 1, 0, len(self.pieces) - 1)
        x = np.empty_like(t)
        u = np.empty_like(t)
        for k, piece in enumerate(self.pieces):
            sel = idx == k
            if np.any(sel):
                x[sel], u[sel] = piece.state(t[sel], self.light_speed)
        return x, u

    def joint_jumps(self):
        """(position, velocity) mismatch at each join between pieces."""
        out = []
        for a, b in zip(self.pieces[:-1], self.pieces[1:]):
            x_end, u_end = a.end_state(self.light_speed)
            u_start = self.light_speed * math.tanh(b.w0)
            out.append((abs(x_end - b.x0), abs(u_end - u_start)))
        return out


def _center_segments(traj: TrajectorySpec, v: float):
    """(direction, rapidity change or None, lab duration) for each segment."""
    W = math.asinh(rapidity_argument(traj, v))
    ta, ti = traj.accel_duration_ta, traj.inertial_duration_ti
    return [(+1, W, ta), (0, None, ti), (-1, W, ta), (-1, W, ta), (0, None, ti), (+1, W, ta)]


def rigid_worldline(setup: CavitySetup, traj: TrajectorySpec, offset: float) -> RigidWorldline:
    """Worldline of the point at proper distance ``offset`` (signed, +x ahead)
    from the cavity center; the center starts at rest at x = 0, t = 0."""
    dimensionless_h(setup, traj)
    v = setup.light_speed_v
    a = traj.proper_acceleration_a
    if 1.0 - a * abs(offset) / v**2 <= 0:
        raise RindlerWedgeError(f"offset {offset} m lies beyond the Rindler horizon")
    tc = xc = w = 0.0
    pieces = []
    for sigma, dw, lab in _center_segments(traj, v):
        t0 = tc + offset * math.sinh(w) / v
        x0 = xc + offset * math.cosh(w)
        if sigma == 0 or a == 0.0:
            pieces.append(_Piece(t0, x0, w, 0.0, lab))
            xc += v * math.tanh(w) * lab
            tc += lab
            continue
        g = sigma * a
        w1 = w + sigma * dw
        g_point = g / (1.0 + g * offset / v**2)
        dsinh = math.sinh(w1) - math.sinh(w)
        pieces.append(_Piece(t0, x0, w, g_point, v / g_point * dsinh))
        tc += v / g * dsinh
        xc += v * v / g * 2.0 * math.sinh(0.5 * (w1 + w)) * math.sinh(0.5 * (w1 - w))
        w = w1
    return RigidWorldline(offset, v, traj.trip_duration, tuple(pieces))


@dataclass(frozen=True)
class MirrorWorldlines:
    sample_times: np.ndarray
    left_position: np.ndarray
    right_position: np.ndarray
    left_velocity: np.ndarray
    right_velocity: np.ndarray

    CSV_HEADER = "time_s,left_pos_m,right_pos_m,left_vel_mps,right_vel_mps"

    def to_csv(self, stream=None, meta: str | None = None) -> str | None:
        """Write 12-significant-digit CSV with LF line endings."""
        own = stream is None
        out = io.StringIO() if own else stream
        if meta:
            out.write(f"# {meta}\n")
        table = np.column_stack((self.sample_times, self.left_position, self.right_position,
                                 self.left_velocity, self.right_velocity))
        np.savetxt(out, table, fmt="%.12g", delimiter=",", newline="\n",
                   header=self.CSV_HEADER, comments="")
        return out.getvalue() if own else None


def mirror_worldlines(setup: CavitySetup, traj: TrajectorySpec, dt: float) -> MirrorWorldlines:
    """Sample both mirror trajectories every ``dt`` seconds over all trips."""
    if not dt > 0:
        raise ValueError("dt must be positive")
    half = 0.5 * setup.proper_length_L
    left = rigid_worldline(setup, traj, -half)
    right = rigid_worldline(setup, traj, +half)
    total = traj.repetitions * traj.trip_duration
    n = int(math.floor(total / dt * (1 + 1e-12))) + 1
    t = np.arange(n) * dt
    xl, ul = left.state(t)
    xr, ur = right.state(t)
    return MirrorWorldlines(t, xl, xr, ul, ur)


def proper_length_residuals(setup: CavitySetup, traj: TrajectorySpec,
                            worldlines: MirrorWorldlines, iterations: int = 6) -> np.ndarray:
    """Relative deviation from L of the rest-frame mirror separation.

    For each sampled left-mirror event, the simultaneity line of the left
    mirror's rest frame is intersected with the right mirror worldline by
    Newton iteration; the parameter along the unit spacelike direction is the
    proper distance.
    """
    v = setup.light_speed_v
    L = setup.proper_length_L
    right = rigid_worldline(setup, traj, +0.5 * L)
    t = worldlines.sample_times
    x = worldlines.left_position
    w = np.arctanh(worldlines.left_velocity / v)
    sh, ch = np.sinh(w), np.cosh(w)
    s = np.full_like(t, L)
    for _ in range(iterations):
        xr, ur = right.state(t + s * sh / v)
        f = xr - x - s * ch
        s = s - f / (ur * sh / v - ch)
    return (s - L) / L


def mirror_accelerations(setup: CavitySetup, traj: TrajectorySpec) -> tuple[float, float]:
    """Proper accelerations of the trailing and leading mirror."""
    h = dimensionless_h(setup, traj)
    a = traj.proper_acceleration_a
    return a / (1.0 - 0.5 * h), a / (1.0 + 0.5 * h)


@dataclass(frozen=True)
class ConstraintResult:
    name: str
    value: float
    limit: float
    passed: bool


@dataclass(frozen=True)
class FeasibilityReport:
    results: tuple[ConstraintResult, ...]
    peak_mirror_acceleration: float | None = None
    worldlines: MirrorWorldlines | None = None

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def __getitem__(self, name: str) -> ConstraintResult:
        for r in self.results:
            if r.name == name:
                return r
        raise KeyError(name)

    def as_dict(self) -> dict:
        return {
            "passed": self.passed,
            "peak_mirror_acceleration": self.peak_mirror_acceleration,
            "constraints": {
                r.name: {"value": r.value, "limit": r.limit, "passed": r.passed}
                for r in self.results
            },
        }


def _le(value, limit):
    return value <= limit * (1 + 1e-12)


def feasibility_check(setup: CavitySetup, traj: TrajectorySpec,
                      constraints: HardwareConstraints | None = None,
                      dt: float | None = None) -> FeasibilityReport:
    """Compare a trajectory with the hardware limits. Never raises for
    infeasible input; a cavity outside the Rindler wedge is a failed check."""
    c = constraints or HardwareConstraints()
    v = setup.light_speed_v
    a = traj.proper_acceleration_a
    h = a * setup.proper_length_L / v**2
    results = [
        ConstraintResult("rindler_wedge", h, 2.0, h < 2.0),
        # the limit applies to the effective (center) acceleration; the
        # trailing mirror exceeds it by the factor 1/(1 - h/2)
        ConstraintResult("acceleration", a, c.max_acceleration, _le(a, c.max_acceleration)),
    ]
    peak = a / (1.0 - 0.5 * h) if h < 2.0 else math.inf
    disp = center_excursion(traj, v)
    results.append(ConstraintResult("displacement", disp, c.max_displacement,
                                    _le(disp, c.max_displacement)))
    total = traj.repetitions * traj.trip_duration
    results.append(ConstraintResult("total_time", total, c.max_total_time,
                                    _le(total, c.max_total_time)))
    ta = traj.accel_duration_ta
    results.append(ConstraintResult("segment_time", ta, c.min_segment_time,
                                    ta >= c.min_segment_time * (1 - 1e-12)))
    if c.plasma_frequency is not None:
        top_mode = setup.mode_cutoff_N * setup.omega_1
        results.append(ConstraintResult("plasma_vs_modes", c.plasma_frequency, top_mode,
                                        c.plasma_frequency > top_mode))
        switching = math.pi / ta if ta > 0 else math.inf
        results.append(ConstraintResult("plasma_vs_switching", c.plasma_frequency, switching,
                                        c.plasma_frequency > switching))
    worldlines = mirror_worldlines(setup, traj, dt) if dt is not None and h < 2.0 else None
    return FeasibilityReport(tuple(results), peak, worldlines)
