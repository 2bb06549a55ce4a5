"""
Kinematics of a rigid cavity on a piecewise uniformly accelerated round trip.

Everything here is SI. The "speed of light" is the effective propagation
speed ``v`` of the 1+1 dimensional field in the waveguide, passed explicitly.
Vanishing acceleration is handled through analytic limits so that every
function is continuous at ``a = 0``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import RindlerWedgeError

#: Effective light speed in the coplanar waveguide (m/s).
DEFAULT_LIGHT_SPEED = 1.1994e8

_SERIES_CUTOFF = 1e-4


@dataclass(frozen=True)
class CavitySetup:
    """Rigid 1D cavity of proper length ``proper_length_L``.

    Parameters
    ----------
    proper_length_L : float
        Mirror separation in the cavity rest frame (m).
    light_speed_v : float
        Effective speed of light in the medium (m/s).
    mode_cutoff_N : int
        Number of cavity modes kept in truncated transformations.
    """

    proper_length_L: float
    light_speed_v: float = DEFAULT_LIGHT_SPEED
    mode_cutoff_N: int = 20

    def __post_init__(self):
        if not self.proper_length_L > 0:
            raise ValueError(f"proper length must be positive, got {self.proper_length_L}")
        if not self.light_speed_v > 0:
            raise ValueError(f"light speed must be positive, got {self.light_speed_v}")
        if int(self.mode_cutoff_N) != self.mode_cutoff_N or self.mode_cutoff_N < 2:
            raise ValueError(f"mode cutoff must be an integer >= 2, got {self.mode_cutoff_N}")

    @property
    def omega_1(self) -> float:
        """Fundamental angular frequency pi*v/L (rad/s)."""
        return math.pi * self.light_speed_v / self.proper_length_L


@dataclass(frozen=True)
class TrajectorySpec:
    """Round trip made of four accelerated and two coasting segments.

    ``accel_duration_ta`` and ``inertial_duration_ti`` are lab-frame
    durations of a single segment for the cavity center.
    """

    proper_acceleration_a: float
    accel_duration_ta: float
    inertial_duration_ti: float = 0.0
    repetitions: int = 1

    def __post_init__(self):
        if not self.proper_acceleration_a >= 0:
            raise ValueError("proper acceleration must be >= 0")
        if not self.accel_duration_ta >= 0:
            raise ValueError("accelerated segment duration must be >= 0")
        if not self.inertial_duration_ti >= 0:
            raise ValueError("inertial segment duration must be >= 0")
        if int(self.repetitions) != self.repetitions or self.repetitions < 1:
            raise ValueError(f"repetitions must be a positive integer, got {self.repetitions}")

    @property
    def trip_duration(self) -> float:
        """Lab duration of one round trip, 4*t_a + 2*t_i."""
        return 4.0 * self.accel_duration_ta + 2.0 * self.inertial_duration_ti


@dataclass(frozen=True)
class KinematicSummary:
    h: float
    x: float
    gamma: float
    max_velocity: float
    max_displacement: float
    trip_duration_tt: float


def asinh_ratio(x: float) -> float:
    """arcsinh(x)/x, equal to 1 at x = 0."""
    if abs(x) < _SERIES_CUTOFF:
        x2 = x * x
        return 1.0 - x2 / 6.0 + 3.0 * x2 * x2 / 40.0
    return math.asinh(x) / x


def atanh_ratio(y: float) -> float:
    """y/arctanh(y), equal to 1 at y = 0."""
    if abs(y) < _SERIES_CUTOFF:
        y2 = y * y
        return 1.0 - y2 / 3.0 - 4.0 * y2 * y2 / 45.0
    return y / math.atanh(y)


def check_wedge(h: float) -> float:
    if not 0 <= h < 2:
        raise RindlerWedgeError(
            f"cavity does not fit in Rindler wedge: h = {h!r} must satisfy 0 <= h < 2"
        )
    return h


def dimensionless_h(setup: CavitySetup, traj: TrajectorySpec) -> float:
    """h = a*L/v**2; raises `RindlerWedgeError` when h >= 2."""
    h = traj.proper_acceleration_a * setup.proper_length_L / setup.light_speed_v**2
    return check_wedge(h)


def rapidity_argument(traj: TrajectorySpec, v: float) -> float:
    """x = a*t_a/v, i.e. sinh of the rapidity reached after one segment."""
    return traj.proper_acceleration_a * traj.accel_duration_ta / v


def lorentz_factor(traj: TrajectorySpec, v: float) -> float:
    """Lorentz factor during the coasting segments."""
    return math.hypot(rapidity_argument(traj, v), 1.0)


def mode_frequency(setup: CavitySetup, n: int) -> float:
    """Angular frequency of cavity mode ``n`` (1-based) in the rest frame."""
    if not 1 <= n <= setup.mode_cutoff_N:
        raise IndexError(f"mode index {n} outside 1..{setup.mode_cutoff_N}")
    return n * setup.omega_1


def clock_ratio(h: float) -> float:
    """Ratio of cavity to pointlike proper time over an accelerated segment.

    (h/2)/arctanh(h/2) = 1 - h**2/12 + O(h**4).
    """
    return atanh_ratio(check_wedge(h) / 2.0)


def tau_point_accel(traj: TrajectorySpec, v: float) -> float:
    """Proper time (v/a)*arcsinh(a*t_a/v) of a comoving pointlike clock."""
    return traj.accel_duration_ta * asinh_ratio(rapidity_argument(traj, v))


def tau_cav_accel(setup: CavitySetup, traj: TrajectorySpec) -> float:
    """Proper time shown by the cavity clock during one accelerated segment."""
    h = dimensionless_h(setup, traj)
    return tau_point_accel(traj, setup.light_speed_v) * clock_ratio(h)


def rindler_phase_theta_a(setup: CavitySetup, traj: TrajectorySpec) -> float:
    """Phase of the fundamental mode over one accelerated segment.

    pi*arcsinh(a t_a/v) / (2 arctanh(h/2)); tends to omega_1*t_a as a -> 0.
    """
    return setup.omega_1 * tau_cav_accel(setup, traj)


def minkowski_phase_theta_i(setup: CavitySetup, traj: TrajectorySpec) -> float:
    """Phase of the fundamental mode over one coasting segment."""
    gamma = lorentz_factor(traj, setup.light_speed_v)
    return setup.omega_1 * traj.inertial_duration_ti / gamma


def tau_point_trip(setup: CavitySetup, traj: TrajectorySpec) -> float:
    """Pointlike proper time over one full round trip."""
    v = setup.light_speed_v
    return 4.0 * tau_point_accel(traj, v) + 2.0 * traj.inertial_duration_ti / lorentz_factor(traj, v)


def center_excursion(traj: TrajectorySpec, v: float) -> float:
    """Largest lab-frame distance of the cavity center from its start point.

    Two hyperbolic arcs plus one coast, 2*(v**2/a)*(sqrt(1+x**2) - 1) + u*t_i,
    rewritten so that it is regular at a = 0.
    """
    x = rapidity_argument(traj, v)
    gamma = math.hypot(x, 1.0)
    arc = v * traj.accel_duration_ta * x / (gamma + 1.0)
    return 2.0 * arc + v * x / gamma * traj.inertial_duration_ti


def kinematic_summary(setup: CavitySetup, traj: TrajectorySpec) -> KinematicSummary:
    v = setup.light_speed_v
    h = dimensionless_h(setup, traj)
    x = rapidity_argument(traj, v)
    gamma = math.hypot(x, 1.0)
    return KinematicSummary(
        h=h,
        x=x,
        gamma=gamma,
        max_velocity=v * x / gamma,
        max_displacement=center_excursion(traj, v),
        trip_duration_tt=traj.trip_duration,
    )
