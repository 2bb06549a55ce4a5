"""Cavity clocks on a relativistic round trip: Bogoliubov transformations,
first-mode phase readout and the mirror trajectories that simulate the trip
in a SQUID-terminated superconducting cavity."""

__version__ = "0.1.0"

from .bogoliubov import (
    BogoliubovTransform,
    ClockReport,
    closed_form_A11,
    closed_form_B11,
    coefficient_series,
    compose,
    free_evolution,
    inverse,
    phase_decomposition,
    phase_shift,
    round_trip_transform,
    segment_transform,
)
from .errors import ConfigError, DegenerateStateError, QuadratureError, RindlerWedgeError
from .kinematics import CavitySetup, TrajectorySpec, dimensionless_h, kinematic_summary
