"""
Bogoliubov transformations for a rigid cavity on the twin-paradox round trip.

A transform is stored as the matrix pair (A, B) in

    b_m = sum_n (conj(A_mn) a_n - conj(B_mn) a_n^dagger),

so that ``compose(T2, T1)`` means "apply T1, then T2". Single-segment
coefficients are the second-order series in h for the overlap between
inertial and uniformly accelerated cavity modes; the round trip is built by
sandwiching Rindler time evolution between a change of basis and its inverse.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .errors import DegenerateStateError
from .kinematics import (
    CavitySetup,
    TrajectorySpec,
    check_wedge,
    dimensionless_h,
    minkowski_phase_theta_i,
    rindler_phase_theta_a,
    tau_point_trip,
)

PI2 = math.pi**2


@dataclass(frozen=True)
class CoefficientSeries:
    """Series coefficients of alpha_mn and beta_mn through order h**2."""

    m: int
    n: int
    alpha0: float
    alpha1: float
    alpha2: float
    beta0: float
    beta1: float
    beta2: float

    def alpha(self, h: float) -> float:
        return self.alpha0 + h * (self.alpha1 + h * self.alpha2)

    def beta(self, h: float) -> float:
        return self.beta0 + h * (self.beta1 + h * self.beta2)


def coefficient_series(m: int, n: int) -> CoefficientSeries:
    """Expansion coefficients for the (m, n) overlap of Rindler mode m with
    Minkowski mode n. The beta**2 term is used on the diagonal as well."""
    if m < 1 or n < 1:
        raise ValueError(f"mode indices are 1-based, got ({m}, {n})")
    parity = (-1) ** (m - n)
    root = math.sqrt(m * n)
    if m == n:
        alpha0, alpha1, alpha2 = 1.0, 0.0, -PI2 * n * n / 240.0
    else:
        d = m - n
        alpha0 = 0.0
        alpha1 = root * (parity - 1) / (PI2 * d**3)
        alpha2 = root * (parity + 1) * (m + 2 * n) / (2.0 * PI2 * d**4)
    s = m + n
    beta1 = root * (1 - parity) / (PI2 * s**3)
    beta2 = root * (-parity - 1) * (m - 2 * n) / (2.0 * PI2 * s**4)
    return CoefficientSeries(m, n, alpha0, alpha1, alpha2, 0.0, beta1, beta2)


@lru_cache(maxsize=32)
def _series_matrices(n_modes: int) -> tuple[np.ndarray, ...]:
    out = np.zeros((5, n_modes, n_modes))
    for m in range(1, n_modes + 1):
        for n in range(1, n_modes + 1):
            c = coefficient_series(m, n)
            out[:, m - 1, n - 1] = (c.alpha0, c.alpha1, c.alpha2, c.beta1, c.beta2)
    for arr in out:
        arr.setflags(write=False)
    return tuple(out)


def _frozen(arr) -> np.ndarray:
    arr = np.array(arr, dtype=complex)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class BogoliubovTransform:
    """Truncated Bogoliubov transformation on ``n_modes`` cavity modes."""

    A: np.ndarray
    B: np.ndarray = field(default=None)

    def __post_init__(self):
        A = _frozen(self.A)
        B = np.zeros_like(A) if self.B is None else _frozen(self.B)
        if A.ndim != 2 or A.shape[0] != A.shape[1] or A.shape != B.shape:
            raise ValueError(f"A and B must be equal square matrices, got {A.shape} and {B.shape}")
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "B", B)

    @property
    def n_modes(self) -> int:
        return self.A.shape[0]

    def symplectic_residual(self, row: int = 0) -> float:
        """sum_k |A_rk|**2 - |B_rk|**2 - 1 for one output mode."""
        return float(np.sum(np.abs(self.A[row]) ** 2) - np.sum(np.abs(self.B[row]) ** 2) - 1.0)

    def __matmul__(self, other: "BogoliubovTransform") -> "BogoliubovTransform":
        return compose(self, other)


def identity(n_modes: int) -> BogoliubovTransform:
    return BogoliubovTransform(np.eye(n_modes))


def compose(T2: BogoliubovTransform, T1: BogoliubovTransform) -> BogoliubovTransform:
    """Transformation equivalent to applying ``T1`` and then ``T2``."""
    if T2.n_modes != T1.n_modes:
        raise ValueError(f"cannot compose transforms on {T2.n_modes} and {T1.n_modes} modes")
    A = T2.A @ T1.A + T2.B @ T1.B.conj()
    B = T2.A @ T1.B + T2.B @ T1.A.conj()
    return BogoliubovTransform(A, B)


def inverse(T: BogoliubovTransform) -> BogoliubovTransform:
    """Inverse of a symplectic transform (exact only when ``T`` is)."""
    return BogoliubovTransform(T.A.conj().T, -T.B.T)


def power(T: BogoliubovTransform, count: int) -> BogoliubovTransform:
    """``count``-fold composition of ``T`` with itself, by repeated squaring."""
    if count < 0:
        raise ValueError("count must be non-negative")
    result = identity(T.n_modes)
    base = T
    while count:
        if count & 1:
            result = compose(base, result)
        count >>= 1
        if count:
            base = compose(base, base)
    return result


def free_evolution(theta1: float, n_modes: int) -> BogoliubovTransform:
    """Free evolution during which the fundamental mode advances by ``theta1``."""
    phases = theta1 * np.arange(1, n_modes + 1)
    return BogoliubovTransform(np.diag(np.exp(1j * phases)))


def segment_transform(h: float, n_modes: int, particle_creation: bool = True) -> BogoliubovTransform:
    """Change of basis from inertial to accelerated cavity modes.

    A negative ``h`` describes acceleration towards -x. With
    ``particle_creation=False`` the beta block is dropped.
    """
    if n_modes < 2:
        raise ValueError(f"mode cutoff must be >= 2, got {n_modes}")
    check_wedge(abs(h))
    a0, a1, a2, b1, b2 = _series_matrices(n_modes)
    A = a0 + h * a1 + h * h * a2
    B = h * b1 + h * h * b2 if particle_creation else None
    return BogoliubovTransform(A, B)


def accelerated_segment(h: float, theta: float, n_modes: int,
                        particle_creation: bool = True) -> BogoliubovTransform:
    """Enter the accelerated frame, evolve by Rindler phase ``theta``, leave."""
    S = segment_transform(h, n_modes, particle_creation)
    return compose(inverse(S), compose(free_evolution(theta, n_modes), S))


def trip_from_phases(h: float, theta_a: float, theta_i: float, n_modes: int,
                     particle_creation: bool = True) -> BogoliubovTransform:
    """One round trip parametrised by h and the two segment phases.

    Outbound acceleration (+h), coast, a single continuous reversed arc of
    twice the Rindler phase covering deceleration and return acceleration
    (-h), coast, and final deceleration (+h).
    """
    free = free_evolution(theta_i, n_modes)
    out = accelerated_segment(h, theta_a, n_modes, particle_creation)
    turn = accelerated_segment(-h, 2.0 * theta_a, n_modes, particle_creation)
    T = out
    for step in (free, turn, free, out):
        T = compose(step, T)
    return T


def trip_transform(setup: CavitySetup, traj: TrajectorySpec, n_modes: int | None = None,
                   particle_creation: bool = True) -> BogoliubovTransform:
    """Transformation for a single round trip (no repetitions)."""
    h = dimensionless_h(setup, traj)
    return trip_from_phases(
        h,
        rindler_phase_theta_a(setup, traj),
        minkowski_phase_theta_i(setup, traj),
        n_modes or setup.mode_cutoff_N,
        particle_creation,
    )


def round_trip_transform(setup: CavitySetup, traj: TrajectorySpec, n_modes: int | None = None,
                         particle_creation: bool = True) -> BogoliubovTransform:
    """Transformation for all ``traj.repetitions`` round trips."""
    return power(trip_transform(setup, traj, n_modes, particle_creation), traj.repetitions)


def _closed_form_terms(K):
    k = np.arange(2, K + 1)
    alpha1 = np.array([coefficient_series(int(j), 1).alpha1 for j in k])
    beta1 = np.array([coefficient_series(int(j), 1).beta1 for j in k])
    return k, alpha1, beta1


def closed_form_A11(theta_a: float, theta_i: float, h: float, K: int = 20) -> complex:
    """Second-order closed form of A_11 for one round trip, k-sums cut at K."""
    if K < 2:
        raise ValueError("K must be >= 2")
    ta, ti = theta_a, theta_i
    k, al, be = _closed_form_terms(K)
    alpha11_2 = coefficient_series(1, 1).alpha2

    def e(z):
        return np.exp(1j * z)

    mixing = (
        2 * e((k + 3) * ta + 2 * ti) + 2 * e(2 * (k + 1) * ta + (k + 1) * ti)
        - 2 * e((3 * k + 1) * ta + (k + 1) * ti) - 2 * e((3 * k + 1) * ta + 2 * k * ti)
        + 2 * e((k + 3) * ta + (k + 1) * ti) - 2 * e(4 * ta + (k + 1) * ti)
        + e(2 * (k + 1) * ta + 2 * ti) + e(4 * k * ta + 2 * k * ti) + e(2 * (k + 1) * ta + 2 * k * ti)
    )
    creation = (
        2 * e((-k + 3) * ta + 2 * ti) + 2 * e(2 * (-k + 1) * ta + (-k + 1) * ti)
        - 2 * e((-3 * k + 1) * ta + (-k + 1) * ti) - 2 * e((-3 * k + 1) * ta - 2 * k * ti)
        + 2 * e((-k + 3) * ta + (-k + 1) * ti) - 2 * e(4 * ta + (-k + 1) * ti)
        + e(2 * (-k + 1) * ta + 2 * ti) + e(-4 * k * ta - 2 * k * ti) + e(2 * (-k + 1) * ta - 2 * k * ti)
    )
    lead = (1 + 6 * alpha11_2 * h * h) * e(4 * ta + 2 * ti)
    return complex(lead + h * h * np.sum(al**2 * mixing) - h * h * np.sum(be**2 * creation))


def closed_form_B11(theta_a: float, theta_i: float, h: float, K: int = 20) -> complex:
    """Second-order closed form of B_11 for one round trip, k-sums cut at K."""
    if K < 2:
        raise ValueError("K must be >= 2")
    ta, ti = theta_a, theta_i
    k, al, be = _closed_form_terms(K)
    sin, cos = np.sin, np.cos
    beta11_2 = coefficient_series(1, 1).beta2
    diag = sin(4 * ta + 2 * ti) - sin(2 * ta + 2 * ti) + sin(2 * ta)
    bracket = (
        sin((4 * ta + 2 * ti) * k) - 2 * sin((3 * ta + 2 * ti) * k) * cos(ta)
        - 2 * sin((3 * ta + ti) * k) * cos(ta + ti) + sin((2 * ta + 2 * ti) * k)
        + 2 * sin((2 * ta + ti) * k) * cos(ti) + sin(2 * ta * k)
        + 2 * sin((ta + ti) * k) * cos(3 * ta + ti)
        + 2 * sin(ta * k) * cos(3 * ta + 2 * ti)
        - 2 * sin(ti * k) * cos(2 * ta + ti)
    )
    return complex(2j * h * h * (beta11_2 * diag + np.sum(al * be * bracket)))


def phase_shift(A11: complex, B11: complex, reference_phase: float) -> float:
    """Unwrapped clock phase of the first mode.

    A coherent amplitude alpha (real) becomes conj(A11 - B11)*alpha, so
    tan(-phase) = -Im(A11 - B11)/Re(A11 - B11). The branch is chosen
    closest to ``reference_phase``.
    """
    z = complex(A11) - complex(B11)
    if z == 0:
        raise DegenerateStateError("A11 - B11 vanishes; the first-mode phase is undefined")
    offset = np.angle(z * np.exp(-1j * reference_phase))
    return float(reference_phase + offset)


def particle_number(T: BogoliubovTransform) -> float:
    """Expected number of quanta created from vacuum, sum |B_mn|**2."""
    return float(np.sum(np.abs(T.B) ** 2))


@dataclass(frozen=True)
class PhaseDecomposition:
    """Per-trip first-mode phases (rad) under increasingly complete models."""

    theta_point: float
    theta_rigid: float
    theta_mix: float
    theta_full: float


@dataclass(frozen=True)
class ClockReport:
    omega_1: float
    repetitions: int
    trip_duration: float
    theta_rob_per_trip: float
    theta_alice_per_trip: float
    theta_rob_total: float
    relative_phase_total: float
    tau_rob: float
    tau_alice: float
    decomposition: PhaseDecomposition

    @property
    def relative_phase_deg(self) -> float:
        return math.degrees(self.relative_phase_total)

    def proper_time(self, phase: float) -> float:
        return phase / self.omega_1

    def _normalized(self, delta: float) -> float:
        # time dilation of the pointlike clock over one trip, as a phase
        dilation = self.theta_alice_per_trip - self.decomposition.theta_point
        return delta / dilation if dilation != 0 else 0.0

    @property
    def norm_clock_size(self) -> float:
        d = self.decomposition
        return self._normalized(d.theta_rigid - d.theta_point)

    @property
    def norm_with_dce(self) -> float:
        d = self.decomposition
        return self._normalized(d.theta_full - d.theta_point)

    @property
    def norm_particle_creation(self) -> float:
        d = self.decomposition
        return self._normalized(d.theta_full - d.theta_mix)

    def excess_phase(self, model: str = "rigid") -> float:
        """Extra phase lag of the cavity clock relative to a pointlike clock,
        accumulated over all repetitions."""
        d = self.decomposition
        theta = {"rigid": d.theta_rigid, "mix": d.theta_mix, "full": d.theta_full}[model]
        return self.repetitions * (d.theta_point - theta)


def phase_decomposition(setup: CavitySetup, traj: TrajectorySpec, n_modes: int | None = None,
                        additive: bool = False) -> ClockReport:
    """Clock phases for Rob and Alice and the split into contributions.

    With ``additive=True`` the total phase is the per-trip phase times the
    repetition count instead of the phase of the composed transform; the two
    agree to O(h**2) per trip.
    """
    n_modes = n_modes or setup.mode_cutoff_N
    h = dimensionless_h(setup, traj)
    omega_1 = setup.omega_1
    theta_a = rindler_phase_theta_a(setup, traj)
    theta_i = minkowski_phase_theta_i(setup, traj)
    theta_rigid = 4.0 * theta_a + 2.0 * theta_i

    full = trip_from_phases(h, theta_a, theta_i, n_modes)
    mix = trip_from_phases(h, theta_a, theta_i, n_modes, particle_creation=False)
    theta_full = phase_shift(full.A[0, 0], full.B[0, 0], theta_rigid)
    theta_mix = phase_shift(mix.A[0, 0], mix.B[0, 0], theta_rigid)

    reps = traj.repetitions
    if additive or reps == 1:
        theta_total = reps * theta_full
    else:
        total = power(full, reps)
        theta_total = phase_shift(total.A[0, 0], total.B[0, 0], reps * theta_full)

    theta_alice = omega_1 * traj.trip_duration
    return ClockReport(
        omega_1=omega_1,
        repetitions=reps,
        trip_duration=traj.trip_duration,
        theta_rob_per_trip=theta_full,
        theta_alice_per_trip=theta_alice,
        theta_rob_total=theta_total,
        relative_phase_total=reps * theta_alice - theta_total,
        tau_rob=theta_total / omega_1,
        tau_alice=reps * traj.trip_duration,
        decomposition=PhaseDecomposition(
            theta_point=omega_1 * tau_point_trip(setup, traj),
            theta_rigid=theta_rigid,
            theta_mix=theta_mix,
            theta_full=theta_full,
        ),
    )


__all__ = [
    "BogoliubovTransform",
    "ClockReport",
    "CoefficientSeries",
    "PhaseDecomposition",
    "accelerated_segment",
    "closed_form_A11",
    "closed_form_B11",
    "coefficient_series",
    "compose",
    "free_evolution",
    "identity",
    "inverse",
    "particle_number",
    "phase_decomposition",
    "phase_shift",
    "power",
    "round_trip_transform",
    "segment_transform",
    "trip_from_phases",
    "trip_transform",
]
