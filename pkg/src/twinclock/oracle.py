"""
Independent check of the single-segment Bogoliubov series.

The coefficients alpha_mn = (v_m, u_n) and beta_mn = -(v_m, u_n*) are
evaluated as Klein-Gordon inner products on the t = 0 slice, where the
inertial and the uniformly accelerated cavity coincide, using adaptive
Gauss-Legendre quadrature. Nothing in this module uses the series.

On the slice, positions are handled as offsets ``y = x - x_l`` from the left
mirror. This keeps full precision when h is small and the cavity sits far
from the Rindler horizon.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .bogoliubov import coefficient_series
from .errors import QuadratureError

GL_NODES = 64
ABS_FLOOR = 1e-15
MAX_DEPTH = 30
EPS = np.finfo(float).eps

_gl_x, _gl_w = np.polynomial.legendre.leggauss(GL_NODES)


def _panel(f, a, b):
    half = 0.5 * (b - a)
    values = f(a + half * (_gl_x + 1.0))
    return half * np.dot(_gl_w, values), half * np.dot(_gl_w, np.abs(values))


def gauss_legendre(f: Callable[[np.ndarray], np.ndarray], a: float, b: float,
                   rel_tol: float = 1e-12, abs_floor: float = ABS_FLOOR,
                   min_panels: int = 1) -> complex:
    """Integrate vectorised ``f`` over [a, b] with panel bisection.

    A panel is accepted when its value and the sum over its two halves agree
    to within its share of max(rel_tol*|I|, abs_floor), or to within the
    rounding noise of the panel sum. Raises `QuadratureError` for tolerances
    below double precision and for panels unresolved after ``MAX_DEPTH``
    bisections.
    """
    if rel_tol < 4 * EPS:
        raise QuadratureError(f"rel_tol = {rel_tol:g} is below the double-precision floor")
    width = b - a
    edges = np.linspace(a, b, min_panels + 1)
    todo = [(lo, hi, _panel(f, lo, hi)[0], 0) for lo, hi in zip(edges[:-1], edges[1:])]
    estimate = abs(sum(p[2] for p in todo))
    total = 0.0
    while todo:
        lo, hi, coarse, depth = todo.pop()
        mid = 0.5 * (lo + hi)
        (left, left_abs), (right, right_abs) = _panel(f, lo, mid), _panel(f, mid, hi)
        fine = left + right
        allowed = max(rel_tol * estimate, abs_floor) * (hi - lo) / width
        roundoff = 64 * EPS * (left_abs + right_abs)
        if abs(fine - coarse) <= max(allowed, roundoff):
            total += fine
            continue
        if depth >= MAX_DEPTH:
            raise QuadratureError(
                f"panel [{lo}, {hi}] unresolved after {MAX_DEPTH} bisections "
                f"(|change| = {abs(fine - coarse):.3e}, allowed {allowed:.3e})"
            )
        todo.append((mid, hi, right, depth + 1))
        todo.append((lo, mid, left, depth + 1))
    return total


@dataclass(frozen=True)
class WedgeGeometry:
    """Cavity placed symmetrically about the Rindler observer at x0 = v**2/a.

    The mirrors sit at x0 -/+ L/2 on the t = 0 slice, so the inertial and the
    accelerated cavity share the same mirrors there.
    """

    proper_acceleration: float
    proper_length: float
    light_speed: float = 1.0

    def __post_init__(self):
        if not self.proper_acceleration > 0:
            raise ValueError("the Rindler chart needs a > 0")
        if not 0 < self.h < 2:
            raise ValueError(f"h = {self.h} outside (0, 2): left mirror not inside the wedge")

    @classmethod
    def from_h(cls, h: float, proper_length: float = 1.0, light_speed: float = 1.0) -> "WedgeGeometry":
        return cls(h * light_speed**2 / proper_length, proper_length, light_speed)

    @property
    def h(self) -> float:
        return self.proper_acceleration * self.proper_length / self.light_speed**2

    @property
    def center_x0(self) -> float:
        return self.light_speed**2 / self.proper_acceleration

    @property
    def mirror_xl(self) -> float:
        return self.center_x0 - 0.5 * self.proper_length

    @property
    def mirror_xr(self) -> float:
        return self.center_x0 + 0.5 * self.proper_length

    def rindler_position(self, x):
        """xi = (v**2/a) ln(a x/v**2)."""
        return self.center_x0 * np.log(np.asarray(x) / self.center_x0)

    @property
    def xi_l(self) -> float:
        return self.center_x0 * math.log1p(-0.5 * self.h)

    @property
    def xi_r(self) -> float:
        return self.center_x0 * math.log1p(0.5 * self.h)

    @property
    def rindler_length(self) -> float:
        """xi_r - xi_l = (2 v**2/a) arctanh(h/2)."""
        return 2.0 * self.center_x0 * math.atanh(0.5 * self.h)

    def xi_offset(self, y):
        """xi - xi_l at the slice point a distance ``y`` right of the left mirror."""
        return self.center_x0 * np.log1p(np.asarray(y) / self.mirror_xl)

    def redshift(self, y):
        """d(eta)/dt on the slice, exp(-a xi/v**2) = x0/x."""
        return self.center_x0 / (self.mirror_xl + np.asarray(y))

    def minkowski_frequency(self, n: int) -> float:
        return math.pi * n * self.light_speed / self.proper_length

    def rindler_frequency(self, m: int) -> float:
        return math.pi * m * self.light_speed / self.rindler_length


def _check_inside(lo, hi, value, what):
    arr = np.asarray(value)
    tol = 1e-12 * max(abs(lo), abs(hi), 1.0)
    if np.any(arr < lo - tol) or np.any(arr > hi + tol):
        raise ValueError(f"{what} outside the cavity [{lo}, {hi}]")


def minkowski_mode(n: int, x, t, geometry: WedgeGeometry):
    """Inertial cavity mode sin(omega_n (x - x_l)) exp(-i omega_n t)/sqrt(pi n)."""
    _check_inside(geometry.mirror_xl, geometry.mirror_xr, x, "x")
    w = geometry.minkowski_frequency(n)
    y = np.asarray(x) - geometry.mirror_xl
    return np.sin(w * y) * np.exp(-1j * w * np.asarray(t)) / math.sqrt(math.pi * n)


def rindler_mode(m: int, xi, eta, geometry: WedgeGeometry):
    """Accelerated cavity mode sin(Omega_m (xi - xi_l)) exp(-i Omega_m eta)/sqrt(pi m)."""
    _check_inside(geometry.xi_l, geometry.xi_r, xi, "xi")
    w = geometry.rindler_frequency(m)
    d = np.asarray(xi) - geometry.xi_l
    return np.sin(w * d) * np.exp(-1j * w * np.asarray(eta)) / math.sqrt(math.pi * m)


@dataclass(frozen=True)
class SliceMode:
    """Mode function and its lab-time derivative on the t = 0 slice.

    Both callables take offsets ``y`` from the left mirror.
    """

    value: Callable[[np.ndarray], np.ndarray]
    dt: Callable[[np.ndarray], np.ndarray]

    def conj(self) -> "SliceMode":
        return SliceMode(lambda y: np.conj(self.value(y)), lambda y: np.conj(self.dt(y)))


def minkowski_slice(n: int, geometry: WedgeGeometry) -> SliceMode:
    w = geometry.minkowski_frequency(n)
    norm = 1.0 / math.sqrt(math.pi * n)

    def value(y):
        return norm * np.sin(w * y) + 0j

    return SliceMode(value, lambda y: -1j * w * value(y))


def rindler_slice(m: int, geometry: WedgeGeometry) -> SliceMode:
    w = geometry.rindler_frequency(m)
    norm = 1.0 / math.sqrt(math.pi * m)

    def value(y):
        return norm * np.sin(w * geometry.xi_offset(y)) + 0j

    # d/dt = exp(-a xi/v**2) d/d(eta) on the t = 0 slice
    return SliceMode(value, lambda y: -1j * w * geometry.redshift(y) * value(y))


def kg_inner_product(f: SliceMode, g: SliceMode, geometry: WedgeGeometry,
                     rel_tol: float = 1e-12, min_panels: int = 1) -> complex:
    """(f, g) = -(i/v) * integral over the cavity of (f dg*/dt - g* df/dt) dx.

    The 1/v normalisation makes the mode functions orthonormal.
    """

    def integrand(y):
        gc, gc_dt = np.conj(g.value(y)), np.conj(g.dt(y))
        return f.value(y) * gc_dt - gc * f.dt(y)

    span = gauss_legendre(integrand, 0.0, geometry.proper_length, rel_tol, min_panels=min_panels)
    return complex(-1j * span / geometry.light_speed)


def quadrature_coefficients(m: int, n: int, h: float, rel_tol: float = 1e-12) -> tuple[complex, complex]:
    """(alpha_mn, beta_mn) at finite h by direct quadrature."""
    geometry = WedgeGeometry.from_h(h)
    v_m = rindler_slice(m, geometry)
    u_n = minkowski_slice(n, geometry)
    alpha = kg_inner_product(v_m, u_n, geometry, rel_tol)
    beta = -kg_inner_product(v_m, u_n.conj(), geometry, rel_tol)
    return alpha, beta


@dataclass(frozen=True)
class ValidationRow:
    h: float
    m: int
    n: int
    alpha_quad: float
    alpha_series: float
    beta_quad: float
    beta_series: float
    bound: float
    quadrature_ok: bool = True

    @property
    def alpha_error(self) -> float:
        return abs(self.alpha_quad - self.alpha_series)

    @property
    def beta_error(self) -> float:
        return abs(self.beta_quad - self.beta_series)

    @property
    def error(self) -> float:
        return max(self.alpha_error, self.beta_error)

    @property
    def passed(self) -> bool:
        return self.quadrature_ok and self.error <= self.bound


@dataclass(frozen=True)
class ValidationTable:
    rows: list[ValidationRow]
    order_ratios: dict[float, float]
    ratio_window: tuple[float, float] = (6.0, 10.0)

    def max_error(self, h: float) -> float:
        return max(r.error for r in self.rows if r.h == h)

    @property
    def ratios_ok(self) -> bool:
        lo, hi = self.ratio_window
        return all(lo <= r <= hi for r in self.order_ratios.values())

    @property
    def passed(self) -> bool:
        return self.ratios_ok and all(r.passed for r in self.rows)

    CSV_COLUMNS = ("h", "m", "n", "alpha_quad", "alpha_series", "alpha_error",
                   "beta_quad", "beta_series", "beta_error", "bound", "passed")

    def csv_rows(self):
        for r in self.rows:
            yield (r.h, r.m, r.n, r.alpha_quad, r.alpha_series, r.alpha_error,
                   r.beta_quad, r.beta_series, r.beta_error, r.bound, int(r.passed))


def series_validation(h_list: Sequence[float], m_max: int,
                      series: Callable = coefficient_series,
                      rel_tol: float = 1e-12, bound_factor: float = 5.0) -> ValidationTable:
    """Compare the series against quadrature for all m, n <= ``m_max``.

    Every h is also evaluated at h/2; the ratio of the two maximum errors
    should be close to 8 for a series that is correct through h**2.
    """
    for h in h_list:
        if not 0 < h < 0.1:
            raise ValueError(f"series validation needs 0 < h < 0.1, got {h}")
    rows = []
    ratios = {}
    for h in h_list:
        for hh in (h, 0.5 * h):
            for m in range(1, m_max + 1):
                for n in range(1, m_max + 1):
                    c = series(m, n)
                    try:
                        alpha, beta = quadrature_coefficients(m, n, hh, rel_tol)
                        ok = True
                    except QuadratureError:
                        alpha = beta = complex("nan")
                        ok = False
                    rows.append(ValidationRow(
                        hh, m, n, alpha.real, c.alpha(hh), beta.real, c.beta(hh),
                        bound_factor * hh**3, ok,
                    ))
        coarse = max(r.error for r in rows if r.h == h)
        fine = max(r.error for r in rows if r.h == 0.5 * h)
        ratios[h] = coarse / fine if fine > 0 else math.inf
    return ValidationTable(rows, ratios)
