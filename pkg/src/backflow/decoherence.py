"""Closed-form decoherence functions of the two built-in environment families.

Dephasing of a single qubit in a two-peak Gaussian frequency environment is
parameterized by the complex factor

    kappa(tau) = exp(-sigma^2 tau^2 / 2) * (cos^2(theta) e^{i omega1 tau}
                                            + sin^2(theta) e^{i omega2 tau})

where ``tau`` is the dimensionless reduced time inside the control window (the
refraction-index difference is absorbed into tau, so it never appears as a
parameter).  Amplitude damping in a resonant Lorentzian environment is
parameterized by the real factor

    chi(t) = exp(-Gamma t / 2) * (cos(eps t / 2) + (Gamma/eps) sin(eps t / 2))

with eps = sqrt(|Gamma^2 - 2 gamma0 Gamma|).  For Gamma > 2 gamma0 the
trigonometric functions are continued as cosh/sinh (the standard overdamped
solution); at Gamma = 2 gamma0 the analytic limit exp(-Gamma t/2)(1 + Gamma t/2)
is used.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "DephasingSpec",
    "LorentzSpec",
    "QuadratureError",
    "NoTransitionError",
    "kappa_complex",
    "kappa_abs",
    "kappa_quadrature",
    "chi",
    "analytic_blp_dephasing",
    "transition_thetas",
]


class QuadratureError(RuntimeError):
    """Adaptive quadrature failed to reach the requested tolerance."""


class NoTransitionError(ValueError):
    """The transition-angle equation has no real root for these parameters."""


@dataclass(frozen=True)
class DephasingSpec:
    """Two-peak Gaussian environment: peak weights cos^2/sin^2 of ``theta``,
    peak centers ``omega1 < omega2``, common width ``sigma``."""

    theta: float
    omega1: float = 0.0
    omega2: float = 10.0
    sigma: float = 1.0

    def __post_init__(self) -> None:
        if not 0.0 <= self.theta <= math.pi / 2:
            raise ValueError(f"theta={self.theta} outside [0, pi/2]")
        if not self.omega2 > self.omega1:
            raise ValueError("omega2 must exceed omega1")
        if not self.sigma > 0.0:
            raise ValueError("sigma must be positive")

    @property
    def delta_omega(self) -> float:
        return self.omega2 - self.omega1


@dataclass(frozen=True)
class LorentzSpec:
    """Resonant Lorentzian environment: spectral width ``width`` (Gamma) and
    coupling rate ``gamma0`` (inverse correlation time)."""

    gamma0: float
    width: float

    def __post_init__(self) -> None:
        if not self.gamma0 > 0.0:
            raise ValueError("gamma0 must be positive")
        if not self.width > 0.0:
            raise ValueError("width must be positive")

    @property
    def epsilon(self) -> float:
        return math.sqrt(abs(self.width**2 - 2.0 * self.gamma0 * self.width))


def kappa_complex(spec: DephasingSpec, tau):
    """Complex dephasing factor kappa(tau); |kappa| <= 1, kappa(0) = 1.

    Accepts a scalar or an array of reduced times.
    """
    t = np.asarray(tau, dtype=float)
    c2 = math.cos(spec.theta) ** 2
    s2 = math.sin(spec.theta) ** 2
    envelope = np.exp(-0.5 * (spec.sigma * t) ** 2)
    value = envelope * (c2 * np.exp(1j * spec.omega1 * t) + s2 * np.exp(1j * spec.omega2 * t))
    if np.ndim(tau) == 0:
        return complex(value)
    return value


def kappa_abs(spec: DephasingSpec, tau):
    """|kappa(tau)| via the closed form
    exp(-sigma^2 tau^2/2) sqrt(1 - sin^2(2 theta) sin^2(dw tau / 2))."""
    t = np.asarray(tau, dtype=float)
    s = math.sin(2.0 * spec.theta) ** 2
    osc = 1.0 - s * np.sin(0.5 * spec.delta_omega * t) ** 2
    value = np.exp(-0.5 * (spec.sigma * t) ** 2) * np.sqrt(np.clip(osc, 0.0, None))
    if np.ndim(tau) == 0:
        return float(value)
    return value


def _two_peak_density(spec: DephasingSpec, omega: float) -> float:
    norm = 1.0 / (math.sqrt(2.0 * math.pi) * spec.sigma)
    c2 = math.cos(spec.theta) ** 2
    s2 = math.sin(spec.theta) ** 2
    g1 = math.exp(-0.5 * ((omega - spec.omega1) / spec.sigma) ** 2)
    g2 = math.exp(-0.5 * ((omega - spec.omega2) / spec.sigma) ** 2)
    return norm * (c2 * g1 + s2 * g2)


def _simpson(f, a: float, fa: complex, b: float, fb: complex, fm: complex) -> complex:
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb)


def _adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, depth):
    m = 0.5 * (a + b)
    lm = 0.5 * (a + m)
    rm = 0.5 * (m + b)
    flm = f(lm)
    frm = f(rm)
    left = _simpson(f, a, fa, m, fm, flm)
    right = _simpson(f, m, fm, b, fb, frm)
    delta = left + right - whole
    if abs(delta) <= 15.0 * tol:
        return left + right + delta / 15.0
    if depth <= 0:
        raise QuadratureError(
            f"adaptive Simpson did not converge on [{a:.6g}, {b:.6g}]: "
            f"achieved error estimate {abs(delta) / 15.0:.3e} > {tol:.3e}"
        )
    return _adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) + _adaptive_simpson(
        f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1
    )


def kappa_quadrature(
    spec: DephasingSpec,
    tau: float,
    abs_tol: float = 1e-10,
    max_depth: int = 40,
) -> complex:
    """kappa(tau) by adaptive Simpson quadrature of the frequency density.

    Integrates density(omega) * exp(i omega tau) over
    [omega1 - 10 sigma, omega2 + 10 sigma]; the truncated tails are below
    1e-22.  Serves as the independent numerical route against the closed form.
    """
    tau = float(tau)

    def integrand(omega: float) -> complex:
        return _two_peak_density(spec, omega) * complex(
            math.cos(omega * tau), math.sin(omega * tau)
        )

    a = spec.omega1 - 10.0 * spec.sigma
    b = spec.omega2 + 10.0 * spec.sigma
    fa = integrand(a)
    fb = integrand(b)
    fm = integrand(0.5 * (a + b))
    whole = _simpson(integrand, a, fa, b, fb, fm)
    return _adaptive_simpson(integrand, a, b, fa, fm, fb, whole, abs_tol, max_depth)


# Relative discriminant threshold below which the eps -> 0 limit is used.
_CRITICAL_DAMPING_TOL = 1e-12


def chi(spec: LorentzSpec, t):
    """Real amplitude-damping factor chi(t); chi(0) = 1.

    Oscillatory for width < 2*gamma0, hyperbolic for width > 2*gamma0, and the
    analytic critical limit in between.  Accepts a scalar or an array.
    """
    tt = np.asarray(t, dtype=float)
    g = spec.width
    disc = g * g - 2.0 * spec.gamma0 * g
    envelope = np.exp(-0.5 * g * tt)
    if abs(disc) < _CRITICAL_DAMPING_TOL * spec.gamma0**2:
        value = envelope * (1.0 + 0.5 * g * tt)
    else:
        eps = spec.epsilon
        half = 0.5 * eps * tt
        if disc < 0.0:
            value = envelope * (np.cos(half) + (g / eps) * np.sin(half))
        else:
            value = envelope * (np.cosh(half) + (g / eps) * np.sinh(half))
    if np.ndim(t) == 0:
        return float(value)
    return value


def _delta_floor(spec: DephasingSpec) -> float:
    return abs(math.cos(2.0 * spec.theta)) * math.exp(
        -0.5 * (math.pi * spec.sigma / spec.delta_omega) ** 2
    )


def _check_window(delta_omega: float, tau_c: float, closed_left: bool) -> None:
    lo = math.pi / delta_omega
    hi = 2.0 * math.pi / delta_omega
    # Accept control times within 1e-5 (relative) of the edges so rounded
    # inputs such as 0.62832 for 2 pi / 10 pass.
    slack = 1e-5 * hi
    left_ok = tau_c >= lo - slack if closed_left else tau_c > lo + slack
    if not (left_ok and tau_c <= hi + slack):
        bracket = "[" if closed_left else "("
        raise ValueError(
            f"tau_c={tau_c:.6g} outside the validity window "
            f"{bracket}{lo:.6g}, {hi:.6g}] (use the numeric backflow path instead)"
        )


def analytic_blp_dephasing(spec: DephasingSpec, tau_c: float) -> float:
    """Closed-form backflow measure max(0, |kappa(tau_c)| - delta) with
    delta = |cos(2 theta)| exp(-(pi sigma / dw)^2 / 2).

    Only valid for tau_c in [pi/dw, 2 pi/dw]; other control times are
    rejected and must go through the numeric route.  The value is clamped at
    zero where the expression goes negative (no net revival at tau_c).
    """
    tau_c = float(tau_c)
    _check_window(spec.delta_omega, tau_c, closed_left=True)
    return max(0.0, kappa_abs(spec, tau_c) - _delta_floor(spec))


def transition_thetas(delta_omega: float, sigma: float, tau_c: float) -> tuple[float, float]:
    """Angles where the closed-form backflow measure crosses zero.

    Returns (theta1, theta2) with theta1 <= theta2; the measure is positive
    between them.  Requires tau_c in (pi/dw, 2 pi/dw].
    """
    delta_omega = float(delta_omega)
    sigma = float(sigma)
    tau_c = float(tau_c)
    if delta_omega <= 0.0 or sigma <= 0.0:
        raise ValueError("delta_omega and sigma must be positive")
    _check_window(delta_omega, tau_c, closed_left=False)
    u = math.exp((sigma * tau_c) ** 2)
    v = math.exp((math.pi * sigma / delta_omega) ** 2)
    if u <= v:
        raise NoTransitionError(f"u={u:.6g} <= v={v:.6g}: no real transition angle")
    c = math.cos(delta_omega * tau_c)
    p = (u + v * c) / (u - v)
    radicand = 2.0 * u * v * (1.0 + c) - (v * math.sin(delta_omega * tau_c)) ** 2
    if radicand < 0.0:
        raise NoTransitionError("negative discriminant: no real transition angle")
    q = math.sqrt(radicand) / (u - v)
    if p - q < 0.0:
        raise NoTransitionError(f"p - q = {p - q:.6g} < 0: no real transition angle")
    theta1 = math.atan(math.sqrt(p - q))
    theta2 = math.atan(math.sqrt(p + q))
    return (theta1, theta2) if theta1 <= theta2 else (theta2, theta1)
