"""Closed-form moments and squeezing parameters for the reduced dynamics.

Two exactly solvable four-level scenarios are covered: pure one-axis
twisting from an x-stretched state, and twisting about x combined with a
uniform Zeeman rotation from a z-stretched state.  All formulas are exact
for J = 3/2 and are vectorized over the time argument.  The squeezing
parameter throughout is ``sqrt(2J) * (transverse spread) / |polarization|``,
which is 1 for a coherent state.
"""

from __future__ import annotations

import math

import numpy as np

from .optimize import scan_then_golden

#: sqrt(2J) for J = 3/2; a coherent state has squeezing parameter exactly 1.
SQRT_2J = math.sqrt(3.0)

#: Twisting-sign convention that matches the eight-level dynamics started
#: from the physical initial states (they occupy the upper doublet block,
#: whose conserved pseudo-spin projection is -1): kappa_t > 0, c_const = -1.
#: Established empirically by :func:`ohsqueeze.dynamics.resolve_twist_sign`
#: and pinned by the test suite.
MATCHED_C_CONST = -1


def _xi(var, mean):
    """sqrt(2J) * sqrt(var) / |mean| with an infinity sentinel at mean = 0."""
    var = np.asarray(var, dtype=float)
    mean = np.asarray(mean, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = SQRT_2J * np.sqrt(np.maximum(var, 0.0)) / np.abs(mean)
    out = np.where(mean == 0.0, np.inf, out)
    if out.ndim == 0:
        return float(out)
    return out


# ---------------------------------------------------------------------------
# pure twisting (kappa * Jz**2 from the x-stretched state)


def twist_envelope(kappa: float, t):
    """Variance-ellipse envelope of the twisting dynamics.

    Returns ``(growth, shear, tilt)``: the transverse variance growth
    ``1 - cos(2 kappa t)``, the y-z covariance shear ``2 sin(2 kappa t)``,
    and the ellipse tilt ``arctan2(shear, growth) / 2``, continuous in t
    near 0 where both arguments vanish.
    """
    x = 2.0 * kappa * np.asarray(t, dtype=float)
    growth = 1.0 - np.cos(x)
    shear = 2.0 * np.sin(x)
    tilt = 0.5 * np.arctan2(shear, growth)
    return growth, shear, tilt


def optimal_axis_angle(kappa: float, t):
    """Rotation angle about x that minimizes the y-quadrature variance."""
    _, _, tilt = twist_envelope(kappa, t)
    return 0.5 * np.pi - tilt


def ku_moments(kappa: float, t, n):
    """Exact twisting moments at rotation angle ``n`` about the x axis.

    Returns ``(mean_jx, var_y_n, var_z_n)`` for the state evolved under
    ``kappa * Jz**2`` from the x-stretched state.  ``mean_jx`` does not
    depend on ``n``; the rotated quadratures are
    ``J_{y,n} = exp(i n Jx) Jy exp(-i n Jx)`` and its z partner.
    """
    t = np.asarray(t, dtype=float)
    n = np.asarray(n, dtype=float)
    growth, shear, tilt = twist_envelope(kappa, t)
    amp = np.hypot(growth, shear)
    mean_jx = 1.5 * np.cos(kappa * t) ** 2
    phase = np.cos(2.0 * n + 2.0 * tilt)
    var_y = 0.75 * (1.0 + 0.5 * growth + 0.5 * amp * phase)
    var_z = 0.75 * (1.0 + 0.5 * growth - 0.5 * amp * phase)
    return mean_jx, var_y, var_z


def ku_xi(kappa: float, t, n):
    """Squeezing parameters ``(xi_y_n, xi_z_n)`` of the twisting dynamics."""
    mean_jx, var_y, var_z = ku_moments(kappa, t, n)
    return _xi(var_y, mean_jx), _xi(var_z, mean_jx)


# ---------------------------------------------------------------------------
# twisting about x plus uniform Zeeman rotation (from the z-stretched state)


def precession_rate(kappa: float, b_t: float) -> float:
    """Oscillation rate ``sqrt(b^2 - b*kappa + kappa^2)`` of the coupled sector.

    This is the Rabi rate of the two-level subspace the z-stretched state
    explores under ``-b_t Jz + kappa Jx**2``; it vanishes only when both
    rates vanish.
    """
    return float(math.hypot(b_t - 0.5 * kappa, (math.sqrt(3.0) / 2.0) * kappa))


def extremal_time(kappa: float, b_t: float) -> float:
    """First time of extremal transverse variance, ``pi / (4 P)``."""
    p = precession_rate(kappa, b_t)
    if p == 0.0:
        raise ValueError("zero precession rate: b_t and kappa both vanish")
    return 0.25 * math.pi / p


def lnl_moments(kappa: float, b_t: float, t):
    """Exact moments ``(mean_jz, var_x, var_y)`` of the uniform-field dynamics.

    ``mean_jz`` is quoted for the +z-stretched branch; evolution from the
    -z-stretched state gives the same variances and the opposite
    polarization sign, which drops out of the squeezing parameters.
    """
    p = precession_rate(kappa, b_t)
    if p == 0.0:
        raise ValueError("zero precession rate: b_t and kappa both vanish")
    t = np.asarray(t, dtype=float)
    osc = np.sin(p * t) / p
    mean_jz = 1.5 * (1.0 - (kappa * osc) ** 2)
    var_x = 0.75 * (1.0 + 2.0 * kappa * b_t * osc**2)
    var_y = 0.75 * (1.0 - 2.0 * kappa * (b_t - kappa) * osc**2)
    return mean_jz, var_x, var_y


def lnl_xi(kappa: float, b_t: float, t):
    """Squeezing parameters ``(xi_x, xi_y)`` of the uniform-field dynamics."""
    mean_jz, var_x, var_y = lnl_moments(kappa, b_t, t)
    return _xi(var_x, mean_jz), _xi(var_y, mean_jz)


def xi_y_at_ts(r):
    """y squeezing at the extremal time as a function of ``r = b_t / kappa``.

    ``2 sqrt((r^2 - r + 1)(r^2 - 2r + 2)) / (2 r^2 - 2 r + 1)``, derived for
    positive twisting strength.  Equals ``2 sqrt(2)`` at r = 0, 2 at r = 1,
    and tends to 1 from above as r grows.
    """
    r = np.asarray(r, dtype=float)
    num = 2.0 * np.sqrt((r * r - r + 1.0) * (r * r - 2.0 * r + 2.0))
    den = 2.0 * r * r - 2.0 * r + 1.0
    out = num / den
    if out.ndim == 0:
        return float(out)
    return out


def optimize_r(r_max: float = 100.0, tol: float = 1e-8) -> tuple[float, float]:
    """Minimize :func:`xi_y_at_ts` over ``[0, r_max]``.

    A 1001-point bracketing scan locates the global basin; golden-section
    refinement to ``tol`` in r finishes the job.  Returns ``(r_opt, xi_min)``.
    """
    return scan_then_golden(lambda r: xi_y_at_ts(r), 0.0, r_max, 1001, tol=tol)
