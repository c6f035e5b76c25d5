"""Scattering lengths and effective ranges for both channels.

Low-energy expansions used throughout::

    L=1:  k cot(delta_1) = -1/a_1 + r_1 k^2 / 2 + O(k^4)
    L=0:  k tan(delta_0) = +1/a_0 - r_0 k^2 / 2 + O(k^4)

The L=0 k^2 coefficient is taken with a minus sign so that r_0 matches the
square-well closed form and tends to R at threshold, exactly like r_1. With
that convention both ranges are r_L = 2 * int_0^inf (v0^2 - u0^2) dx0, where
u0 is the zero-energy solution normalized to v0 = 1 - x0/a_L outside R.
"""

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import simpson

from .errors import (
    ConsistencyError,
    NormalizationError,
    PoleError,
    ThresholdError,
    ValidationError,
)
from .radial import DEFAULT_H, check_channel, extract_phase_shift, integrate_radial, phase_shift

POLE_TOL = 1e-12
NEAR_THRESHOLD_INV_A = 1e-6
FIT_WINDOW = (0.02, 0.3)
FIT_POINTS = 12
FIT_ORDER = 3
# roundoff floor of the one-sided derivative at R, relative
DEGENERATE_TOL = 1e-10


@dataclass(frozen=True)
class EffectiveRangeParams:
    """a_L and r_L for one channel.

    ``method`` is one of ``"integral"``, ``"low_k_fit"`` or ``"oracle"``.
    ``a`` is ``inf`` exactly at a threshold, where ``inv_a`` is 0.
    """

    L: int
    a: float
    r: float
    method: str
    inv_a: float = math.nan
    fit_diagnostics: dict = field(default=None, compare=False)

    def __post_init__(self):
        if self.method not in ("integral", "low_k_fit", "oracle"):
            raise ValidationError(f"unknown method {self.method!r}")
        if math.isnan(self.inv_a):
            inv = 0.0 if math.isinf(self.a) else (math.inf if self.a == 0 else 1.0 / self.a)
            object.__setattr__(self, "inv_a", inv)


@dataclass(frozen=True, eq=False)
class ZeroEnergyPair:
    """Zero-energy solution u0 normalized so that u0 = v0 = 1 - x0/a beyond R."""

    L: int
    a: float
    x: np.ndarray
    u0: np.ndarray
    v0: np.ndarray
    h: float
    n_R: int


def k_function(spec, L, k, h=DEFAULT_H, x_max=None):
    """k cot(delta_1) for L=1, k tan(delta_0) for L=0, from the numerical delta."""
    L = check_channel(L)
    delta = phase_shift(spec, L, k, h=h, x_max=x_max).delta
    return _k_function_from_delta(L, k, delta)


def _k_function_from_delta(L, k, delta):
    s, c = math.sin(delta), math.cos(delta)
    if L == 1:
        if abs(s) < POLE_TOL:
            raise PoleError(f"delta_1 = {delta:.3e} is a pole of cot at k={k}; try a neighbouring k")
        return k * c / s
    if abs(c) < POLE_TOL:
        raise PoleError(f"delta_0 = {delta:.6f} is a pole of tan at k={k}; try a neighbouring k")
    return k * s / c


def low_k_grid(R, n=FIT_POINTS, window=FIT_WINDOW):
    """k values with k*R spanning ``window``, uniform in k^2."""
    lo, hi = window
    return np.sqrt(np.linspace((lo / R) ** 2, (hi / R) ** 2, n))


def fit_effective_range(
    spec, L, k_grid=None, h=DEFAULT_H, x_max=None, order=FIT_ORDER, eps=NEAR_THRESHOLD_INV_A
):
    """Least-squares fit of the k-function to a polynomial in k^2.

    ``order`` is the highest power of k^2 kept; only the constant and k^2
    coefficients are reported. Raises ThresholdError when |1/a| < ``eps``.
    """
    L = check_channel(L)
    R = spec.effective_range_R
    ks = low_k_grid(R) if k_grid is None else np.asarray(k_grid, dtype=float)
    if len(ks) < 5:
        raise ValidationError("effective-range fit needs at least 5 k points")
    if order < 1 or len(ks) <= order:
        raise ValidationError(f"fit order {order} needs more than {order} points")

    deltas = [phase_shift(spec, L, float(k), h=h, x_max=x_max).delta for k in ks]
    if L == 1 and all(abs(math.sin(d)) < DEGENERATE_TOL for d in deltas):
        # no scattering at all: k cot(delta_1) is infinite, the a -> 0 limit
        return EffectiveRangeParams(
            L=1, a=0.0, r=math.nan, method="low_k_fit", inv_a=math.inf,
            fit_diagnostics={"note": "delta_1 vanishes on the whole grid"},
        )
    y = np.array([_k_function_from_delta(L, k, d) for k, d in zip(ks, deltas)])

    design = np.vander(ks**2, order + 1, increasing=True)
    coef, _, _, _ = np.linalg.lstsq(design, y, rcond=None)
    residual = float(np.linalg.norm(design @ coef - y))
    c0, c1 = float(coef[0]), float(coef[1])
    diagnostics = {
        "k_min": float(ks[0]),
        "k_max": float(ks[-1]),
        "n_points": int(len(ks)),
        "order": int(order),
        "residual_norm": residual,
        "condition": float(np.linalg.cond(design)),
        "coefficients": [float(c) for c in coef],
    }
    inv_a = -c0 if L == 1 else c0
    if abs(inv_a) < eps:
        raise ThresholdError(
            f"|1/a_{L}| = {abs(inv_a):.3e} below {eps:g}: scattering length diverges", inv_a=inv_a
        )
    r = 2.0 * c1 if L == 1 else -2.0 * c1
    return EffectiveRangeParams(
        L=L, a=1.0 / inv_a, r=r, method="low_k_fit", inv_a=inv_a, fit_diagnostics=diagnostics
    )


def zero_energy_solution(spec, L, h=DEFAULT_H, x_max=None):
    """Solve at k = 0 and normalize to v0 = 1 - x0/a outside the range.

    The scattering length is read off the exterior straight line,
    a = R - u(R)/u'(R).
    """
    L = check_channel(L)
    sol = integrate_radial(spec, L, 0.0, h=h, x_max=x_max)
    R = sol.R
    u_R, du_R = sol.u_R, sol.du_R
    if abs(du_R) * R <= DEGENERATE_TOL * abs(u_R):
        raise NormalizationError(f"u'(R) = 0: a_{L} is infinite (bound-state threshold)")
    a = R - u_R / du_R
    if abs(a) <= DEGENERATE_TOL * R:
        raise NormalizationError(f"a_{L} = 0: 1 - x0/a cannot be formed")
    scale = -1.0 / (a * du_R)
    return ZeroEnergyPair(
        L=L, a=a, x=sol.x, u0=scale * sol.u, v0=1.0 - sol.x / a, h=sol.h, n_R=sol.n_R
    )


def integral_effective_range(pair, tol=1e-8):
    """r_L = 2 * int_0^R (v0^2 - u0^2) dx0 by composite Simpson on the solver grid.

    The integrand vanishes beyond R, so the integral stops there.
    """
    outside = slice(pair.n_R, None)
    scale = max(1.0, float(np.max(np.abs(pair.v0[outside]))))
    mismatch = float(np.max(np.abs(pair.u0[outside] - pair.v0[outside])))
    if mismatch > tol * scale:
        raise ConsistencyError(f"u0 departs from 1 - x0/a beyond R by {mismatch:.3e}")
    inside = slice(0, pair.n_R + 1)
    integrand = pair.v0[inside] ** 2 - pair.u0[inside] ** 2
    r = 2.0 * float(simpson(integrand, x=pair.x[inside]))
    return EffectiveRangeParams(L=pair.L, a=pair.a, r=r, method="integral")


def integral_params(spec, L, h=DEFAULT_H, x_max=None):
    return integral_effective_range(zero_energy_solution(spec, L, h=h, x_max=x_max))


def normalized_interior(spec, L, k, h=DEFAULT_H, x_max=None):
    """Scattering solution on [0, R] normalized to chi(kx+delta)/chi(delta).

    Returns ``(x, u, v, delta)`` where chi is sin (L=1) or cos (L=0) and v is
    the free solution with the same asymptote.
    """
    L = check_channel(L)
    sol = integrate_radial(spec, L, k, h=h, x_max=x_max)
    delta = extract_phase_shift(sol).delta
    if L == 1:
        chi, dchi = math.sin, math.cos
    else:
        chi, dchi = math.cos, lambda t: -math.sin(t)
    norm = chi(delta)
    if abs(norm) < POLE_TOL:
        raise PoleError(f"chi(delta) vanishes at k={k}")
    R = sol.R
    v_R = chi(k * R + delta) / norm
    dv_R = k * dchi(k * R + delta) / norm
    k2 = k * k
    scale = (v_R * sol.u_R + dv_R * sol.du_R / k2) / (sol.u_R**2 + sol.du_R**2 / k2)
    x = sol.x[: sol.n_R + 1]
    u = scale * sol.u[: sol.n_R + 1]
    if L == 1:
        v = np.sin(k * x + delta) / norm
    else:
        v = np.cos(k * x + delta) / norm
    return x, u, v, delta


def two_energy_relation(spec, L, k1, k2, h=DEFAULT_H):
    """Both sides of the two-energy Wronskian identity.

    L=1: k2 cot d(k2) - k1 cot d(k1) = (k2^2 - k1^2) int (v1 v2 - u1 u2)
    L=0: k2 tan d(k2) - k1 tan d(k1) = -(k2^2 - k1^2) int (v1 v2 - u1 u2)

    Returns ``(lhs, rhs)``.
    """
    L = check_channel(L)
    x, u1, v1, d1 = normalized_interior(spec, L, k1, h=h)
    x2, u2, v2, d2 = normalized_interior(spec, L, k2, h=h)
    if len(x) != len(x2):
        raise ConsistencyError("the two solutions do not share a grid")
    lhs = _k_function_from_delta(L, k2, d2) - _k_function_from_delta(L, k1, d1)
    overlap = float(simpson(v1 * v2 - u1 * u2, x=x))
    sign = 1.0 if L == 1 else -1.0
    return lhs, sign * (k2 * k2 - k1 * k1) * overlap
