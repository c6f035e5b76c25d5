"""Numerov integration of the half-line radial equation and phase-shift extraction.

The channel equation is u'' = (U(x0) - k^2) u on x0 >= 0. Channel L = 0 is
the symmetric solution (u'(0) = 0), L = 1 the antisymmetric one (u(0) = 0).
Beyond the range R the solution is matched to cos(k x0 + delta_0) or
sin(k x0 + delta_1) respectively.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, MatchingError, ResolutionError, StabilityError, ValidationError

DEFAULT_H = 1e-3
MIN_INTERIOR_STEPS = 8
_UNDERFLOW = 1e-280
# one-sided first derivative from u[n], u[n-1], ..., u[n-7]; error O(h^7)
_BACKWARD8 = np.array(
    [363.0 / 140.0, -7.0, 21.0 / 2.0, -35.0 / 3.0, 35.0 / 4.0, -21.0 / 5.0, 7.0 / 6.0, -1.0 / 7.0]
)


def check_channel(L):
    if L not in (0, 1):
        raise ValidationError(f"channel must be 0 or 1, got {L!r}")
    return int(L)


def reduce_phase(delta):
    """Map an angle onto (-pi/2, pi/2] modulo pi."""
    d = delta - math.pi * round(delta / math.pi)
    if d <= -math.pi / 2:
        d += math.pi
    return d


def default_x_max(R, k):
    """Range plus one asymptotic wavelength (at least one length unit)."""
    if k <= 0:
        return R + 1.0
    return R + max(1.0, 2.0 * math.pi / k)


def default_match_point(R, k):
    return R + 0.25 * max(1.0, 2.0 * math.pi / k)


def aligned_step(R, h):
    """Largest step <= h that puts R exactly on the grid, and R's index."""
    n_R = max(math.ceil(R / h - 1e-9), MIN_INTERIOR_STEPS)
    return R / n_R, n_R


@dataclass(frozen=True, eq=False)
class RadialSolution:
    """Channel wave function sampled on a uniform grid from 0 to x_max.

    ``h`` is the step actually used (aligned so that ``x[n_R] == R``), and
    ``du_R`` the slope at R carried across the edge of the potential.
    """

    L: int
    k: float
    x: np.ndarray
    u: np.ndarray
    h: float
    R: float
    n_R: int
    du_R: float

    @property
    def x_max(self):
        return float(self.x[-1])

    @property
    def u_R(self):
        return float(self.u[self.n_R])

    def derivative(self, i):
        """Five-point centered first derivative at grid index ``i``."""
        if i < 2 or i > len(self.u) - 3:
            raise DomainError(f"index {i} too close to the grid edge for a 5-point stencil")
        u = self.u
        return (u[i - 2] - 8.0 * u[i - 1] + 8.0 * u[i + 1] - u[i + 2]) / (12.0 * self.h)


@dataclass(frozen=True)
class PhaseShiftRecord:
    k: float
    L: int
    delta: float
    branch_offset: int = 0
    x_match: float = math.nan

    @property
    def raw_delta(self):
        return self.delta - self.branch_offset * math.pi


def _numerov_interior(w, f, L, h):
    """Numerov on the interior grid in summed form.

    With y = w u the scheme reads y[n+1] - 2 y[n] + y[n-1] = h^2 f[n] u[n];
    carrying the first difference y[n+1] - y[n] keeps rounding from
    accumulating as a systematic phase drift on fine grids.
    """
    n = len(w)
    h2 = h * h
    u = [0.0] * n
    if L == 1:
        u[0], u[1] = 0.0, h
    else:
        # even parity: u(-h) = u(h) closes the scheme at x0 = 0
        u[0] = 1.0
        u[1] = (12.0 - 10.0 * w[0]) / (2.0 * w[1])
    y = w[1] * u[1]
    d = y - w[0] * u[0]
    u_cur = u[1]
    for i in range(1, n - 1):
        d += h2 * f[i] * u_cur
        y += d
        u_cur = y / w[i + 1]
        u[i + 1] = u_cur
    return np.array(u)


def _numerov_free(u_R, du_R, k, h, m):
    """Numerov recurrence with U = 0, solved in closed form for steps ``m``.

    The first step beyond R is the exact free propagation of (u_R, du_R).
    """
    if k == 0.0:
        return u_R + m * (h * du_R)
    s = (h * k) ** 2
    one_minus_cos_theta = 0.5 * s / (1.0 + s / 12.0)
    theta = 2.0 * math.asin(math.sqrt(0.5 * one_minus_cos_theta))
    one_minus_cos_kh = 2.0 * math.sin(0.5 * h * k) ** 2
    # u_1 - u_R cos(theta), arranged to avoid cancelling O(1) terms
    lead = u_R * (one_minus_cos_theta - one_minus_cos_kh) + du_R * math.sin(h * k) / k
    b = lead / math.sin(theta)
    phase = m * theta
    return u_R * np.cos(phase) + b * np.sin(phase)


def integrate_radial(spec, L, k, h=DEFAULT_H, x_max=None):
    """Integrate the channel-``L`` radial equation at wave number ``k``.

    The grid step is reduced, if needed, so that the range R is a grid node;
    the interior and the free region are joined there through (u, u').
    Normalization is arbitrary: u(h) = h for L = 1, u(0) = 1 for L = 0.
    """
    L = check_channel(L)
    k = float(k)
    if not (k >= 0 and math.isfinite(k)):
        raise DomainError(f"wave number must be finite and >= 0, got {k}")
    if not h > 0:
        raise DomainError(f"step must be positive, got {h}")
    R = spec.effective_range_R
    if x_max is None:
        x_max = default_x_max(R, k)
    if x_max <= R:
        raise DomainError(f"x_max={x_max} must exceed the potential range R={R}")

    step, n_R = aligned_step(R, h)
    n_last = max(math.ceil(x_max / step - 1e-9), n_R + 1)

    x_in = step * np.arange(n_R + 1)
    f = spec(x_in) - k * k
    worst = step * math.sqrt(max(float(np.max(np.abs(f))), k * k))
    if worst > 0.5:
        raise StabilityError(
            f"h*sqrt|U - k^2| = {worst:.3g} exceeds 0.5; use a step below {0.5 * step / worst:.3g}"
        )
    w = 1.0 - step * step * f / 12.0
    u_in = _numerov_interior(w.tolist(), f.tolist(), L, step)
    du_R = float(np.dot(_BACKWARD8, u_in[-1:-9:-1])) / step

    m = np.arange(1, n_last - n_R + 1, dtype=float)
    u_out = _numerov_free(float(u_in[-1]), du_R, k, step, m)

    u = np.concatenate([u_in, u_out])
    x = step * np.arange(n_last + 1)
    return RadialSolution(L=L, k=k, x=x, u=u, h=step, R=R, n_R=n_R, du_R=du_R)


def _phase_at(sol, i):
    k = sol.k
    u = float(sol.u[i])
    du = sol.derivative(i)
    x_m = float(sol.x[i])
    if sol.L == 1:
        # u ~ sin(k x + delta): tan(k x + delta) = k u / u'
        total = math.atan2(k * u, du)
    else:
        # u ~ cos(k x + delta): tan(k x + delta) = -u' / (k u)
        total = math.atan2(-du, k * u)
    return reduce_phase(total - k * x_m)


def extract_phase_shift(sol, x_match=None):
    """Match ``sol`` to the free asymptote beyond R and return delta_L.

    The log-derivative u'/u at the match point (5-point stencil) fixes
    k x_m + delta modulo pi. The result lies in (-pi/2, pi/2].
    """
    k = sol.k
    if not k > 0:
        raise DomainError("phase shift needs k > 0")
    if x_match is None:
        x_match = default_match_point(sol.R, k)
    first = sol.n_R + 2
    last = len(sol.u) - 3
    if last < first:
        raise MatchingError("grid does not extend far enough beyond R to match")

    i0 = min(max(int(round(x_match / sol.h)), first), last)
    quarter = int(round(0.5 * math.pi / k / sol.h))
    candidates = [i0]
    for i in (i0 + quarter, i0 - quarter):
        if first <= i <= last:
            candidates.append(i)
            break
    for i in candidates:
        if abs(sol.u[i]) < _UNDERFLOW:
            continue
        return PhaseShiftRecord(k=k, L=sol.L, delta=_phase_at(sol, i), x_match=float(sol.x[i]))
    raise MatchingError(f"wave function vanishes at every match point tried (k={k})")


def phase_shift(spec, L, k, h=DEFAULT_H, x_max=None, x_match=None):
    """Solve and match in one call; returns a PhaseShiftRecord."""
    sol = integrate_radial(spec, L, k, h=h, x_max=x_max)
    return extract_phase_shift(sol, x_match=x_match)


def unwrap_records(records, max_jump=math.pi / 3):
    """Make delta continuous in k, anchored so the highest k is in (-pi/2, pi/2]."""
    out = [None] * len(records)
    top = records[-1]
    out[-1] = PhaseShiftRecord(top.k, top.L, top.raw_delta, 0, top.x_match)
    prev = out[-1].delta
    for i in range(len(records) - 2, -1, -1):
        rec = records[i]
        raw = rec.raw_delta
        offset = int(round((prev - raw) / math.pi))
        delta = raw + offset * math.pi
        if abs(delta - prev) > max_jump:
            raise ResolutionError(
                f"phase jumps by {abs(delta - prev):.3f} rad between k={rec.k:g} and "
                f"k={records[i + 1].k:g}; refine the k grid"
            )
        out[i] = PhaseShiftRecord(rec.k, rec.L, delta, offset, rec.x_match)
        prev = delta
    return out


def sweep_phase_shifts(spec, L, k_grid, h=DEFAULT_H, x_max=None, max_jump=math.pi / 3):
    """Phase shifts over an ascending k grid, continuous in k, delta(inf) -> 0.

    With ``x_max=None`` each k gets its own default grid length.
    """
    L = check_channel(L)
    ks = np.asarray(k_grid, dtype=float)
    if ks.ndim != 1 or len(ks) < 1:
        raise ValidationError("k_grid must be a non-empty 1-D sequence")
    if np.any(ks <= 0):
        raise DomainError("all k must be positive")
    if np.any(np.diff(ks) <= 0):
        raise ValidationError("k_grid must be strictly ascending")
    raw = [phase_shift(spec, L, float(k), h=h, x_max=x_max) for k in ks]
    return unwrap_records(raw, max_jump=max_jump)
