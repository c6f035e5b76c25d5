"""Bound-state counts per channel: zero-energy node counting and Levinson's theorem.

For L=1 Levinson's theorem is used in its three-dimensional s-wave form,
delta_1(0) - delta_1(inf) = n pi. For L=0 in one dimension the zero-energy
limit of delta_0 sits half a period lower, delta_0(0) - delta_0(inf) =
(n - 1/2) pi for a generic well; that form is reported but not enforced.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, GridError, ScatterError, ValidationError
from .radial import DEFAULT_H, check_channel, integrate_radial, sweep_phase_shifts

LEVINSON_TOL = 0.2
ANCHOR_TOL = 0.02


class InconsistencyError(ScatterError):
    """Levinson residual too large for the sweep to be trusted."""


@dataclass(frozen=True)
class SpectrumReport:
    L: int
    n_bound: int
    method: str
    levinson_residual: float = math.nan
    delta_low: float = math.nan
    delta_high: float = math.nan


def count_bound_states_nodes(spec, L, h=DEFAULT_H, x_max=None):
    """Count sign changes of the zero-energy solution on (0, inf).

    Beyond the range the solution is a straight line, so a node past the end
    of the grid is detected from u and u' there.
    """
    L = check_channel(L)
    sol = integrate_radial(spec, L, 0.0, h=h, x_max=x_max)
    u = sol.u[1:] if L == 1 else sol.u
    signs = np.sign(u)
    signs = signs[signs != 0]
    nodes = int(np.count_nonzero(signs[1:] != signs[:-1]))

    u_end = float(sol.u[-1])
    slope = sol.du_R
    if u_end * slope < 0:
        nodes += 1
        root = sol.x_max - u_end / slope
        if root - sol.x_max < sol.h:
            raise GridError(f"node at x0={root:.6g} lies within h of x_max; extend the grid")
    elif abs(u_end) < abs(slope) * sol.h:
        raise GridError("node within h of x_max; extend the grid")
    return SpectrumReport(L=L, n_bound=nodes, method="node_count")


def levinson_check(records, R=None, enforce=None):
    """Bound-state count from the phase change between the lowest and highest k.

    ``records`` must be an unwrapped ascending-k sweep. When ``R`` is given
    the window conditions k_min R <= 0.01 and k_max R >= 50 are checked.
    For L=1 a residual above 0.2 rad raises InconsistencyError; L=0 is only
    reported unless ``enforce=True``.
    """
    if len(records) < 2:
        raise ValidationError("Levinson check needs at least two records")
    L = records[0].L
    if any(r.L != L for r in records):
        raise ValidationError("records mix channels")
    ks = [r.k for r in records]
    if any(b <= a for a, b in zip(ks, ks[1:])):
        raise ValidationError("records must be in ascending k")
    if R is not None and (ks[0] * R > 0.01 or ks[-1] * R < 50):
        raise DomainError(
            f"k window [{ks[0]:g}, {ks[-1]:g}] too narrow for R={R}: need k_min R <= 0.01, k_max R >= 50"
        )
    low, high = records[0].delta, records[-1].delta
    change = (low - high) / math.pi
    shift = 0.0 if L == 1 else 0.5
    n = int(math.floor(change + shift + 0.5))
    residual = abs(low - high - (n - shift) * math.pi)
    if enforce is None:
        enforce = L == 1
    if enforce and residual > LEVINSON_TOL:
        raise InconsistencyError(
            f"Levinson residual {residual:.3f} rad exceeds {LEVINSON_TOL}; "
            "refine the k grid or widen the k range"
        )
    return SpectrumReport(
        L=L, n_bound=max(n, 0), method="levinson", levinson_residual=residual,
        delta_low=low, delta_high=high,
    )


def levinson_grid(k_min, k_max, n=400):
    return np.geomspace(k_min, k_max, n)


def levinson_count(spec, L, k_min=None, k_max=None, n=400, h=DEFAULT_H, max_extend=6):
    """Sweep delta_L over a log grid and apply ``levinson_check``.

    k_max is doubled until |delta(k_max)| < 0.02, the finite stand-in for
    delta(inf) = 0.
    """
    L = check_channel(L)
    R = spec.effective_range_R
    k_min = 0.005 / R if k_min is None else k_min
    k_max = 100.0 / R if k_max is None else k_max
    for _ in range(max_extend + 1):
        records = sweep_phase_shifts(spec, L, levinson_grid(k_min, k_max, n), h=h)
        if abs(records[-1].delta) < ANCHOR_TOL:
            break
        k_max *= 2.0
        n += n // 4
        h = min(h, 0.2 / k_max)
    return levinson_check(records)
