"""Closed-form scattering for the symmetric square well U = -beta0^2, x0 < R.

Every formula here is written with sines and cosines instead of tangents, so
nothing becomes inf - inf when beta*R or k*R crosses an odd multiple of pi/2.
The algebra is the same as the tangent forms; tests check both agree.
"""

import math
from dataclasses import dataclass

from .effective_range import EffectiveRangeParams
from .errors import DomainError, PoleError, ThresholdError, ValidationError
from .radial import check_channel, reduce_phase

POLE_TOL = 1e-14
THRESHOLD_TOL = 1e-12


@dataclass(frozen=True)
class SquareWellParams:
    beta0: float
    R: float

    def __post_init__(self):
        if not (self.beta0 > 0 and math.isfinite(self.beta0)):
            raise ValidationError(f"beta0 must be positive, got {self.beta0}")
        if not (self.R > 0 and math.isfinite(self.R)):
            raise ValidationError(f"R must be positive, got {self.R}")

    @classmethod
    def from_potential(cls, well):
        return cls(beta0=well.beta0, R=well.R)

    def beta(self, k):
        return math.sqrt(k * k + self.beta0 * self.beta0)

    @property
    def strength(self):
        """The dimensionless product beta0 * R."""
        return self.beta0 * self.R


def _check_k(k):
    if not k > 0:
        raise DomainError(f"k must be positive, got {k}")


def _l1_terms(p, k):
    # k cot(delta_1) = num / den, both multiplied through by cos(beta R) cos(k R)
    b = p.beta(k)
    sb, cb = math.sin(b * p.R), math.cos(b * p.R)
    sk, ck = math.sin(k * p.R), math.cos(k * p.R)
    num = k * k * sb * sk + k * b * cb * ck
    t1, t2 = k * sb * ck, b * cb * sk
    return num, t1 - t2, abs(t1) + abs(t2)


def _l0_terms(p, k):
    # k tan(delta_0) = num / den, same rescaling
    b = p.beta(k)
    sb, cb = math.sin(b * p.R), math.cos(b * p.R)
    sk, ck = math.sin(k * p.R), math.cos(k * p.R)
    num = k * b * sb * ck - k * k * sk * cb
    t1, t2 = k * cb * ck, b * sb * sk
    return num, t1 + t2, abs(t1) + abs(t2)


def k_cot_delta1(p, k):
    """k cot(delta_1) from log-derivative matching at x0 = R."""
    _check_k(k)
    num, den, scale = _l1_terms(p, k)
    if abs(den) <= POLE_TOL * scale:
        raise PoleError(f"delta_1 = 0 mod pi at k={k}: k cot(delta_1) has a pole")
    return num / den


def k_tan_delta0(p, k):
    """k tan(delta_0) from log-derivative matching at x0 = R."""
    _check_k(k)
    num, den, scale = _l0_terms(p, k)
    if abs(den) <= POLE_TOL * scale:
        raise PoleError(f"delta_0 = pi/2 mod pi at k={k}: k tan(delta_0) has a pole")
    return num / den


def phase_shift(p, L, k):
    """Exact delta_L(k) in (-pi/2, pi/2], by inverting the closed forms."""
    L = check_channel(L)
    _check_k(k)
    if L == 1:
        num, den, _ = _l1_terms(p, k)
        return reduce_phase(math.atan2(k * den, num))
    num, den, _ = _l0_terms(p, k)
    return reduce_phase(math.atan2(num, k * den))


def inverse_scattering_length(p, L):
    """1/a_L, finite through the thresholds where a_L diverges."""
    L = check_channel(L)
    x = p.strength
    s, c = math.sin(x), math.cos(x)
    if L == 1:
        # a_1 = R - tan(beta0 R)/beta0
        den = x * c - s
        if den == 0.0:
            return math.inf
        return p.beta0 * c / den
    # a_0 = R + 1/(beta0 tan(beta0 R))
    return p.beta0 * s / (x * s + c)


def scattering_length(p, L):
    inv = inverse_scattering_length(p, L)
    if inv == 0.0:
        return math.inf
    return 1.0 / inv


def effective_range(p, L):
    """Closed-form r_L; tends to R at every bound-state threshold.

    Uses the tangent formulas rearranged in terms of 1/a_L, which stay finite
    at the thresholds.
    """
    L = check_channel(L)
    R, b0 = p.R, p.beta0
    x = p.strength
    s, c = math.sin(x), math.cos(x)
    ia = inverse_scattering_length(p, L)
    head = 2.0 * R - 2.0 * R * R * ia + 2.0 * R**3 * ia * ia / 3.0
    if L == 1:
        d = x * c - s
        return head + (s * c / b0 - R) / (d * d)
    e = x * s + c
    return head - (s * c / b0 + R) / (e * e)


def scattering_params(p, L):
    """a_L and r_L from the closed forms, ``method='oracle'``."""
    L = check_channel(L)
    ia = inverse_scattering_length(p, L)
    if abs(ia) * p.R < THRESHOLD_TOL:
        return EffectiveRangeParams(L=L, a=math.inf, r=p.R, inv_a=0.0, method="oracle")
    return EffectiveRangeParams(
        L=L, a=1.0 / ia, r=effective_range(p, L), inv_a=ia, method="oracle"
    )


def threshold_strengths(L, upto):
    """Values of beta0*R in (0, upto] where a new channel-L bound state appears."""
    L = check_channel(L)
    out = []
    n = 0
    while True:
        t = (n + 0.5) * math.pi if L == 1 else (n + 1) * math.pi
        if t > upto:
            return out
        out.append(t)
        n += 1


def bound_state_count(p, L):
    """Number of channel-L bound states from the beta0*R windows.

    L=1: n states for (2n-1)pi/2 < beta0 R < (2n+1)pi/2.
    L=0: n states for (n-1)pi < beta0 R < n pi, so always at least one.
    """
    L = check_channel(L)
    x = p.strength
    for t in threshold_strengths(L, x + 1.0):
        if abs(x - t) <= THRESHOLD_TOL * max(1.0, t):
            raise ThresholdError(f"beta0*R = {x} sits on the channel-{L} threshold {t}", inv_a=0.0)
    if L == 1:
        return int(math.floor(x / math.pi + 0.5))
    return int(math.ceil(x / math.pi))
