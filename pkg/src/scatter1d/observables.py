"""Amplitudes, cross sections and transmission/reflection from two phase shifts.

The wave function is taken asymptotically as
exp(ikx) + (i/k) f(eps) exp(ik|x|) with eps = sign(x). Reading it on the two
half-lines gives T = 1 + (i/k) f(+) and R = (i/k) f(-). Note that
sigma_+ = |f(+)|^2/k^2 is the forward scattered flux, not |T|^2.

All functions broadcast over numpy arrays.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DomainError


@dataclass(frozen=True)
class AmplitudeSet:
    k: object
    delta0: object
    delta1: object
    f0: object
    f1: object
    f_plus: object
    f_minus: object
    sigma_plus: object
    sigma_minus: object
    sigma_tot: object
    sigma_tot_partial: object
    T_coef: object
    R_coef: object

    @property
    def f_L(self):
        return (self.f0, self.f1)

    @property
    def T2(self):
        return np.abs(self.T_coef) ** 2

    @property
    def R2(self):
        return np.abs(self.R_coef) ** 2


def partial_amplitude(k, delta):
    """f_L = k exp(i delta_L) sin(delta_L)."""
    return k * np.exp(1j * delta) * np.sin(delta)


def amplitudes_from_phase_shifts(k, delta0, delta1):
    k = np.asarray(k, dtype=float)
    if np.any(k <= 0):
        raise DomainError("amplitudes need k > 0")
    delta0 = np.asarray(delta0, dtype=float)
    delta1 = np.asarray(delta1, dtype=float)
    f0 = partial_amplitude(k, delta0)
    f1 = partial_amplitude(k, delta1)
    f_plus = f0 + f1
    f_minus = f0 - f1
    sigma_plus = np.abs(f_plus) ** 2 / k**2
    sigma_minus = np.abs(f_minus) ** 2 / k**2
    return AmplitudeSet(
        k=k,
        delta0=delta0,
        delta1=delta1,
        f0=f0,
        f1=f1,
        f_plus=f_plus,
        f_minus=f_minus,
        sigma_plus=sigma_plus,
        sigma_minus=sigma_minus,
        sigma_tot=sigma_plus + sigma_minus,
        sigma_tot_partial=2.0 * (np.sin(delta0) ** 2 + np.sin(delta1) ** 2),
        T_coef=1.0 + 1j * f_plus / k,
        R_coef=1j * f_minus / k,
    )


def optical_theorem_residual(a):
    """sigma_tot - (2/k) Im f(+); zero up to rounding."""
    return a.sigma_tot - 2.0 * np.imag(a.f_plus) / a.k


def _signed_position(x):
    x = np.asarray(x, dtype=float)
    if np.any(x == 0):
        raise DomainError("direction eps = sign(x) is undefined at x = 0")
    return x, np.sign(x)


def asymptotic_waveform(a, x):
    """exp(ikx) + (i/k) f(eps) exp(ik|x|), eps = sign(x)."""
    x, eps = _signed_position(x)
    k = a.k
    f = np.where(eps > 0, a.f_plus, a.f_minus)
    return np.exp(1j * k * x) + 1j * f / k * np.exp(1j * k * np.abs(x))


def partial_wave_waveform(a, x):
    """sum_L eps^L A_L cos(k|x| + L pi/2 + delta_L), A_L = (-i)^L exp(i delta_L)."""
    x, eps = _signed_position(x)
    k, x0 = a.k, np.abs(x)
    even = np.exp(1j * a.delta0) * np.cos(k * x0 + a.delta0)
    odd = -1j * np.exp(1j * a.delta1) * np.cos(k * x0 + 0.5 * np.pi + a.delta1)
    return even + eps * odd
