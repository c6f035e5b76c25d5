import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from scatter1d import (
    DomainError,
    amplitudes_from_phase_shifts,
    asymptotic_waveform,
    optical_theorem_residual,
    partial_wave_waveform,
)

phases = st.floats(-math.pi / 2, math.pi / 2)
momenta = st.floats(0.01, 10.0)


def test_no_scattering():
    a = amplitudes_from_phase_shifts(1.0, 0.0, 0.0)
    assert a.sigma_tot == 0.0
    assert a.T2 == pytest.approx(1.0)
    assert a.R2 == 0.0


def test_reflection_extremes():
    # delta0 = delta1 gives f(-) = 0, so no reflection
    a = amplitudes_from_phase_shifts(2.0, 0.7, 0.7)
    assert a.R2 == pytest.approx(0.0, abs=1e-30)
    assert a.T2 == pytest.approx(1.0)
    # delta0 - delta1 = pi/2 reflects everything
    b = amplitudes_from_phase_shifts(2.0, 0.25 + math.pi / 2, 0.25)
    assert b.T2 == pytest.approx(0.0, abs=1e-15)
    assert b.R2 == pytest.approx(1.0)


def test_partial_amplitude_values():
    a = amplitudes_from_phase_shifts(0.5, math.pi / 2, math.pi / 6)
    assert a.f0 == pytest.approx(0.5j)
    assert a.f1 == pytest.approx(0.5 * np.exp(1j * math.pi / 6) * 0.5)
    assert a.f_L == (a.f0, a.f1)


@settings(max_examples=200)
@given(momenta, phases, phases)
def test_optical_theorem(k, d0, d1):
    a = amplitudes_from_phase_shifts(k, d0, d1)
    assert abs(optical_theorem_residual(a)) <= 1e-12 * max(1.0, a.sigma_tot)


@settings(max_examples=200)
@given(momenta, phases, phases)
def test_unitarity_and_closed_forms(k, d0, d1):
    a = amplitudes_from_phase_shifts(k, d0, d1)
    assert a.T2 + a.R2 == pytest.approx(1.0, abs=1e-13)
    assert a.R2 == pytest.approx(math.sin(d0 - d1) ** 2, abs=1e-13)
    assert a.T2 == pytest.approx(math.cos(d0 - d1) ** 2, abs=1e-13)
    assert a.sigma_tot == pytest.approx(a.sigma_tot_partial, abs=1e-12)


@settings(max_examples=100)
@given(st.floats(0.05, 5.0), phases, phases, st.floats(5.0, 50.0), st.booleans())
def test_waveform_routes_agree(k, d0, d1, x0, left):
    a = amplitudes_from_phase_shifts(k, d0, d1)
    x = -x0 if left else x0
    assert abs(asymptotic_waveform(a, x) - partial_wave_waveform(a, x)) < 1e-12


def test_waveform_broadcasts():
    a = amplitudes_from_phase_shifts(np.array([0.5, 1.0]), np.array([0.1, 0.2]), np.array([0.3, 0.4]))
    x = np.array([-7.0, 9.0])
    assert asymptotic_waveform(a, x).shape == (2,)
    assert np.allclose(asymptotic_waveform(a, x), partial_wave_waveform(a, x), atol=1e-13)


def test_waveform_rejects_origin():
    a = amplitudes_from_phase_shifts(1.0, 0.2, 0.1)
    with pytest.raises(DomainError):
        asymptotic_waveform(a, 0.0)
    with pytest.raises(DomainError):
        partial_wave_waveform(a, np.array([1.0, 0.0]))


@pytest.mark.parametrize("k", [0.0, -1.0])
def test_rejects_nonpositive_k(k):
    with pytest.raises(DomainError):
        amplitudes_from_phase_shifts(k, 0.1, 0.1)
