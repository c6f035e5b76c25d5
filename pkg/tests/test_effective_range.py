import math

import numpy as np
import pytest
from scipy.integrate import simpson

from scatter1d import (
    ConsistencyError,
    EffectiveRangeParams,
    NormalizationError,
    ThresholdError,
    fit_effective_range,
    free_potential,
    integral_effective_range,
    k_function,
    make_square_well,
    make_truncated_gaussian,
    two_energy_relation,
    zero_energy_solution,
)
from scatter1d import square_well as sw
from scatter1d.effective_range import ZeroEnergyPair, integral_params


def oracle(beta0, R, L):
    return sw.scattering_params(sw.SquareWellParams(beta0, R), L)


def test_closed_form_lengths_unit_well():
    assert 1 - math.tan(1.0) == pytest.approx(-0.557408, abs=1e-6)
    assert 1 + 1 / math.tan(1.0) == pytest.approx(1.642093, abs=1e-6)


@pytest.mark.parametrize("L", [0, 1])
def test_k_function_matches_closed_form(L):
    p = sw.SquareWellParams(1.0, 1.0)
    exact = sw.k_cot_delta1(p, 0.2) if L == 1 else sw.k_tan_delta0(p, 0.2)
    assert k_function(make_square_well(1.0, 1.0), L, 0.2) == pytest.approx(exact, rel=1e-9)


@pytest.mark.parametrize("L, a", [(1, -0.557408), (0, 1.642093)])
def test_fit_unit_well(L, a):
    res = fit_effective_range(make_square_well(1.0, 1.0), L)
    ref = oracle(1.0, 1.0, L)
    assert res.method == "low_k_fit"
    assert res.a == pytest.approx(a, abs=1e-6)
    assert res.r == pytest.approx(ref.r, rel=1e-5)
    d = res.fit_diagnostics
    assert d["order"] == 3 and d["n_points"] == 12
    assert d["k_min"] == pytest.approx(0.02) and d["k_max"] == pytest.approx(0.3)


def test_fit_free_odd_channel_has_zero_length():
    res = fit_effective_range(free_potential(1.0), 1)
    assert res.a == 0.0 and math.isinf(res.inv_a)


def test_fit_free_even_channel_is_at_threshold():
    # delta_0 = 0 everywhere, so 1/a_0 = 0
    with pytest.raises(ThresholdError):
        fit_effective_range(free_potential(1.0), 0)


def test_fit_near_threshold_raises():
    with pytest.raises(ThresholdError) as err:
        fit_effective_range(make_square_well(math.pi / 2 + 1e-8, 1.0), 1)
    assert abs(err.value.inv_a) < 1e-6


def test_params_validation():
    with pytest.raises(Exception):
        EffectiveRangeParams(L=1, a=1.0, r=1.0, method="guess")
    assert EffectiveRangeParams(L=0, a=math.inf, r=1.0, method="oracle").inv_a == 0.0
    assert EffectiveRangeParams(L=0, a=4.0, r=1.0, method="oracle").inv_a == 0.25


@pytest.mark.parametrize("L", [0, 1])
def test_zero_energy_interior_and_matching(L):
    beta0, R = 2.0, 1.0
    pair = zero_energy_solution(make_square_well(beta0, R), L)
    ref = oracle(beta0, R, L)
    assert pair.a == pytest.approx(ref.a, rel=1e-10)
    inside = slice(0, pair.n_R + 1)
    x = pair.x[inside]
    shape = np.sin(beta0 * x) if L == 1 else np.cos(beta0 * x)
    amp = (1 - R / pair.a) / (math.sin(beta0 * R) if L == 1 else math.cos(beta0 * R))
    assert np.max(np.abs(pair.u0[inside] - amp * shape)) < 1e-9
    outside = slice(pair.n_R, None)
    assert np.max(np.abs(pair.u0[outside] - pair.v0[outside])) < 1e-9


def test_exterior_line_crosses_zero_at_a():
    pair = zero_energy_solution(make_square_well(1.0, 1.0), 0)
    assert 1.0 - pair.a / pair.a == 0.0
    assert np.interp(pair.a, pair.x, pair.v0) == pytest.approx(0.0, abs=1e-12)


@pytest.mark.parametrize("beta0", [0.5, 1.0, 2.0, 3.0, 4.0])
@pytest.mark.parametrize("L", [0, 1])
def test_integral_matches_closed_form(beta0, L):
    res = integral_params(make_square_well(beta0, 1.0), L)
    ref = oracle(beta0, 1.0, L)
    assert res.method == "integral"
    assert res.r == pytest.approx(ref.r, rel=1e-8)


@pytest.mark.parametrize("L", [0, 1])
def test_integral_matches_fit_for_gaussian(L):
    spec = make_truncated_gaussian(3.0, 0.5, 2.0)
    a = integral_params(spec, L)
    b = fit_effective_range(spec, L)
    assert a.a == pytest.approx(b.a, rel=1e-6)
    assert a.r == pytest.approx(b.r, rel=1e-4)


def test_integrand_vanishes_beyond_range():
    pair = zero_energy_solution(make_truncated_gaussian(3.0, 0.5, 2.0), 1)
    tail = pair.v0[pair.n_R:] ** 2 - pair.u0[pair.n_R:] ** 2
    assert np.max(np.abs(tail)) < 1e-8 * np.max(pair.v0[pair.n_R:] ** 2)


@pytest.mark.parametrize("L", [0, 1])
@pytest.mark.parametrize("k1, k2", [(0.1, 0.3), (0.2, 0.9)])
def test_two_energy_relation(L, k1, k2):
    lhs, rhs = two_energy_relation(make_square_well(2.0, 1.0), L, k1, k2)
    assert lhs == pytest.approx(rhs, rel=1e-8, abs=1e-10)


def test_even_channel_coefficient_is_minus_range():
    # k tan(delta_0) = 1/a_0 - r_0 k^2 / 2 with r_0 = 2 int (v0^2 - u0^2)
    spec = make_square_well(1.0, 1.0)
    pair = zero_energy_solution(spec, 0)
    r_int = integral_effective_range(pair).r
    k = 0.01
    slope = (k_function(spec, 0, k) - 1 / pair.a) / k**2
    assert slope == pytest.approx(-r_int / 2, rel=1e-4)


def test_consistency_error_when_tail_is_corrupted():
    pair = zero_energy_solution(make_square_well(1.0, 1.0), 1)
    u0 = pair.u0.copy()
    u0[-1] += 1e-3
    bad = ZeroEnergyPair(pair.L, pair.a, pair.x, u0, pair.v0, pair.h, pair.n_R)
    with pytest.raises(ConsistencyError):
        integral_effective_range(bad)


def test_normalization_error_at_zero_length():
    # free odd channel: u0 = x, a = 0
    with pytest.raises(NormalizationError):
        zero_energy_solution(free_potential(1.0), 1)


def test_normalization_error_at_infinite_length():
    # free even channel: u0 = 1, a infinite
    with pytest.raises(NormalizationError):
        zero_energy_solution(free_potential(1.0), 0)


def test_simpson_is_the_library_rule():
    x = np.linspace(0, 1, 11)
    assert simpson(x**3, x=x) == pytest.approx(0.25)
