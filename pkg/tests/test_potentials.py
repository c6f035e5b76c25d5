import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from scatter1d import (
    DomainError,
    SquareWell,
    Tabulated,
    ValidationError,
    evaluate,
    free_potential,
    make_square_well,
    make_truncated_gaussian,
    potential_from_json,
    potential_to_json,
)


def test_square_well_inside_and_outside():
    well = make_square_well(1.0, 1.0)
    assert evaluate(well, 0.5) == -1.0
    assert evaluate(well, 2.0) == 0.0


def test_square_well_edge_takes_interior_value():
    assert evaluate(make_square_well(1.0, 1.0), 1.0) == -1.0


def test_tabulated_midpoint():
    assert evaluate(Tabulated(((0, -2), (1, 0))), 0.5) == pytest.approx(-1.0)


def test_make_square_well_fields():
    well = make_square_well(1.0, 1.0)
    assert isinstance(well, SquareWell)
    assert well.beta0 == 1.0 and well.depth == 1.0
    assert well.effective_range_R == 1.0
    assert evaluate(make_square_well(2.0, 0.5), 0.4) == -4.0


@pytest.mark.parametrize("beta0, R", [(0.0, 1.0), (-1.0, 1.0), (1.0, 0.0), (1.0, -2.0)])
def test_make_square_well_rejects_nonpositive(beta0, R):
    with pytest.raises(ValidationError):
        make_square_well(beta0, R)


def test_negative_position_is_a_domain_error():
    with pytest.raises(DomainError):
        evaluate(make_square_well(1.0, 1.0), -0.1)
    with pytest.raises(DomainError):
        evaluate(Tabulated(((0, -1), (1, 0))), np.array([0.2, -1e-9]))


@pytest.mark.parametrize(
    "spec",
    [
        make_square_well(2.0, 1.0),
        Tabulated(((0, -3), (0.4, -1), (1.5, -0.5))),
        make_truncated_gaussian(4.0, 0.5, 2.0),
        free_potential(1.0),
    ],
)
def test_zero_beyond_range(spec):
    R = spec.effective_range_R
    x = R + np.logspace(-12, 4, 200)
    assert np.all(evaluate(spec, x) == 0.0)


def test_square_well_is_piecewise_constant():
    well = make_square_well(1.7, 0.8)
    x = np.linspace(0, 3, 1001)
    assert set(np.unique(evaluate(well, x))) == {-1.7**2, 0.0}


@given(st.floats(0.0, 1.5))
def test_tabulated_exact_at_nodes_and_continuous(x):
    spec = Tabulated(((0, -3), (0.4, -1), (1.5, -0.5)))
    for xn, un in spec.nodes:
        assert evaluate(spec, xn) == un
    eps = 1e-9
    lo, hi = max(x - eps, 0.0), min(x + eps, 1.5)
    # steepest segment has slope 5
    assert abs(evaluate(spec, hi) - evaluate(spec, lo)) <= 5 * (hi - lo) + 1e-15


@pytest.mark.parametrize(
    "nodes",
    [((0, 1),), ((0.1, 1), (1, 0)), ((0, 1), (0, 2)), ((0, 1), (1, math.inf))],
)
def test_tabulated_validation(nodes):
    with pytest.raises(ValidationError):
        Tabulated(nodes)


def test_array_evaluation_matches_scalar():
    spec = Tabulated(((0, -3), (0.4, -1), (1.5, -0.5)))
    x = np.linspace(0, 2, 17)
    assert np.allclose(evaluate(spec, x), [evaluate(spec, float(v)) for v in x])


def test_json_round_trip():
    for obj in ({"kind": "square_well", "beta0": 2.0, "R": 0.5},
                {"kind": "tabulated", "nodes": [[0.0, -1.0], [2.0, 0.0]]}):
        assert potential_to_json(potential_from_json(obj)) == obj


def test_json_rejects_unknown_kind():
    with pytest.raises(ValidationError):
        potential_from_json({"kind": "coulomb"})
