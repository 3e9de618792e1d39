import numpy as np
import pytest
from hypothesis import given, strategies as st

from econ_cruise.airframe import (
    AirframeParams,
    drag,
    drag_coefficient,
    lift_coefficient,
    min_drag_speed,
)
from econ_cruise.errors import DomainError

ELEC = AirframeParams(11.37, 0.035, 0.009, 60 / 3.6, 161 / 3.6)
FUEL = AirframeParams(88.26, 0.015, 0.08, 200 / 3.6, 890 / 3.6)
W_ELEC = 472 * 9.81


def test_lift_coefficient_normalization():
    rho, v = 1.0, 30.0
    w = rho * ELEC.wing_area * v**2 / 2
    assert lift_coefficient(w, rho, v, ELEC) == pytest.approx(1.0)


def test_lift_coefficient_electric_cruise():
    assert lift_coefficient(W_ELEC, 1.112, 23.392, ELEC) == pytest.approx(1.33857, rel=1e-5)


def test_lift_coefficient_speed_scaling():
    c1 = lift_coefficient(W_ELEC, 1.112, 20.0, ELEC)
    assert lift_coefficient(W_ELEC, 1.112, 40.0, ELEC) == pytest.approx(c1 / 4)


@pytest.mark.parametrize("args", [(0.0, 1.0, 10.0), (1.0, 0.0, 10.0), (1.0, 1.0, 0.0)])
def test_lift_coefficient_rejects_nonpositive(args):
    with pytest.raises(DomainError):
        lift_coefficient(*args, ELEC)


@pytest.mark.parametrize(
    "params, c_l, expected",
    [(FUEL, 0.0, 0.015), (FUEL, 0.5, 0.035), (ELEC, 1.0, 0.044)],
)
def test_drag_coefficient(params, c_l, expected):
    assert drag_coefficient(c_l, params) == pytest.approx(expected)


def test_drag_electric_cruise():
    assert drag(23.392, 4630.3, 1.112, ELEC) == pytest.approx(176.85, rel=1e-3)


def test_drag_rejects_zero_speed():
    with pytest.raises(DomainError):
        drag(0.0, W_ELEC, 1.112, ELEC)


def test_min_drag_speed_electric():
    v = min_drag_speed(W_ELEC, 1.112, ELEC)
    assert v == pytest.approx(19.2722, rel=1e-5)
    assert v * 3.6 == pytest.approx(69.38, abs=0.01)


def test_terms_equal_at_min_drag_speed():
    rho = 1.112
    v = min_drag_speed(W_ELEC, rho, ELEC)
    parasitic = 0.5 * rho * ELEC.wing_area * ELEC.cd0 * v**2
    induced = 2 * ELEC.cd2 * W_ELEC**2 / (rho * ELEC.wing_area * v**2)
    assert parasitic == pytest.approx(induced, rel=1e-12)


@given(
    v=st.floats(1.0, 400.0),
    w=st.floats(100.0, 1e6),
    rho=st.floats(0.05, 1.3),
    params=st.sampled_from([ELEC, FUEL]),
)
def test_drag_composition_identity(v, w, rho, params):
    via_coefficients = 0.5 * rho * params.wing_area * v**2 * drag_coefficient(
        lift_coefficient(w, rho, v, params), params
    )
    assert drag(v, w, rho, params) == pytest.approx(via_coefficients, rel=1e-12)


@pytest.mark.parametrize("params, w, rho", [(ELEC, W_ELEC, 1.112), (FUEL, 98100.0, 0.4135)])
def test_drag_convex_with_unique_minimum(params, w, rho):
    v = np.linspace(1.0, 400.0, 40001)
    d = drag(v, w, rho, params)
    assert np.all(np.diff(d, 2) > 0)
    assert v[np.argmin(d)] == pytest.approx(min_drag_speed(w, rho, params), abs=0.01)


def test_params_validation():
    with pytest.raises(DomainError):
        AirframeParams(10.0, 0.02, 0.05, 50.0, 40.0)
    with pytest.raises(DomainError):
        AirframeParams(10.0, 0.0, 0.05, 10.0, 40.0)
