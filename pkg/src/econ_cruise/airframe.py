"""
Drag polar and drag force for a fixed-wing aircraft in level flight.

All functions accept scalar or numpy-array speeds. Lift is taken equal
to weight (steady, level, windless cruise).
"""

from dataclasses import dataclass

import numpy as np

from .errors import DomainError

KMH = 1.0 / 3.6  # km/h -> m/s


@dataclass(frozen=True)
class AirframeParams:
    """Aerodynamic and envelope data.

    Attributes
    ----------
    wing_area : float
        Reference wing area S [m^2].
    cd0 : float
        Zero-lift (parasitic) drag coefficient.
    cd2 : float
        Lift-induced drag factor, C_D = cd0 + cd2 * C_L**2.
    v_min, v_max : float
        Speed envelope [m/s].
    """

    wing_area: float
    cd0: float
    cd2: float
    v_min: float
    v_max: float

    def __post_init__(self):
        if not (self.wing_area > 0 and self.cd0 > 0 and self.cd2 > 0):
            raise DomainError("wing area, cd0 and cd2 must be positive")
        if not (0 < self.v_min < self.v_max):
            raise DomainError(f"need 0 < v_min < v_max, got {self.v_min}, {self.v_max}")


def _positive(name, value):
    if np.any(np.asarray(value) <= 0):
        raise DomainError(f"{name} must be positive")


def lift_coefficient(weight, rho, v, params):
    """C_L = 2 W / (rho S v^2)."""
    _positive("weight", weight)
    _positive("rho", rho)
    _positive("v", v)
    return 2.0 * weight / (rho * params.wing_area * np.square(v))


def drag_coefficient(c_l, params):
    """Parabolic drag polar C_D = C_D0 + C_D2 C_L^2."""
    return params.cd0 + params.cd2 * np.square(c_l)


def drag(v, weight, rho, params):
    """Drag force [N] in level flight: parasitic plus induced term."""
    _positive("v", v)
    _positive("weight", weight)
    _positive("rho", rho)
    qs = 0.5 * rho * params.wing_area
    return qs * params.cd0 * np.square(v) + 2.0 * params.cd2 * weight**2 / (
        rho * params.wing_area * np.square(v)
    )


def drag_slope(v, weight, rho, params):
    """dD/dv [N s/m]."""
    s = params.wing_area
    return rho * s * params.cd0 * v - 4.0 * params.cd2 * weight**2 / (rho * s * v**3)


def drag_curvature(v, weight, rho, params):
    """d2D/dv2 [N s^2/m^2]; always positive."""
    s = params.wing_area
    return rho * s * params.cd0 + 12.0 * params.cd2 * weight**2 / (rho * s * v**4)


def min_drag_speed(weight, rho, params):
    """Speed at which parasitic and induced drag are equal (drag minimum)."""
    _positive("weight", weight)
    _positive("rho", rho)
    return np.sqrt(2.0 * weight / (rho * params.wing_area)) * (params.cd2 / params.cd0) ** 0.25
