"""
Powertrain energy-state models.

Fuel aircraft: the weight obeys dW/dt = -S_fc * D(v, W), which has a
closed-form solution along a constant-speed leg.  Electric aircraft: the
battery discharges at i = D v / (U eta) with the weight held constant.
Both expose the final energy after a leg of length ``dx`` flown at ``v``
and its first two speed derivatives.
"""

from dataclasses import dataclass
import warnings

import numpy as np

from .airframe import AirframeParams, drag, drag_curvature, drag_slope
from .atmosphere import G
from .errors import BatteryDepleted, DomainError, FuelExhaustion

HEATING_VALUE_RANGE = (40e6, 43e6)  # typical jet fuel [J/kg]


@dataclass(frozen=True)
class FuelPowertrain:
    """Jet engine with thrust-specific fuel consumption ``sfc_mass``.

    ``sfc_mass`` is in kg/(N s).  The weight ODE needs fuel weight per
    second per newton of thrust, which is ``G * sfc_mass`` [1/s].
    """

    sfc_mass: float
    fuel_mass: float
    dry_mass: float = 0.0
    heating_value: float = 43e6

    state_name = "weight_N"

    def __post_init__(self):
        if self.sfc_mass <= 0:
            raise DomainError("sfc must be positive")
        if self.fuel_mass <= 0 or self.dry_mass < 0:
            raise DomainError("need fuel_mass > 0 and dry_mass >= 0")
        if self.heating_value <= 0:
            raise DomainError("heating value must be positive")
        lo, hi = HEATING_VALUE_RANGE
        if not lo <= self.heating_value <= hi:
            warnings.warn(
                f"heating value {self.heating_value:.4g} J/kg outside the usual jet-fuel range",
                stacklevel=3,
            )

    @property
    def sfc_weight(self):
        return G * self.sfc_mass

    @property
    def dry_weight(self):
        return G * self.dry_mass

    def initial_state(self):
        return G * (self.dry_mass + self.fuel_mass)

    def weight(self, state):
        return state

    def energy(self, state):
        return self.heating_value / G * np.asarray(state)

    def feasible(self, v, dx, state, rho, airframe):
        return fuel_feasible(v, dx, state, rho, airframe, self)

    def end_state(self, v, dx, state, rho, airframe):
        return final_weight(v, dx, state, rho, airframe, self)

    def energy_used(self, v, dx, state, rho, airframe):
        return self.heating_value / G * fuel_burned(v, dx, state, rho, airframe, self)

    def final_energy(self, v, dx, state, rho, airframe):
        return final_energy_fuel(v, dx, state, rho, airframe, self)

    def dEf_dv(self, v, dx, state, rho, airframe):
        return dEf_dv_fuel(v, dx, state, rho, airframe, self)

    def d2Ef_dv2(self, v, dx, state, rho, airframe):
        return d2Ef_dv2_fuel(v, dx, state, rho, airframe, self)


@dataclass(frozen=True)
class ElectricPowertrain:
    """Ideal constant-voltage battery driving a motor of efficiency ``efficiency``."""

    voltage: float
    efficiency: float
    q0: float
    mass: float

    state_name = "charge_C"

    def __post_init__(self):
        if self.voltage <= 0 or self.q0 <= 0 or self.mass <= 0:
            raise DomainError("voltage, q0 and mass must be positive")
        if not 0 < self.efficiency <= 1:
            raise DomainError("efficiency must lie in (0, 1]")

    def initial_state(self):
        return self.q0

    def weight(self, state):
        return G * self.mass

    def energy(self, state):
        return np.asarray(state) * self.voltage

    def feasible(self, v, dx, state, rho, airframe):
        used = dx * drag(v, G * self.mass, rho, airframe) / (self.voltage * self.efficiency)
        return np.asarray(state - used >= 0)

    def end_state(self, v, dx, state, rho, airframe):
        return final_charge(v, dx, state, G * self.mass, rho, airframe, self)

    def energy_used(self, v, dx, state, rho, airframe):
        return dx / self.efficiency * drag(v, G * self.mass, rho, airframe)

    def final_energy(self, v, dx, state, rho, airframe):
        return final_energy_electric(v, dx, state, G * self.mass, rho, airframe, self)

    def dEf_dv(self, v, dx, state, rho, airframe):
        return dEf_dv_electric(v, dx, G * self.mass, rho, airframe, self)

    def d2Ef_dv2(self, v, dx, state, rho, airframe):
        return d2Ef_dv2_electric(v, dx, G * self.mass, rho, airframe, self)


@dataclass(frozen=True)
class AircraftModel:
    name: str
    airframe: AirframeParams
    powertrain: "FuelPowertrain | ElectricPowertrain"

    @property
    def is_fuel(self):
        return isinstance(self.powertrain, FuelPowertrain)

    def weight(self, state):
        return self.powertrain.weight(state)


# -- fuel ---------------------------------------------------------------------


def k1(sfc_mass, c_d0, c_d2):
    """Range-like time constant 1 / (S_fc_w sqrt(C_D0 C_D2)) [s]."""
    if sfc_mass <= 0 or c_d0 <= 0 or c_d2 <= 0:
        raise DomainError("k1 arguments must be positive")
    return 1.0 / (G * sfc_mass * np.sqrt(c_d0 * c_d2))


def k2(rho, params):
    """(rho S / 2) sqrt(C_D0 / C_D2) [N s^2/m^2]."""
    if np.any(np.asarray(rho) <= 0):
        raise DomainError("rho must be positive")
    return 0.5 * rho * params.wing_area * np.sqrt(params.cd0 / params.cd2)


def _fuel_angles(v, dx, w0, rho, airframe, fuel):
    if np.any(np.asarray(v) <= 0):
        raise DomainError("v must be positive")
    if np.any(np.asarray(dx) < 0):
        raise DomainError("dx must be >= 0")
    kk1 = k1(fuel.sfc_mass, airframe.cd0, airframe.cd2)
    kk2 = k2(rho, airframe)
    theta0 = np.arctan(w0 / (kk2 * np.square(v)))
    delta = dx / (kk1 * v)
    return kk1, kk2, theta0, delta


def fuel_feasible(v, dx, w0, rho, airframe, fuel):
    """True where the leg ends with weight above the dry weight."""
    _, kk2, theta0, delta = _fuel_angles(v, dx, w0, rho, airframe, fuel)
    floor = np.arctan(fuel.dry_weight / (kk2 * np.square(v)))
    return np.asarray((theta0 - delta > floor) & (w0 > fuel.dry_weight))


def _require_fuel(v, dx, w0, rho, airframe, fuel):
    if not np.all(fuel_feasible(v, dx, w0, rho, airframe, fuel)):
        raise FuelExhaustion(f"leg of {np.max(dx):.6g} m exhausts the fuel")


def fuel_burned(v, dx, w0, rho, airframe, fuel):
    """Fuel weight [N] burned over the leg, evaluated without cancellation.

    Uses tan(a) - tan(a - b) = tan(b) (1 + tan^2 a) / (1 + tan a tan b).
    """
    _require_fuel(v, dx, w0, rho, airframe, fuel)
    _, kk2, theta0, delta = _fuel_angles(v, dx, w0, rho, airframe, fuel)
    u = w0 / (kk2 * np.square(v))
    td = np.tan(delta)
    return kk2 * np.square(v) * td * (1.0 + u * u) / (1.0 + u * td)


def final_weight(v, dx, w0, rho, airframe, fuel):
    """Weight [N] after flying ``dx`` metres at constant ``v`` from weight ``w0``.

    Closed form k2 v^2 tan(theta0 - dx / (k1 v)) with tan(theta0) = w0 / (k2 v^2),
    evaluated as ``w0 - fuel_burned(...)`` so that it is exactly ``w0`` at dx = 0.
    """
    return w0 - fuel_burned(v, dx, w0, rho, airframe, fuel)


def weight_rate(v, w, rho, airframe, fuel):
    """dW/dt [N/s] in steady cruise."""
    return -fuel.sfc_weight * drag(v, w, rho, airframe)


def final_energy_fuel(v, dx, w0, rho, airframe, fuel):
    return fuel.heating_value / G * final_weight(v, dx, w0, rho, airframe, fuel)


def _fuel_terms(v, dx, w0, rho, airframe, fuel):
    _require_fuel(v, dx, w0, rho, airframe, fuel)
    kk1, kk2, theta0, delta = _fuel_angles(v, dx, w0, rho, airframe, fuel)
    alpha = theta0 - delta
    c = w0 / kk2
    q = v**4 + c * c
    d_alpha = dx / (kk1 * v**2) - 2.0 * c * v / q
    d2_alpha = -2.0 * dx / (kk1 * v**3) - 2.0 * c * (c * c - 3.0 * v**4) / q**2
    tan_a = np.tan(alpha)
    sec2 = 1.0 + tan_a * tan_a
    return kk2, tan_a, sec2, d_alpha, d2_alpha


def dEf_dv_fuel(v, dx, w0, rho, airframe, fuel):
    """Speed derivative of the final fuel energy [J s/m]."""
    kk2, tan_a, sec2, d_alpha, _ = _fuel_terms(v, dx, w0, rho, airframe, fuel)
    return fuel.heating_value / G * kk2 * (2.0 * v * tan_a + v * v * sec2 * d_alpha)


def d2Ef_dv2_fuel(v, dx, w0, rho, airframe, fuel):
    """Second speed derivative of the final fuel energy [J s^2/m^2]."""
    kk2, tan_a, sec2, d_alpha, d2_alpha = _fuel_terms(v, dx, w0, rho, airframe, fuel)
    inner = (
        2.0 * tan_a
        + 4.0 * v * sec2 * d_alpha
        + 2.0 * v * v * sec2 * tan_a * d_alpha**2
        + v * v * sec2 * d2_alpha
    )
    return fuel.heating_value / G * kk2 * inner


# -- electric -----------------------------------------------------------------


def final_charge(v, dx, q0, weight, rho, airframe, elec):
    """Battery charge [C] after the leg; linear in ``dx``."""
    if np.any(np.asarray(dx) < 0):
        raise DomainError("dx must be >= 0")
    q = q0 - dx / (elec.voltage * elec.efficiency) * drag(v, weight, rho, airframe)
    if np.any(q < 0):
        raise BatteryDepleted(f"leg of {np.max(dx):.6g} m needs more than the remaining charge")
    return q


def battery_current(v, weight, rho, airframe, elec):
    """Discharge current [A] with thrust equal to drag."""
    return drag(v, weight, rho, airframe) * v / (elec.voltage * elec.efficiency)


def final_energy_electric(v, dx, q0, weight, rho, airframe, elec):
    return elec.voltage * final_charge(v, dx, q0, weight, rho, airframe, elec)


def dEf_dv_electric(v, dx, weight, rho, airframe, elec):
    if np.any(np.asarray(v) <= 0):
        raise DomainError("v must be positive")
    return -dx / elec.efficiency * drag_slope(v, weight, rho, airframe)


def d2Ef_dv2_electric(v, dx, weight, rho, airframe, elec):
    if np.any(np.asarray(v) <= 0):
        raise DomainError("v must be positive")
    return -dx / elec.efficiency * drag_curvature(v, weight, rho, airframe)
