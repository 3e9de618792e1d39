"""
Layered standard atmosphere.

Only the troposphere and the isothermal tropopause layer are modelled,
which covers 0-20 km geometric altitude.
"""

from dataclasses import dataclass
import math

import numpy as np

from .errors import DomainError

#: Gravitational acceleration used for every mass/weight conversion [m/s^2].
G = 9.81


@dataclass(frozen=True)
class AtmosphereModel:
    """Piecewise-linear temperature atmosphere.

    ``g`` is the constant used by the cruise models to turn masses into
    weights; ``g_hydrostatic`` is the standard value that enters the
    barometric formula, so the densities are the tabulated ISA ones.
    """

    p0: float = 101325.0  # sea-level pressure [Pa]
    t0: float = 288.15  # sea-level temperature [K]
    lapse_rates: tuple = (-0.0065, 0.0)  # [K/m], one per layer
    layer_bases: tuple = (0.0, 11000.0)  # [m]
    top: float = 20000.0  # [m]
    gas_constant: float = 287.05287  # [J/(kg K)]
    g: float = G
    g_hydrostatic: float = 9.80665

    def _layer_state(self, h):
        """Temperature and pressure at altitude ``h`` (scalar, metres)."""
        t, p = self.t0, self.p0
        for i, (base, lapse) in enumerate(zip(self.layer_bases, self.lapse_rates)):
            ceiling = self.layer_bases[i + 1] if i + 1 < len(self.layer_bases) else self.top
            dh = min(h, ceiling) - base
            if lapse == 0.0:
                p_new = p * math.exp(-self.g_hydrostatic * dh / (self.gas_constant * t))
                t_new = t
            else:
                t_new = t + lapse * dh
                p_new = p * (t_new / t) ** (-self.g_hydrostatic / (self.gas_constant * lapse))
            t, p = t_new, p_new
            if h <= ceiling:
                break
        return t, p

    def temperature(self, altitude):
        return self._layer_state(self._check(altitude))[0]

    def pressure(self, altitude):
        return self._layer_state(self._check(altitude))[1]

    def density(self, altitude):
        """Air density [kg/m^3] at geometric ``altitude`` [m]."""
        t, p = self._layer_state(self._check(altitude))
        return p / (self.gas_constant * t)

    def _check(self, altitude):
        h = float(altitude)
        if not (0.0 <= h <= self.top):
            raise DomainError(f"altitude {h} m outside supported range [0, {self.top}] m")
        return h


ISA = AtmosphereModel()


def density(altitude, model=ISA):
    """ISA density [kg/m^3]; ``altitude`` may be a scalar or an array [m]."""
    if np.ndim(altitude) == 0:
        return model.density(altitude)
    return np.array([model.density(h) for h in np.ravel(altitude)]).reshape(np.shape(altitude))
