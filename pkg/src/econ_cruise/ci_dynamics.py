"""
Time-varying cost index.

The cost index is driven by a first-order lag toward the value commanded
by air traffic control:  tau * dCI/dt = -CI + CI_in.  Internally CI is a
power in watts (J of energy cost per second of time cost).
"""

from dataclasses import dataclass
import math

import numpy as np

from .errors import DomainError

#: Marker for the constant-CI (FMS initialization) mode. Code paths test
#: for it explicitly with :func:`math.isinf`; it is never used in arithmetic.
INFINITE_TAU = math.inf

KJ_PER_S = 1000.0  # kJ/s -> W


@dataclass(frozen=True)
class CostIndexFilter:
    ci0: float
    ci_in: float
    tau: float = INFINITE_TAU

    def __post_init__(self):
        if self.ci0 < 0 or self.ci_in < 0:
            raise DomainError("cost index values must be non-negative")
        if not (self.tau > 0):
            raise DomainError(f"tau must be positive or INFINITE_TAU, got {self.tau}")

    @classmethod
    def constant(cls, ci):
        """Filter that holds ``ci`` for all time."""
        return cls(ci, ci, INFINITE_TAU)

    @property
    def is_constant(self):
        return math.isinf(self.tau)


@dataclass(frozen=True)
class CostRates:
    time_cost: float  # C_t [currency/s]
    energy_cost: float  # C_e [currency/J]


def ci_value(filt, t):
    """Cost index [W] at time ``t`` [s] after the filter was armed."""
    if np.any(np.asarray(t) < 0):
        raise DomainError("t must be >= 0")
    if filt.is_constant:
        return np.full_like(np.asarray(t, dtype=float), filt.ci0)[()]
    return np.exp(-np.asarray(t, dtype=float) / filt.tau) * (filt.ci0 - filt.ci_in) + filt.ci_in


def ci_from_rates(rates):
    """CI = C_t / C_e, in W when C_e is per joule."""
    if rates.energy_cost <= 0:
        raise DomainError("energy cost must be positive")
    if rates.time_cost < 0:
        raise DomainError("time cost must be non-negative")
    return rates.time_cost / rates.energy_cost
