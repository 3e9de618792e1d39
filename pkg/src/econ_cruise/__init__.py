"""Economy cruise speed under a time-varying cost index, for fuel and electric aircraft."""

from .airframe import AirframeParams, drag, drag_coefficient, lift_coefficient, min_drag_speed
from .atmosphere import G, ISA, AtmosphereModel, density
from .ci_dynamics import INFINITE_TAU, CostIndexFilter, CostRates, ci_from_rates, ci_value
from .energy import AircraftModel, ElectricPowertrain, FuelPowertrain
from .errors import (
    BatteryDepleted,
    ConfigError,
    DomainError,
    EconCruiseError,
    FuelExhaustion,
    InfeasibleLeg,
    NoNonnegativeCI,
    SolverFailure,
)
from .optimizer import (
    Clamp,
    CruiseLeg,
    Optimum,
    cost_gradient,
    cost_second_derivative,
    doc_from_j,
    envelope_ci_max,
    fit_ci_for_speed,
    flight_time,
    oracle_minimize,
    solve_init,
    solve_optimal,
    total_cost,
)
from .scenario import AtcEvent, FlightSummary, Scenario, TauRule, TrajectorySample, simulate

__version__ = "0.1.0"
