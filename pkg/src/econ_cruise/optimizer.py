"""
Economy cruise speed for a single constant-speed leg.

The normalized cost of a leg flown at speed v is

    J(v) = tau (CI0 - CI_in) (1 - exp(-dx / (tau v))) + CI_in dx / v + E0 - Ef(v)

where the first two terms integrate the lagged cost index over the flight
time dx / v and the last two are the energy consumed.  With a constant
cost index the time term is simply CI0 dx / v.
"""

from dataclasses import dataclass, replace
from enum import Enum
import math

import numpy as np

from .ci_dynamics import CostIndexFilter
from .energy import AircraftModel
from .errors import DomainError, InfeasibleLeg, NoNonnegativeCI, SolverFailure

SCAN_POINTS = 2048
ORACLE_SCAN_POINTS = 10_000
V_TOL = 1e-6  # m/s
MAX_ITER = 200


class Clamp(str, Enum):
    NONE = "none"
    V_MIN = "at_v_min"
    V_MAX = "at_v_max"


@dataclass(frozen=True)
class CruiseLeg:
    """One optimization instance.

    ``state`` is the energy state at the start of the leg: total weight [N]
    for a fuel aircraft, battery charge [C] for an electric one.
    """

    dx: float
    rho: float
    aircraft: AircraftModel
    state: float
    ci: CostIndexFilter

    def __post_init__(self):
        if not self.dx > 0:
            raise DomainError("leg length must be positive")
        if not self.rho > 0:
            raise DomainError("rho must be positive")

    @property
    def airframe(self):
        return self.aircraft.airframe

    @property
    def powertrain(self):
        return self.aircraft.powertrain

    def with_ci(self, ci):
        return replace(self, ci=ci)

    def _energy_args(self):
        return self.dx, self.state, self.rho, self.airframe


@dataclass(frozen=True)
class Optimum:
    v_star: float
    t_f_star: float
    j_star: float
    sufficiency_ok: bool
    clamped: Clamp
    solver_iterations: int


def flight_time(dx, v):
    """Time [s] to cover ``dx`` metres at constant ``v``."""
    if np.any(np.asarray(v) <= 0):
        raise DomainError("v must be positive")
    return dx / v


def energy_used(v, leg):
    """E0 - Ef(v) [J]."""
    return leg.powertrain.energy_used(v, *leg._energy_args())


def time_cost(v, leg):
    """Integral of CI(t) over the leg flight time [J]."""
    ci, dx = leg.ci, leg.dx
    if ci.is_constant:
        return ci.ci0 * dx / v
    return -ci.tau * (ci.ci0 - ci.ci_in) * np.expm1(-dx / (ci.tau * v)) + ci.ci_in * dx / v


def _time_cost_gradient(v, leg):
    ci, dx = leg.ci, leg.dx
    if ci.is_constant:
        return -ci.ci0 * dx / v**2
    decay = np.exp(-dx / (ci.tau * v))
    return -(ci.ci0 - ci.ci_in) * dx * decay / v**2 - ci.ci_in * dx / v**2


def _time_cost_curvature(v, leg):
    ci, dx = leg.ci, leg.dx
    if ci.is_constant:
        return 2.0 * ci.ci0 * dx / v**3
    decay = np.exp(-dx / (ci.tau * v))
    return (ci.ci0 - ci.ci_in) * dx * decay / v**4 * (2.0 * v - dx / ci.tau) + 2.0 * ci.ci_in * dx / v**3


def total_cost(v, leg):
    """Normalized direct operating cost J(v) [J]."""
    return time_cost(v, leg) + energy_used(v, leg)


def cost_gradient(v, leg):
    """dJ/dv [J s/m]."""
    return _time_cost_gradient(v, leg) - leg.powertrain.dEf_dv(v, *leg._energy_args())


def cost_second_derivative(v, leg):
    """d2J/dv2 [J s^2/m^2]; positive at a strict minimum."""
    return _time_cost_curvature(v, leg) - leg.powertrain.d2Ef_dv2(v, *leg._energy_args())


def gradient_scale(v, leg):
    """Sum of the magnitudes of the terms of dJ/dv, for relative tolerances."""
    return np.abs(_time_cost_gradient(v, leg)) + np.abs(leg.powertrain.dEf_dv(v, *leg._energy_args()))


def _scan(leg, n):
    grid = np.linspace(leg.airframe.v_min, leg.airframe.v_max, n)
    ok = leg.powertrain.feasible(grid, *leg._energy_args())
    if not np.any(ok):
        raise InfeasibleLeg(f"no speed in [{grid[0]:.4g}, {grid[-1]:.4g}] m/s completes the leg")
    cost = np.full(n, np.inf)
    cost[ok] = total_cost(grid[ok], leg)
    return grid, ok, cost


def _optimum(v, leg, clamped, iterations):
    v = float(v)
    return Optimum(
        v_star=v,
        t_f_star=flight_time(leg.dx, v),
        j_star=float(total_cost(v, leg)),
        sufficiency_ok=bool(cost_second_derivative(v, leg) > 0),
        clamped=clamped,
        solver_iterations=iterations,
    )


def _refine(leg, a, b):
    """Safeguarded Newton on dJ/dv over a bracket with g(a) <= 0 <= g(b)."""
    x = 0.5 * (a + b)
    for it in range(1, MAX_ITER + 1):
        g = float(cost_gradient(x, leg))
        if g == 0.0:
            return x, it
        if g < 0:
            a = x
        else:
            b = x
        h = float(cost_second_derivative(x, leg))
        x_new = x - g / h if h > 0 else math.nan
        if not a < x_new < b:
            x_new = 0.5 * (a + b)
        if abs(x_new - x) < V_TOL or b - a < V_TOL:
            return x_new, it
        x = x_new
    raise SolverFailure(f"no convergence in {MAX_ITER} iterations (bracket [{a}, {b}])")


def solve_optimal(leg):
    """Global minimizer of J over the speed envelope.

    A uniform scan locates the basin of the global minimum, then the
    first-order condition dJ/dv = 0 is refined inside the neighbouring
    grid cells.  A minimum on an envelope edge is returned clamped.
    """
    grid, ok, cost = _scan(leg, SCAN_POINTS)
    n = len(grid)
    i = int(np.argmin(cost))
    lo = i - 1 if i > 0 and ok[i - 1] else i
    hi = i + 1 if i < n - 1 and ok[i + 1] else i
    g_lo = float(cost_gradient(grid[lo], leg))
    g_hi = float(cost_gradient(grid[hi], leg))

    # the bracket reaching an edge with J still falling toward it means the
    # minimum is on the edge (covers the scan minimum landing one cell inside)
    if lo == 0 and g_lo >= 0:
        return _optimum(grid[0], leg, Clamp.V_MIN, 0)
    if hi == n - 1 and g_hi <= 0:
        return _optimum(grid[-1], leg, Clamp.V_MAX, 0)
    if not (g_lo <= 0 <= g_hi):
        raise SolverFailure(f"no sign change of dJ/dv around v = {grid[i]:.6g} m/s")

    v, iterations = _refine(leg, grid[lo], grid[hi])
    opt = _optimum(v, leg, Clamp.NONE, iterations)
    if not opt.sufficiency_ok:
        raise SolverFailure(f"stationary point v = {v:.6g} m/s fails the second-order condition")
    return opt


def solve_init(leg):
    """Optimum with the cost index held at ``leg.ci.ci0`` (FMS initialization)."""
    return solve_optimal(leg.with_ci(CostIndexFilter.constant(leg.ci.ci0)))


def fit_ci_for_speed(v_target, leg):
    """Constant cost index [W] whose initialization optimum is ``v_target``.

    The stationarity condition is linear in CI, so CI follows in closed
    form from the energy slope at ``v_target``; the result is then checked
    by re-solving.
    """
    af = leg.airframe
    if not af.v_min < v_target < af.v_max:
        raise DomainError(f"target {v_target:.6g} m/s outside ({af.v_min:.6g}, {af.v_max:.6g})")
    d_ef = float(leg.powertrain.dEf_dv(v_target, *leg._energy_args()))
    ci = -(v_target**2) / leg.dx * d_ef
    # CI change equivalent to a 1e-9 relative shift of the target speed
    curvature = abs(float(leg.powertrain.d2Ef_dv2(v_target, *leg._energy_args())))
    slack = v_target**2 / leg.dx * curvature * 1e-9 * v_target
    if ci < -slack:
        raise NoNonnegativeCI(
            f"{v_target * 3.6:.2f} km/h is slower than the zero-cost-index optimum; "
            "no cost index >= 0 selects it"
        )
    ci = max(ci, 0.0)
    check = solve_init(leg.with_ci(CostIndexFilter.constant(ci)))
    if abs(check.v_star - v_target) > 1e-4:
        raise SolverFailure(
            f"{v_target:.6g} m/s is a stationary point but the global optimum at that "
            f"cost index is {check.v_star:.6g} m/s"
        )
    return ci


def envelope_ci_max(leg):
    """Smallest constant cost index [W] whose initialization optimum is ``v_max``.

    Any larger cost index also clamps at ``v_max``, so this is the largest
    cost index that still changes the cruise speed.
    """
    v = leg.airframe.v_max
    d_ef = float(leg.powertrain.dEf_dv(v, *leg._energy_args()))
    return max(-(v**2) / leg.dx * d_ef, 0.0)


def _golden(f, a, b, tol):
    inv_phi = (math.sqrt(5.0) - 1.0) / 2.0
    c = b - inv_phi * (b - a)
    d = a + inv_phi * (b - a)
    fc, fd = f(c), f(d)
    it = 0
    while b - a > tol:
        it += 1
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - inv_phi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + inv_phi * (b - a)
            fd = f(d)
    return 0.5 * (a + b), it


def oracle_minimize(leg, tol=1e-9):
    """Derivative-free check of :func:`solve_optimal`: dense scan then golden section."""
    grid, ok, cost = _scan(leg, ORACLE_SCAN_POINTS)
    i = int(np.argmin(cost))
    lo = grid[i - 1] if i > 0 and ok[i - 1] else grid[i]
    hi = grid[i + 1] if i < len(grid) - 1 and ok[i + 1] else grid[i]
    v, iterations = _golden(lambda x: float(total_cost(x, leg)), lo, hi, tol)
    af = leg.airframe
    clamped = Clamp.NONE
    if v - af.v_min < 10 * tol:
        v, clamped = af.v_min, Clamp.V_MIN
    elif af.v_max - v < 10 * tol:
        v, clamped = af.v_max, Clamp.V_MAX
    return _optimum(v, leg, clamped, iterations)


def doc_from_j(j, c_e):
    """Currency-denominated direct operating cost from normalized cost ``j``."""
    if c_e <= 0:
        raise DomainError("energy cost must be positive")
    return c_e * j
