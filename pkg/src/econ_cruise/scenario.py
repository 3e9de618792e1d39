"""
Multi-segment cruise simulation with ATC cost-index commands.

The flight starts at the FMS-initialization optimum for the whole route.
Each ATC event closes the running segment, arms a new cost-index filter
(starting from the instantaneous CI, driving toward the commanded value)
and re-optimizes a constant speed for the remaining distance.
"""

from dataclasses import dataclass, field
import math

import numpy as np

from .ci_dynamics import CostIndexFilter, ci_value
from .energy import AircraftModel
from .errors import DomainError
from .optimizer import CruiseLeg, Optimum, flight_time, solve_init, solve_optimal


@dataclass(frozen=True)
class AtcEvent:
    """CI command issued at a route position [m] or a flight time [s]."""

    ci_in: float
    at_position: float | None = None
    at_time: float | None = None

    def __post_init__(self):
        if (self.at_position is None) == (self.at_time is None):
            raise DomainError("an ATC event needs exactly one of at_position / at_time")
        if self.ci_in < 0:
            raise DomainError("commanded cost index must be non-negative")


@dataclass(frozen=True)
class TauRule:
    """Filter time constant, absolute or as a fraction of the scheduled flight time."""

    seconds: float | None = None
    fraction_of_tf0: float | None = None

    def __post_init__(self):
        if (self.seconds is None) == (self.fraction_of_tf0 is None):
            raise DomainError("tau rule needs exactly one of seconds / fraction_of_tf0")
        value = self.seconds if self.seconds is not None else self.fraction_of_tf0
        if not value > 0:
            raise DomainError("tau must be positive")

    def resolve(self, t_f0):
        if self.seconds is not None:
            return self.seconds
        return self.fraction_of_tf0 * t_f0


DEFAULT_TAU = TauRule(fraction_of_tf0=0.01)


@dataclass(frozen=True)
class Scenario:
    aircraft: AircraftModel
    rho: float
    x0: float
    xf: float
    ci0: float
    events: tuple = ()
    tau_rule: TauRule = DEFAULT_TAU
    sample_step: float = 1.0
    initial_state: float | None = None  # defaults to the powertrain's full state

    def __post_init__(self):
        if not self.x0 < self.xf:
            raise DomainError("route needs x0 < xf")
        if not self.sample_step > 0:
            raise DomainError("sample step must be positive")
        if self.ci0 < 0:
            raise DomainError("initial cost index must be non-negative")


@dataclass(frozen=True)
class Segment:
    index: int
    x_start: float
    x_end: float
    t_start: float
    v_star: float
    ci: CostIndexFilter  # filter armed at t_start
    ci_commanded: float
    state_start: float
    state_end: float
    energy_used: float
    optimum: Optimum  # solution for the remaining route at t_start

    @property
    def duration(self):
        return flight_time(self.x_end - self.x_start, self.v_star)

    @property
    def t_end(self):
        return self.t_start + self.duration


@dataclass(frozen=True)
class TrajectorySample:
    t: float
    x: float
    v_commanded: float
    ci: float
    energy_available: float
    weight_or_charge: float


@dataclass(frozen=True)
class FlightSummary:
    segments: tuple
    v0_star: float
    t_f0_star: float
    tau: float
    state_name: str = field(default="state")

    @property
    def arrival_time(self):
        return sum(s.duration for s in self.segments)

    @property
    def dt_arrival(self):
        """Actual minus scheduled arrival time [s]; negative when early."""
        return self.arrival_time - self.t_f0_star

    @property
    def total_energy_used(self):
        return sum(s.energy_used for s in self.segments)


def _close_segment(index, leg, opt, x_start, x_end, t_start, ci_commanded):
    pt = leg.powertrain
    dx = x_end - x_start
    state_end = float(pt.end_state(opt.v_star, dx, leg.state, leg.rho, leg.airframe))
    used = float(pt.energy_used(opt.v_star, dx, leg.state, leg.rho, leg.airframe))
    return Segment(index, x_start, x_end, t_start, opt.v_star, leg.ci, ci_commanded,
                   leg.state, state_end, used, opt)


def fly(scenario):
    """Run the optimizer chain and return the :class:`FlightSummary`."""
    sc = scenario
    pt = sc.aircraft.powertrain
    state = pt.initial_state() if sc.initial_state is None else sc.initial_state
    leg = CruiseLeg(sc.xf - sc.x0, sc.rho, sc.aircraft, state, CostIndexFilter.constant(sc.ci0))
    opt = solve_init(leg)
    t_f0 = opt.t_f_star
    tau = sc.tau_rule.resolve(t_f0)

    segments = []
    x_seg, t_seg, ci_cmd = sc.x0, 0.0, sc.ci0
    for event in sc.events:
        v = opt.v_star
        if event.at_position is not None:
            x_ev = event.at_position
            t_ev = t_seg + (x_ev - x_seg) / v
        else:
            t_ev = event.at_time
            x_ev = x_seg + (t_ev - t_seg) * v
        if not x_seg < x_ev < sc.xf:
            raise DomainError(
                f"ATC event at x = {x_ev:.6g} m, t = {t_ev:.6g} s is not strictly inside the "
                "remaining route (events must be ordered and precede arrival)"
            )
        seg = _close_segment(len(segments), leg, opt, x_seg, x_ev, t_seg, ci_cmd)
        segments.append(seg)
        ci_now = float(ci_value(leg.ci, t_ev - t_seg))
        leg = CruiseLeg(sc.xf - x_ev, sc.rho, sc.aircraft, seg.state_end,
                        CostIndexFilter(ci_now, event.ci_in, tau))
        opt = solve_optimal(leg)
        x_seg, t_seg, ci_cmd = x_ev, t_ev, event.ci_in
    segments.append(_close_segment(len(segments), leg, opt, x_seg, sc.xf, t_seg, ci_cmd))
    return FlightSummary(tuple(segments), segments[0].v_star, t_f0, tau, pt.state_name)


def sample_times(summary, step):
    """Uniform times plus every segment boundary and the arrival time."""
    end = summary.segments[-1].t_end
    n = int(math.floor(end / step))
    times = np.arange(n + 1) * step
    bounds = [s.t_start for s in summary.segments] + [end]
    return np.unique(np.concatenate([times[times <= end], bounds]))


def _segment_index(summary, times):
    starts = np.array([s.t_start for s in summary.segments])
    return np.searchsorted(starts, times, side="right") - 1


def trajectory(summary, scenario):
    """Sampled state traces of a flown scenario."""
    sc = scenario
    pt = sc.aircraft.powertrain
    times = sample_times(summary, sc.sample_step)
    which = _segment_index(summary, times)
    samples = []
    for k, seg in enumerate(summary.segments):
        t = times[which == k]
        if t.size == 0:
            continue
        elapsed = t - seg.t_start
        x = np.minimum(seg.x_start + seg.v_star * elapsed, seg.x_end)
        ci = np.broadcast_to(ci_value(seg.ci, elapsed), t.shape)
        state = np.broadcast_to(
            pt.end_state(seg.v_star, x - seg.x_start, seg.state_start, sc.rho, sc.aircraft.airframe),
            t.shape,
        )
        energy = np.broadcast_to(pt.energy(state), t.shape)
        for row in zip(t, x, ci, energy, state):
            samples.append(TrajectorySample(float(row[0]), float(row[1]), seg.v_star,
                                            float(row[2]), float(row[3]), float(row[4])))
    return samples


def simulate(scenario):
    """Fly ``scenario``; return (list of TrajectorySample, FlightSummary)."""
    summary = fly(scenario)
    return trajectory(summary, scenario), summary


def render_speed_trace(summary, times, smooth=False):
    """Airspeed for display at ``times``.

    Without smoothing this is the piecewise-constant commanded speed.  With
    smoothing each change relaxes as a first-order lag with the segment's
    filter time constant.  Display only; timing and energy always use the
    commanded speeds.
    """
    times = np.asarray(times, dtype=float)
    which = _segment_index(summary, times)
    v = np.array([summary.segments[k].v_star for k in which])
    if not smooth:
        return v
    shown_at_start = summary.segments[0].v_star
    for k, seg in enumerate(summary.segments):
        if k > 0 and not seg.ci.is_constant:
            mask = which == k
            lag = np.exp(-(times[mask] - seg.t_start) / seg.ci.tau)
            v[mask] = seg.v_star + (shown_at_start - seg.v_star) * lag
        if k + 1 < len(summary.segments):
            nxt = summary.segments[k + 1]
            if k > 0 and not seg.ci.is_constant:
                lag = math.exp(-(nxt.t_start - seg.t_start) / seg.ci.tau)
                shown_at_start = seg.v_star + (shown_at_start - seg.v_star) * lag
            else:
                shown_at_start = seg.v_star
    return v
