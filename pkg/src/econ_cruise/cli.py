"""Command-line front end: init, optimize, simulate, sweep, fit-ci."""

import argparse
import csv
import json
import os
from pathlib import Path
import sys

import numpy as np

from . import report
from .airframe import KMH
from .ci_dynamics import KJ_PER_S, CostIndexFilter
from .config import RECIPE, load_aircraft, load_scenario, rho_for_route
from .errors import (
    BatteryDepleted,
    ConfigError,
    DomainError,
    FuelExhaustion,
    InfeasibleLeg,
    NoNonnegativeCI,
    SolverFailure,
)
from .optimizer import CruiseLeg, fit_ci_for_speed, solve_init, solve_optimal, total_cost
from .scenario import simulate, render_speed_trace

EXIT_OK, EXIT_INFEASIBLE, EXIT_INPUT = 0, 2, 3


def parse_tau(text):
    """'68.4' -> ('seconds', 68.4); 'frac:0.01' -> ('fraction', 0.01)."""
    try:
        if text.startswith("frac:"):
            value, kind = float(text[5:]), "fraction"
        else:
            value, kind = float(text), "seconds"
    except ValueError:
        raise ConfigError(f"cannot parse tau {text!r}; use seconds or frac:X", "--tau") from None
    if not value > 0:
        raise ConfigError("tau must be positive", "--tau")
    return kind, value


def _base_leg(args):
    """Aircraft, distance and density from --scenario and/or explicit flags."""
    scen = load_scenario(args.scenario).scenario if args.scenario else None
    if args.aircraft:
        aircraft = load_aircraft(args.aircraft)
    elif scen is not None:
        aircraft = scen.aircraft
    else:
        raise ConfigError("need --aircraft or --scenario", "--aircraft")

    if args.distance_km is not None:
        dx = args.distance_km * 1e3
    elif scen is not None:
        dx = scen.xf - scen.x0
    else:
        raise ConfigError("need --distance-km or --scenario", "--distance-km")

    if args.rho is not None and args.altitude_m is not None:
        raise ConfigError("give only one of --rho / --altitude-m", "--rho")
    if args.rho is not None:
        rho = args.rho
    elif args.altitude_m is not None:
        rho = rho_for_route({"altitude_m": args.altitude_m}, "--altitude-m")
    elif scen is not None:
        rho = scen.rho
    else:
        raise ConfigError("need --rho, --altitude-m or --scenario", "--rho")

    state = args.state if args.state is not None else aircraft.powertrain.initial_state()
    return CruiseLeg(dx, rho, aircraft, state, CostIndexFilter.constant(0.0)), scen


def _initial_ci(args, template, scen):
    if args.ci_kjs is not None and args.fit_speed_kmh is not None:
        raise ConfigError("give only one of --ci-kjs / --fit-speed-kmh", "--ci-kjs")
    if args.ci_kjs is not None:
        if args.ci_kjs < 0:
            raise ConfigError("cost index must be non-negative", "--ci-kjs")
        return args.ci_kjs * KJ_PER_S
    if args.fit_speed_kmh is not None:
        return fit_ci_for_speed(args.fit_speed_kmh * KMH, template)
    if scen is not None:
        return scen.ci0
    raise ConfigError("need --ci-kjs, --fit-speed-kmh or --scenario", "--ci-kjs")


def _ci_in(args, ci0):
    if (args.ci_in_kjs is None) == (args.ci_in_factor is None):
        raise ConfigError("give exactly one of --ci-in-kjs / --ci-in-factor", "--ci-in-kjs")
    if args.ci_in_kjs is not None:
        return args.ci_in_kjs * KJ_PER_S
    return args.ci_in_factor * ci0


def _scheduled_time(template, ci0, route_km):
    leg = template if route_km is None else CruiseLeg(
        route_km * 1e3, template.rho, template.aircraft, template.state, template.ci)
    return solve_init(leg.with_ci(CostIndexFilter.constant(ci0))).t_f_star


def _print_optimum(label, opt, ci0, extra=()):
    print(f"{label}: {opt.v_star / KMH:.2f} km/h ({opt.v_star:.4f} m/s)")
    print(f"flight time: {report.hms(opt.t_f_star)} ({opt.t_f_star:.1f} s)")
    print(f"J*: {opt.j_star / 1e6:.3f} MJ")
    print(f"CI0: {ci0 / KJ_PER_S:.4f} kJ/s")
    for line in extra:
        print(line)
    if opt.clamped.value != "none":
        print(f"note: optimum clamped {opt.clamped.value.replace('_', ' ')}")


def cmd_init(args):
    template, scen = _base_leg(args)
    ci0 = _initial_ci(args, template, scen)
    opt = solve_init(template.with_ci(CostIndexFilter.constant(ci0)))
    _print_optimum("v0*", opt, ci0, [f"sufficiency_ok: {opt.sufficiency_ok}"])
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        with open(out / "init.csv", "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["v_star_kmh", "t_f_star_s", "j_star_MJ", "ci0_kJ_per_s", "clamped"])
            w.writerow([report.fmt(opt.v_star / KMH), report.fmt(opt.t_f_star),
                        report.fmt(opt.j_star / 1e6), report.fmt(ci0 / KJ_PER_S), opt.clamped.value])
    return EXIT_OK


def _resolve_tau(args, template, ci0, text):
    kind, value = parse_tau(text)
    if kind == "seconds":
        return value
    return value * _scheduled_time(template, ci0, args.route_km)


def cmd_optimize(args):
    template, scen = _base_leg(args)
    ci0 = _initial_ci(args, template, scen)
    ci_in = _ci_in(args, ci0)
    if args.tau is None:
        tau = _resolve_tau(args, template, ci0, "frac:0.01")
        tau_note = f"tau: {tau:.2f} s (default 0.01 x scheduled flight time)"
    else:
        tau = _resolve_tau(args, template, ci0, args.tau)
        tau_note = f"tau: {tau:.2f} s"
    opt = solve_optimal(template.with_ci(CostIndexFilter(ci0, ci_in, tau)))
    _print_optimum("v*", opt, ci0, [f"CI_in: {ci_in / KJ_PER_S:.4f} kJ/s", tau_note,
                                    f"sufficiency_ok: {opt.sufficiency_ok}"])
    return EXIT_OK


def cmd_simulate(args):
    if not args.scenario:
        raise ConfigError("simulate needs --scenario", "--scenario")
    sf = load_scenario(args.scenario)
    samples, summary = simulate(sf.scenario)
    out = Path(args.out or ".")
    out.mkdir(parents=True, exist_ok=True)
    report.write_trajectory(out / "trajectory.csv", samples, summary.state_name)
    report.write_summary(out / "summary.csv", summary)

    print(f"v0*: {summary.v0_star / KMH:.2f} km/h, scheduled t_f0*: {report.hms(summary.t_f0_star)}")
    print(f"tau: {summary.tau:.2f} s")
    for seg in summary.segments:
        print(f"segment {seg.index}: v* {seg.v_star / KMH:.2f} km/h, "
              f"duration {report.hms(seg.duration)}, "
              f"time to destination at start {report.hms(seg.optimum.t_f_star)}, "
              f"CI {seg.ci_commanded / KJ_PER_S:.4f} kJ/s, "
              f"energy {seg.energy_used / 1e6:.3f} MJ")
    print(f"dt_arrival: {report.hms(summary.dt_arrival)} ({summary.dt_arrival:.1f} s)")
    print(f"total energy used: {summary.total_energy_used / 1e6:.3f} MJ")
    if args.plot:
        display = render_speed_trace(summary, [s.t for s in samples], smooth=True) \
            if sf.smooth_speed else None
        report.plot_trajectory(out / "trajectory.csv", out / "trajectory.png", display)
    return EXIT_OK


def cmd_sweep(args):
    template, scen = _base_leg(args)
    ci0 = _initial_ci(args, template, scen)
    ci_in = _ci_in(args, ci0)
    af = template.airframe
    if args.v_range_kmh:
        lo, hi = (float(s) * KMH for s in args.v_range_kmh.split(":"))
        if not af.v_min <= lo < hi <= af.v_max:
            raise ConfigError("speed range must lie inside the flight envelope", "--v-range-kmh")
    else:
        lo, hi = af.v_min, af.v_max
    v = np.linspace(lo, hi, args.points)
    ok = template.powertrain.feasible(v, *template._energy_args())

    taus = [_resolve_tau(args, template, ci0, t) for t in args.tau.split(",")]
    columns = {}
    for tau in taus:
        leg = template.with_ci(CostIndexFilter(ci0, ci_in, tau))
        columns[f"J_MJ_tau_{tau:.6g}s"] = _masked_cost(v, ok, leg)
    columns["J_MJ_const_ci0"] = _masked_cost(v, ok, template.with_ci(CostIndexFilter.constant(ci0)))

    out = Path(args.out or ".")
    out.mkdir(parents=True, exist_ok=True)
    with open(out / "sweep.csv", "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["v_kmh", *columns])
        for i, vi in enumerate(v):
            w.writerow([report.fmt(vi / KMH)] + [
                report.fmt(c[i]) if np.isfinite(c[i]) else "" for c in columns.values()])
    for name, c in columns.items():
        print(f"{name}: argmin {v[int(np.nanargmin(c))] / KMH:.2f} km/h")
    if args.plot:
        report.plot_sweep(out / "sweep.csv", out / "sweep.png")
    return EXIT_OK


def _masked_cost(v, ok, leg):
    j = np.full(v.shape, np.nan)
    j[ok] = total_cost(v[ok], leg) / 1e6
    return j


def cmd_fit_ci(args):
    template, _ = _base_leg(args)
    ci = fit_ci_for_speed(args.target_kmh * KMH, template)
    print(f"CI: {ci / KJ_PER_S:.6f} kJ/s")
    return EXIT_OK


def _leg_options(p, ci=True):
    p.add_argument("--scenario", help="scenario file or bundled name (aircraft, route, CI)")
    p.add_argument("--aircraft", help="aircraft file or bundled name")
    p.add_argument("--distance-km", type=float, help="leg length")
    p.add_argument("--rho", type=float, help="air density [kg/m3]")
    p.add_argument("--altitude-m", type=float, help="cruise altitude (ISA density)")
    p.add_argument("--state", type=float, help="initial weight [N] or charge [C]")
    if ci:
        p.add_argument("--ci-kjs", type=float, help="initial cost index [kJ/s]")
        p.add_argument("--fit-speed-kmh", type=float,
                       help="choose CI0 so that the initialization speed is this")


def _ci_in_options(p):
    p.add_argument("--ci-in-kjs", type=float, help="commanded cost index [kJ/s]")
    p.add_argument("--ci-in-factor", type=float, help="commanded cost index as a multiple of CI0")
    p.add_argument("--route-km", type=float,
                   help="route length defining the scheduled time for frac: taus (default: leg)")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: input error: {message}\n")


def build_parser():
    parser = _Parser(prog="econ-cruise", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("init", help="optimal speed with a constant cost index")
    _leg_options(p)
    p.add_argument("--out", help="directory for init.csv")
    p.set_defaults(func=cmd_init)

    p = sub.add_parser("optimize", help="optimal speed after an ATC cost-index step")
    _leg_options(p)
    _ci_in_options(p)
    p.add_argument("--tau", help="time constant: seconds or frac:X of the scheduled time")
    p.set_defaults(func=cmd_optimize)

    p = sub.add_parser("simulate", help="fly a scenario file")
    p.add_argument("--scenario", help="scenario file or bundled name")
    p.add_argument("--out", help="output directory")
    p.add_argument("--plot", action="store_true", help="also write trajectory.png")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("sweep", help="J(v) curves for several time constants")
    _leg_options(p)
    _ci_in_options(p)
    p.add_argument("--tau", default="frac:0.001,frac:0.01,frac:0.1,frac:1",
                   help="comma-separated list of seconds or frac:X")
    p.add_argument("--v-range-kmh", help="lo:hi (default: flight envelope)")
    p.add_argument("--points", type=int, default=400)
    p.add_argument("--out", help="directory for sweep.csv")
    p.add_argument("--plot", action="store_true")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("fit-ci", help="cost index whose initialization speed is a target")
    _leg_options(p, ci=False)
    p.add_argument("--target-kmh", type=float, required=True)
    p.set_defaults(func=cmd_fit_ci)
    return parser


def main(argv=None):
    if os.environ.get("ECON_CRUISE_SEED_DOCS") == "1":
        print(RECIPE)
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InfeasibleLeg, SolverFailure, FuelExhaustion, BatteryDepleted, NoNonnegativeCI) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except (ConfigError, DomainError, json.JSONDecodeError, OSError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
