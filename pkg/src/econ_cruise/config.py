"""
Aircraft and scenario files.

Both are JSON documents with unit-suffixed keys.  Unknown keys are
rejected, and every error names the key path it concerns.
"""

from dataclasses import dataclass
from importlib import resources
import json
from pathlib import Path

from jsonschema import Draft202012Validator
from jsonschema.exceptions import best_match

from .airframe import KMH, AirframeParams
from .atmosphere import density
from .ci_dynamics import KJ_PER_S, CostIndexFilter
from .energy import AircraftModel, ElectricPowertrain, FuelPowertrain
from .errors import ConfigError, DomainError
from .optimizer import CruiseLeg, envelope_ci_max, fit_ci_for_speed
from .scenario import AtcEvent, Scenario, TauRule

_NUM = {"type": "number"}
_POS = {"type": "number", "exclusiveMinimum": 0}
_NONNEG = {"type": "number", "minimum": 0}


def _obj(properties, required=(), **extra):
    return {
        "type": "object",
        "properties": properties,
        "required": list(required),
        "additionalProperties": False,
        **extra,
    }


AIRCRAFT_SCHEMA = _obj(
    {
        "name": {"type": "string"},
        "airframe": _obj(
            {"wing_area_m2": _POS, "cd0": _POS, "cd2": _POS, "v_min_kmh": _POS, "v_max_kmh": _POS},
            ["wing_area_m2", "cd0", "cd2", "v_min_kmh", "v_max_kmh"],
        ),
        "fuel": _obj(
            {"sfc_kg_per_Ns": _POS, "heating_value_J_per_kg": _POS, "fuel_mass_kg": _POS,
             "dry_mass_kg": _NONNEG},
            ["sfc_kg_per_Ns", "fuel_mass_kg", "dry_mass_kg"],
        ),
        "electric": _obj(
            {"voltage_V": _POS, "efficiency": _POS, "q0_C": _POS, "mass_kg": _POS},
            ["voltage_V", "efficiency", "q0_C", "mass_kg"],
        ),
    },
    ["airframe"],
)

_CI_IN = _obj(
    {"ci_kJ_per_s": _NONNEG, "fraction_of_ci_max": _NONNEG, "fit_to_speed_kmh": _POS},
    minProperties=1,
    maxProperties=1,
)

SCENARIO_SCHEMA = _obj(
    {
        "aircraft": {"type": "string"},
        "route": _obj(
            {"x0_km": _NONNEG, "xf_km": _POS, "altitude_m": _NONNEG, "rho_override": _POS},
            ["x0_km", "xf_km"],
        ),
        "ci": _obj(
            {"ci0_kJ_per_s": _NONNEG, "fraction_of_ci_max": _POS, "ci_max_kJ_per_s": _POS,
             "fit_to_speed_kmh": _POS, "ci_max_from_envelope": {"type": "boolean"}},
            minProperties=1,
        ),
        "tau": _obj({"seconds": _POS, "fraction_of_tf0": _POS}, minProperties=1, maxProperties=1),
        "events": {
            "type": "array",
            "items": _obj({"at_km": _NUM, "at_s": _NUM, "ci_in": _CI_IN}, ["ci_in"]),
        },
        "output": _obj({"sample_step_s": _POS, "smooth_speed": {"type": "boolean"}}),
    },
    ["aircraft", "route", "ci"],
)

RECIPE = """\
Reproduction recipe
  econ-cruise simulate --scenario paper_electric --out out/electric
      all-electric column: v0 84.21 km/h, CI0 fitted to it, CI_max = 10 CI0,
      ATC events at 40 km (0.2 CI_max) and 100 km (0.15 CI_max), tau = 0.01 tf0
  econ-cruise simulate --scenario paper_fuel --out out/fuel
      fuel column with m_dry = 0, e = 43 MJ/kg, rho = 0.4135, S_fc_w = g * 1.92e-5;
      283.03 km/h lies below the zero-CI optimum of this model, so the CI0 fit fails
  econ-cruise simulate --scenario fuel_demo --out out/fuel_demo
      same event pattern for the fuel aircraft with CI0 fitted to 600 km/h
"""


def _path_str(parts):
    return ".".join(str(p) for p in parts)


def _validate(doc, schema, what):
    error = best_match(Draft202012Validator(schema).iter_errors(doc))
    if error is None:
        return
    path = list(error.absolute_path)
    if error.validator == "additionalProperties":
        extra = sorted(set(error.instance) - set(error.schema.get("properties", {})))
        path.append(extra[0])
        raise ConfigError(f"unknown key in {what}", _path_str(path))
    if error.validator == "required":
        missing = [k for k in error.validator_value if k not in error.instance]
        path.append(missing[0])
        raise ConfigError(f"missing required key in {what}", _path_str(path))
    raise ConfigError(error.message, _path_str(path))


def bundled_names():
    files = resources.files("econ_cruise") / "data"
    return sorted(p.name for p in files.iterdir() if p.name.endswith((".json", ".scenario")))


def _read(ref, base_dir, suffix):
    """Load JSON from a path, or from a bundled file by bare name."""
    candidates = []
    p = Path(ref)
    if base_dir is not None and not p.is_absolute():
        candidates.append(Path(base_dir) / p)
    candidates.append(p)
    for c in candidates:
        if c.is_file():
            return json.loads(c.read_text()), c.parent
    bundled = resources.files("econ_cruise") / "data" / (ref if ref.endswith(suffix) else ref + suffix)
    if bundled.is_file():
        return json.loads(bundled.read_text()), None
    raise ConfigError(f"no such file or bundled entry: {ref!r}")


def aircraft_from_dict(doc):
    _validate(doc, AIRCRAFT_SCHEMA, "aircraft file")
    blocks = [k for k in ("fuel", "electric") if k in doc]
    if len(blocks) != 1:
        raise ConfigError("exactly one of 'fuel' or 'electric' is required", "")
    a = doc["airframe"]
    try:
        airframe = AirframeParams(a["wing_area_m2"], a["cd0"], a["cd2"],
                                  a["v_min_kmh"] * KMH, a["v_max_kmh"] * KMH)
    except DomainError as exc:
        raise ConfigError(str(exc), "airframe") from exc
    try:
        if blocks[0] == "fuel":
            f = doc["fuel"]
            powertrain = FuelPowertrain(
                sfc_mass=f["sfc_kg_per_Ns"],
                fuel_mass=f["fuel_mass_kg"],
                dry_mass=f["dry_mass_kg"],
                heating_value=f.get("heating_value_J_per_kg", 43e6),
            )
        else:
            e = doc["electric"]
            powertrain = ElectricPowertrain(e["voltage_V"], e["efficiency"], e["q0_C"], e["mass_kg"])
    except DomainError as exc:
        raise ConfigError(str(exc), blocks[0]) from exc
    return AircraftModel(doc.get("name", ""), airframe, powertrain)


def load_aircraft(ref, base_dir=None):
    doc, _ = _read(ref, base_dir, ".json")
    return aircraft_from_dict(doc)


@dataclass(frozen=True)
class ScenarioFile:
    scenario: Scenario
    ci_max: float | None
    smooth_speed: bool = False


def rho_for_route(route, path="route"):
    has_alt, has_rho = "altitude_m" in route, "rho_override" in route
    if has_alt == has_rho:
        raise ConfigError("give exactly one of altitude_m / rho_override", path)
    if has_rho:
        return route["rho_override"]
    try:
        return density(route["altitude_m"])
    except DomainError as exc:
        raise ConfigError(str(exc), f"{path}.altitude_m") from exc


def resolve_initial_ci(ci_block, template):
    """Return (ci0 [W], ci_max [W] or None) from a scenario 'ci' block."""
    ci = ci_block
    frac = ci.get("fraction_of_ci_max")
    ci_max = ci["ci_max_kJ_per_s"] * KJ_PER_S if "ci_max_kJ_per_s" in ci else None
    if ci.get("ci_max_from_envelope"):
        if ci_max is not None:
            raise ConfigError("give only one of ci_max_kJ_per_s / ci_max_from_envelope", "ci")
        ci_max = envelope_ci_max(template)
    direct = [k for k in ("ci0_kJ_per_s", "fit_to_speed_kmh") if k in ci]
    if len(direct) > 1:
        raise ConfigError("give only one of ci0_kJ_per_s / fit_to_speed_kmh", "ci")
    if direct:
        if ci_max is not None and frac is not None:
            raise ConfigError("a given CI_max with fraction_of_ci_max over-determines CI0", "ci")
        if direct[0] == "ci0_kJ_per_s":
            ci0 = ci["ci0_kJ_per_s"] * KJ_PER_S
        else:
            ci0 = fit_ci_for_speed(ci["fit_to_speed_kmh"] * KMH, template)
        if frac is not None:
            ci_max = ci0 / frac
        return ci0, ci_max
    if frac is None or ci_max is None:
        raise ConfigError("need ci0_kJ_per_s, fit_to_speed_kmh, or fraction_of_ci_max with "
                          "ci_max_kJ_per_s or ci_max_from_envelope", "ci")
    return frac * ci_max, ci_max


def resolve_ci_in(block, ci_max, template, path):
    if "ci_kJ_per_s" in block:
        return block["ci_kJ_per_s"] * KJ_PER_S
    if "fraction_of_ci_max" in block:
        if ci_max is None:
            raise ConfigError("fraction_of_ci_max needs a known CI_max", path)
        return block["fraction_of_ci_max"] * ci_max
    return fit_ci_for_speed(block["fit_to_speed_kmh"] * KMH, template)


def scenario_from_dict(doc, base_dir=None):
    _validate(doc, SCENARIO_SCHEMA, "scenario file")
    aircraft = load_aircraft(doc["aircraft"], base_dir)
    route = doc["route"]
    rho = rho_for_route(route)
    x0, xf = route["x0_km"] * 1e3, route["xf_km"] * 1e3
    if not x0 < xf:
        raise ConfigError("x0_km must be smaller than xf_km", "route")
    template = CruiseLeg(xf - x0, rho, aircraft, aircraft.powertrain.initial_state(),
                         CostIndexFilter.constant(0.0))
    ci0, ci_max = resolve_initial_ci(doc["ci"], template)

    events = []
    for i, ev in enumerate(doc.get("events", [])):
        path = f"events.{i}"
        if ("at_km" in ev) == ("at_s" in ev):
            raise ConfigError("give exactly one of at_km / at_s", path)
        ci_in = resolve_ci_in(ev["ci_in"], ci_max, template, f"{path}.ci_in")
        if "at_km" in ev:
            events.append(AtcEvent(ci_in, at_position=ev["at_km"] * 1e3))
        else:
            events.append(AtcEvent(ci_in, at_time=ev["at_s"]))

    tau = doc.get("tau", {"fraction_of_tf0": 0.01})
    tau_rule = TauRule(seconds=tau.get("seconds"), fraction_of_tf0=tau.get("fraction_of_tf0"))
    out = doc.get("output", {})
    scenario = Scenario(aircraft, rho, x0, xf, ci0, tuple(events), tau_rule,
                        out.get("sample_step_s", 1.0))
    return ScenarioFile(scenario, ci_max, out.get("smooth_speed", False))


def load_scenario(ref):
    doc, base_dir = _read(ref, None, ".scenario")
    return scenario_from_dict(doc, base_dir)
