import csv
import json
import subprocess
import sys

import pytest

from econ_cruise.cli import main
from econ_cruise.report import SUMMARY_COLUMNS

ELECTRIC = ["--aircraft", "yuneec_e430", "--rho", "1.112"]


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_init_fitted_speed(capsys):
    code, out, _ = run(capsys, "init", *ELECTRIC, "--distance-km", "160", "--fit-speed-kmh", "84.21")
    assert code == 0
    assert "84.21 km/h" in out and "1:54:00" in out and "4.3631 kJ/s" in out


def test_init_zero_ci_is_min_drag(capsys):
    from econ_cruise.airframe import min_drag_speed
    from econ_cruise.config import load_aircraft
    ac = load_aircraft("yuneec_e430")
    v_md = min_drag_speed(ac.weight(ac.powertrain.initial_state()), 1.112, ac.airframe)
    code, out, _ = run(capsys, "init", *ELECTRIC, "--distance-km", "160", "--ci-kjs", "0")
    assert code == 0
    assert f"{v_md * 3.6:.2f} km/h" in out


def test_optimize_doubling(capsys):
    code, out, _ = run(capsys, "optimize", *ELECTRIC, "--distance-km", "120", "--fit-speed-kmh", "84.21",
                       "--ci-in-factor", "2", "--route-km", "160")
    assert code == 0
    assert "v*: 96.02 km/h" in out
    assert "default 0.01 x scheduled flight time" in out


def test_optimize_unchanged_ci_matches_init(capsys):
    _, init_out, _ = run(capsys, "init", *ELECTRIC, "--distance-km", "120", "--fit-speed-kmh", "84.21")
    _, opt_out, _ = run(capsys, "optimize", *ELECTRIC, "--distance-km", "120", "--fit-speed-kmh", "84.21",
                        "--ci-in-factor", "1", "--tau", "5")
    assert init_out.splitlines()[0].split()[1] == opt_out.splitlines()[0].split()[1]


def test_simulate_outputs(capsys, tmp_path):
    code, out, _ = run(capsys, "simulate", "--scenario", "paper_electric", "--out", str(tmp_path / "a"))
    assert code == 0
    assert "-0:08:12" in out
    with open(tmp_path / "a" / "summary.csv") as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == SUMMARY_COLUMNS
    assert len(rows) == 5 and rows[-1][0] == "dt_arrival_s"
    assert float(rows[-1][2]) == pytest.approx(-491.7, abs=0.1)
    with open(tmp_path / "a" / "trajectory.csv") as fh:
        header = next(csv.reader(fh))
    assert header == ["t_s", "x_m", "v_mps", "ci_W", "energy_J", "charge_C"]
    run(capsys, "simulate", "--scenario", "paper_electric", "--out", str(tmp_path / "b"))
    for name in ("summary.csv", "trajectory.csv"):
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()


def test_simulate_without_events(capsys, tmp_path):
    doc = {"aircraft": "yuneec_e430",
           "route": {"x0_km": 0, "xf_km": 50, "rho_override": 1.112},
           "ci": {"ci0_kJ_per_s": 3.0}}
    path = tmp_path / "plain.scenario"
    path.write_text(json.dumps(doc))
    code, _, _ = run(capsys, "simulate", "--scenario", str(path), "--out", str(tmp_path / "o"))
    assert code == 0
    with open(tmp_path / "o" / "summary.csv") as fh:
        rows = list(csv.reader(fh))
    assert len(rows) == 3 and float(rows[-1][2]) == 0.0


def test_simulate_fuel_trajectory_header(capsys, tmp_path):
    code, _, _ = run(capsys, "simulate", "--scenario", "fuel_demo", "--out", str(tmp_path))
    assert code == 0
    with open(tmp_path / "trajectory.csv") as fh:
        assert next(csv.reader(fh))[-1] == "weight_N"


def _sweep(capsys, tmp_path, *extra):
    code, _, _ = run(capsys, "sweep", *ELECTRIC, "--distance-km", "120", "--fit-speed-kmh", "84.21",
                     "--route-km", "160", "--out", str(tmp_path), *extra)
    assert code == 0
    with open(tmp_path / "sweep.csv") as fh:
        rows = list(csv.reader(fh))
    header, data = rows[0], [[float(c) for c in r] for r in rows[1:]]
    return header, data


def _argmins(header, data):
    v = [r[0] for r in data]
    return {name: v[min(range(len(data)), key=lambda i: data[i][j])] for j, name in enumerate(header) if j}


def test_sweep_tau_ordering(capsys, tmp_path):
    header, data = _sweep(capsys, tmp_path, "--ci-in-factor", "2", "--points", "2000")
    assert header[-1] == "J_MJ_const_ci0"
    mins = _argmins(header, data)
    tau_cols = header[1:-1]
    speeds = [mins[c] for c in tau_cols]
    assert all(a >= b - 1e-9 for a, b in zip(speeds, speeds[1:]))
    assert speeds[0] == pytest.approx(96.02, abs=0.1)


def test_sweep_large_tau_approaches_constant(capsys, tmp_path):
    header, data = _sweep(capsys, tmp_path, "--ci-in-factor", "2", "--tau", "1e9")
    worst = max(abs(r[1] - r[2]) / abs(r[2]) for r in data)
    assert worst < 1e-4


def test_sweep_unchanged_ci_columns_identical(capsys, tmp_path):
    header, data = _sweep(capsys, tmp_path, "--ci-in-factor", "1")
    for r in data:
        assert max(r[1:]) - min(r[1:]) <= 1e-9 * abs(r[-1])


def test_fit_ci(capsys):
    code, out, _ = run(capsys, "fit-ci", *ELECTRIC, "--distance-km", "160", "--target-kmh", "84.21")
    assert code == 0
    ci = float(out.split()[1])
    assert ci == pytest.approx(4.363, abs=2e-3)
    _, back, _ = run(capsys, "init", *ELECTRIC, "--distance-km", "160", "--ci-kjs", repr(ci))
    assert "84.21 km/h" in back


def test_fit_ci_below_zero_ci_optimum(capsys):
    code, _, err = run(capsys, "fit-ci", *ELECTRIC, "--distance-km", "160", "--target-kmh", "65")
    assert code == 2
    assert "zero-cost-index optimum" in err


def test_infeasible_fuel_scenario_exit_code(capsys, tmp_path):
    code, _, err = run(capsys, "simulate", "--scenario", "paper_fuel", "--out", str(tmp_path))
    assert code == 2


@pytest.mark.parametrize(
    "doc, fragment",
    [
        ({"aircraft": "yuneec_e430", "route": {"x0_km": 0, "xf_km": 10, "rho_override": 1.1},
          "ci": {"ci0_kJ_per_s": 1}, "wind": 3}, "wind"),
        ({"aircraft": "yuneec_e430", "route": {"x0_km": 0, "xf_km": 10},
          "ci": {"ci0_kJ_per_s": 1}}, "route"),
        ({"aircraft": "yuneec_e430", "route": {"x0_km": 0, "xf_km": 10, "rho_override": 1.1},
          "ci": {"ci0_kJ_per_s": 1}, "events": [{"at_km": 5, "ci_in": {"ci_kj": 2}}]},
         "events.0.ci_in.ci_kj"),
    ],
)
def test_malformed_scenario(capsys, tmp_path, doc, fragment):
    path = tmp_path / "bad.scenario"
    path.write_text(json.dumps(doc))
    code, _, err = run(capsys, "simulate", "--scenario", str(path), "--out", str(tmp_path))
    assert code == 3
    assert fragment in err


def test_bad_json_and_missing_file(capsys, tmp_path):
    path = tmp_path / "broken.scenario"
    path.write_text("{not json")
    assert run(capsys, "simulate", "--scenario", str(path))[0] == 3
    assert run(capsys, "simulate", "--scenario", "no_such_thing")[0] == 3


def test_argument_errors_exit_3():
    with pytest.raises(SystemExit) as exc:
        main(["fit-ci", "--aircraft", "yuneec_e430"])
    assert exc.value.code == 3


def test_domain_error_exit_3(capsys):
    code, _, _ = run(capsys, "init", *ELECTRIC, "--distance-km", "160", "--fit-speed-kmh", "500")
    assert code == 3


def test_seed_docs_env(monkeypatch, capsys):
    monkeypatch.setenv("ECON_CRUISE_SEED_DOCS", "1")
    code, out, _ = run(capsys, "init", *ELECTRIC, "--distance-km", "160", "--ci-kjs", "1")
    assert code == 0
    assert out.index("aircraft") < out.index("v0*")


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "econ_cruise", "init", *ELECTRIC, "--distance-km", "10",
                          "--ci-kjs", "1"], capture_output=True, text=True)
    assert res.returncode == 0 and "v0*" in res.stdout
