"""CSV persistence and optional plots for simulations and sweeps."""

import csv
from pathlib import Path

from .ci_dynamics import KJ_PER_S

SUMMARY_COLUMNS = ["segment", "v_star_kmh", "duration_s", "ci_kJ_per_s", "energy_used_MJ"]


def fmt(x):
    return f"{x:.12g}"


def hms(seconds):
    """Format a duration as h:mm:ss (negative durations keep their sign)."""
    sign = "-" if seconds < 0 else ""
    s = int(round(abs(seconds)))
    return f"{sign}{s // 3600}:{s % 3600 // 60:02d}:{s % 60:02d}"


def write_trajectory(path, samples, state_name):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["t_s", "x_m", "v_mps", "ci_W", "energy_J", state_name])
        for s in samples:
            w.writerow([fmt(s.t), fmt(s.x), fmt(s.v_commanded), fmt(s.ci),
                        fmt(s.energy_available), fmt(s.weight_or_charge)])


def write_summary(path, summary):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(SUMMARY_COLUMNS)
        for seg in summary.segments:
            w.writerow([seg.index, fmt(seg.v_star * 3.6), fmt(seg.duration),
                        fmt(seg.ci_commanded / KJ_PER_S), fmt(seg.energy_used / 1e6)])
        w.writerow(["dt_arrival_s", "", fmt(summary.dt_arrival), "", ""])


def read_columns(path):
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    header, body = rows[0], rows[1:]
    return {h: [float(r[i]) if r[i] != "" else float("nan") for r in body]
            for i, h in enumerate(header)}


def plot_trajectory(csv_path, out_path, speed_display=None):
    """CI and airspeed against time, available energy against distance."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    cols = read_columns(csv_path)
    t_min = [t / 60 for t in cols["t_s"]]
    fig, (ax_ci, ax_v, ax_e) = plt.subplots(3, 1, figsize=(7, 9))
    ax_ci.plot(t_min, [c / KJ_PER_S for c in cols["ci_W"]])
    ax_ci.set_ylabel("CI [kJ/s]")
    ax_v.plot(t_min, [v * 3.6 for v in cols["v_mps"]], label="commanded")
    if speed_display is not None:
        ax_v.plot(t_min, [v * 3.6 for v in speed_display], "--", label="smoothed")
        ax_v.legend()
    ax_v.set_ylabel("airspeed [km/h]")
    ax_v.set_xlabel("time [min]")
    ax_e.plot([x / 1e3 for x in cols["x_m"]], [e / 1e6 for e in cols["energy_J"]])
    ax_e.set_xlabel("distance [km]")
    ax_e.set_ylabel("available energy [MJ]")
    fig.tight_layout()
    fig.savefig(out_path, dpi=120)
    plt.close(fig)


def plot_sweep(csv_path, out_path):
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    cols = read_columns(csv_path)
    v = cols.pop("v_kmh")
    fig, ax = plt.subplots(figsize=(7, 4.5))
    for name, j in cols.items():
        ax.plot(v, j, "--" if name.endswith("const_ci0") else "-", label=name)
    ax.set_xlabel("airspeed [km/h]")
    ax.set_ylabel("J [MJ]")
    ax.legend(fontsize="small")
    fig.tight_layout()
    fig.savefig(out_path, dpi=120)
    plt.close(fig)
