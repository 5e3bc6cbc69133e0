"""Optional matplotlib rendering of CLI reports.

Each renderer takes the already-assembled report dict and writes one PNG,
so the figure and the delimited output always describe the same numbers.
Rendering is opt-in via the CLI's --plot flag; nothing here runs on the
default report path.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

_MEASURE_LABELS = (
    ("rr", "risk ratio"),
    ("odds_ratio", "odds ratio"),
    ("sr", "survival ratio"),
)
_DIFF_LABELS = (
    ("rd", "risk difference"),
    ("switch", "switch relative risk"),
)


def _series(rows: list[dict], key: str) -> tuple[list[float], list[float]]:
    xs, ys = [], []
    for row in rows:
        if row.get(key) is not None:
            xs.append(row["background_prev"])
            ys.append(row[key])
    return xs, ys


def plot_stability(report: dict, path: str) -> None:
    rows = report["rows"]
    fig, ax = plt.subplots(figsize=(7, 4.5))
    for key, label in _MEASURE_LABELS:
        xs, ys = _series(rows, key)
        if xs:
            ax.plot(xs, ys, marker="o", label=label)
    ax_diff = ax.twinx()
    for key, label in _DIFF_LABELS:
        xs, ys = _series(rows, key)
        if xs:
            ax_diff.plot(xs, ys, marker="s", linestyle="--", label=label)
    backgrounds = [row["background_prev"] for row in rows]
    if backgrounds and min(backgrounds) > 0 and max(backgrounds) / min(backgrounds) > 10:
        ax.set_xscale("log")
    ax.set_xlabel("background prevalence")
    ax.set_ylabel("ratio scales")
    ax_diff.set_ylabel("difference scales")
    lines, labels = ax.get_legend_handles_labels()
    lines2, labels2 = ax_diff.get_legend_handles_labels()
    ax.legend(lines + lines2, labels + labels2, fontsize=8)
    ax.set_title("measure stability across background prevalences")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_curves(report: dict, path: str) -> None:
    rows = report["rows"]
    fig, ax = plt.subplots(figsize=(6, 4.5))
    valid = [(r["p"], r["value"]) for r in rows if r["valid"]]
    invalid = [(r["p"], r["value"]) for r in rows if not r["valid"]]
    if valid:
        ax.plot([p for p, _ in valid], [v for _, v in valid], marker="o", label="valid")
    if invalid:
        ax.plot(
            [p for p, _ in invalid],
            [v for _, v in invalid],
            linestyle="none",
            marker="x",
            color="crimson",
            label="outside [0, 1]",
        )
    ax.plot([0, 1], [0, 1], linestyle=":", color="gray", label="no effect")
    ax.axhline(0.0, color="black", linewidth=0.6)
    ax.axhline(1.0, color="black", linewidth=0.6)
    params = report.get("params", {})
    ax.set_xlabel("baseline risk")
    ax.set_ylabel("predicted treated risk")
    ax.set_title(f"effect function: {params.get('kind')} = {params.get('value')}")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_bounds(report: dict, path: str) -> None:
    result = report["result"]
    lower, upper = result["lower"], result["upper"]
    fig, ax = plt.subplots(figsize=(6, 2.4))
    ax.hlines(0.0, lower, upper, color="steelblue", linewidth=6)
    ax.plot([lower, upper], [0.0, 0.0], marker="|", markersize=18, color="steelblue")
    mid = (lower + upper) / 2.0
    ax.annotate(f"[{lower:.6g}, {upper:.6g}]", (mid, 0.05), ha="center")
    ax.set_ylim(-0.4, 0.4)
    ax.set_yticks([])
    ax.set_xlabel("Pr(no risk-increase switch)")
    ax.set_title("partial-identification interval")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_simulation(report: dict, path: str) -> None:
    result = report["result"]
    fig, ax = plt.subplots(figsize=(5, 4))
    labels = ["p0", "p1"]
    estimates = [result["p0_hat"], result["p1_hat"]]
    analytic = [result["analytic_p0"], result["analytic_p1"]]
    xs = range(len(labels))
    ax.bar(xs, estimates, width=0.5, color="steelblue", label="simulated")
    ax.plot(xs, analytic, linestyle="none", marker="_", markersize=30,
            color="crimson", label="analytic")
    ax.set_xticks(list(xs))
    ax.set_xticklabels(labels)
    ax.set_ylabel("risk")
    ax.set_title(f"simulation vs analytic risks (n={result['n']})")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


_RENDERERS = {
    "stability": plot_stability,
    "curves": plot_curves,
    "bounds": plot_bounds,
    "simulate": plot_simulation,
}


def render_figure(command: str, report: dict, path: str) -> None:
    try:
        renderer = _RENDERERS[command]
    except KeyError:
        raise ValueError(f"no figure renderer for command {command!r}") from None
    renderer(report, path)
