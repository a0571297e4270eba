"""Figures for benchmark summaries, written straight to image files."""

from __future__ import annotations

import os

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

DPI = 150
STYLE = {
    "bb": dict(color="black", marker="o", label="exact (branch and bound)"),
    "random": dict(color="tab:blue", marker="s", label="random matching"),
    "dp": dict(color="tab:red", marker="^", label="DP (random fallback)"),
    "dp-gamma": dict(color="tab:green", marker="v", label="DP, gamma best"),
    "two-gen": dict(color="tab:purple", marker="D", label="two-generation exact"),
}


def _save(fig, path):
    path = os.path.expanduser(path)
    fig.savefig(path, dpi=DPI, bbox_inches="tight")
    plt.close(fig)
    return path


def accuracy_figure(summary: dict, path):
    """Mean normalized distance per algorithm (left) and the gap to the
    exact answer (right)."""
    fig, (left, right) = plt.subplots(1, 2, figsize=(10, 4))
    xs = [pt["x"] for pt in summary["points"]]
    names = sorted({n for pt in summary["points"] for n in pt["algorithms"]})
    for name in names:
        style = STYLE.get(name, dict(label=name))
        ys = [pt["algorithms"].get(name, {}).get("mean", float("nan")) for pt in summary["points"]]
        left.plot(xs, ys, **style)
        diffs = [pt["algorithms"].get(name, {}).get("mean_diff") for pt in summary["points"]]
        if any(d is not None for d in diffs):
            right.plot(xs, [float("nan") if d is None else d for d in diffs], **style)
    left.plot(xs, xs, color="grey", linestyle=":", label="x")
    left.set_xlabel("fraction of non-founders perturbed (x)")
    left.set_ylabel("normalized distance")
    left.legend(frameon=False, fontsize="small")
    right.axhline(0.0, color="grey", linewidth=0.8)
    right.set_xlabel("fraction of non-founders perturbed (x)")
    right.set_ylabel("estimate minus exact")
    right.legend(frameon=False, fontsize="small")
    return _save(fig, path)


def runtime_figure(rows: list[dict], path):
    """Box plots of per-pair running time, outliers hidden."""
    names = sorted({r["algorithm"] for r in rows})
    data = [[r["elapsed_ms"] for r in rows if r["algorithm"] == n] for n in names]
    fig, ax = plt.subplots(figsize=(5, 4))
    ax.boxplot(data, showfliers=False)
    ax.set_xticks(range(1, len(names) + 1), names)
    ax.set_ylabel("running time (ms)")
    return _save(fig, path)


def render(summary: dict, rows: list[dict], directory) -> list[str]:
    os.makedirs(directory, exist_ok=True)
    return [accuracy_figure(summary, os.path.join(directory, "accuracy.png")),
            runtime_figure(rows, os.path.join(directory, "runtime.png"))]
