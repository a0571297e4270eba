"""Benchmark harness: simulate, perturb, compare, and aggregate.

Each ``(x, rep)`` point gets its own seed, derived from the run seed with
``numpy.random.SeedSequence``, so a single point can be regenerated without
replaying the whole run.  Rows are emitted sorted by ``(x, rep, algorithm)``.
"""

from __future__ import annotations

import csv
import io
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .bnb import branch_and_bound
from .dp import dp_bounded, dp_gamma_heuristic, two_generation_exact
from .errors import NoMatchingWithinBound, PreconditionViolated
from .heuristic import random_matching
from .pedfile import write_ped
from .simulate import PerturbConfig, WrightFisherConfig, perturb, wright_fisher

FIELDS = ("x", "rep", "algorithm", "distance", "normalized", "elapsed_ms", "seed")
ALGORITHMS = ("bb", "two-gen", "dp", "dp-gamma", "random")
TRUTH = "bb"


def default_grid(points: int = 50) -> list[float]:
    """``points`` evenly spaced fractions ``1/points, 2/points, ..., 1``.

    The default of 50 points in steps of 0.02 gives 2500 pairs at 50 reps.
    """
    if points < 1:
        raise ValueError("need at least one grid point")
    return [round(k / points, 6) for k in range(1, points + 1)]


@dataclass
class BenchConfig:
    generations: int = 3
    size: int = 14
    lam: float = 3.0
    grid: list = field(default_factory=default_grid)
    reps: int = 50
    algorithms: tuple = ("bb", "dp", "random")
    k: int = 8
    gamma: int = 2
    trials: int = 100
    seed: int = 0
    cap: int = 14
    monogamous: bool = False

    def check(self):
        unknown = set(self.algorithms) - set(ALGORITHMS)
        if unknown:
            raise ValueError(f"unknown algorithm(s): {', '.join(sorted(unknown))}")
        if self.reps < 1:
            raise ValueError("reps must be positive")
        WrightFisherConfig(self.generations, self.size, self.lam, 0).check()

    def selected(self) -> tuple:
        """Algorithms actually run; branch and bound only below the cap."""
        free_per_gender = self.size // 2 * (self.generations - 1)
        algos = [a for a in ALGORITHMS if a in self.algorithms]
        if "bb" in algos and free_per_gender > self.cap:
            algos.remove("bb")
        return tuple(algos)


def point_seed(seed: int, xi: int, rep: int) -> int:
    return int(np.random.SeedSequence([seed, xi, rep]).generate_state(1)[0])


def make_pair(config: BenchConfig, x: float, pseed: int):
    p = wright_fisher(WrightFisherConfig(config.generations, config.size, config.lam, pseed))
    q = perturb(p, PerturbConfig(x, config.monogamous, pseed + 1))
    return p, q


def run_algorithm(name: str, p, q, config: BenchConfig, seed: int):
    """One report; ``dp`` falls back to the random heuristic when it fails."""
    if name == "bb":
        return branch_and_bound(p, q, cap=config.cap)
    if name == "two-gen":
        return two_generation_exact(p, q)
    if name == "dp-gamma":
        return dp_gamma_heuristic(p, q, config.gamma)
    if name == "random":
        return random_matching(p, q, config.trials, seed)
    if name == "dp":
        start = time.perf_counter()
        try:
            return dp_bounded(p, q, config.k)
        except (NoMatchingWithinBound, PreconditionViolated):
            rep = random_matching(p, q, config.trials, seed)
            rep.params = {"k": config.k, "fallback": "random"}
            rep.elapsed = time.perf_counter() - start
            return rep
    raise ValueError(f"unknown algorithm {name!r}")


def _point(args):
    config, xi, x, rep, algos, timing, pairs_dir = args
    pseed = point_seed(config.seed, xi, rep)
    p, q = make_pair(config, x, pseed)
    if pairs_dir:
        write_ped(p, os.path.join(pairs_dir, f"x{xi:03d}_r{rep:03d}_a.ped"))
        write_ped(q, os.path.join(pairs_dir, f"x{xi:03d}_r{rep:03d}_b.ped"))
    total = p.num_edges + q.num_edges
    rows = []
    for name in sorted(algos):
        report = run_algorithm(name, p, q, config, pseed)
        rows.append({
            "x": f"{x:.4f}", "rep": rep, "algorithm": name,
            "distance": report.distance,
            "normalized": f"{report.distance / total if total else 0.0:.6f}",
            "elapsed_ms": f"{report.elapsed * 1000.0 if timing else 0.0:.3f}",
            "seed": pseed,
        })
    return rows


def threads() -> int:
    try:
        return max(1, int(os.environ.get("PEDCMP_THREADS", "1")))
    except ValueError:
        return 1


def bench(config: BenchConfig, timing: bool = False, pairs_dir=None):
    """Yield one row dict per (x, rep, algorithm).

    Without ``timing`` the ``elapsed_ms`` column is zero so that repeated
    runs are byte-identical.
    """
    config.check()
    algos = config.selected()
    if pairs_dir:
        os.makedirs(pairs_dir, exist_ok=True)
    jobs = [(config, xi, x, rep, algos, timing, pairs_dir)
            for xi, x in enumerate(config.grid) for rep in range(config.reps)]
    workers = threads()
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for rows in pool.map(_point, jobs):
                yield from rows
    else:
        for job in jobs:
            yield from _point(job)


def write_rows(rows, stream):
    writer = csv.DictWriter(stream, fieldnames=FIELDS, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow(row)
        stream.flush()


def read_rows(stream) -> list[dict]:
    reader = csv.DictReader(stream)
    if tuple(reader.fieldnames or ()) != FIELDS:
        raise ValueError(f"expected CSV header {','.join(FIELDS)}")
    rows = []
    for r in reader:
        rows.append({"x": float(r["x"]), "rep": int(r["rep"]), "algorithm": r["algorithm"],
                     "distance": int(r["distance"]), "normalized": float(r["normalized"]),
                     "elapsed_ms": float(r["elapsed_ms"]), "seed": int(r["seed"])})
    return rows


def _quartiles(values) -> dict:
    q1, med, q3 = np.percentile(np.asarray(values, dtype=float), [25, 50, 75])
    return {"q1": float(q1), "median": float(med), "q3": float(q3)}


def summarize(rows: list[dict]) -> dict:
    """Per-x means and quartiles, differences against the exact answer,
    and per-algorithm runtime quartiles."""
    by_x = {}
    for r in rows:
        by_x.setdefault(r["x"], {}).setdefault(r["algorithm"], {})[r["rep"]] = r
    points = []
    for x in sorted(by_x):
        algos = by_x[x]
        entry = {"x": x, "algorithms": {}}
        truth = algos.get(TRUTH, {})
        for name in sorted(algos):
            reps = algos[name]
            vals = [reps[k]["normalized"] for k in sorted(reps)]
            stats = {"n": len(vals), "mean": float(np.mean(vals)), **_quartiles(vals)}
            common = sorted(set(reps) & set(truth))
            if name != TRUTH and common:
                stats["mean_diff"] = float(np.mean([reps[k]["normalized"] - truth[k]["normalized"]
                                                    for k in common]))
                stats["exact_fraction"] = float(np.mean([reps[k]["distance"] == truth[k]["distance"]
                                                         for k in common]))
            entry["algorithms"][name] = stats
        points.append(entry)
    runtime = {}
    for name in sorted({r["algorithm"] for r in rows}):
        runtime[name] = _quartiles([r["elapsed_ms"] for r in rows if r["algorithm"] == name])
    return {"points": points, "runtime_ms": runtime}


def format_summary(summary: dict) -> str:
    out = io.StringIO()
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["x", "algorithm", "n", "mean", "q1", "median", "q3", "mean_diff", "exact_fraction"])
    for pt in summary["points"]:
        for name, s in pt["algorithms"].items():
            w.writerow([f"{pt['x']:.4f}", name, s["n"], f"{s['mean']:.6f}", f"{s['q1']:.6f}",
                        f"{s['median']:.6f}", f"{s['q3']:.6f}",
                        f"{s['mean_diff']:.6f}" if "mean_diff" in s else "",
                        f"{s['exact_fraction']:.4f}" if "exact_fraction" in s else ""])
    out.write("\n")
    w.writerow(["algorithm", "runtime_q1_ms", "runtime_median_ms", "runtime_q3_ms"])
    for name, s in summary["runtime_ms"].items():
        w.writerow([name, f"{s['q1']:.3f}", f"{s['median']:.3f}", f"{s['q3']:.3f}"])
    return out.getvalue()
