"""The ``pedcmp`` command line.

Exit codes: 0 success, 1 negative comparison (``iso``), 2 input error,
3 precondition violation.
"""

from __future__ import annotations

import argparse
import json
import sys
from collections import Counter

from . import bench as benchmod
from .dp import recurrence_T
from .errors import (NoMatchingWithinBound, NotCompatiblyLeafLabeled, NotGenerational,
                     NotLeafLabeled, PedigreeError, PreconditionViolated, TooLarge)
from .gadgets import (bipartite_to_pedigree, cut_paste_distance, leaf_label_gadget,
                      mcip_to_trees, read_edge_list, read_int_list, tree_to_monogamous_pedigree)
from .iso import brute_force_isomorphic, leaf_labeled_isomorphic
from .pedfile import format_ped, read_ped, write_ped
from .pedigree import generations, is_monogamous
from .simulate import PerturbConfig, WrightFisherConfig, perturb_with_log, wright_fisher

EXIT_OK, EXIT_NEGATIVE, EXIT_INPUT, EXIT_PRECONDITION = 0, 1, 2, 3
PRECONDITION_ERRORS = (PreconditionViolated, NotCompatiblyLeafLabeled, NotLeafLabeled,
                       NoMatchingWithinBound, TooLarge, NotGenerational)


def _emit(text: str, path=None):
    if path:
        with open(path, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def cmd_validate(args):
    p = read_ped(args.pedigree)
    try:
        gens = max(generations(p), default=0)
    except NotGenerational:
        gens = None
    info = {
        "individuals": len(p),
        "edges": p.num_edges,
        "generations": gens,
        "monogamous": is_monogamous(p),
        "leaf_labeled": p.is_leaf_labeled(),
    }
    if args.json:
        _emit(_dump(info))
    else:
        gen_text = "not generational" if gens is None else str(gens)
        _emit(f"valid: {info['individuals']} individuals, {info['edges']} edges\n"
              f"generations: {gen_text}\n"
              f"monogamous: {'yes' if info['monogamous'] else 'no'}\n"
              f"leaf-labeled: {'yes' if info['leaf_labeled'] else 'no'}\n")
    return EXIT_OK


def cmd_generate(args):
    p = wright_fisher(WrightFisherConfig(args.gens, args.size, args.lam, args.seed))
    _emit(format_ped(p), args.output)
    return EXIT_OK


def cmd_perturb(args):
    p = read_ped(args.pedigree)
    q, log = perturb_with_log(p, PerturbConfig(args.frac, args.monogamous, args.seed))
    _emit(format_ped(q), args.output)
    for ident in log.skipped:
        print(f"no valid reassignment for {ident}; skipped", file=sys.stderr)
    return EXIT_OK


def cmd_iso(args):
    p, q = read_ped(args.a), read_ped(args.b)
    if args.brute:
        m = brute_force_isomorphic(p, q, cap=args.cap)
    else:
        m = leaf_labeled_isomorphic(p, q)
    if m is None:
        if args.json:
            _emit(_dump({"isomorphic": False}))
        else:
            _emit("not isomorphic\n")
        return EXIT_NEGATIVE
    pairs = sorted(m.as_ids().items())
    if args.json:
        _emit(_dump({"isomorphic": True, "matching": dict(pairs)}))
    else:
        _emit("".join(f"{a} -> {b}\n" for a, b in pairs))
    return EXIT_OK


def _report_text(report, timing: bool) -> str:
    d = report.to_dict(timing=timing)
    lines = [f"distance: {d['distance']}",
             f"algorithm: {d['algorithm']}",
             "params: " + " ".join(f"{k}={v}" for k, v in sorted(d["params"].items()))]
    if timing:
        lines.append(f"elapsed_ms: {d['elapsed_ms']:.3f}")
    lines.append("matching:")
    lines += [f"  {a} -> {b}" for a, b in d["matching"].items()]
    lines.append("delete:")
    lines += [f"  {a} {b}" for a, b in d["edit_path"]["delete"]]
    lines.append("add:")
    lines += [f"  {a} {b}" for a, b in d["edit_path"]["add"]]
    return "\n".join(lines) + "\n"


def cmd_compare(args):
    p, q = read_ped(args.a), read_ped(args.b)
    config = benchmod.BenchConfig(k=args.k, gamma=args.gamma, trials=args.trials, cap=args.cap)
    if args.algo == "dp" and args.budget:
        sizes = Counter(zip(generations(p), p.genders))
        m = max(sizes.values(), default=1)
        print(f"enumeration budget per step: T({m},{args.k})^2 = {recurrence_T(m, args.k) ** 2}",
              file=sys.stderr)
    if args.algo == "dp" and args.no_fallback:
        from .dp import dp_bounded
        report = dp_bounded(p, q, args.k)
    else:
        report = benchmod.run_algorithm(args.algo, p, q, config, args.seed)
    if args.json:
        _emit(_dump(report.to_dict(timing=args.timing)))
    else:
        _emit(_report_text(report, args.timing))
    return EXIT_OK


def cmd_gadget(args):
    if args.kind == "bipartite":
        if len(args.inputs) != 1:
            raise PedigreeError("bipartite gadget takes one edge-list file")
        _emit(format_ped(bipartite_to_pedigree(read_edge_list(args.inputs[0]))), args.output)
        return EXIT_OK
    if len(args.inputs) != 2:
        raise PedigreeError(f"{args.kind} gadget takes two input files")
    if args.kind == "mcip":
        t1, t2 = mcip_to_trees(read_int_list(args.inputs[0]), read_int_list(args.inputs[1]))
        first, second = tree_to_monogamous_pedigree(t1), tree_to_monogamous_pedigree(t2)
        if len(t1) == len(t2):
            print(f"tree cut/paste distance: {cut_paste_distance(t1, t2)}", file=sys.stderr)
    else:
        first, second = leaf_label_gadget(read_ped(args.inputs[0]), read_ped(args.inputs[1]), args.seed)
    if not args.out2:
        raise PedigreeError(f"{args.kind} gadget writes two pedigrees; pass --out2")
    _emit(format_ped(first), args.output)
    write_ped(second, args.out2)
    return EXIT_OK


def _grid(args):
    if args.grid:
        return [float(v) for v in args.grid.split(",") if v.strip()]
    return benchmod.default_grid(args.points)


def cmd_bench(args):
    config = benchmod.BenchConfig(
        generations=args.gens, size=args.size, lam=args.lam, grid=_grid(args), reps=args.reps,
        algorithms=tuple(a.strip() for a in args.algos.split(",") if a.strip()),
        k=args.k, gamma=args.gamma, trials=args.trials, seed=args.seed, cap=args.cap,
        monogamous=args.monogamous)
    try:
        config.check()
    except ValueError as exc:
        raise PedigreeError(str(exc)) from None
    rows = benchmod.bench(config, timing=args.timing, pairs_dir=args.pairs_dir)
    handle = open(args.output, "w", encoding="utf-8", newline="\n") if args.output else sys.stdout
    try:
        if args.json:
            handle.write(_dump(list(rows)))
        else:
            benchmod.write_rows(rows, handle)
    finally:
        if args.output:
            handle.close()
    return EXIT_OK


def cmd_summarize(args):
    with open(args.rows, encoding="utf-8") as handle:
        try:
            rows = benchmod.read_rows(handle)
        except (ValueError, KeyError) as exc:
            raise PedigreeError(f"{args.rows}: {exc}") from None
    summary = benchmod.summarize(rows)
    _emit(_dump(summary) if args.json else benchmod.format_summary(summary), args.output)
    if args.figures:
        from .plotting import render

        for path in render(summary, rows, args.figures):
            print(f"wrote {path}", file=sys.stderr)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pedcmp", description="Compare pedigrees.")
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("validate", help="check a .ped file")
    sp.add_argument("pedigree")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_validate)

    sp = sub.add_parser("generate", help="simulate a Wright-Fisher pedigree")
    sp.add_argument("--gens", type=int, default=3)
    sp.add_argument("--size", type=int, default=14, help="individuals per generation (2m)")
    sp.add_argument("--lambda", dest="lam", type=float, default=3.0)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_generate)

    sp = sub.add_parser("perturb", help="reassign parents of a fraction of non-founders")
    sp.add_argument("pedigree")
    sp.add_argument("--frac", type=float, required=True)
    sp.add_argument("--monogamous", action="store_true")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_perturb)

    sp = sub.add_parser("iso", help="test two leaf-labeled pedigrees for isomorphism")
    sp.add_argument("a")
    sp.add_argument("b")
    sp.add_argument("--brute", action="store_true", help="exhaustive search instead")
    sp.add_argument("--cap", type=int, default=14)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_iso)

    sp = sub.add_parser("compare", help="edit distance between two pedigrees")
    sp.add_argument("a")
    sp.add_argument("b")
    sp.add_argument("--algo", choices=benchmod.ALGORITHMS, default="bb")
    sp.add_argument("--k", type=int, default=8)
    sp.add_argument("--gamma", type=int, default=2)
    sp.add_argument("--trials", type=int, default=100)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--cap", type=int, default=14)
    sp.add_argument("--no-fallback", action="store_true",
                    help="report DP failures instead of running the random heuristic")
    sp.add_argument("--budget", action="store_true", help="print the DP enumeration budget first")
    sp.add_argument("--json", action="store_true")
    sp.add_argument("--timing", action="store_true", help="include wall-clock time")
    sp.set_defaults(func=cmd_compare)

    sp = sub.add_parser("gadget", help="build reduction instances")
    sp.add_argument("kind", choices=("bipartite", "mcip", "leaflabel"))
    sp.add_argument("inputs", nargs="+")
    sp.add_argument("--seed", type=int, default=0, help="label shuffle seed (leaflabel)")
    sp.add_argument("-o", "--output")
    sp.add_argument("--out2")
    sp.set_defaults(func=cmd_gadget)

    sp = sub.add_parser("bench", help="simulate, perturb and compare")
    sp.add_argument("--gens", type=int, default=3)
    sp.add_argument("--size", type=int, default=14)
    sp.add_argument("--lambda", dest="lam", type=float, default=3.0)
    sp.add_argument("--points", type=int, default=50, help="x values 1/N, 2/N, ..., 1")
    sp.add_argument("--grid", help="comma-separated x values (overrides --points)")
    sp.add_argument("--reps", type=int, default=50)
    sp.add_argument("--algos", default="bb,dp,random")
    sp.add_argument("--k", type=int, default=8)
    sp.add_argument("--gamma", type=int, default=2)
    sp.add_argument("--trials", type=int, default=100)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--cap", type=int, default=14)
    sp.add_argument("--monogamous", action="store_true")
    sp.add_argument("--pairs-dir", help="also write every simulated pair as .ped files")
    sp.add_argument("--timing", action="store_true", help="record wall-clock time per row")
    sp.add_argument("--json", action="store_true")
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_bench)

    sp = sub.add_parser("summarize", help="aggregate bench rows")
    sp.add_argument("rows")
    sp.add_argument("--figures", help="directory for accuracy.png and runtime.png")
    sp.add_argument("--json", action="store_true")
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_summarize)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except PRECONDITION_ERRORS as exc:
        print(f"pedcmp: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except (PedigreeError, OSError, ValueError) as exc:
        print(f"pedcmp: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
