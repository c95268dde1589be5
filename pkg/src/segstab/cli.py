"""Command-line front end: solve, verify, generate, reduce and bench.

Exit codes: 0 ok, 1 infeasible instance / budget exceeded / violated
solution, 2 usage errors (bad files, variant not supported by the chosen
algorithm).
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import io
from .combiners import seven_approx, three_eps_approx
from .dp import dp_solve, two_approx_hv_v
from .exact import DEFAULT_BUDGET, exists_exactly_one_cover, solve_exact
from .geometry import (BudgetExceeded, InfeasibleError, InstanceError, Variant, VariantMismatch,
                       verify)
from .local_search import LsConfig, local_search
from .lp5 import five_approx
from .reductions import (CnfError, CycleCnf, MonotoneCnf, parse_cnf, reduce_cycle,
                         reduce_monotone, reduce_monotone_vertical_gadget)

ALGOS = ("exact", "lp5", "ls", "dp", "merge2", "merge7", "merge3e")

_D_HORIZONTAL = {Variant.V_H, Variant.HV_H}
_D_VERTICAL = {Variant.H_V, Variant.HV_V}
COMPATIBLE = {
    "exact": set(Variant),
    "lp5": _D_HORIZONTAL,
    "ls": _D_HORIZONTAL,
    "dp": _D_VERTICAL,
    "merge2": _D_VERTICAL,
    "merge7": set(Variant) - {Variant.V_H_ONCE},
    "merge3e": set(Variant) - {Variant.V_H_ONCE},
}


class UsageError(Exception):
    pass


def run_algo(inst, algo: str, k: int = 3, budget: int | None = DEFAULT_BUDGET):
    if inst.variant not in COMPATIBLE[algo]:
        allowed = ", ".join(sorted(v.tag for v in COMPATIBLE[algo]))
        raise VariantMismatch(f"variant mismatch: --algo {algo} does not accept variant "
                              f"{inst.variant.tag} (accepts {allowed})")
    if algo == "exact":
        sol = solve_exact(inst, budget)
        if inst.variant is Variant.V_H_ONCE:
            sol.stats["exactly_once_at_objective"] = exists_exactly_one_cover(inst, sol.objective)
        return sol
    if algo == "lp5":
        return five_approx(inst)
    if algo == "ls":
        return local_search(inst, LsConfig(k=k))
    if algo == "dp":
        return dp_solve(inst)
    if algo == "merge2":
        return two_approx_hv_v(inst)
    if algo == "merge7":
        return seven_approx(inst)
    if algo == "merge3e":
        return three_eps_approx(inst, k)
    raise UsageError(f"unknown algorithm {algo!r}")


def _jsonable(value):
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        items = sorted(value) if isinstance(value, (set, frozenset)) else value
        return [_jsonable(v) for v in items]
    return value


def _read(path):
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _write(path, text):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _load_instance(path):
    try:
        return io.parse(_read(path))
    except (io.ParseError, InstanceError) as exc:
        raise UsageError(f"{path}: {exc}") from None


def cmd_solve(args) -> int:
    inst = _load_instance(args.file)
    start = time.perf_counter()
    sol = run_algo(inst, args.algo, args.k, args.budget)
    elapsed = time.perf_counter() - start
    problems = verify(inst, sol, sol.witness.keys() if args.algo == "dp" else None)
    report = {"file": str(args.file), "algo": args.algo, "variant": inst.variant.tag,
              "objective": sol.objective, "wall_time_s": round(elapsed, 6),
              "verified": not problems, "diagnostics": _jsonable(sol.stats)}
    _write(args.out, io.render_solution(sol))
    report_path = args.report or (args.out + ".json" if args.out and args.out != "-" else None)
    if report_path:
        Path(report_path).write_text(json.dumps(report, indent=2, sort_keys=True) + "\n")
    lines = [f"algo       {args.algo}", f"variant    {inst.variant.tag}",
             f"objective  {sol.objective}", f"time       {elapsed:.4f}s"]
    lines += [f"{k:<10} {json.dumps(_jsonable(v), sort_keys=True)}"
              for k, v in sorted(sol.stats.items()) if k not in ("algo", "swaps")]
    print("\n".join(lines), file=sys.stderr if args.out in (None, "-") else sys.stdout)
    if problems:
        print("\n".join(problems), file=sys.stderr)
        return 1
    return 0


def cmd_verify(args) -> int:
    inst = _load_instance(args.instance)
    try:
        sol = io.parse_solution(_read(args.solution))
    except io.ParseError as exc:
        raise UsageError(f"{args.solution}: {exc}") from None
    problems = verify(inst, sol)
    if problems:
        print("\n".join(problems))
        return 1
    print("ok")
    return 0


def cmd_generate(args) -> int:
    cfg = io.GeneratorConfig(args.seed, args.n_h, args.n_v, args.lo, args.hi, args.lv,
                             _variant(args.variant), args.left_fraction)
    try:
        inst = io.generate(cfg)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _write(args.out, io.render(inst))
    return 0


def cmd_reduce(args) -> int:
    try:
        cnf = parse_cnf(_read(args.cnf))
    except CnfError as exc:
        raise UsageError(f"{args.cnf}: {exc}") from None
    if args.kind == "cycle":
        if not isinstance(cnf, CycleCnf):
            raise UsageError("--kind cycle needs XPOS lines and 3-variable CLAUSE lines")
        inst = reduce_cycle(cnf)
    else:
        if not isinstance(cnf, MonotoneCnf):
            raise UsageError(f"--kind {args.kind} needs 'CLAUSE <sign> <offset> a b c' lines")
        inst = reduce_monotone(cnf) if args.kind == "monotone" else \
            reduce_monotone_vertical_gadget(cnf)
    _write(args.out, io.render(inst))
    return 0


def bench(variant: Variant, algos, seed: int, count: int, n_h: int, n_v: int, k: int = 3,
          budget: int | None = DEFAULT_BUDGET, lo: int = -6, hi: int = 6,
          left_fraction: float = 0.5) -> dict:
    """Ratios against the exact optimum over a seeded batch; deterministic."""
    for a in algos:
        if variant not in COMPATIBLE[a]:
            raise UsageError(f"variant mismatch: {a} does not accept {variant.tag}")
    rows = {a: [] for a in algos}
    skipped = {"budget_exceeded": 0, "infeasible": 0}
    for i in range(count):
        cfg = io.GeneratorConfig(seed + i, n_h, n_v, lo, hi, 0, variant, left_fraction)
        inst = io.generate(cfg)
        try:
            opt = solve_exact(inst, budget).objective
        except BudgetExceeded:
            skipped["budget_exceeded"] += 1
            continue
        except InfeasibleError:
            skipped["infeasible"] += 1
            continue
        for a in algos:
            sol = run_algo(inst, a, k, budget)
            if verify(inst, sol):
                raise AssertionError(f"{a} returned an infeasible solution on seed {seed + i}")
            rows[a].append(Fraction(sol.objective, opt) if opt else Fraction(1))
    table = {}
    for a, ratios in rows.items():
        table[a] = {"instances": len(ratios),
                    "max_ratio": str(max(ratios)) if ratios else None,
                    "mean_ratio": f"{float(sum(ratios) / len(ratios)):.6f}" if ratios else None}
    return {"variant": variant.tag, "seed": seed, "count": count, "n_h": n_h, "n_v": n_v,
            "k": k, "left_fraction": left_fraction, "excluded": skipped, "algorithms": table}


def format_bench(result: dict) -> str:
    head = (f"variant {result['variant']}  seed {result['seed']}  count {result['count']}  "
            f"n_h {result['n_h']}  n_v {result['n_v']}")
    lines = [head, f"{'algo':<8} {'n':>5} {'max':>8} {'mean':>10}"]
    for a, row in result["algorithms"].items():
        lines.append(f"{a:<8} {row['instances']:>5} {str(row['max_ratio']):>8} "
                     f"{str(row['mean_ratio']):>10}")
    ex = result["excluded"]
    lines.append(f"excluded: {ex['budget_exceeded']} over budget, {ex['infeasible']} infeasible")
    return "\n".join(lines) + "\n"


def cmd_bench(args) -> int:
    algos = [a.strip() for a in args.algos.split(",") if a.strip()]
    for a in algos:
        if a not in ALGOS:
            raise UsageError(f"unknown algorithm {a!r}")
    result = bench(_variant(args.variant), algos, args.seed, args.count, args.n_h, args.n_v,
                   args.k, args.budget, args.lo, args.hi, args.left_fraction)
    sys.stdout.write(format_bench(result))
    if args.out:
        Path(args.out).write_text(json.dumps(result, indent=2, sort_keys=True) + "\n")
    return 0


def _variant(tag):
    try:
        return Variant.from_tag(tag)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _budget(text):
    value = int(text)
    return None if value < 0 else value


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="segstab", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", help="solve an instance file")
    s.add_argument("file")
    s.add_argument("--algo", choices=ALGOS, default="exact")
    s.add_argument("--k", type=int, default=3, help="swap size for ls and merge3e")
    s.add_argument("--seed", type=int, default=0, help="accepted for symmetry; solvers are deterministic")
    s.add_argument("--budget", type=_budget, default=DEFAULT_BUDGET,
                   help="node limit for the exact search (negative = unlimited)")
    s.add_argument("--out", help="solution file (default stdout)")
    s.add_argument("--report", help="JSON report path (default <out>.json)")
    s.set_defaults(func=cmd_solve)

    v = sub.add_parser("verify", help="check a solution against an instance")
    v.add_argument("instance")
    v.add_argument("solution")
    v.set_defaults(func=cmd_verify)

    g = sub.add_parser("generate", help="write a seeded random instance")
    g.add_argument("--seed", type=int, required=True)
    g.add_argument("--n-h", type=int, default=5)
    g.add_argument("--n-v", type=int, default=5)
    g.add_argument("--lo", type=int, default=-6)
    g.add_argument("--hi", type=int, default=6)
    g.add_argument("--lv", type=int, default=0)
    g.add_argument("--left-fraction", type=float, default=0.5)
    g.add_argument("--variant", default="HV/HV")
    g.add_argument("--out")
    g.set_defaults(func=cmd_generate)

    r = sub.add_parser("reduce", help="build a stabbing instance from a CNF file")
    r.add_argument("cnf")
    r.add_argument("--kind", choices=("monotone", "vgadget", "cycle"), required=True)
    r.add_argument("--out")
    r.set_defaults(func=cmd_reduce)

    b = sub.add_parser("bench", help="approximation ratios against the exact optimum")
    b.add_argument("--variant", default="HV/H")
    b.add_argument("--algos", default="lp5,ls")
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--count", type=int, default=50)
    b.add_argument("--n-h", type=int, default=6)
    b.add_argument("--n-v", type=int, default=6)
    b.add_argument("--k", type=int, default=3)
    b.add_argument("--lo", type=int, default=-6)
    b.add_argument("--hi", type=int, default=6)
    b.add_argument("--left-fraction", type=float, default=0.5,
                   help="share of verticals left of L_v; use 0 or 1 for dp")
    b.add_argument("--budget", type=_budget, default=DEFAULT_BUDGET)
    b.add_argument("--out", help="JSON result path")
    b.set_defaults(func=cmd_bench)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, VariantMismatch) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except InfeasibleError as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return 1
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
