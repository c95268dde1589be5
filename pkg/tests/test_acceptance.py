"""Acceptance suite: one check per criterion, one PASS/FAIL line each.

Run under pytest, or directly with ``python tests/test_acceptance.py``.
"""
import contextlib
import io as _stdio
import random
import sys
import tempfile
import time
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from segstab import io  # noqa: E402
from segstab.cli import bench, main  # noqa: E402
from segstab.combiners import merge, seven_approx  # noqa: E402
from segstab.dp import dp_solve, two_approx_hv_v  # noqa: E402
from segstab.exact import solve_exact  # noqa: E402
from segstab.geometry import InfeasibleError, Variant, verify  # noqa: E402
from segstab.local_search import LsConfig, local_search, preprocess_candidates  # noqa: E402
from segstab.lp import build_lp1, lp_value, solve_lp, split_variables  # noqa: E402
from segstab.lp5 import (five_approx, partition, solve_horizontal_clusters,  # noqa: E402
                         solve_ray_stabbing_exact)
from segstab.reductions import (audit_vertical_gadget, check_lemma1, check_lemma4,  # noqa: E402
                                intersection_audit, parse_cnf, random_cycle_cnf,
                                random_monotone_cnf, reduce_cycle, reduce_monotone,
                                reduce_monotone_vertical_gadget, render_cycle, render_monotone)

from helpers import (hv_h_batch, improving_swaps, one_sided_batch, power_set_optimum,  # noqa: E402
                     random_instance)

GOLDEN = Path(__file__).parent / "golden"


def c1_exact_oracle():
    """Exact solver equals power-set enumeration on 1000 instances with n <= 14."""
    start = time.perf_counter()
    variants = list(Variant)
    bad = infeasible = 0
    for i in range(1000):
        inst = random_instance(50_000 + i, variants[i % len(variants)], n_max=14)
        want = power_set_optimum(inst)
        if want is None:
            infeasible += 1
            try:
                solve_exact(inst, budget=None)
                bad += 1
            except InfeasibleError:
                pass
            continue
        sol = solve_exact(inst, budget=None)
        if sol.objective != want or verify(inst, sol):
            bad += 1
    elapsed = time.perf_counter() - start
    return bad == 0 and elapsed < 300, (f"1000 instances, {infeasible} infeasible (rejected), "
                                        f"{bad} mismatches, {elapsed:.1f}s")


def c2_one_sided_dp():
    """DP equals the exact optimum on 500 one-sided instances; output verifies via the CLI."""
    bad = 0
    with tempfile.TemporaryDirectory() as tmp:
        tmp = Path(tmp)
        for i, inst in enumerate(one_sided_batch()):
            sol = dp_solve(inst)
            if sol.objective != solve_exact(inst).objective:
                bad += 1
                continue
            inst_path, sol_path = tmp / f"{i}.stab", tmp / f"{i}.sol"
            inst_path.write_text(io.render(inst))
            sol_path.write_text(io.render_solution(sol))
            with contextlib.redirect_stdout(_stdio.StringIO()):
                code = main(["verify", str(inst_path), str(sol_path)])
            if code != 0:
                bad += 1
    return bad == 0, f"500 instances, {bad} failures"


def c3_five_approx():
    """five_approx is feasible with ratio <= 5; per-group bounds hold on every instance."""
    problems = []
    worst = Fraction(0)
    for no, inst in enumerate(hv_h_batch()):
        sol = five_approx(inst)
        opt = solve_exact(inst).objective
        if verify(inst, sol) or sol.objective > 5 * opt:
            problems.append(f"{no}: ratio")
        if opt:
            worst = max(worst, Fraction(sol.objective, opt))
        lp1 = build_lp1(inst)
        y = solve_lp(lp1).by_label(lp1)
        part = partition(inst, y)
        groups = split_variables(inst)
        sub = {}
        for side, rows in (("l", part.h_l), ("r", part.h_r)):
            sub[side] = lp_value(inst, rows, side)
            ray = solve_ray_stabbing_exact(inst, side, rows)
            if ray.objective > 2 * sub[side]:
                problems.append(f"{no}: ray {side}")
            # scaled LP1 values restricted to the group stay feasible for its rows
            scaled = {j: min(Fraction(1), Fraction(5, 2) * y[j]) for j in groups[side]}
            if any(sum(scaled[j] for j in inst.stabbers[d] if j in scaled) < 1 for d in rows):
                problems.append(f"{no}: scaling {side}")
        sub["h"] = lp_value(inst, part.h_h, "h")
        scaled = {j: min(Fraction(1), 5 * y[j]) for j in groups["h"]}
        if any(sum(scaled[j] for j in inst.stabbers[d] if j in scaled) < 1 for d in part.h_h):
            problems.append(f"{no}: scaling h")
        if solve_horizontal_clusters(inst, part.h_h).objective > sub["h"]:
            problems.append(f"{no}: clusters")
        if sub["l"] + sub["r"] + sub["h"] > 5 * solve_lp(lp1).objective:
            problems.append(f"{no}: sum of group LPs")
    return not problems, (f"300 instances, worst ratio {worst}, "
                          f"{len(problems)} problems {problems[:3]}")


def c4_lp_lower_bound():
    """The LP relaxation value never exceeds the integer optimum."""
    bad = 0
    for inst in hv_h_batch():
        if solve_lp(build_lp1(inst)).objective > solve_exact(inst).objective:
            bad += 1
    return bad == 0, f"300 instances, {bad} violations"


def c5_local_search():
    """Local search for k = 1, 2, 3 ends feasible, k-locally optimal, with a strictly falling trace."""
    problems = []
    worst = {}
    for k in (1, 2, 3):
        worst[k] = Fraction(0)
        for no, inst in enumerate(hv_h_batch()):
            sol = local_search(inst, LsConfig(k=k))
            trace = sol.stats["trace"]
            if verify(inst, sol) or sol.stats["anomaly"]:
                problems.append(f"k={k} #{no}: infeasible or capped")
            if any(a <= b for a, b in zip(trace, trace[1:])):
                problems.append(f"k={k} #{no}: trace")
            if improving_swaps(inst, sol.chosen, preprocess_candidates(inst), inst.d_ids, k):
                problems.append(f"k={k} #{no}: not locally optimal")
            opt = solve_exact(inst).objective
            if opt:
                worst[k] = max(worst[k], Fraction(sol.objective, opt))
    ratios = ", ".join(f"k={k} worst {w}" for k, w in worst.items())
    return not problems, f"300 instances per k, {ratios}, {len(problems)} problems"


def c6_combiners():
    """two_approx <= 2·OPT, seven_approx <= 7·OPT, and the merge additivity bounds."""
    problems = []
    worst2 = worst7 = Fraction(0)
    for i in range(300):
        inst = random_instance(60_000 + i, Variant.HV_V, n_max=13, n_min=2)
        opt = power_set_optimum(inst)
        if opt is None:
            continue
        sol = two_approx_hv_v(inst)
        if verify(inst, sol) or sol.objective > 2 * opt:
            problems.append(f"merge2 #{i}")
        if opt:
            worst2 = max(worst2, Fraction(sol.objective, opt))
    for i in range(300):
        inst = random_instance(61_000 + i, Variant.HV_HV, n_max=13, n_min=2)
        opt = power_set_optimum(inst)
        if opt is None:
            continue
        sol = seven_approx(inst)
        if verify(inst, sol) or sol.objective > 7 * opt:
            problems.append(f"merge7 #{i}")
        if opt:
            worst7 = max(worst7, Fraction(sol.objective, opt))
        d1 = [d for d in inst.d_ids if inst[d].is_horizontal]
        d2 = [d for d in inst.d_ids if not inst[d].is_horizontal]
        opt1 = solve_exact(inst, targets=d1).objective
        opt2 = solve_exact(inst, targets=d2).objective
        if not max(opt1, opt2) <= opt <= opt1 + opt2:
            problems.append(f"opt split #{i}")
        s1, s2 = five_approx(inst, d1), two_approx_hv_v(inst, d2)
        if merge(s1, s2).objective > 5 * opt1 + 2 * opt2:
            problems.append(f"merge bound #{i}")
    return not problems, (f"worst merge2 {worst2}, worst merge7 {worst7}, "
                          f"{len(problems)} problems {problems[:3]}")


def c7_reductions():
    """Reduction equivalences on 200 monotone and 200 cycle formulas, with segment counts."""
    rng = random.Random(70_000)
    problems = []
    unsat = 0
    for i in range(200):
        n = rng.randint(3, 4)
        cnf = random_monotone_cnf(rng, n, rng.randint(0, 4))
        if parse_cnf(render_monotone(cnf)) != cnf:
            problems.append(f"mono round trip #{i}")
        inst = reduce_monotone(cnf)
        vg = reduce_monotone_vertical_gadget(cnf)
        if len(inst.segments) != 3 * n + len(cnf.clauses) or audit_vertical_gadget(cnf, vg):
            problems.append(f"mono counts #{i}")
        if not check_lemma1(cnf):
            problems.append(f"mono #{i}")
    # every small embeddable formula is satisfiable; add the smallest known unsatisfiable one
    hard = parse_cnf((GOLDEN / "mono10_unsat.cnf").read_text())
    if hard.satisfiable() or not check_lemma1(hard):
        problems.append("unsatisfiable formula")
    else:
        unsat += 1
    for i in range(200):
        n = rng.randint(3, 6)
        cnf = random_cycle_cnf(rng, n, rng.randint(1, 4))
        if parse_cnf(render_cycle(cnf)) != cnf:
            problems.append(f"cycle round trip #{i}")
        inst = reduce_cycle(cnf)
        if len(inst.segments) != n + len(cnf.clauses) or intersection_audit(cnf, inst):
            problems.append(f"cycle counts #{i}")
        if not all(check_lemma4(cnf, k) for k in range(n + 1)):
            problems.append(f"cycle #{i}")
    return not problems, (f"200 monotone (+{unsat} unsatisfiable), 200 cycle, "
                          f"{len(problems)} problems {problems[:3]}")


def c8_determinism():
    """Generator, solvers and bench repeat byte for byte; golden files round-trip."""
    problems = []
    for seed in range(20):
        cfg = io.GeneratorConfig(seed, 5, 5, -6, 6, 0, Variant.HV_HV, 0.5)
        a, b = io.render(io.generate(cfg)), io.render(io.generate(cfg))
        if a != b:
            problems.append(f"generate {seed}")
        inst = io.parse(a)
        if io.render(inst) != a:
            problems.append(f"round trip {seed}")
        try:
            s1, s2 = solve_exact(inst), solve_exact(inst)
        except Exception:
            continue
        if io.render_solution(s1) != io.render_solution(s2):
            problems.append(f"solve {seed}")
    for path in sorted(GOLDEN.glob("*.stab")):
        text = path.read_text()
        if io.render(io.parse(text)) != text and path.name != "spec_parse.stab":
            problems.append(path.name)
    args = (Variant.HV_H, ["lp5", "ls"], 9, 10, 5, 5)
    if bench(*args) != bench(*args):
        problems.append("bench")
    for inst in hv_h_batch()[:20]:
        if local_search(inst, LsConfig(k=2, seed=1)).chosen != \
                local_search(inst, LsConfig(k=2, seed=1)).chosen:
            problems.append("seeded local search")
    return not problems, f"{len(problems)} problems {problems[:3]}"


CRITERIA = [c1_exact_oracle, c2_one_sided_dp, c3_five_approx, c4_lp_lower_bound,
            c5_local_search, c6_combiners, c7_reductions, c8_determinism]


def _line(fn, ok, detail):
    return f"{fn.__name__.split('_')[0].upper():<3} {'PASS' if ok else 'FAIL'}  {detail}"


@pytest.mark.parametrize("criterion", CRITERIA, ids=lambda f: f.__name__)
def test_criterion(criterion, capsys):
    ok, detail = criterion()
    with capsys.disabled():
        print("\n" + _line(criterion, ok, detail))
    assert ok, detail


if __name__ == "__main__":
    failed = 0
    for fn in CRITERIA:
        ok, detail = fn()
        failed += not ok
        print(_line(fn, ok, detail), flush=True)
    sys.exit(1 if failed else 0)
