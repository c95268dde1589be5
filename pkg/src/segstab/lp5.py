"""LP-rounding 5-approximation for stabbing horizontal segments with H ⊔ V.

Solve the covering LP over all S-segments, send each horizontal target to
every group (left verticals, right verticals, horizontals) whose LP mass on
it reaches 2/5, 2/5 and 1/5 respectively, solve the three group problems
exactly and return the union.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .geometry import InfeasibleError, Instance, Solution, make_solution, y_clusters
from .lp import build_lp1, lp1_targets, solve_lp, split_variables

LEFT_THRESHOLD = Fraction(2, 5)
RIGHT_THRESHOLD = Fraction(2, 5)
HORIZONTAL_THRESHOLD = Fraction(1, 5)


@dataclass(frozen=True)
class ThresholdPartition:
    h_l: frozenset
    h_r: frozenset
    h_h: frozenset


def classify(mass_l, mass_r, mass_h) -> set:
    """Groups ("l", "r", "h") whose share of a row's LP mass meets its threshold."""
    out = set()
    if mass_l >= LEFT_THRESHOLD:
        out.add("l")
    if mass_r >= RIGHT_THRESHOLD:
        out.add("r")
    if mass_h >= HORIZONTAL_THRESHOLD:
        out.add("h")
    return out


def partition(inst: Instance, y_star, targets=None) -> ThresholdPartition:
    """Threshold partition of the horizontal targets under an LP1 optimum.

    ``y_star`` maps S-segment ids to their fractional values (a
    FractionalSolution of :func:`build_lp1` is accepted too).
    """
    targets = lp1_targets(inst, targets)
    if not isinstance(y_star, dict):
        y_star = dict(zip(inst.s_ids, y_star.values))
    groups = {sid: inst.side(inst[sid]) for sid in inst.s_ids}
    sets = {"l": set(), "r": set(), "h": set()}
    for d in targets:
        mass = {"l": Fraction(0), "r": Fraction(0), "h": Fraction(0)}
        for s in inst.stabbers[d]:
            mass[groups[s]] += y_star.get(s, 0)
        got = classify(mass["l"], mass["r"], mass["h"])
        # 2/5 + 2/5 + 1/5 = 1 <= row mass, so some threshold is always met
        assert got, f"target {d} fell outside every group"
        for g in got:
            sets[g].add(d)
    return ThresholdPartition(frozenset(sets["l"]), frozenset(sets["r"]), frozenset(sets["h"]))


def solve_ray_stabbing_exact(inst: Instance, side: str, targets, candidates=None) -> Solution:
    """Minimum set of one-sided verticals stabbing the given horizontals.

    A target crossing L_v is met by a vertical on side ``side`` iff the
    vertical's y-range holds the target's y and its distance from L_v is at
    most the target's reach on that side.  Sorting targets by y, the chosen
    verticals' lowest-distance envelope is laminar, which gives the interval
    recursion below.
    """
    if side not in ("l", "r"):
        raise ValueError("side must be 'l' or 'r'")
    lv = inst.lv_x
    if candidates is None:
        candidates = [sid for sid in split_variables(inst)[side]]
    cands = []
    for sid in sorted(candidates):
        v = inst[sid]
        if v.is_horizontal or inst.side(v) != side:
            raise ValueError(f"candidate {sid} is not a vertical on side {side!r}")
        cands.append((sid, v.y_lo, v.y_hi, lv - v.x if side == "l" else v.x - lv))
    pts = []
    for d in targets:
        h = inst[d]
        if not h.is_horizontal or not h.x_lo <= lv <= h.x_hi:
            raise ValueError(f"target {d} is not a horizontal crossing L_v")
        pts.append((h.y, lv - h.x_lo if side == "l" else h.x_hi - lv, d))
    pts.sort()
    n = len(pts)
    ys = [p[0] for p in pts]
    reach = [p[1] for p in pts]
    covering = []
    for y, r, d in pts:
        hit = [c for c in cands if c[1] <= y <= c[2] and c[3] <= r]
        if not hit:
            raise InfeasibleError(f"segment {d} has no stabber on side {side!r}", d)
        covering.append(hit)

    memo = {}

    def best(lo, hi, ceiling):
        """Cover points lo..hi whose reach is below ``ceiling`` (None = all)."""
        key = (lo, hi, ceiling)
        if key in memo:
            return memo[key][0]
        q = lo
        while q <= hi and ceiling is not None and reach[q] >= ceiling:
            q += 1
        if q > hi:
            memo[key] = (0, None)
            return 0
        top, pick = None, None
        for sid, _, y_hi, dist in covering[q]:
            e = q
            while e <= hi and ys[e] <= y_hi:
                cost = 1 + best(q + 1, e, dist) + best(e + 1, hi, ceiling)
                if top is None or cost < top:
                    top, pick = cost, (sid, q, e, dist)
                e += 1
        memo[key] = (top, pick)
        return top

    chosen = set()

    def collect(lo, hi, ceiling):
        best(lo, hi, ceiling)
        pick = memo[(lo, hi, ceiling)][1]
        if pick is None:
            return
        sid, q, e, dist = pick
        chosen.add(sid)
        collect(q + 1, e, dist)
        collect(e + 1, hi, ceiling)

    total = best(0, n - 1, None) if n else 0
    if n:
        collect(0, n - 1, None)
    assert len(chosen) <= total
    return make_solution(inst, chosen, tuple(sorted(p[2] for p in pts)),
                         algo=f"ray-{side}", table=len(memo))


def solve_horizontal_clusters(inst: Instance, targets, candidates=None) -> Solution:
    """One candidate (lowest id) per y-value among the targets."""
    if candidates is None:
        candidates = [s.id for s in inst.horizontals("S")]
    by_y = {}
    for cluster in y_clusters(inst, candidates):
        by_y[inst[cluster[0]].y] = cluster[0]
    chosen = set()
    for d in sorted(targets):
        h = inst[d]
        if not h.is_horizontal:
            raise ValueError(f"target {d} is not horizontal")
        if h.y not in by_y:
            raise InfeasibleError(f"no horizontal candidate at y = {h.y} for segment {d}", d)
        chosen.add(by_y[h.y])
    return make_solution(inst, chosen, tuple(sorted(targets)), algo="clusters")


def five_approx(inst: Instance, targets=None) -> Solution:
    """Union of exact solutions for the three threshold groups; at most 5·OPT."""
    targets = lp1_targets(inst, targets)
    for d in targets:
        if not inst.stabbers[d]:
            raise InfeasibleError(f"segment {d} has no stabber", d)
    lp = build_lp1(inst, targets)
    y_star = solve_lp(lp)
    part = partition(inst, y_star, targets)
    s1 = solve_ray_stabbing_exact(inst, "l", part.h_l)
    s2 = solve_ray_stabbing_exact(inst, "r", part.h_r)
    s3 = solve_horizontal_clusters(inst, part.h_h)
    chosen = s1.chosen | s2.chosen | s3.chosen
    return make_solution(
        inst, chosen, targets, algo="lp5",
        lp_value=y_star.objective, lp_pivots=y_star.pivots,
        partition_sizes={"h_l": len(part.h_l), "h_r": len(part.h_r), "h_h": len(part.h_h)},
        sub_objectives={"left": s1.objective, "right": s2.objective, "horizontal": s3.objective},
    )
