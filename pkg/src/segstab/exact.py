"""Exact oracles for small instances.

``solve_exact`` finds a minimum stabbing set by branch-and-bound over
bitmasks and then picks, among all optimal sets, the lexicographically
smallest sorted id tuple so that results are reproducible.
"""
from __future__ import annotations

from . import kernels
from .geometry import (BudgetExceeded, InfeasibleError, Instance, Solution, VariantMismatch,
                       make_solution)

DEFAULT_BUDGET = 2_000_000


def cover_masks(inst: Instance, candidates, targets):
    """Bitmask over ``targets`` positions for each candidate id."""
    pos = {d: b for b, d in enumerate(targets)}
    masks = []
    for c in candidates:
        m = 0
        for d in targets:
            if c in inst.stab_sets[d]:
                m |= 1 << pos[d]
        masks.append(m)
    return masks


def solve_exact(inst: Instance, budget: int | None = DEFAULT_BUDGET, targets=None,
                candidates=None) -> Solution:
    """Minimum-cardinality stabbing set with lexicographically smallest ids.

    ``targets`` defaults to every D-segment, ``candidates`` to every
    S-segment.  Raises InfeasibleError or BudgetExceeded.
    """
    targets = tuple(inst.d_ids if targets is None else sorted(targets))
    candidates = tuple(inst.s_ids if candidates is None else sorted(candidates))
    for d in targets:
        if inst.stab_sets[d].isdisjoint(candidates):
            raise InfeasibleError(f"segment {d} has no stabber", d)
    masks = cover_masks(inst, candidates, targets)
    need = (1 << len(targets)) - 1
    limit = -1 if budget is None else budget

    status, best, nodes = kernels.min_cover(masks, need, limit)
    if status == kernels.BUDGET:
        raise BudgetExceeded(nodes)
    opt = len(best)

    chosen = []
    covered = 0
    start = 0
    for slot in range(opt):
        for pos in range(start, len(masks)):
            gain = masks[pos] & need & ~covered
            if not gain:
                continue
            rest_need = need & ~(covered | gain)
            if slot == opt - 1:
                ok = rest_need == 0
            else:
                left = -1 if budget is None else budget - nodes
                if left == 0:
                    raise BudgetExceeded(nodes)
                st, sub, used = kernels.min_cover(masks[pos + 1:], rest_need, left)
                nodes += used
                if st == kernels.BUDGET:
                    raise BudgetExceeded(nodes)
                ok = st == kernels.OK and len(sub) <= opt - slot - 1
            if ok:
                chosen.append(candidates[pos])
                covered |= gain
                start = pos + 1
                break
    return make_solution(inst, chosen, targets, nodes=nodes, algo="exact")


def exists_exactly_one_cover(inst: Instance, k: int) -> bool:
    """True iff at most ``k`` S-verticals stab every D-horizontal exactly once."""
    if any(inst[c].is_horizontal for c in inst.s_ids) or any(
            not inst[d].is_horizontal for d in inst.d_ids):
        raise VariantMismatch("exactly-once check needs S vertical and D horizontal")
    targets = inst.d_ids
    if not targets:
        return k >= 0
    masks = [m for m in cover_masks(inst, inst.s_ids, targets) if m]
    full = (1 << len(targets)) - 1
    by_bit = [[m for m in masks if (m >> b) & 1] for b in range(len(targets))]

    def search(covered, used):
        if covered == full:
            return True
        if used == k:
            return False
        pick, options = None, None
        rem = full & ~covered
        while rem:
            low = rem & -rem
            rem ^= low
            avail = [m for m in by_bit[low.bit_length() - 1] if not m & covered]
            if not avail:
                return False
            if options is None or len(avail) < len(options):
                pick, options = low, avail
        return any(search(covered | m, used + 1) for m in options)

    return search(0, 0)
