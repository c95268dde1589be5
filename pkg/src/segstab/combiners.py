"""Merging solutions of disjoint target sets, and the resulting approximations.

If an α-approximation covers D1 and a β-approximation covers D2, the union
of the two chosen sets covers D1 ⊔ D2 with at most (α + β)·OPT segments.
"""
from __future__ import annotations

from .dp import two_approx_hv_v
from .geometry import Instance, Solution, make_solution, stabs
from .local_search import LsConfig, local_search
from .lp5 import five_approx


def merge(sol1: Solution, sol2: Solution) -> Solution:
    """Union of chosen sets and witness maps; the witness key sets must be disjoint."""
    shared = sol1.witness.keys() & sol2.witness.keys()
    if shared:
        raise ValueError(f"target sets overlap on {sorted(shared)}")
    witness = dict(sol1.witness)
    witness.update(sol2.witness)
    return Solution(sol1.chosen | sol2.chosen, witness,
                    {"objective1": sol1.objective, "objective2": sol2.objective})


def _split(inst: Instance):
    d1 = [d for d in inst.d_ids if inst[d].is_horizontal]
    d2 = [d for d in inst.d_ids if not inst[d].is_horizontal]
    return d1, d2


def seven_approx(inst: Instance) -> Solution:
    """five_approx on the horizontal targets merged with two_approx_hv_v on the vertical ones."""
    d1, d2 = _split(inst)
    s1, s2 = five_approx(inst, d1), two_approx_hv_v(inst, d2)
    out = merge(s1, s2)
    out.stats.update(algo="merge7", horizontal_part=s1.stats, vertical_part=s2.stats)
    return out


def three_eps_approx(inst: Instance, k: int = 3) -> Solution:
    """local_search on the horizontal targets merged with two_approx_hv_v on the vertical ones."""
    d1, d2 = _split(inst)
    s1, s2 = local_search(inst, LsConfig(k=k), d1), two_approx_hv_v(inst, d2)
    out = merge(s1, s2)
    out.stats.update(algo="merge3e", horizontal_part=s1.stats, vertical_part=s2.stats)
    return out


def prune_redundant(inst: Instance, sol: Solution, targets=None) -> Solution:
    """Drop chosen segments, highest id first, while every target stays stabbed.

    Returns a new Solution; the input is left untouched.
    """
    targets = inst.d_ids if targets is None else tuple(targets)
    keep = set(sol.chosen)
    for c in sorted(sol.chosen, reverse=True):
        rest = keep - {c}
        if all(any(stabs(inst[s], inst[d]) for s in rest) for d in targets):
            keep = rest
    return make_solution(inst, keep, targets, algo="prune", removed=len(sol.chosen) - len(keep))
