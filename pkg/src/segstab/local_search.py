"""Bounded-swap local search for stabbing horizontal segments with H ⊔ V.

Horizontals sharing a y-coordinate all contain the point (lv_x, y), so
against horizontal targets they stab exactly the same segments; only one
representative per y-cluster is kept.  Starting from a greedy cover, the
search repeatedly removes up to ``k`` chosen segments and inserts strictly
fewer, until no such swap keeps the solution feasible.
"""
from __future__ import annotations

import random
from dataclasses import dataclass

from . import kernels
from .exact import cover_masks
from .geometry import InfeasibleError, Instance, Solution, make_solution, y_clusters


@dataclass(frozen=True)
class LsConfig:
    k: int = 2
    max_iterations: int | None = None   # None means 10 * n**2
    seed: int | None = None             # None keeps candidates in id order

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be at least 1")


def preprocess_candidates(inst: Instance) -> tuple:
    """Lowest-id S-horizontal of every y-cluster plus all S-verticals, sorted."""
    reps = [c[0] for c in y_clusters(inst, [s.id for s in inst.horizontals("S")])]
    return tuple(sorted(reps + [s.id for s in inst.verticals("S")]))


def _targets(inst, targets):
    targets = tuple(sorted(inst.d_ids if targets is None else targets))
    if any(not inst[d].is_horizontal for d in targets):
        raise ValueError("local search targets must be horizontal segments")
    return targets


def _greedy(masks, full):
    chosen, left = [], full
    while left:
        best, gain = -1, 0
        for c, m in enumerate(masks):
            g = bin(m & left).count("1")
            if g > gain:
                best, gain = c, g
        chosen.append(best)
        left &= ~masks[best]
    return chosen


def local_search(inst: Instance, cfg: LsConfig = LsConfig(), targets=None) -> Solution:
    """Locally optimal stabbing set under swaps of size (≤ k out, < out in).

    ``stats`` holds the objective trace, the swap log as ``(out, in)`` id
    tuples, the candidate count and an ``anomaly`` flag set when the
    iteration cap stopped the search.
    """
    targets = _targets(inst, targets)
    candidates = list(preprocess_candidates(inst))
    if cfg.seed is not None:
        random.Random(cfg.seed).shuffle(candidates)
    for d in targets:
        if inst.stab_sets[d].isdisjoint(candidates):
            raise InfeasibleError(f"segment {d} has no stabber among the candidates", d)
    masks = cover_masks(inst, candidates, targets)
    full = (1 << len(targets)) - 1
    cap = cfg.max_iterations if cfg.max_iterations is not None else 10 * len(inst) ** 2

    selected = set(_greedy(masks, full))
    trace = [len(selected)]
    log = []
    anomaly = False
    while True:
        if len(log) >= cap:
            anomaly = True
            break
        swap = kernels.improving_swap(masks, full, selected, cfg.k)
        if swap is None:
            break
        out, into = swap
        selected.difference_update(out)
        selected.update(into)
        union = 0
        for c in selected:
            union |= masks[c]
        if union & full != full:
            raise AssertionError(f"swap {swap} broke feasibility")
        if len(selected) >= trace[-1]:
            raise AssertionError("swap did not shrink the solution")
        trace.append(len(selected))
        log.append((tuple(candidates[c] for c in out), tuple(candidates[c] for c in into)))
    chosen = [candidates[c] for c in selected]
    return make_solution(inst, chosen, targets, algo="ls", k=cfg.k, trace=trace, swaps=log,
                         candidates=len(candidates), anomaly=anomaly)
