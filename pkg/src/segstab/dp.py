"""Exact dynamic program for stabbing one-sided verticals with H ⊔ V.

Verticals are indexed by x ascending, ties by bottom endpoint descending,
then id.  For a set of target verticals, let v be the one with the largest
index.  In an optimum, v is hit either by a horizontal h, leaving the
targets h misses, or by verticals only.  In the second case let v_l be the
largest-index chosen vertical hitting v.  Any chosen vertical with larger
index that still hits a remaining target would lie in v's column, start no
higher than v_l and so hit v as well.  So the rest of the solution only uses
verticals of index < l:

    f(k, T) = min( 1 + f(k, T \\ hit(h))        for S-horizontals h hitting v,
                   1 + f(l - 1, T \\ hit(v_l))  for S-verticals v_l, l <= k, hitting v )

with f(k, {}) = 0.  States are keyed by the exact target set (a bitmask)
and by k normalised down to the largest useful vertical.  The band-prefix
recursion over (i, j, k, k') is kept in :func:`band_recursion` for
reference; it can overcount when a vertical crossing the split line is
needed on both sides (see the tests).
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .geometry import InfeasibleError, Instance, Solution, make_solution, stabs

_INF = float("inf")


@dataclass(frozen=True)
class DpIndexing:
    """h_1..h_t by (y, id) and v_1..v_m by (x, -bottom, id); stored 0-based."""

    inst: Instance

    @cached_property
    def h_order(self) -> tuple:
        return tuple(s.id for s in sorted(self.inst.horizontals(), key=lambda s: (s.y, s.id)))

    @cached_property
    def v_order(self) -> tuple:
        return tuple(s.id for s in sorted(self.inst.verticals(),
                                          key=lambda s: (s.x, -s.y_lo, s.id)))

    def h(self, i: int):
        """h_i for 1-based i, or None outside 1..t."""
        return self.inst[self.h_order[i - 1]] if 1 <= i <= len(self.h_order) else None

    def v(self, l: int):
        return self.inst[self.v_order[l - 1]]


def targets_of(idx: DpIndexing, i: int, j: int, l: int) -> frozenset:
    """Ids in V_l meeting some of h_j..h_i but neither h_{i+1} nor h_{j-1} (where they exist)."""
    band = [idx.h(a) for a in range(j, i + 1)]
    above, below = idx.h(i + 1), idx.h(j - 1)
    out = set()
    for p in range(1, l + 1):
        v = idx.v(p)
        if not any(stabs(v, h) for h in band):
            continue
        if above is not None and stabs(v, above):
            continue
        if below is not None and stabs(v, below):
            continue
        out.add(v.id)
    return frozenset(out)


def _side_targets(inst, targets, side):
    if targets is None:
        targets = [s.id for s in inst.verticals("D")
                   if side is None or inst.side(s) == side]
    targets = sorted(targets)
    if any(inst[d].is_horizontal for d in targets):
        raise ValueError("dp targets must be vertical segments")
    sides = {inst.side(inst[d]) for d in targets}
    if len(sides) > 1:
        raise ValueError("dp targets must all lie on one side of L_v")
    return targets, (sides.pop() if sides else side or "r")


def dp_solve(inst: Instance, targets=None, side: str | None = None) -> Solution:
    """Minimum set of S-segments stabbing one-sided target verticals.

    ``targets`` defaults to the D-verticals (on ``side`` when given).
    Candidates are all S-horizontals and the S-verticals on the targets'
    side.  ``stats`` reports the memo table size and hit rate.
    """
    targets, side = _side_targets(inst, targets, side)
    idx = DpIndexing(inst)
    pos = {sid: p for p, sid in enumerate(idx.v_order)}
    targets.sort(key=lambda d: pos[d])
    bit = {d: b for b, d in enumerate(targets)}

    def hit_mask(sid):
        m = 0
        for d in targets:
            if sid in inst.stab_sets[d]:
                m |= 1 << bit[d]
        return m

    hmask = {h.id: hit_mask(h.id) for h in inst.horizontals("S")}
    verts = [sid for sid in idx.v_order if inst[sid].in_s and inst.side(inst[sid]) == side]
    vmask = [hit_mask(sid) for sid in verts]   # position in `verts` follows v_order
    for d in targets:
        if not any(hmask[h] >> bit[d] & 1 for h in hmask) and not any(
                m >> bit[d] & 1 for m in vmask):
            raise InfeasibleError(f"segment {d} has no stabber", d)
    h_by_bit = [[h for h in sorted(hmask) if hmask[h] >> b & 1] for b in range(len(targets))]
    v_by_bit = [[l for l in range(len(verts)) if vmask[l] >> b & 1] for b in range(len(targets))]

    memo = {}
    hits = 0

    def norm(k, mask):
        while k >= 0 and not vmask[k] & mask:
            k -= 1
        return k

    def f(k, mask):
        nonlocal hits
        if not mask:
            return 0
        k = norm(k, mask)
        key = (k, mask)
        if key in memo:
            hits += 1
            return memo[key][0]
        b = mask.bit_length() - 1
        best, pick = _INF, None
        # verticals first: on ties the one-sided solution keeps to its own side
        for l in v_by_bit[b]:
            if l > k:
                break
            val = 1 + f(l - 1, mask & ~vmask[l])
            if val < best:
                best, pick = val, ("v", l)
        for h in h_by_bit[b]:
            val = 1 + f(k, mask & ~hmask[h])
            if val < best:
                best, pick = val, ("h", h)
        memo[key] = (best, pick)
        return best

    full = (1 << len(targets)) - 1
    top = len(verts) - 1
    total = f(top, full)
    assert total != _INF
    chosen = []
    k, mask = top, full
    while mask:
        k = norm(k, mask)
        kind, c = memo[(k, mask)][1]
        if kind == "h":
            chosen.append(c)
            mask &= ~hmask[c]
        else:
            chosen.append(verts[c])
            mask &= ~vmask[c]
            k = c - 1
    assert len(chosen) == total
    calls = len(memo) + hits
    return make_solution(inst, chosen, targets, algo="dp", side=side, table=len(memo),
                         hit_rate=hits / calls if calls else 0.0)


def band_recursion(inst: Instance) -> int:
    """Value of the band-prefix recursion f(t, 1, m, m), transcribed literally.

    Targets are the D-verticals; horizontal guesses are S-horizontals of
    the band and vertical guesses S-verticals of the prefix.  Kept as a
    reference point only: it is not always optimal.
    """
    idx = DpIndexing(inst)
    t, m = len(idx.h_order), len(idx.v_order)
    if t == 0 or m == 0:
        return 0
    pos = {sid: p for p, sid in enumerate(idx.v_order, start=1)}
    memo = {}

    def band_targets(i, j, l):
        return {d for d in targets_of(idx, i, j, l) if inst[d].in_d}

    def top_index(ids):
        return max((pos[d] for d in ids), default=0)

    def f(i, j, k, kp):
        if i < j or kp == 0:
            return 0
        key = (i, j, k, kp)
        if key in memo:
            return memo[key]
        cur = band_targets(i, j, kp)
        if not cur:
            memo[key] = 0
            return 0
        v = idx.v(top_index(cur))
        best = _INF
        above = idx.h(i + 1)
        below = idx.h(j - 1)
        for ip in range(j, i + 1):
            h = idx.h(ip)
            if not h.in_s or not stabs(h, v):
                continue
            upper = [d for d in cur
                     if any(stabs(inst[d], idx.h(a)) for a in range(ip + 1, i + 1))
                     and not (above is not None and stabs(inst[d], above))
                     and not stabs(inst[d], h)]
            lower = [d for d in cur
                     if any(stabs(inst[d], idx.h(a)) for a in range(j, ip))
                     and not stabs(inst[d], h)
                     and not (below is not None and stabs(inst[d], below))]
            best = min(best, 1 + f(i, ip + 1, k, top_index(upper))
                       + f(ip - 1, j, k, top_index(lower)))
        for l in range(1, k + 1):
            vl = idx.v(l)
            if not vl.in_s or not stabs(vl, v):
                continue
            rest = [d for d in cur if not stabs(inst[d], vl)]
            best = min(best, 1 + f(i, j, l - 1, top_index(rest)))
        memo[key] = best
        return best

    return f(t, 1, m, m)


def two_approx_hv_v(inst: Instance, targets=None) -> Solution:
    """Union of exact left-side and right-side solutions; at most 2·OPT."""
    if targets is None:
        targets = [s.id for s in inst.verticals("D")]
    left = [d for d in targets if inst.side(inst[d]) == "l"]
    right = [d for d in targets if inst.side(inst[d]) == "r"]
    s_l = dp_solve(inst, left, "l")
    s_r = dp_solve(inst, right, "r")
    return make_solution(inst, s_l.chosen | s_r.chosen, sorted(targets), algo="merge2",
                         sub_objectives={"left": s_l.objective, "right": s_r.objective},
                         table=s_l.stats["table"] + s_r.stats["table"])
