"""Pure-Python bitmask set-cover kernels.

Reference implementation of the routines in ``_bitcover.pyx``; both
backends visit the search tree in the same order and return identical
results.  Targets are bits of ``need``; ``masks[c]`` is the set of targets
candidate ``c`` covers.
"""
from itertools import combinations

OK, INFEASIBLE, BUDGET = 0, 1, 2


def _popcount(x):
    return bin(x).count("1")


def _greedy(masks, need):
    chosen = []
    left = need
    while left:
        best, gain = -1, 0
        for c, m in enumerate(masks):
            g = _popcount(m & left)
            if g > gain:
                best, gain = c, g
        chosen.append(best)
        left &= ~masks[best]
    return chosen


def min_cover(masks, need, node_limit=-1):
    """Minimum number of masks whose union contains ``need``.

    Returns ``(status, indices, nodes)``.  ``indices`` is sorted; it is the
    first optimum met by the branch-and-bound, not necessarily the
    lexicographically smallest.  ``node_limit < 0`` means unlimited.
    """
    masks = list(masks)
    union = 0
    for m in masks:
        union |= m
    if union & need != need:
        return INFEASIBLE, (), 0
    bits = []
    x = need
    while x:
        low = x & -x
        bits.append(low.bit_length() - 1)
        x ^= low
    stabbers = {}
    conf = {}
    for t in bits:
        st = [c for c, m in enumerate(masks) if (m >> t) & 1]
        stabbers[t] = st
        cm = 0
        for c in st:
            cm |= masks[c]
        conf[t] = cm

    best = _greedy(masks, need)
    stack = []
    nodes = 0
    limit = node_limit

    class _Abort(Exception):
        pass

    def dfs(uncovered):
        nonlocal best, nodes
        nodes += 1
        if 0 <= limit < nodes:
            raise _Abort
        if not uncovered:
            if len(stack) < len(best):
                best = list(stack)
            return
        rem = uncovered
        lb = 0
        while rem:
            t = (rem & -rem).bit_length() - 1
            lb += 1
            rem &= ~conf[t]
        if len(stack) + lb >= len(best):
            return
        pick, fewest = -1, 1 << 30
        rem = uncovered
        while rem:
            low = rem & -rem
            t = low.bit_length() - 1
            rem ^= low
            if len(stabbers[t]) < fewest:
                pick, fewest = t, len(stabbers[t])
        order = sorted(stabbers[pick], key=lambda c: (-_popcount(masks[c] & uncovered), c))
        for c in order:
            stack.append(c)
            dfs(uncovered & ~masks[c])
            stack.pop()

    try:
        dfs(need)
    except _Abort:
        return BUDGET, (), nodes
    return OK, tuple(sorted(best)), nodes


def improving_swap(masks, full, selected, k):
    """First improving swap in lexicographic order, or None.

    Removes ``out`` (1 <= |out| <= k, taken from ``selected``) and inserts
    ``into`` (|into| < |out|, taken from the other candidates) so that the
    union still contains ``full``.  Removal sets are scanned by size, then
    lexicographically; for each, insertion sets likewise.
    """
    sel = sorted(selected)
    chosen = set(sel)
    others = [c for c in range(len(masks)) if c not in chosen]
    for a in range(1, min(k, len(sel)) + 1):
        for out in combinations(sel, a):
            dropped = set(out)
            base = 0
            for c in sel:
                if c not in dropped:
                    base |= masks[c]
            need = full & ~base
            if not need:
                return out, ()
            useful = [c for c in others if masks[c] & need]
            for size in range(1, a):
                for into in combinations(useful, size):
                    got = 0
                    for c in into:
                        got |= masks[c]
                    if got & need == need:
                        return out, into
    return None
