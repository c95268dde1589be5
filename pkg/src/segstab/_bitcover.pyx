# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled bitmask set-cover kernels (at most 64 targets per call).

Mirrors ``_bitcover_py`` exactly, including search order and tie-breaks.
"""
from libc.stdlib cimport malloc, free
from libc.string cimport memcpy

ctypedef unsigned long long u64

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil
    int __builtin_ctzll(unsigned long long) nogil


cdef int OK = 0
cdef int INFEASIBLE = 1
cdef int BUDGET = 2


cdef inline int popcnt(u64 x) nogil:
    return __builtin_popcountll(x)


cdef inline int lowbit(u64 x) nogil:
    return __builtin_ctzll(x)



cdef struct Search:
    int n
    u64 *masks
    int *stab          # 64 x n, stabber lists per target bit
    int *nstab         # 64
    u64 *conf          # 64
    int *stack
    int depth
    int *best
    int nbest
    long long nodes
    long long limit
    int aborted
    int *order         # scratch, (n + 1) * 64 levels
    int *keys


cdef void dfs(Search *s, u64 uncovered) nogil:
    cdef u64 rem
    cdef int lb, t, pick, fewest, i, j, c, cnt, kc, tmp
    cdef int *order
    cdef int *keys
    if s.aborted:
        return
    s.nodes += 1
    if s.limit >= 0 and s.nodes > s.limit:
        s.aborted = 1
        return
    if uncovered == 0:
        if s.depth < s.nbest:
            memcpy(s.best, s.stack, s.depth * sizeof(int))
            s.nbest = s.depth
        return
    rem = uncovered
    lb = 0
    while rem:
        t = lowbit(rem)
        lb += 1
        rem &= ~s.conf[t]
    if s.depth + lb >= s.nbest:
        return
    pick = -1
    fewest = 1 << 30
    rem = uncovered
    while rem:
        t = lowbit(rem)
        rem &= rem - 1
        if s.nstab[t] < fewest:
            pick = t
            fewest = s.nstab[t]
    cnt = s.nstab[pick]
    order = s.order + s.depth * s.n
    keys = s.keys + s.depth * s.n
    for i in range(cnt):
        c = s.stab[pick * s.n + i]
        order[i] = c
        keys[i] = popcnt(s.masks[c] & uncovered)
    # insertion sort: gain desc, index asc (stabber lists are index-ascending)
    for i in range(1, cnt):
        c = order[i]
        kc = keys[i]
        j = i - 1
        while j >= 0 and keys[j] < kc:
            order[j + 1] = order[j]
            keys[j + 1] = keys[j]
            j -= 1
        order[j + 1] = c
        keys[j + 1] = kc
    for i in range(cnt):
        c = order[i]
        s.stack[s.depth] = c
        s.depth += 1
        dfs(s, uncovered & ~s.masks[c])
        s.depth -= 1
        if s.aborted:
            return


def min_cover(masks, need, long long node_limit=-1):
    """See ``_bitcover_py.min_cover``."""
    cdef int n = len(masks)
    cdef u64 uneed = need
    cdef u64 union = 0
    cdef u64 left, bestm
    cdef int i, t, c, g, gain, best_c, nb
    cdef Search s
    if need >> 64:
        raise OverflowError("compiled kernel handles at most 64 targets")
    s.n = n
    s.masks = <u64 *> malloc((n + 1) * sizeof(u64))
    s.stab = <int *> malloc((64 * n + 1) * sizeof(int))
    s.nstab = <int *> malloc(64 * sizeof(int))
    s.conf = <u64 *> malloc(64 * sizeof(u64))
    s.stack = <int *> malloc((n + 65) * sizeof(int))
    s.best = <int *> malloc((n + 65) * sizeof(int))
    s.order = <int *> malloc(((n + 1) * 65 + 1) * sizeof(int))
    s.keys = <int *> malloc(((n + 1) * 65 + 1) * sizeof(int))
    try:
        for i in range(n):
            s.masks[i] = <u64> (masks[i] & uneed)
            union |= s.masks[i]
        if union & uneed != uneed:
            return INFEASIBLE, (), 0
        for t in range(64):
            s.nstab[t] = 0
            s.conf[t] = 0
            if (uneed >> t) & 1:
                for c in range(n):
                    if (s.masks[c] >> t) & 1:
                        s.stab[t * n + s.nstab[t]] = c
                        s.nstab[t] += 1
                        s.conf[t] |= s.masks[c]
        # greedy incumbent
        left = uneed
        nb = 0
        while left:
            best_c = -1
            gain = 0
            for c in range(n):
                g = popcnt(s.masks[c] & left)
                if g > gain:
                    best_c = c
                    gain = g
            s.best[nb] = best_c
            nb += 1
            left &= ~s.masks[best_c]
        s.nbest = nb
        s.depth = 0
        s.nodes = 0
        s.limit = node_limit
        s.aborted = 0
        with nogil:
            dfs(&s, uneed)
        if s.aborted:
            return BUDGET, (), s.nodes
        return OK, tuple(sorted([s.best[i] for i in range(s.nbest)])), s.nodes
    finally:
        free(s.masks)
        free(s.stab)
        free(s.nstab)
        free(s.conf)
        free(s.stack)
        free(s.best)
        free(s.order)
        free(s.keys)


cdef bint next_comb(int *idx, int r, int n) nogil:
    """Advance idx (r increasing positions in [0, n)) to the next combination."""
    cdef int i = r - 1
    while i >= 0 and idx[i] == n - r + i:
        i -= 1
    if i < 0:
        return False
    idx[i] += 1
    i += 1
    while i < r:
        idx[i] = idx[i - 1] + 1
        i += 1
    return True


def improving_swap(masks, full, selected, int k):
    """See ``_bitcover_py.improving_swap``."""
    cdef int n = len(masks)
    cdef u64 ufull = full
    cdef list sel = sorted(selected)
    cdef int ns = len(sel)
    cdef int no, nu, a, size, i, j
    cdef int found = 0
    cdef int found_a = 0
    cdef int found_size = 0
    cdef u64 base, need, got
    cdef u64 *m
    cdef int *sel_c
    cdef int *oth_c
    cdef int *useful
    cdef int *oidx
    cdef int *iidx
    cdef char *dropped
    if full >> 64:
        raise OverflowError("compiled kernel handles at most 64 targets")
    chosen = set(sel)
    others = [c for c in range(n) if c not in chosen]
    no = len(others)
    m = <u64 *> malloc((n + 1) * sizeof(u64))
    sel_c = <int *> malloc((ns + 1) * sizeof(int))
    oth_c = <int *> malloc((no + 1) * sizeof(int))
    useful = <int *> malloc((no + 1) * sizeof(int))
    oidx = <int *> malloc((k + 1) * sizeof(int))
    iidx = <int *> malloc((k + 1) * sizeof(int))
    dropped = <char *> malloc(ns + 1)
    try:
        for i in range(n):
            m[i] = <u64> (masks[i] & ufull)
        for i in range(ns):
            sel_c[i] = sel[i]
        for i in range(no):
            oth_c[i] = others[i]
        with nogil:
            a = 1
            while a <= k and a <= ns and not found:
                for i in range(a):
                    oidx[i] = i
                while not found:
                    for i in range(ns):
                        dropped[i] = 0
                    for i in range(a):
                        dropped[oidx[i]] = 1
                    base = 0
                    for i in range(ns):
                        if not dropped[i]:
                            base |= m[sel_c[i]]
                    need = ufull & ~base
                    if need == 0:
                        found = 1
                        found_a = a
                        found_size = 0
                        break
                    nu = 0
                    for i in range(no):
                        if m[oth_c[i]] & need:
                            useful[nu] = oth_c[i]
                            nu += 1
                    size = 1
                    while size < a and size <= nu and not found:
                        for j in range(size):
                            iidx[j] = j
                        while True:
                            got = 0
                            for j in range(size):
                                got |= m[useful[iidx[j]]]
                            if got & need == need:
                                found = 1
                                found_a = a
                                found_size = size
                                break
                            if not next_comb(iidx, size, nu):
                                break
                        size += 1
                    if found:
                        break
                    if not next_comb(oidx, a, ns):
                        break
                a += 1
        if not found:
            return None
        return (tuple([sel_c[oidx[i]] for i in range(found_a)]),
                tuple([useful[iidx[j]] for j in range(found_size)]))
    finally:
        free(m)
        free(sel_c)
        free(oth_c)
        free(useful)
        free(oidx)
        free(iidx)
        free(dropped)
