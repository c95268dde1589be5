"""Independent oracles and seeded batches shared by the tests.

Nothing here calls a solver from the package; feasibility is always
decided with ``stabs`` directly.
"""
import random
from fractions import Fraction
from functools import lru_cache
from itertools import combinations

from segstab.geometry import Instance, Segment, Variant, stabs
from segstab.io import GeneratorConfig, generate

E1_TEXT = """STAB 1
LV 0
VARIANT HV/H
H 0 D -2 3 1
H 1 D -1 2 2
V 2 S 1 1/2 5/2
"""


def power_set_optimum(inst: Instance, targets=None, candidates=None):
    """Smallest number of candidates stabbing every target, or None if impossible.

    Scans every subset of the candidates, building subset unions from the
    subset with its lowest element removed.
    """
    targets = list(inst.d_ids if targets is None else targets)
    cands = [s.id for s in inst.segments if s.in_s] if candidates is None else list(candidates)
    pos = {d: b for b, d in enumerate(targets)}
    masks = []
    for c in cands:
        m = 0
        for d in targets:
            if stabs(inst[c], inst[d]):
                m |= 1 << pos[d]
        masks.append(m)
    full = (1 << len(targets)) - 1
    union = [0] * (1 << len(cands))
    best = None
    for sub in range(1 << len(cands)):
        if sub:
            low = sub & -sub
            union[sub] = union[sub ^ low] | masks[low.bit_length() - 1]
        if union[sub] & full == full:
            size = bin(sub).count("1")
            if best is None or size < best:
                best = size
    return best


def covers(inst, chosen, targets):
    return all(any(stabs(inst[s], inst[d]) for s in chosen) for d in targets)


def improving_swaps(inst, chosen, candidates, targets, k):
    """Every (out, in) with |out| <= k and |in| < |out| that keeps feasibility."""
    chosen = sorted(chosen)
    others = [c for c in candidates if c not in chosen]
    found = []
    for a in range(1, min(k, len(chosen)) + 1):
        for out in combinations(chosen, a):
            keep = [c for c in chosen if c not in out]
            for size in range(0, a):
                for into in combinations(others, size):
                    if covers(inst, keep + list(into), targets):
                        found.append((out, into))
    return found


def random_instance(seed, variant, n_max=14, lo=-4, hi=4, left_fraction=0.5, n_min=1):
    rng = random.Random(seed)
    n = rng.randint(n_min, n_max)
    n_h = rng.randint(0, n)
    return generate(GeneratorConfig(seed, n_h, n - n_h, lo, hi, 0, variant, left_fraction))


@lru_cache(maxsize=None)
def hv_h_batch(count=300, n_max=14):
    """Seeded (H⊔V,H) instances with at least one horizontal."""
    out = []
    seed = 0
    while len(out) < count:
        rng = random.Random(10_000 + seed)
        n = rng.randint(2, n_max)
        n_h = rng.randint(1, n)
        out.append(generate(GeneratorConfig(10_000 + seed, n_h, n - n_h, -4, 4, 0,
                                            Variant.HV_H)))
        seed += 1
    return tuple(out)


@lru_cache(maxsize=None)
def one_sided_batch(count=500, n_max=13):
    """Seeded (H⊔V,V) instances whose verticals all lie on one side of L_v."""
    out = []
    for i in range(count):
        rng = random.Random(20_000 + i)
        n = rng.randint(2, n_max)
        n_v = rng.randint(1, n)
        out.append(generate(GeneratorConfig(20_000 + i, n - n_v, n_v, -4, 4, 0, Variant.HV_V,
                                            float(i % 2))))
    return tuple(out)


def e1_instance():
    return Instance((Segment.horizontal(0, -2, 3, 1, False, True),
                     Segment.horizontal(1, -1, 2, 2, False, True),
                     Segment.vertical(2, 1, Fraction(1, 2), Fraction(5, 2), True, False)),
                    0, Variant.HV_H)
