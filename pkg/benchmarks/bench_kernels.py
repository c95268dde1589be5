"""Time the compiled and pure-Python set-cover kernels on the same inputs.

    python benchmarks/bench_kernels.py [--count N] [--seed S]

Both backends must return identical results; the script stops with an
error if they ever differ.
"""
import argparse
import random
import time

from segstab import kernels
from segstab.exact import cover_masks
from segstab.geometry import Variant
from segstab.io import GeneratorConfig, generate


def workload(count, seed):
    rng = random.Random(seed)
    out = []
    for i in range(count):
        n_h = rng.randint(24, 40)
        inst = generate(GeneratorConfig(seed + i, n_h, rng.randint(10, 20), -12, 12, 0,
                                        Variant.HV_H))
        targets = inst.d_ids
        masks = cover_masks(inst, inst.s_ids, targets)
        out.append((masks, (1 << len(targets)) - 1))
    return out


def run(backend, jobs):
    prev = kernels.use_backend(backend)
    try:
        start = time.perf_counter()
        results = []
        for masks, full in jobs:
            status, best, nodes = kernels.min_cover(masks, full)
            swap = kernels.improving_swap(masks, full, range(len(masks))[: len(best) + 2], 2)
            results.append((status, best, nodes, swap))
        return time.perf_counter() - start, results
    finally:
        kernels.use_backend(prev)


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--count", type=int, default=200)
    p.add_argument("--seed", type=int, default=1)
    args = p.parse_args()
    jobs = workload(args.count, args.seed)
    if "compiled" not in kernels.available_backends():
        print("compiled backend not built; only timing the Python kernels")
        t, _ = run("python", jobs)
        print(f"python    {t:8.3f}s")
        return
    t_py, r_py = run("python", jobs)
    t_c, r_c = run("compiled", jobs)
    if r_py != r_c:
        raise SystemExit("backends disagree")
    print(f"instances {len(jobs)}")
    print(f"python    {t_py:8.3f}s")
    print(f"compiled  {t_c:8.3f}s")
    print(f"speedup   {t_py / t_c:8.1f}x")


if __name__ == "__main__":
    main()
