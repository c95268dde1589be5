"""Backend selection for the bitmask set-cover kernels.

The compiled extension is used when it imported and the problem fits in
64 target bits; otherwise the pure-Python module runs.  Both produce
identical results.
"""
from . import _bitcover_py

try:
    from . import _bitcover as _compiled
except ImportError:  # extension not built
    _compiled = None

OK, INFEASIBLE, BUDGET = _bitcover_py.OK, _bitcover_py.INFEASIBLE, _bitcover_py.BUDGET

_backend = "compiled" if _compiled is not None else "python"


def available_backends():
    return ["python"] + (["compiled"] if _compiled is not None else [])


def current_backend():
    return _backend


def use_backend(name):
    """Select ``"compiled"`` or ``"python"``; returns the previous choice."""
    global _backend
    if name not in available_backends():
        raise ValueError(f"backend {name!r} unavailable; have {available_backends()}")
    prev, _backend = _backend, name
    return prev


def _impl(width):
    if _backend == "compiled" and width <= 64:
        return _compiled
    return _bitcover_py


def min_cover(masks, need, node_limit=-1):
    return _impl(need.bit_length()).min_cover(masks, need, node_limit)


def improving_swap(masks, full, selected, k):
    return _impl(full.bit_length()).improving_swap(masks, full, selected, k)
