"""Exact rational solver for covering LPs.

    minimize  sum_j y_j   s.t.  sum_{j in row} y_j >= 1  for every row,  0 <= y <= 1

Bounds y_j <= 1 never bind at an optimum (lowering a coordinate above 1
keeps every row satisfied and strictly reduces cost), so the solver works
on the problem without them.  It runs a primal simplex with Bland's rule on
the dual packing LP ``max sum z_i  s.t.  A^T z <= 1, z >= 0``, whose slack
basis is feasible from the start, and reads the covering solution off the
final reduced costs.  All arithmetic is in :class:`fractions.Fraction`.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .geometry import InfeasibleError, Instance


@dataclass(frozen=True)
class CoveringLp:
    num_vars: int
    rows: tuple          # tuple of frozensets of variable indices
    var_labels: tuple    # segment id per variable
    row_labels: tuple = ()

    def __post_init__(self):
        for r, row in enumerate(self.rows):
            if not row:
                label = self.row_labels[r] if self.row_labels else r
                raise InfeasibleError(f"covering row {label} is empty", label)
            if any(not 0 <= j < self.num_vars for j in row):
                raise ValueError(f"row {r} has an index out of range")

    def dump(self) -> str:
        """Row-list text form, one ``row <label>: <var labels>`` line per row."""
        lines = [f"vars {' '.join(str(v) for v in self.var_labels)}"]
        for r, row in enumerate(self.rows):
            label = self.row_labels[r] if self.row_labels else r
            lines.append(f"row {label}: " + " ".join(str(self.var_labels[j]) for j in sorted(row)))
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class FractionalSolution:
    values: tuple        # Fraction per variable
    objective: Fraction
    pivots: int = 0

    def by_label(self, lp: CoveringLp) -> dict:
        return dict(zip(lp.var_labels, self.values))


def covering_lp(inst: Instance, targets, variables) -> CoveringLp:
    """One row per target over the variables that stab it."""
    variables = tuple(variables)
    index = {sid: j for j, sid in enumerate(variables)}
    rows = []
    for d in targets:
        rows.append(frozenset(index[s] for s in inst.stabbers[d] if s in index))
    return CoveringLp(len(variables), tuple(rows), variables, tuple(targets))


def lp1_targets(inst: Instance, targets=None) -> tuple:
    if targets is None:
        targets = inst.d_ids
    targets = tuple(sorted(targets))
    if any(not inst[d].is_horizontal for d in targets):
        raise ValueError("LP1 rows must be horizontal segments")
    return targets


def build_lp1(inst: Instance, targets=None) -> CoveringLp:
    """LP relaxation over all S-segments; rows are the horizontal targets."""
    return covering_lp(inst, lp1_targets(inst, targets), inst.s_ids)


def split_variables(inst: Instance) -> dict:
    """S-segment ids grouped into left verticals, right verticals and horizontals."""
    groups = {"l": [], "r": [], "h": []}
    for sid in inst.s_ids:
        groups[inst.side(inst[sid])].append(sid)
    return groups


def build_sub_lp(inst: Instance, group: str, targets) -> CoveringLp:
    """The relaxation restricted to one variable group ("l", "r" or "h")."""
    return covering_lp(inst, tuple(sorted(targets)), split_variables(inst)[group])


def solve_lp(lp: CoveringLp) -> FractionalSolution:
    m = len(lp.rows)          # dual variables z_i
    n = lp.num_vars           # dual constraints, one per primal variable
    if m == 0:
        return FractionalSolution(tuple(Fraction(0) for _ in range(n)), Fraction(0))
    zero, one = Fraction(0), Fraction(1)
    # columns 0..m-1: z_i; columns m..m+n-1: slack s_j
    width = m + n
    tab = []
    for j in range(n):
        row = [zero] * width
        for i, r in enumerate(lp.rows):
            if j in r:
                row[i] = one
        row[m + j] = one
        tab.append(row)
    rhs = [one] * n
    basis = [m + j for j in range(n)]
    cost = [one] * m + [zero] * n      # reduced costs (maximisation)
    value = zero
    pivots = 0
    while True:
        enter = next((c for c in range(width) if cost[c] > 0), None)
        if enter is None:
            break
        leave, best = None, None
        for r in range(n):
            a = tab[r][enter]
            if a > 0:
                ratio = rhs[r] / a
                if best is None or ratio < best or (ratio == best and basis[r] < basis[leave]):
                    leave, best = r, ratio
        # the dual is bounded by the primal point y = 1, so a leaving row exists
        assert leave is not None
        piv = tab[leave][enter]
        prow = [v / piv for v in tab[leave]]
        tab[leave] = prow
        rhs[leave] /= piv
        for r in range(n):
            f = tab[r][enter]
            if r != leave and f:
                tab[r] = [a - f * b for a, b in zip(tab[r], prow)]
                rhs[r] -= f * rhs[leave]
        f = cost[enter]
        cost = [a - f * b for a, b in zip(cost, prow)]
        value += f * rhs[leave]
        basis[leave] = enter
        pivots += 1

    y = tuple(-cost[m + j] for j in range(n))
    objective = sum(y, zero)
    # certificate: primal feasibility and zero duality gap, exactly
    assert all(v >= 0 for v in y)
    assert all(sum((y[j] for j in r), zero) >= 1 for r in lp.rows)
    assert objective == value
    return FractionalSolution(y, objective, pivots)


def lp_value(inst: Instance, targets, group: str) -> Fraction:
    return solve_lp(build_sub_lp(inst, group, targets)).objective
