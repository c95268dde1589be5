"""Stabbing instances built from embedded 3SAT formulas.

Monotone formulas: variables sit on the spine x = 0 at y = index; a clause
is a vertical leg at x = -offset (positive clauses) or x = +offset
(negative clauses) spanning its lowest to highest variable.  Each variable
becomes three horizontals v_l, v_r, s(v), and the formula is satisfiable
iff the instance has a solution of size n.

Cycle formulas: clauses are horizontal levels on the spine, top to bottom,
and variables are vertical spines at distinct x offsets.  A choice of at
most k verticals stabbing every clause exactly once is a 1-in-3 assignment
with at most k true variables.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product

from .exact import DEFAULT_BUDGET, exists_exactly_one_cover, solve_exact
from .geometry import Instance, Segment, Variant, check, stabs


class CnfError(ValueError):
    pass


@dataclass(frozen=True)
class MonotoneClause:
    vars: tuple      # three distinct variable indices
    sign: str        # "+" (left of the spine) or "-" (right)
    offset: int      # leg distance from the spine, >= 1


@dataclass(frozen=True)
class MonotoneCnf:
    n: int
    clauses: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "clauses", tuple(
            MonotoneClause(tuple(c.vars), c.sign, c.offset) for c in self.clauses))
        problems = self.problems()
        if problems:
            raise CnfError("; ".join(problems))

    def extent(self, var: int, sign: str) -> int:
        """Largest leg offset among the ``sign`` clauses holding ``var`` (0 if none)."""
        return max((c.offset for c in self.clauses if c.sign == sign and var in c.vars),
                   default=0)

    def problems(self) -> list:
        out = []
        if self.n < 0:
            out.append("n must be non-negative")
        seen = set()
        for no, c in enumerate(self.clauses):
            if len(c.vars) != 3 or len(set(c.vars)) != 3:
                out.append(f"clause {no}: clauses must have 3 distinct variables")
                continue
            if any(not 0 <= v < self.n for v in c.vars):
                out.append(f"clause {no}: variable out of range")
                continue
            if c.sign not in ("+", "-"):
                out.append(f"clause {no}: sign must be '+' or '-'")
                continue
            if not isinstance(c.offset, int) or c.offset < 1:
                out.append(f"clause {no}: offset must be a positive integer")
                continue
            if (c.sign, c.offset) in seen:
                out.append(f"clause {no}: offset {c.offset} reused on side {c.sign}")
            seen.add((c.sign, c.offset))
        if out:
            return out
        for no, c in enumerate(self.clauses):
            lo, hi = min(c.vars), max(c.vars)
            for w in range(lo + 1, hi):
                if w not in c.vars and self.extent(w, c.sign) >= c.offset:
                    out.append(f"clause {no}: leg crosses the row of variable {w}")
        return out

    def satisfied_by(self, assignment) -> bool:
        for c in self.clauses:
            vals = [assignment[v] for v in c.vars]
            if c.sign == "+" and not any(vals):
                return False
            if c.sign == "-" and all(vals):
                return False
        return True

    def satisfiable(self) -> bool:
        return any(self.satisfied_by(a) for a in product((False, True), repeat=self.n))


@dataclass(frozen=True)
class CycleCnf:
    n: int
    clauses: tuple = ()     # triples of variables, listed top to bottom
    xpos: tuple = ()        # distinct nonzero spine offset per variable

    def __post_init__(self):
        object.__setattr__(self, "clauses", tuple(tuple(c) for c in self.clauses))
        object.__setattr__(self, "xpos", tuple(self.xpos))
        problems = self.problems()
        if problems:
            raise CnfError("; ".join(problems))

    def level(self, clause: int) -> int:
        return len(self.clauses) - clause

    def span(self, var: int):
        """(bottom, top) levels of the clauses holding ``var``, or None."""
        levels = [self.level(c) for c, cl in enumerate(self.clauses) if var in cl]
        return (min(levels), max(levels)) if levels else None

    def problems(self) -> list:
        out = []
        if len(self.xpos) != self.n:
            out.append("need one x offset per variable")
        elif len(set(self.xpos)) != self.n or 0 in self.xpos:
            out.append("x offsets must be distinct and nonzero")
        for no, c in enumerate(self.clauses):
            if len(c) != 3 or len(set(c)) != 3:
                out.append(f"clause {no}: clauses must have 3 distinct variables")
            elif any(not 0 <= v < self.n for v in c):
                out.append(f"clause {no}: variable out of range")
        if out:
            return out
        for no, c in enumerate(self.clauses):
            xs = [self.xpos[v] for v in c]
            lo, hi = min(0, *xs), max(0, *xs)
            y = self.level(no)
            for w in range(self.n):
                span = self.span(w)
                if w in c or span is None or not lo <= self.xpos[w] <= hi:
                    continue
                if span[0] <= y <= span[1]:
                    out.append(f"clause {no}: crosses the spine of variable {w}")
        return out

    def one_in_three(self, k: int) -> bool:
        """Some set of at most k true variables puts exactly one in every clause."""
        for size in range(0, min(k, self.n) + 1):
            for true in combinations(range(self.n), size):
                t = set(true)
                if all(len(t.intersection(c)) == 1 for c in self.clauses):
                    return True
        return False


def _eps(cnf: MonotoneCnf) -> Fraction:
    return Fraction(1, 2 * max((c.offset for c in cnf.clauses), default=0) + 2)


def _clause_legs(cnf, start, in_s, in_d):
    segs = []
    for no, c in enumerate(cnf.clauses):
        x = -c.offset if c.sign == "+" else c.offset
        segs.append(Segment.vertical(start + no, x, min(c.vars), max(c.vars), in_s, in_d))
    return segs


def reduce_monotone(cnf: MonotoneCnf) -> Instance:
    """3n horizontals (v_l, v_r, s(v) per variable) and one vertical per clause, all S and D."""
    eps = _eps(cnf)
    segs = []
    for v in range(cnf.n):
        left = cnf.extent(v, "+") or eps
        right = cnf.extent(v, "-") or eps
        segs.append(Segment.horizontal(3 * v, -left, 0, v))
        segs.append(Segment.horizontal(3 * v + 1, 0, right, v))
        segs.append(Segment.horizontal(3 * v + 2, -eps, eps, v))
    segs += _clause_legs(cnf, 3 * cnf.n, True, True)
    return check(Instance(tuple(segs), 0, Variant.HV_HV))


def reduce_monotone_vertical_gadget(cnf: MonotoneCnf) -> Instance:
    """s(v) replaced by a short vertical just left of the spine meeting only v_l and v_r.

    v_r is extended to x = -eps so that it reaches the new vertical.
    Horizontals are S only, verticals D only.
    """
    eps = _eps(cnf)
    segs = []
    for v in range(cnf.n):
        left = cnf.extent(v, "+") or eps
        right = cnf.extent(v, "-") or eps
        segs.append(Segment.horizontal(2 * v, -left, 0, v, True, False))
        segs.append(Segment.horizontal(2 * v + 1, -eps, right, v, True, False))
    quarter = Fraction(1, 4)
    for v in range(cnf.n):
        segs.append(Segment.vertical(2 * cnf.n + v, -eps / 2, v - quarter, v + quarter,
                                     False, True))
    segs += _clause_legs(cnf, 3 * cnf.n, False, True)
    return check(Instance(tuple(segs), 0, Variant.H_V))


def reduce_cycle(cnf: CycleCnf) -> Instance:
    """n vertical variable spines (S) and m horizontal clause levels (D)."""
    quarter = Fraction(1, 4)
    m = len(cnf.clauses)
    segs = []
    for v in range(cnf.n):
        span = cnf.span(v)
        if span is None:
            # unused variable: parked above every clause level
            lo, hi = m + 1, m + 1 + 2 * quarter
        else:
            lo, hi = span[0] - quarter, span[1] + quarter
        segs.append(Segment.vertical(v, cnf.xpos[v], lo, hi, True, False))
    for no, c in enumerate(cnf.clauses):
        xs = [cnf.xpos[v] for v in c]
        segs.append(Segment.horizontal(cnf.n + no, min(0, *xs), max(0, *xs), cnf.level(no),
                                       False, True))
    return check(Instance(tuple(segs), 0, Variant.V_H_ONCE))


def intersection_audit(cnf: CycleCnf, inst: Instance) -> list:
    """Clauses whose horizontal is not stabbed by exactly its own variables."""
    bad = []
    for no, c in enumerate(cnf.clauses):
        if set(inst.stabbers[cnf.n + no]) != set(c):
            bad.append(no)
    return bad


def check_lemma1(cnf: MonotoneCnf, budget: int | None = DEFAULT_BUDGET) -> bool:
    """Satisfiable iff both gadget instances have optimum exactly n."""
    sat = cnf.satisfiable()
    for inst in (reduce_monotone(cnf), reduce_monotone_vertical_gadget(cnf)):
        if (solve_exact(inst, budget).objective == cnf.n) != sat:
            return False
    return True


def check_lemma4(cnf: CycleCnf, k: int) -> bool:
    """1-in-3 satisfiable with at most k true iff an exactly-once cover of size <= k exists."""
    return cnf.one_in_three(k) == exists_exactly_one_cover(reduce_cycle(cnf), k)


def random_monotone_cnf(rng: random.Random, n: int, m: int, tries: int = 1000) -> MonotoneCnf:
    """Random formula with a valid comb embedding, offsets assigned by nesting order.

    A clause must sit further out than every clause of the same side that
    holds a non-member variable strictly inside its span.
    """
    if n < 3 and m > 0:
        raise CnfError("clauses need at least 3 variables")
    for _ in range(tries):
        raw = [(tuple(sorted(rng.sample(range(n), 3))), rng.choice("+-")) for _ in range(m)]
        offsets = _nesting_offsets(raw)
        if offsets is not None:
            return MonotoneCnf(n, tuple(MonotoneClause(v, s, o) for (v, s), o in zip(raw, offsets)))
    raise CnfError("no embeddable formula found")


def _nesting_offsets(raw):
    m = len(raw)
    inner = {a: set() for a in range(m)}
    for a, (va, sa) in enumerate(raw):
        for b, (vb, sb) in enumerate(raw):
            if a != b and sa == sb and any(
                    w not in va and min(va) < w < max(va) for w in vb):
                inner[a].add(b)
    offsets = [0] * m
    state = [0] * m   # 0 new, 1 active, 2 done

    def visit(a):
        if state[a] == 1:
            return False
        if state[a] == 2:
            return True
        state[a] = 1
        if not all(visit(b) for b in inner[a]):
            return False
        state[a] = 2
        return True

    if not all(visit(a) for a in range(m)):
        return None
    for sign in "+-":
        side = [a for a in range(m) if raw[a][1] == sign]
        done = []
        while side:
            ready = [a for a in side if inner[a] <= set(done)]
            a = ready[0]
            done.append(a)
            side.remove(a)
            offsets[a] = len([d for d in done if raw[d][1] == sign])
    return offsets


def random_cycle_cnf(rng: random.Random, n: int, m: int, tries: int = 1000) -> CycleCnf:
    if n < 3 and m > 0:
        raise CnfError("clauses need at least 3 variables")
    for _ in range(tries):
        clauses = tuple(tuple(rng.sample(range(n), 3)) for _ in range(m))
        xs = rng.sample([x for x in range(-n, n + 1) if x], n)
        try:
            return CycleCnf(n, clauses, tuple(xs))
        except CnfError:
            continue
    raise CnfError("no embeddable formula found")


def render_monotone(cnf: MonotoneCnf) -> str:
    lines = [f"VAR {cnf.n}"]
    lines += [f"CLAUSE {c.sign} {c.offset} {' '.join(map(str, c.vars))}" for c in cnf.clauses]
    return "\n".join(lines) + "\n"


def render_cycle(cnf: CycleCnf) -> str:
    lines = [f"VAR {cnf.n}"]
    lines += [f"XPOS {v} {x}" for v, x in enumerate(cnf.xpos)]
    lines += [f"CLAUSE {' '.join(map(str, c))}" for c in cnf.clauses]
    return "\n".join(lines) + "\n"


def _records(text):
    for no, raw in enumerate(text.splitlines(), start=1):
        tok = raw.split("#", 1)[0].split()
        if tok:
            yield no, tok


def parse_cnf(text: str):
    """Parse either Cnf format; the presence of XPOS lines selects CycleCnf."""
    n = None
    mono, cyc, xpos = [], [], {}
    try:
        for no, tok in _records(text):
            if tok[0] == "VAR" and len(tok) == 2:
                n = int(tok[1])
            elif tok[0] == "XPOS" and len(tok) == 3:
                xpos[int(tok[1])] = int(tok[2])
            elif tok[0] == "CLAUSE" and len(tok) == 6:
                mono.append(MonotoneClause(tuple(map(int, tok[3:])), tok[1], int(tok[2])))
            elif tok[0] == "CLAUSE" and len(tok) == 4:
                cyc.append(tuple(map(int, tok[1:])))
            else:
                raise CnfError(f"line {no}: unexpected {' '.join(tok)!r}")
    except ValueError as exc:
        if isinstance(exc, CnfError):
            raise
        raise CnfError(f"bad number: {exc}") from None
    if n is None:
        raise CnfError("missing 'VAR <n>'")
    if xpos or cyc:
        if mono:
            raise CnfError("mixed clause formats")
        return CycleCnf(n, tuple(cyc), tuple(xpos.get(v, 0) for v in range(n)))
    return MonotoneCnf(n, tuple(mono))


def audit_vertical_gadget(cnf: MonotoneCnf, inst: Instance) -> list:
    """Variables whose short vertical meets anything besides its v_l and v_r."""
    bad = []
    for v in range(cnf.n):
        sv = inst[2 * cnf.n + v]
        hit = {s.id for s in inst.segments if s.id != sv.id and stabs(s, sv)}
        if hit != {2 * v, 2 * v + 1}:
            bad.append(v)
    return bad
