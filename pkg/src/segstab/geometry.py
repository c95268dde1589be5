"""Segments, instances, solutions and the closed-set stabbing predicate.

Every horizontal segment of an instance crosses the vertical line
``x = lv_x``.  Coordinates are ints or :class:`fractions.Fraction`; no
floating point enters any predicate.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, Union

Coord = Union[int, Fraction]


class InstanceError(ValueError):
    """An instance violates one of its invariants."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


class InfeasibleError(RuntimeError):
    """Some target segment has no stabber among the allowed candidates."""

    def __init__(self, message, target=None):
        super().__init__(message)
        self.target = target


class BudgetExceeded(RuntimeError):
    """A search exceeded its node limit."""

    def __init__(self, nodes):
        super().__init__(f"node limit exceeded after {nodes} nodes")
        self.nodes = nodes


class VariantMismatch(ValueError):
    pass


class Variant(enum.Enum):
    """Which segment kinds may stab (S) and which must be stabbed (D)."""

    H_V = ("H/V", "H", "V")
    H_HV = ("H/HV", "H", "HV")
    V_H = ("V/H", "V", "H")
    V_H_ONCE = ("V/H-once", "V", "H")
    HV_H = ("HV/H", "HV", "H")
    HV_V = ("HV/V", "HV", "V")
    HV_HV = ("HV/HV", "HV", "HV")

    def __init__(self, tag, s_kinds, d_kinds):
        self.tag = tag
        self.s_kinds = s_kinds
        self.d_kinds = d_kinds

    @classmethod
    def from_tag(cls, tag: str) -> "Variant":
        for v in cls:
            if v.tag == tag:
                return v
        raise ValueError(f"unknown variant tag {tag!r}")

    def __str__(self):
        return self.tag


def _coord(value) -> Coord:
    if isinstance(value, Fraction):
        return int(value) if value.denominator == 1 else value
    if isinstance(value, int):
        return value
    raise TypeError(f"coordinates must be int or Fraction, got {type(value).__name__}")


@dataclass(frozen=True)
class Segment:
    """Axis-parallel closed segment stored as its bounding box.

    Horizontal segments have ``y_lo == y_hi``; vertical ones ``x_lo == x_hi``.
    """

    id: int
    kind: str  # "H" or "V"
    x_lo: Coord
    x_hi: Coord
    y_lo: Coord
    y_hi: Coord
    in_s: bool = True
    in_d: bool = True

    @classmethod
    def horizontal(cls, id, x_lo, x_hi, y, in_s=True, in_d=True):
        y = _coord(y)
        return cls(id, "H", _coord(x_lo), _coord(x_hi), y, y, in_s, in_d)

    @classmethod
    def vertical(cls, id, x, y_lo, y_hi, in_s=True, in_d=True):
        x = _coord(x)
        return cls(id, "V", x, x, _coord(y_lo), _coord(y_hi), in_s, in_d)

    @property
    def is_horizontal(self) -> bool:
        return self.kind == "H"

    @property
    def y(self) -> Coord:
        if self.kind != "H":
            raise AttributeError("vertical segments have no single y")
        return self.y_lo

    @property
    def x(self) -> Coord:
        if self.kind != "V":
            raise AttributeError("horizontal segments have no single x")
        return self.x_lo

    @property
    def roles(self) -> str:
        return ("S" if self.in_s else "") + ("D" if self.in_d else "")

    def with_roles(self, in_s: bool, in_d: bool) -> "Segment":
        return Segment(self.id, self.kind, self.x_lo, self.x_hi, self.y_lo, self.y_hi, in_s, in_d)

    def mirrored(self, lv_x: Coord) -> "Segment":
        """Reflection through the line x = lv_x, keeping id and roles."""
        return Segment(self.id, self.kind, 2 * lv_x - self.x_hi, 2 * lv_x - self.x_lo,
                       self.y_lo, self.y_hi, self.in_s, self.in_d)


def stabs(a: Segment, b: Segment) -> bool:
    """True iff the closed point sets of ``a`` and ``b`` intersect."""
    return (a.x_lo <= b.x_hi and b.x_lo <= a.x_hi
            and a.y_lo <= b.y_hi and b.y_lo <= a.y_hi)


@dataclass(frozen=True)
class Instance:
    segments: tuple
    lv_x: Coord = 0
    variant: Variant = Variant.HV_HV

    def __post_init__(self):
        object.__setattr__(self, "segments", tuple(self.segments))
        object.__setattr__(self, "lv_x", _coord(self.lv_x))

    def __len__(self):
        return len(self.segments)

    def __getitem__(self, sid: int) -> Segment:
        return self.segments[sid]

    @cached_property
    def s_ids(self) -> tuple:
        return tuple(s.id for s in self.segments if s.in_s)

    @cached_property
    def d_ids(self) -> tuple:
        return tuple(s.id for s in self.segments if s.in_d)

    @cached_property
    def stabbers(self) -> Mapping[int, tuple]:
        """Map every D-segment id to the sorted ids of S-segments stabbing it."""
        s_segs = [self.segments[i] for i in self.s_ids]
        return {d: tuple(s.id for s in s_segs if stabs(s, self.segments[d]))
                for d in self.d_ids}

    @cached_property
    def stab_sets(self) -> Mapping[int, frozenset]:
        return {d: frozenset(ids) for d, ids in self.stabbers.items()}

    def side(self, seg: Segment) -> str:
        """``"l"`` for verticals with x <= lv_x, ``"r"`` otherwise; ``"h"`` for horizontals."""
        if seg.is_horizontal:
            return "h"
        return "l" if seg.x <= self.lv_x else "r"

    def horizontals(self, role: str | None = None) -> list:
        return [s for s in self.segments if s.is_horizontal and _has_role(s, role)]

    def verticals(self, role: str | None = None) -> list:
        return [s for s in self.segments if not s.is_horizontal and _has_role(s, role)]

    def mirrored(self) -> "Instance":
        return Instance(tuple(s.mirrored(self.lv_x) for s in self.segments), self.lv_x, self.variant)


def _has_role(seg, role):
    return role is None or (role == "S" and seg.in_s) or (role == "D" and seg.in_d)


@dataclass
class Solution:
    """Chosen S-segment ids plus one witnessing stabber per D-segment.

    ``stats`` carries solver diagnostics; it takes no part in equality.
    """

    chosen: frozenset
    witness: dict
    stats: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        self.chosen = frozenset(self.chosen)

    @property
    def objective(self) -> int:
        return len(self.chosen)


def make_solution(inst: Instance, chosen: Iterable[int], targets: Iterable[int] | None = None,
                  **stats) -> Solution:
    """Build a Solution whose witness maps each target to its lowest-id chosen stabber.

    Raises InfeasibleError if some target is not stabbed by ``chosen``.
    """
    chosen = frozenset(chosen)
    targets = inst.d_ids if targets is None else targets
    witness = {}
    for d in targets:
        hit = [s for s in inst.stabbers[d] if s in chosen]
        if not hit:
            raise InfeasibleError(f"segment {d} is not stabbed by the chosen set", d)
        witness[d] = hit[0]
    return Solution(chosen, witness, dict(stats))


def validate(inst: Instance) -> list:
    """Return every violated instance invariant as a message; empty means ok."""
    out = []
    segs = inst.segments
    for pos, s in enumerate(segs):
        if s.id != pos:
            out.append(f"segment at position {pos} has id {s.id}; ids must be dense in [0, n)")
        if s.kind not in ("H", "V"):
            out.append(f"segment {s.id}: unknown kind {s.kind!r}")
            continue
        if s.x_lo > s.x_hi or s.y_lo > s.y_hi:
            out.append(f"segment {s.id}: reversed endpoints")
        if s.kind == "H" and s.y_lo != s.y_hi:
            out.append(f"segment {s.id}: horizontal with y_lo != y_hi")
        if s.kind == "V" and s.x_lo != s.x_hi:
            out.append(f"segment {s.id}: vertical with x_lo != x_hi")
        if not (s.in_s or s.in_d):
            out.append(f"segment {s.id}: neither in S nor in D")
        if s.kind == "H" and not (s.x_lo <= inst.lv_x <= s.x_hi):
            out.append(f"segment {s.id}: h does not cross L_v (x = {inst.lv_x})")
        v = inst.variant
        if s.in_s and s.kind not in v.s_kinds:
            out.append(f"segment {s.id}: role S not allowed for {s.kind} in variant {v.tag}")
        if s.in_d and s.kind not in v.d_kinds:
            out.append(f"segment {s.id}: role D not allowed for {s.kind} in variant {v.tag}")
    return out


def check(inst: Instance) -> Instance:
    violations = validate(inst)
    if violations:
        raise InstanceError(violations)
    return inst


def y_clusters(inst: Instance, ids: Iterable[int] | None = None) -> list:
    """Partition horizontal segment ids by exact y, clusters ordered by y, ids ascending."""
    groups: dict = {}
    pool = (inst[i] for i in ids) if ids is not None else inst.segments
    for s in pool:
        if s.is_horizontal:
            groups.setdefault(s.y, []).append(s.id)
    return [sorted(groups[y]) for y in sorted(groups)]


def verify(inst: Instance, sol: Solution, targets: Iterable[int] | None = None) -> list:
    """Check a solution against ``inst`` using only :func:`stabs`.

    Returns a list of violations; empty means the solution is feasible.
    """
    out = []
    n = len(inst)
    for c in sorted(sol.chosen):
        if not (0 <= c < n):
            out.append(f"chosen id {c} does not exist")
        elif not inst[c].in_s:
            out.append(f"chosen id {c} is not in S")
    targets = inst.d_ids if targets is None else tuple(targets)
    for d in targets:
        w = sol.witness.get(d)
        if w is None:
            out.append(f"missing witness for D-segment {d}")
        elif w not in sol.chosen:
            out.append(f"witness {w} for D-segment {d} is not chosen")
        elif 0 <= w < n and not stabs(inst[w], inst[d]):
            out.append(f"witness {w} does not stab D-segment {d}")
    for d in sol.witness:
        if d not in targets:
            out.append(f"witness given for {d}, which is not a target")
    return out
