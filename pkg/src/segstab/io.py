"""Text formats for instances and solutions, and the seeded instance generator.

Instance files::

    STAB 1
    LV 0
    VARIANT HV/HV
    H <id> <S|D|SD> <x_lo> <x_hi> <y>
    V <id> <S|D|SD> <x> <y_lo> <y_hi>

Solution files hold ``CHOSEN <id>`` lines followed by ``WITNESS <d> <s>``
lines.  ``#`` starts a comment.  Coordinates are integers or ``p/q``.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .geometry import Instance, Segment, Solution, Variant, check


class ParseError(ValueError):
    def __init__(self, line, message):
        super().__init__(f"line {line}: {message}")
        self.line = line


def format_coord(value) -> str:
    if isinstance(value, Fraction) and value.denominator != 1:
        return f"{value.numerator}/{value.denominator}"
    return str(int(value))


def parse_coord(token: str, line: int):
    try:
        if "/" in token:
            p, q = token.split("/")
            value = Fraction(int(p), int(q))
            return int(value) if value.denominator == 1 else value
        return int(token)
    except (ValueError, ZeroDivisionError):
        raise ParseError(line, f"bad coordinate {token!r}") from None


def _lines(text):
    for no, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].split()
        if body:
            yield no, body


_ROLES = {"S": (True, False), "D": (False, True), "SD": (True, True)}


def parse(text: str, validate_instance: bool = True) -> Instance:
    """Parse an instance; raises ParseError, or InstanceError when invalid."""
    lines = list(_lines(text))
    if not lines or lines[0][1] != ["STAB", "1"]:
        raise ParseError(lines[0][0] if lines else 1, "expected header 'STAB 1'")
    lv = None
    variant = Variant.HV_HV
    segs = {}
    for no, tok in lines[1:]:
        head = tok[0]
        if head == "LV":
            if len(tok) != 2 or lv is not None:
                raise ParseError(no, "expected a single 'LV <x>'")
            lv = parse_coord(tok[1], no)
        elif head == "VARIANT":
            if len(tok) != 2:
                raise ParseError(no, "expected 'VARIANT <tag>'")
            try:
                variant = Variant.from_tag(tok[1])
            except ValueError as exc:
                raise ParseError(no, str(exc)) from None
        elif head in ("H", "V"):
            if len(tok) != 6:
                raise ParseError(no, f"{head} line needs 5 fields")
            try:
                sid = int(tok[1])
            except ValueError:
                raise ParseError(no, f"bad id {tok[1]!r}") from None
            if tok[2] not in _ROLES:
                raise ParseError(no, f"bad roles {tok[2]!r}")
            if sid in segs:
                raise ParseError(no, f"duplicate id {sid}")
            in_s, in_d = _ROLES[tok[2]]
            a, b, c = (parse_coord(t, no) for t in tok[3:])
            if head == "H":
                segs[sid] = Segment.horizontal(sid, a, b, c, in_s, in_d)
            else:
                segs[sid] = Segment.vertical(sid, a, b, c, in_s, in_d)
        else:
            raise ParseError(no, f"unknown record {head!r}")
    if lv is None:
        raise ParseError(lines[-1][0], "missing 'LV <x>'")
    inst = Instance(tuple(segs[k] for k in sorted(segs)), lv, variant)
    return check(inst) if validate_instance else inst


def render(inst: Instance) -> str:
    out = ["STAB 1", f"LV {format_coord(inst.lv_x)}", f"VARIANT {inst.variant.tag}"]
    for s in inst.segments:
        if s.is_horizontal:
            nums = (s.x_lo, s.x_hi, s.y)
        else:
            nums = (s.x, s.y_lo, s.y_hi)
        out.append(" ".join([s.kind, str(s.id), s.roles] + [format_coord(v) for v in nums]))
    return "\n".join(out) + "\n"


def render_solution(sol: Solution) -> str:
    out = [f"CHOSEN {c}" for c in sorted(sol.chosen)]
    out += [f"WITNESS {d} {sol.witness[d]}" for d in sorted(sol.witness)]
    return "\n".join(out) + "\n"


def parse_solution(text: str) -> Solution:
    chosen, witness = set(), {}
    seen_witness = False
    for no, tok in _lines(text):
        try:
            if tok[0] == "CHOSEN" and len(tok) == 2:
                if seen_witness:
                    raise ParseError(no, "CHOSEN after WITNESS")
                chosen.add(int(tok[1]))
            elif tok[0] == "WITNESS" and len(tok) == 3:
                seen_witness = True
                d, s = int(tok[1]), int(tok[2])
                if d in witness:
                    raise ParseError(no, f"second witness for {d}")
                witness[d] = s
            else:
                raise ParseError(no, f"unexpected {' '.join(tok)!r}")
        except ValueError as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(no, "ids must be integers") from None
    return Solution(frozenset(chosen), witness)


@dataclass(frozen=True)
class GeneratorConfig:
    seed: int
    n_h: int
    n_v: int
    lo: int = -6
    hi: int = 6
    lv_x: int = 0
    variant: Variant = Variant.HV_HV
    left_fraction: float = 0.5

    def problems(self) -> list:
        out = []
        if self.n_h < 0 or self.n_v < 0:
            out.append("counts must be non-negative")
        if not self.lo <= self.lv_x <= self.hi or self.lo == self.hi:
            out.append("need lo <= lv_x <= hi and a nonempty range")
        if not 0.0 <= self.left_fraction <= 1.0:
            out.append("left_fraction must lie in [0, 1]")
        if self.n_v and self.left_fraction > 0 and self.lo >= self.lv_x:
            out.append("no room for verticals left of L_v")
        if self.n_v and self.left_fraction < 1 and self.hi <= self.lv_x:
            out.append("no room for verticals right of L_v")
        return out


def generate(cfg: GeneratorConfig) -> Instance:
    """Random valid instance; a pure function of ``cfg``.

    Horizontal x-ranges are drawn as [lv_x - a, lv_x + b] with a, b >= 0,
    so every horizontal crosses L_v.  Verticals never lie on L_v.  Roles
    follow the variant: a kind gets S (D) iff the variant lets it stab
    (be stabbed).
    """
    bad = cfg.problems()
    if bad:
        raise ValueError("; ".join(bad))
    rng = random.Random(cfg.seed)
    lv, lo, hi = cfg.lv_x, cfg.lo, cfg.hi
    raw = []
    for _ in range(cfg.n_h):
        y = rng.randint(lo, hi)
        a = rng.randint(0, lv - lo)
        b = rng.randint(0, hi - lv)
        if a == b == 0:
            if hi > lv:
                b = 1
            else:
                a = 1
        raw.append(("H", lv - a, lv + b, y))
    for _ in range(cfg.n_v):
        left = rng.random() < cfg.left_fraction
        x = rng.randint(lo, lv - 1) if left else rng.randint(lv + 1, hi)
        y_lo = rng.randint(lo, hi - 1)
        y_hi = rng.randint(y_lo + 1, hi)
        raw.append(("V", x, y_lo, y_hi))
    rng.shuffle(raw)
    v = cfg.variant
    segs = []
    for sid, (kind, a, b, c) in enumerate(raw):
        in_s, in_d = kind in v.s_kinds, kind in v.d_kinds
        if kind == "H":
            segs.append(Segment.horizontal(sid, a, b, c, in_s, in_d))
        else:
            segs.append(Segment.vertical(sid, a, b, c, in_s, in_d))
    return check(Instance(tuple(segs), lv, v))
