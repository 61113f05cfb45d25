"""Descriptor calculus for compact subsets of the reals.

A descriptor is a finite union of four atom kinds (point, closed interval,
geometric sequence with its limit, scaled Cantor set).  All predicates are
decided by atom analysis; finite truncation samples serve as independent
oracles in the tests.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .ordercore import (
    CantorType,
    Fin,
    IntervalType,
    OmegaPlusLim,
    OmegaStarLim,
    OrderTypeExpr,
    lex_sum,
)
from .qline import Rat, format_rat


class EmptyDescriptorError(ValueError):
    pass


class UnsupportedDescriptorError(ValueError):
    pass


@dataclass(frozen=True)
class Point:
    value: Rat


@dataclass(frozen=True)
class Interval:
    lo: Rat
    hi: Rat

    def __post_init__(self) -> None:
        if not self.lo < self.hi:
            raise ValueError("interval atom needs lo < hi")


@dataclass(frozen=True)
class GeomSeq:
    """The set {limit} u {limit + (first - limit) * ratio^k : k >= 0}."""

    limit: Rat
    first: Rat
    ratio: Rat

    def __post_init__(self) -> None:
        if not Fraction(0) < self.ratio < Fraction(1):
            raise ValueError("ratio must lie strictly between 0 and 1")
        if self.first == self.limit:
            raise ValueError("first must differ from limit")

    @property
    def descending(self) -> bool:
        return self.first > self.limit

    def term(self, k: int) -> Rat:
        return self.limit + (self.first - self.limit) * self.ratio**k


@dataclass(frozen=True)
class CantorPiece:
    lo: Rat
    hi: Rat

    def __post_init__(self) -> None:
        if not self.lo < self.hi:
            raise ValueError("cantor atom needs lo < hi")


Atom = Union[Point, Interval, GeomSeq, CantorPiece]


@dataclass(frozen=True)
class CompactDescriptor:
    atoms: tuple[Atom, ...]


def _span(a: Atom) -> tuple[Rat, Rat]:
    if isinstance(a, Point):
        return a.value, a.value
    if isinstance(a, (Interval, CantorPiece)):
        return a.lo, a.hi
    if isinstance(a, GeomSeq):
        lo, hi = sorted((a.limit, a.first))
        return lo, hi
    raise TypeError(f"not an atom: {a!r}")


def _atom_min(a: Atom) -> Rat:
    return _span(a)[0]


def _accumulates_at_min(a: Atom) -> bool:
    """Whether the atom's own minimum is a limit point of the atom."""
    if isinstance(a, Point):
        return False
    if isinstance(a, (Interval, CantorPiece)):
        return True
    if isinstance(a, GeomSeq):
        return a.descending  # min is the limit of the sequence
    raise TypeError(f"not an atom: {a!r}")


def _normalized_atoms(d: CompactDescriptor) -> list[Atom]:
    """Atoms sorted left to right, with redundant points absorbed.  Any other
    overlap between atom spans is rejected: the grammar keeps predicates
    decidable only on disjoint pieces."""
    if not d.atoms:
        raise EmptyDescriptorError("empty descriptor")
    points = [a for a in d.atoms if isinstance(a, Point)]
    others = sorted((a for a in d.atoms if not isinstance(a, Point)), key=_span)
    for (a, sa), (b, sb) in zip(
        [(a, _span(a)) for a in others], [(b, _span(b)) for b in others][1:]
    ):
        if sb[0] <= sa[1]:
            raise UnsupportedDescriptorError(
                f"overlapping atoms: {a!r} and {b!r}"
            )
    kept_points = []
    for p in points:
        absorbed = False
        for a in others:
            lo, hi = _span(a)
            if isinstance(a, Interval) and lo <= p.value <= hi:
                absorbed = True
            elif isinstance(a, CantorPiece) and p.value in (lo, hi):
                absorbed = True
            elif isinstance(a, GeomSeq) and p.value in (a.limit, a.first):
                absorbed = True
            elif lo <= p.value <= hi:
                raise UnsupportedDescriptorError(
                    f"point {p.value} inside the span of {a!r}"
                )
        if not absorbed:
            kept_points.append(p)
    seen: set[Rat] = set()
    uniq = []
    for p in sorted(kept_points, key=lambda p: p.value):
        if p.value not in seen:
            seen.add(p.value)
            uniq.append(p)
    merged = sorted(uniq + others, key=_span)
    return merged


def min_nonisolated(d: CompactDescriptor) -> bool:
    """Whether the minimum of the denoted set is one of its limit points."""
    atoms = _normalized_atoms(d)
    m = min(_atom_min(a) for a in atoms)
    return any(_atom_min(a) == m and _accumulates_at_min(a) for a in atoms)


def nowhere_dense(d: CompactDescriptor) -> bool:
    """Compact sets in this grammar have interior iff an interval atom is
    present; finite unions of nowhere dense sets are nowhere dense."""
    return not any(isinstance(a, Interval) for a in _normalized_atoms(d))


def sample(d: CompactDescriptor, depth: int) -> list[Rat]:
    """Canonical depth-k finite sample of the denoted set, ascending."""
    if depth < 1:
        raise ValueError("depth must be >= 1")
    out: list[Rat] = []
    for a in _normalized_atoms(d):
        if isinstance(a, Point):
            out.append(a.value)
        elif isinstance(a, Interval):
            step = (a.hi - a.lo) / depth
            out.extend(a.lo + i * step for i in range(depth + 1))
        elif isinstance(a, GeomSeq):
            pts = sorted({a.limit, *(a.term(k) for k in range(depth))})
            out.extend(pts)
        elif isinstance(a, CantorPiece):
            intervals = [(a.lo, a.hi)]
            for _ in range(depth):
                nxt = []
                for lo, hi in intervals:
                    third = (hi - lo) / 3
                    nxt.append((lo, lo + third))
                    nxt.append((hi - third, hi))
                intervals = nxt
            for lo, hi in intervals:
                out.extend((lo, hi))
    return out


def order_type(d: CompactDescriptor) -> OrderTypeExpr:
    """Order type of the denoted set, as an expression whose truncations are
    order-isomorphic to the canonical samples."""
    parts: list[OrderTypeExpr] = []
    for a in _normalized_atoms(d):
        if isinstance(a, Point):
            parts.append(Fin(1))
        elif isinstance(a, Interval):
            parts.append(IntervalType())
        elif isinstance(a, GeomSeq):
            parts.append(OmegaStarLim() if a.descending else OmegaPlusLim())
        elif isinstance(a, CantorPiece):
            parts.append(CantorType())
    if len(parts) == 1:
        return parts[0]
    return lex_sum(range(len(parts)), parts)


def classify(d: CompactDescriptor) -> dict:
    """Classification against the two catalog clauses: I_c needs the minimum
    non-isolated, II_c additionally nowhere dense."""
    mni = min_nonisolated(d)
    nd = nowhere_dense(d)
    if not mni:
        label = "neither"
    elif nd:
        label = "II_c"
    else:
        label = "I_c"
    return {"min_nonisolated": mni, "nowhere_dense": nd, "class": label}


def classify_json(d: CompactDescriptor) -> str:
    return json.dumps(classify(d), sort_keys=True)


# ---------------------------------------------------------------------------
# text syntax: union(point(0), geoseq(0, 1, 1/2), cantor(2, 3), interval(4, 5))

_CALL = re.compile(r"\s*([a-z]+)\(")


def _split_args(body: str) -> list[str]:
    args, level, start = [], 0, 0
    for i, ch in enumerate(body):
        if ch == "(":
            level += 1
        elif ch == ")":
            level -= 1
        elif ch == "," and level == 0:
            args.append(body[start:i])
            start = i + 1
    if body.strip():
        args.append(body[start:])
    return args


def parse_descriptor(s: str) -> CompactDescriptor:
    s = s.strip()
    m = _CALL.match(s)
    if not m or not s.endswith(")"):
        raise ValueError(f"cannot parse descriptor: {s!r}")
    name = m.group(1)
    body = s[m.end() : -1]
    args = _split_args(body)
    if name == "union":
        atoms: list[Atom] = []
        for part in args:
            atoms.extend(parse_descriptor(part).atoms)
        return CompactDescriptor(tuple(atoms))
    vals = [Fraction(a.strip()) for a in args]
    if name == "point" and len(vals) == 1:
        return CompactDescriptor((Point(vals[0]),))
    if name == "points":
        return CompactDescriptor(tuple(Point(v) for v in vals))
    if name == "interval" and len(vals) == 2:
        return CompactDescriptor((Interval(*vals),))
    if name == "geoseq" and len(vals) == 3:
        return CompactDescriptor((GeomSeq(*vals),))
    if name == "cantor" and len(vals) == 2:
        return CompactDescriptor((CantorPiece(*vals),))
    raise ValueError(f"cannot parse descriptor: {s!r}")


def format_descriptor(d: CompactDescriptor) -> str:
    parts = []
    for a in d.atoms:
        if isinstance(a, Point):
            parts.append(f"point({format_rat(a.value)})")
        elif isinstance(a, Interval):
            parts.append(f"interval({format_rat(a.lo)}, {format_rat(a.hi)})")
        elif isinstance(a, GeomSeq):
            parts.append(
                f"geoseq({format_rat(a.limit)}, {format_rat(a.first)}, {format_rat(a.ratio)})"
            )
        elif isinstance(a, CantorPiece):
            parts.append(f"cantor({format_rat(a.lo)}, {format_rat(a.hi)})")
    if len(parts) == 1:
        return parts[0]
    return "union(" + ", ".join(parts) + ")"
