"""Finite linear orders, cuts, and a syntactic calculus of order types.

Order types are expression trees over a small atom set (finite chains, a
converging descending/ascending sequence, the Cantor order, the unit
interval) closed under lexicographic sums.  Equality of denoted orders is
only ever tested through finite truncations, which keeps every predicate
decidable.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

# ---------------------------------------------------------------------------
# finite linear orders


@dataclass(frozen=True)
class Cut:
    lower: tuple
    upper: tuple
    is_gap: bool
    is_jump: bool


def cuts(labels: Sequence) -> list[Cut]:
    """All cuts of a finite linear order, annotated.  Finite orders have no
    gaps and every cut sits on a jump."""
    labels = tuple(labels)
    if len(set(labels)) != len(labels):
        raise ValueError("labels must be distinct")
    if len(labels) < 2:
        raise ValueError("no cuts")
    return [
        Cut(lower=labels[:i], upper=labels[i:], is_gap=False, is_jump=True)
        for i in range(1, len(labels))
    ]


# ---------------------------------------------------------------------------
# order type expressions


@dataclass(frozen=True)
class Fin:
    size: int

    def __post_init__(self) -> None:
        if self.size < 1:
            raise ValueError("finite order atom needs size >= 1")


@dataclass(frozen=True)
class OmegaStarLim:
    """Type 1 + omega*: a minimum limit point below a descending sequence."""


@dataclass(frozen=True)
class OmegaPlusLim:
    """Type omega + 1: an ascending sequence below its supremum."""


@dataclass(frozen=True)
class CantorType:
    """Order type of the Cantor middle-thirds set."""


@dataclass(frozen=True)
class IntervalType:
    """Order type of [0, 1]: complete, dense, no jumps."""


@dataclass(frozen=True)
class Sum:
    parts: tuple

    def __post_init__(self) -> None:
        if len(self.parts) < 2:
            raise ValueError("sum needs at least two parts")


OrderTypeExpr = Union[Fin, OmegaStarLim, OmegaPlusLim, CantorType, IntervalType, Sum]

_ATOMS = {
    "omega_star": OmegaStarLim(),
    "omega_plus": OmegaPlusLim(),
    "cantor": CantorType(),
    "interval": IntervalType(),
}


def lex_sum(index: Sequence, parts: Sequence[OrderTypeExpr]) -> OrderTypeExpr:
    """Lexicographic sum of `parts` along a finite index order."""
    if len(index) != len(parts):
        raise ValueError(f"index has {len(index)} points but {len(parts)} parts given")
    flat: list[OrderTypeExpr] = []
    for p in parts:
        if isinstance(p, Sum):
            flat.extend(p.parts)
        else:
            flat.append(p)
    merged: list[OrderTypeExpr] = []
    for p in flat:
        if merged and isinstance(p, Fin) and isinstance(merged[-1], Fin):
            merged[-1] = Fin(merged[-1].size + p.size)
        else:
            merged.append(p)
    if len(merged) == 1:
        return merged[0]
    return Sum(tuple(merged))


def truncate(t: OrderTypeExpr, depth: int) -> list[Fraction]:
    """Canonical depth-d finite sample of the denoted order, as an ascending
    list of rational positions in [0, 1]."""
    if depth < 1:
        raise ValueError("depth must be >= 1")
    if isinstance(t, Fin):
        n = t.size
        return [Fraction(i, n - 1) if n > 1 else Fraction(0) for i in range(n)]
    if isinstance(t, OmegaStarLim):
        return [Fraction(0)] + [Fraction(1, depth - i) for i in range(depth)]
    if isinstance(t, OmegaPlusLim):
        return [Fraction(1) - x for x in reversed(truncate(OmegaStarLim(), depth))]
    if isinstance(t, CantorType):
        intervals = [(Fraction(0), Fraction(1))]
        for _ in range(depth):
            nxt = []
            for a, b in intervals:
                third = (b - a) / 3
                nxt.append((a, a + third))
                nxt.append((b - third, b))
            intervals = nxt
        out: list[Fraction] = []
        for a, b in intervals:
            out.extend((a, b))
        return out
    if isinstance(t, IntervalType):
        return [Fraction(i, depth) for i in range(depth + 1)]
    if isinstance(t, Sum):
        k = len(t.parts)
        out = []
        # each part lands strictly inside its slot so parts never collide
        for i, p in enumerate(t.parts):
            out.extend(Fraction(4 * i + 1 + 2 * x, 4 * k) for x in truncate(p, depth))
        return out
    raise TypeError(f"not an order type expression: {t!r}")


def iso_truncations(a: OrderTypeExpr, b: OrderTypeExpr, max_depth: int = 8) -> bool:
    """Order-isomorphism of the depth-d truncations for all d <= max_depth.
    Finite linear orders are isomorphic iff equinumerous."""
    return all(
        len(truncate(a, d)) == len(truncate(b, d)) for d in range(1, max_depth + 1)
    )


def is_boolean(t: OrderTypeExpr) -> bool:
    """Whether the denoted order is complete with dense jumps, decided on the
    grammar.  Every atom except the dense interval is Boolean; a sum is
    Boolean iff all its parts are."""
    if isinstance(t, (Fin, OmegaStarLim, OmegaPlusLim, CantorType)):
        return True
    if isinstance(t, IntervalType):
        return False
    if isinstance(t, Sum):
        return all(is_boolean(p) for p in t.parts)
    raise TypeError(f"not an order type expression: {t!r}")


# ---------------------------------------------------------------------------
# condensation


@dataclass(frozen=True)
class CondClass:
    """One equivalence class of the countable-interval condensation."""

    position: Fraction
    size: object  # int or the string "omega"
    note: str = ""

    @property
    def countable_tag(self) -> bool:
        return True  # every condensation class is at most countable


def _atom_classes(t: OrderTypeExpr, depth: int) -> tuple[list[CondClass], bool]:
    """Classes of an atom at working depth; second component tells whether the
    whole atom is one countable piece (and hence merges with its neighbours)."""
    if isinstance(t, Fin):
        return [CondClass(Fraction(1, 2), t.size)], True
    if isinstance(t, (OmegaStarLim, OmegaPlusLim)):
        return [CondClass(Fraction(1, 2), "omega")], True
    if isinstance(t, CantorType):
        removed: list[tuple[Fraction, Fraction]] = []
        intervals = [(Fraction(0), Fraction(1))]
        for _ in range(depth):
            nxt = []
            for a, b in intervals:
                third = (b - a) / 3
                removed.append((a + third, b - third))
                nxt.append((a, a + third))
                nxt.append((b - third, b))
            intervals = nxt
        classes = [CondClass(Fraction(0), 1, "endpoint")]
        for a, b in sorted(removed):
            classes.append(CondClass((a + b) / 2, 2, "removed-interval pair"))
        classes.append(CondClass(Fraction(1), 1, "endpoint"))
        return classes, False
    if isinstance(t, IntervalType):
        classes = [
            CondClass(Fraction(i, depth), 1, "dense singleton") for i in range(depth + 1)
        ]
        return classes, False
    raise TypeError(f"not an atom: {t!r}")


def _add_sizes(a, b):
    if a == "omega" or b == "omega":
        return "omega"
    return a + b


def condensation(t: OrderTypeExpr, depth: int = 4) -> list[CondClass]:
    """Condensation classes of the denoted order, positions scaled to [0, 1].

    A run of wholly countable parts collapses into a single class and absorbs
    the boundary class of an adjacent uncountable part.
    """
    if not isinstance(t, Sum):
        classes, _ = _atom_classes(t, depth)
        return classes
    k = len(t.parts)
    out: list[CondClass] = []
    pending: object | None = None  # accumulated countable size awaiting a home
    for i, p in enumerate(t.parts):
        classes, countable = _atom_classes(p, depth)
        scaled = [
            CondClass(Fraction(i + c.position, k), c.size, c.note) for c in classes
        ]
        if countable:
            (c,) = scaled
            if pending is not None:
                pending = _add_sizes(pending, c.size)
            elif out:
                last = out.pop()
                out.append(CondClass(last.position, _add_sizes(last.size, c.size), last.note))
            else:
                pending = c.size
        else:
            if pending is not None:
                first = scaled[0]
                scaled[0] = CondClass(first.position, _add_sizes(pending, first.size), first.note)
                pending = None
            out.extend(scaled)
    if pending is not None:
        if out:
            last = out.pop()
            out.append(CondClass(last.position, _add_sizes(last.size, pending), last.note))
        else:
            out.append(CondClass(Fraction(1, 2), pending))
    return out


# ---------------------------------------------------------------------------
# text syntax


def format_expr(t: OrderTypeExpr) -> str:
    if isinstance(t, Fin):
        return f"fin({t.size})"
    for name, atom in _ATOMS.items():
        if t == atom:
            return name
    if isinstance(t, Sum):
        return "sum(" + ", ".join(format_expr(p) for p in t.parts) + ")"
    raise TypeError(f"not an order type expression: {t!r}")


def parse_expr(s: str) -> OrderTypeExpr:
    s = s.strip()
    if s in _ATOMS:
        return _ATOMS[s]
    if s.startswith("fin(") and s.endswith(")"):
        return Fin(int(s[4:-1]))
    if s.startswith("sum(") and s.endswith(")"):
        body = s[4:-1]
        parts, level, start = [], 0, 0
        for i, ch in enumerate(body):
            if ch == "(":
                level += 1
            elif ch == ")":
                level -= 1
            elif ch == "," and level == 0:
                parts.append(body[start:i])
                start = i + 1
        parts.append(body[start:])
        exprs = [parse_expr(p) for p in parts]
        return lex_sum(range(len(exprs)), exprs)
    raise ValueError(f"cannot parse order type: {s!r}")
