"""Chain constructions in the copy posets: finite powerset-interval chains,
the cut-indexed assembly realizing a prescribed order type inside a rational
window, top-down chains through a positive family, and a probe harness that
hunts for interpolants in a finished chain.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Optional, Sequence, Union

from . import gmunu, ordercore
from .compactsets import CompactDescriptor, order_type
from .gmunu import FULL, Mask, SymbolicSet
from .henson import PqrSpec
from .ordercore import CantorType, Fin, OmegaStarLim, OrderTypeExpr, truncate
from .qline import Rat, Window, format_rat, rationals_in, window_members


class UnsupportedTargetError(ValueError):
    pass


Carrier = Union[frozenset, SymbolicSet, PqrSpec, None]


@dataclass(frozen=True)
class ChainElement:
    carrier: Carrier
    provenance: tuple

    @property
    def block(self) -> Optional[Rat]:
        """Cut position this element belongs to, when it has one."""
        if self.provenance and self.provenance[0] in ("A_x", "A_x_plus", "interval_step"):
            return self.provenance[1]
        return None


# ---------------------------------------------------------------------------
# finite powerset-interval chains


def interval_chain(A: Iterable, B: Iterable, L: Union[int, Sequence]) -> list[frozenset]:
    """Maximal chain from A to B in the powerset interval, isomorphic to the
    finite order L; the new elements enter in ascending order."""
    A = frozenset(A)
    B = frozenset(B)
    if not A <= B:
        raise ValueError("A must be a subset of B")
    size = L if isinstance(L, int) else len(L)
    diff = sorted(B - A)
    if size != len(diff) + 1:
        raise ValueError(f"order has {size} points but |B \\ A| = {len(diff)}")
    out = [A]
    cur = A
    for a in diff:
        cur = cur | {a}
        out.append(cur)
    return out


# ---------------------------------------------------------------------------
# decomposition of a target order type at working depth


@dataclass(frozen=True)
class Decomposition:
    classes: tuple  # ascending (position in [0,1], class size) pairs
    M: tuple  # positions with class size > 1

    @property
    def total(self) -> int:
        return sum(s for _, s in self.classes)


def decompose(t: OrderTypeExpr, depth: int = 3) -> Decomposition:
    """Condensation-style decomposition of the working-depth truncation:
    positions of the classes and the (finite stand-in for the) set M."""
    if isinstance(t, Fin):
        classes = [(Fraction(1, 2), t.size)]
    elif isinstance(t, OmegaStarLim):
        classes = [(Fraction(1, 2), depth + 1)]
    elif isinstance(t, CantorType):
        classes = [
            (c.position, c.size) for c in ordercore.condensation(t, depth)
        ]
    else:
        raise UnsupportedTargetError(
            f"cannot decompose {ordercore.format_expr(t)} for chain assembly"
        )
    M = tuple(pos for pos, size in classes if size > 1)
    return Decomposition(tuple(classes), M)


# ---------------------------------------------------------------------------
# the cut-indexed assembly


@dataclass(frozen=True)
class ChainBuildPlan:
    target: OrderTypeExpr
    depth: int
    window: Window  # effective window: denom bound already raised as needed
    positions: tuple  # ascending (x, class size) with x a rational cut point
    phi: tuple  # (x, class index >= 1) for x in M
    I: tuple  # (x, tuple of new points) for x in M

    @property
    def M(self) -> tuple:
        return tuple(x for x, _ in self.phi)

    def phi_of(self, x: Rat) -> int:
        return dict(self.phi)[x]

    def I_of(self, x: Rat) -> tuple:
        return dict(self.I)[x]


def _first_j0_in(lo: Rat, hi: Rat) -> Rat:
    """Smallest-denominator element of J_0 in [lo, hi)."""
    d = 1
    while True:
        if d == 1 or d % 2 == 0:
            k = math.ceil(lo * d)
            while Fraction(k, d) < hi:
                if math.gcd(k, d) == 1:
                    return Fraction(k, d)
                k += 1
        d += 1


def plan_chain(
    target: Union[OrderTypeExpr, CompactDescriptor],
    depth: int = 3,
    window: Optional[Window] = None,
) -> ChainBuildPlan:
    """Choose cut positions inside the window for every condensation class of
    the target, an injective class assignment for the multi-point ones, and
    canonical new-point sets below each."""
    if isinstance(target, CompactDescriptor):
        target = order_type(target)
    if window is None:
        window = Window(Fraction(0), Fraction(1), 16)
    if not window.bounded:
        raise ValueError("chain assembly needs a bounded window")
    dec = decompose(target, depth)
    lo, hi = window.lo, window.hi
    span = hi - lo

    def place(pos: Fraction) -> Fraction:
        return lo + span * (1 + 2 * pos) / 4

    xs = [(place(pos), size) for pos, size in dec.classes]
    # raise the denominator bound until every consecutive gap holds a J_0 point
    bound = window.denom_bound
    for (x1, _), (x2, _) in zip(xs, xs[1:]):
        q = _first_j0_in(x1, x2)
        bound = max(bound, q.denominator)
    eff = Window(lo, hi, bound)

    phi = []
    I = []
    rank = 1
    for x, size in xs:
        if size > 1:
            cls = rank
            rank += 1
            need = size - 1
            b = 8
            while True:
                pts = window_members(cls, Window(lo, x, b))
                pts.sort(key=lambda q: (q.denominator, q))
                if len(pts) >= need:
                    chosen = tuple(sorted(pts[:need]))
                    break
                b *= 2
            phi.append((x, cls))
            I.append((x, chosen))
    return ChainBuildPlan(
        target=target,
        depth=depth,
        window=eff,
        positions=tuple(xs),
        phi=tuple(phi),
        I=tuple(I),
    )


def build_Ax(plan: ChainBuildPlan, x: Optional[Rat]) -> tuple[frozenset, Optional[frozenset]]:
    """The window view of the cut set at x (None stands for -infinity) and,
    at multi-point positions, its extension by the new points."""
    if x is None:
        return frozenset(), None
    below = frozenset(
        q for q in window_members(0, plan.window) if q < x
    )
    extra: set = set()
    for y, pts in plan.I:
        if y < x:
            extra.update(pts)
    A = below | extra
    if x in dict(plan.phi):
        return A, A | set(plan.I_of(x))
    return A, None


def assemble_chain(plan: ChainBuildPlan) -> list[ChainElement]:
    """The full chain: one element per single-point class, a powerset-interval
    chain between the cut set and its extension at each multi-point class."""
    out: list[ChainElement] = []
    for x, size in plan.positions:
        A, A_plus = build_Ax(plan, x)
        if size == 1:
            out.append(ChainElement(A, ("A_x", x)))
            continue
        assert A_plus is not None
        cells = interval_chain(A, A_plus, size)
        for i, c in enumerate(cells):
            if i == 0:
                prov = ("A_x", x)
            elif i == len(cells) - 1:
                prov = ("A_x_plus", x)
            else:
                prov = ("interval_step", x, i)
            out.append(ChainElement(c, prov))
    for a, b in zip(out, out[1:]):
        if not (a.carrier < b.carrier):
            raise AssertionError(
                f"assembled chain not strictly increasing at {a.provenance}/{b.provenance}"
            )
    expected = len(truncate(plan.target, plan.depth))
    if len(out) != expected:
        raise AssertionError(
            f"chain has {len(out)} elements, target truncation has {expected}"
        )
    return out


def sandwich_holds(plan: ChainBuildPlan, elem: ChainElement) -> bool:
    """Every element of the block at x sits between the window's J_0 initial
    segment below x and all rationals below x."""
    x = elem.block
    if x is None:
        return elem.carrier == frozenset()
    lower = frozenset(q for q in window_members(0, plan.window) if q < x)
    return lower <= elem.carrier and all(q < x for q in elem.carrier)


# ---------------------------------------------------------------------------
# chains through a positive family


def _enumerate_rationals() -> Iterator[Fraction]:
    """All of Q, denominator-major, then by absolute value, positives first."""
    d = 1
    while True:
        numerators = sorted(
            (k for k in range(-8 * d, 8 * d + 1) if Fraction(k, d).denominator == d),
            key=lambda k: (abs(Fraction(k, d)), -k),
        )
        for k in numerators:
            yield Fraction(k, d)
        d += 1


def _enumerate_pairs() -> Iterator[tuple]:
    s = 0
    while True:
        for i in range(s + 1):
            yield (i, s - i)
        s += 1


@dataclass
class FamilyChainSchema:
    carrier_kind: str
    enumeration_rule: str
    steps_emitted: int = 0

    def as_dict(self) -> dict:
        return {
            "carrier_kind": self.carrier_kind,
            "enumeration_rule": self.enumeration_rule,
            "steps_emitted": self.steps_emitted,
        }


def chain_from_positive_family(
    t: OrderTypeExpr, family: str, schema: Optional[FamilyChainSchema] = None
) -> Iterator[ChainElement]:
    """Top-down maximal chain through a positive family: each element drops
    one more point of a canonical enumeration of the carrier, so consecutive
    members differ in a single point and the symbolic intersection of the
    whole chain is empty."""
    if not isinstance(t, OmegaStarLim):
        raise UnsupportedTargetError(
            "only the descending-sequence type has a non-isolated minimum "
            "realizable by single-point removals"
        )
    if family == "henson-pqr":
        if schema is not None:
            schema.carrier_kind = "pqr"
            schema.enumeration_rule = "rationals by denominator then absolute value"
        removed: list[Fraction] = []
        src = _enumerate_rationals()
        k = 0
        while True:
            spec = PqrSpec.build(_group_by_interval(removed))
            from .henson import pqr_membership

            assert pqr_membership(spec)["member"]
            if schema is not None:
                schema.steps_emitted = k + 1
            yield ChainElement(spec, ("family_member", k))
            removed.append(next(src))
            k += 1
    elif family == "gmunu-omega-omega":
        if schema is not None:
            schema.carrier_kind = "symbolic"
            schema.enumeration_rule = "component/element pairs by diagonal"
        cur = SymbolicSet.build({}, FULL)
        src = _enumerate_pairs()
        k = 0
        while True:
            assert gmunu.is_copy(cur, gmunu.OMEGA_OMEGA)
            if schema is not None:
                schema.steps_emitted = k + 1
            yield ChainElement(cur, ("family_member", k))
            cur = cur.remove_point(next(src))
            k += 1
    else:
        raise gmunu.UnknownFamilyError(f"unsupported family {family!r}")


def _group_by_interval(points: Iterable[Fraction]) -> dict:
    import math

    out: dict = {}
    for p in points:
        out.setdefault(math.floor(p), set()).add(p)
    return out


def family_chain_prefix(t: OrderTypeExpr, family: str, length: int) -> list[ChainElement]:
    gen = chain_from_positive_family(t, family)
    return [next(gen) for _ in range(length)]


# ---------------------------------------------------------------------------
# probe-based maximality harness


def _carrier_le(a: Carrier, b: Carrier) -> bool:
    if a is None:
        return True
    if b is None:
        return _carrier_eq(a, None)
    if isinstance(a, frozenset) and isinstance(b, frozenset):
        return a <= b
    if isinstance(a, SymbolicSet) and isinstance(b, SymbolicSet):
        return a.subset_of(b)
    if isinstance(a, PqrSpec) and isinstance(b, PqrSpec):
        # fewer exclusions means a bigger set
        mine = {p for _, pts in a.excluded for p in pts}
        its = {p for _, pts in b.excluded for p in pts}
        return its <= mine
    raise TypeError(f"incomparable carriers {type(a)} / {type(b)}")


def _carrier_eq(a: Carrier, b: Carrier) -> bool:
    if a is None or b is None:
        return a is b or a == frozenset() or b == frozenset()
    return a == b


def _diff_points(b: Carrier, a: Carrier, limit: int = 3) -> list:
    """Up to `limit` points of B \\ A; for symbolically infinite differences
    at least `limit` are produced."""
    if isinstance(b, frozenset):
        base = frozenset() if a is None else a
        return sorted(b - base)[:limit]
    if isinstance(b, PqrSpec):
        if a is None:
            return [Fraction(k) for k in range(limit)]
        mine = {p for _, pts in b.excluded for p in pts}
        its = {p for _, pts in a.excluded for p in pts}
        return sorted(its - mine)[:limit]
    if isinstance(b, SymbolicSet):
        if a is None:
            return [(0, e) for e in range(limit)]
        out = []
        seen = set()
        probe = b
        try:
            while len(out) < limit:
                pt = gmunu._diff_point(probe, a)
                if pt in seen:
                    break
                seen.add(pt)
                out.append(pt)
                probe = probe.remove_point(pt)
        except ValueError:
            pass
        return out
    raise TypeError(f"unsupported carrier {type(b)}")


def _carrier_add(a: Carrier, pt) -> Carrier:
    if a is None:
        a = frozenset()
    if isinstance(a, frozenset):
        return a | {pt}
    if isinstance(a, SymbolicSet):
        return a.add_point(pt)
    if isinstance(a, PqrSpec):
        return a.plus([pt])
    raise TypeError(f"unsupported carrier {type(a)}")


def _carrier_remove(b: Carrier, pt) -> Carrier:
    if isinstance(b, frozenset):
        return b - {pt}
    if isinstance(b, SymbolicSet):
        return b.remove_point(pt)
    if isinstance(b, PqrSpec):
        return b.minus([pt])
    raise TypeError(f"unsupported carrier {type(b)}")


def _removal_points(b: Carrier, limit: int = 3) -> list:
    """A few points of B, usable for one-point-removal interpolants."""
    if isinstance(b, frozenset):
        return sorted(b)[:limit]
    if isinstance(b, PqrSpec):
        out = []
        k = 0
        while len(out) < limit and k < 100:
            q = Fraction(k, 2)
            if b.contains(q):
                out.append(q)
            k += 1
        return out
    if isinstance(b, SymbolicSet):
        out = []
        for i in range(limit + 4):
            for e in range(limit + 4):
                if b.contains((i, e)):
                    out.append((i, e))
                    break
            if len(out) >= limit:
                break
        return out
    return []


def _interpolants(e1: ChainElement, e2: ChainElement) -> list:
    """Deterministic candidate carriers for the gap between two adjacent
    chain elements: one-point extensions of the lower element and one-point
    removals from the upper one."""
    cands = []
    if e1.carrier is None and not isinstance(e2.carrier, frozenset):
        for pt in _removal_points(e2.carrier):
            cands.append(_carrier_remove(e2.carrier, pt))
        return cands
    for pt in _diff_points(e2.carrier, e1.carrier, limit=3):
        cands.append(_carrier_add(e1.carrier, pt))
    if e2.carrier is not None:
        for pt in _diff_points(e2.carrier, e1.carrier, limit=3):
            cands.append(_carrier_remove(e2.carrier, pt))
    return cands


def _candidate_valid(c: Carrier, e1: ChainElement, e2: ChainElement) -> bool:
    """Whether an interpolant strictly between adjacent elements is an
    admissible carrier.  Window sets are copies exactly inside one block (the
    whole powerset interval between a cut set and its extension consists of
    copies); between blocks the skipped sets fail the ceiling test.  Family
    carriers are admissible iff they are members."""
    if isinstance(c, frozenset):
        b1, b2 = e1.block, e2.block
        return b1 is not None and b1 == b2
    if isinstance(c, PqrSpec):
        from .henson import pqr_membership

        return pqr_membership(c)["member"]
    if isinstance(c, SymbolicSet):
        return gmunu.is_copy(c, gmunu.OMEGA_OMEGA)
    return False


def probe_maximality(chain: list[ChainElement], probes: int = 10_000, seed: int = 0) -> dict:
    """Hunt for admissible carriers that fit strictly inside the chain.  A
    clean report is necessary but never sufficient evidence of maximality."""
    for a, b in zip(chain, chain[1:]):
        if not (_carrier_le(a.carrier, b.carrier) and not _carrier_eq(a.carrier, b.carrier)):
            raise ValueError("input is not a strictly increasing chain")
    rng = random.Random(seed)
    flagged = []

    def consider(c: Carrier, e1: ChainElement, e2: ChainElement, how: str) -> None:
        if _carrier_eq(c, e1.carrier) or _carrier_eq(c, e2.carrier):
            return
        if not (_carrier_le(e1.carrier, c) and _carrier_le(c, e2.carrier)):
            return
        if any(_carrier_eq(c, e.carrier) for e in chain):
            return
        if _candidate_valid(c, e1, e2):
            flagged.append({"between": [e1.provenance, e2.provenance], "how": how})

    # deterministic sweep: one-point moves inside every adjacent gap
    for e1, e2 in zip(chain, chain[1:]):
        for cand in _interpolants(e1, e2):
            consider(cand, e1, e2, "one-point interpolant")

    # randomized probes on top of the sweep
    for _ in range(probes):
        if len(chain) < 2:
            break
        i = rng.randrange(len(chain) - 1)
        e1, e2 = chain[i], chain[i + 1]
        if e1.carrier is None and not isinstance(e2.carrier, frozenset):
            pts = _removal_points(e2.carrier)
            if not pts:
                continue
            cand = e2.carrier
            for pt in rng.sample(pts, rng.randint(1, len(pts))):
                cand = _carrier_remove(cand, pt)
            consider(cand, e1, e2, "random removal fill")
            continue
        pts = _diff_points(e2.carrier, e1.carrier, limit=3)
        if not pts:
            continue
        take = rng.sample(pts, rng.randint(1, len(pts)))
        cand = e1.carrier
        for pt in take:
            cand = _carrier_add(cand, pt)
        consider(cand, e1, e2, "random partial fill")

    return {
        "probes": probes,
        "flagged": flagged,
        "clean": not flagged,
    }
