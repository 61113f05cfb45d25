"""Extension-property machinery for the K_n-free ultrahomogeneous graph:
test-pair enumeration, witness sets, saturation reports, the ceiling
obstruction, and the co-finite-per-interval positive family on Q."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Optional

from .graphs import Graph, find_clique, is_kn_free
from .qline import Rat, Window, format_rat, jclass


@dataclass(frozen=True)
class CnPair:
    H: frozenset
    K: frozenset

    def __post_init__(self) -> None:
        if not self.K <= self.H:
            raise ValueError("K must be a subset of H")


def cn_pairs(g: Graph, n: int, size_bound: int = 3) -> list[CnPair]:
    """All test pairs (H, K) with H of size <= size_bound and K a
    K_{n-1}-free subset of H, in deterministic order."""
    if n < 3:
        raise ValueError("clique bound must be >= 3")
    verts, _, adj = g.int_view()

    def has_small_clique(K: tuple) -> bool:
        return any(
            all(v in adj[u] for u, v in combinations(c, 2))
            for c in combinations(K, n - 1)
        )

    out: list[CnPair] = []
    for size in range(0, size_bound + 1):
        for H in combinations(range(len(verts)), size):
            hset = frozenset(verts[i] for i in H)
            for ksize in range(0, size + 1):
                for K in combinations(H, ksize):
                    if not has_small_clique(K):
                        out.append(CnPair(hset, frozenset(verts[i] for i in K)))
    return out


def witness_set(g: Graph, H: Iterable[Rat], K: Iterable[Rat]) -> frozenset:
    """Vertices outside H joined to all of K and to nothing in H \\ K."""
    H = frozenset(Fraction(h) for h in H)
    K = frozenset(Fraction(k) for k in K)
    if not K <= H:
        raise ValueError("K must be a subset of H")
    if not H <= g.vertices:
        raise ValueError("H must consist of vertices of g")
    verts, _, _ = g.int_view()
    return frozenset(verts[i] for i in _witness_ids(g, H, K))


def _witness_ids(g: Graph, H: Iterable[Rat], K: Iterable[Rat]) -> list[int]:
    """Witness vertices as ascending integer ids of the graph's int_view."""
    _, idx, adj = g.int_view()
    kids = {idx[k] for k in K}
    hids = {idx[h] for h in H}
    rest = hids - kids
    out = []
    for v in range(len(adj)):
        if v in hids:
            continue
        nb = adj[v]
        if kids <= nb and not rest & nb:
            out.append(v)
    return out


def saturation_report(
    g: Graph, n: int, size_bound: int = 3, examples_cap: Optional[int] = None
) -> dict:
    """How close a finite window is to the extension property: which test
    pairs already have witnesses.  Full saturation is a property of the
    infinite limit, never of a finite graph.  With examples_cap, only the
    first that many per-pair entries are listed (counts stay exact)."""
    free = is_kn_free(g, n)
    report: dict = {"is_Kn_free": free, "pairs": []}
    if not free:
        report.update(total_pairs=0, satisfied_pairs=0, failing_pairs=[])
        return report
    pairs = cn_pairs(g, n, size_bound)
    verts, _, _ = g.int_view()
    failing = []
    satisfied = 0
    for pair in pairs:
        ws = _witness_ids(g, pair.H, pair.K)
        entry = None
        if examples_cap is None or len(report["pairs"]) < examples_cap or not ws:
            entry = {
                "H": sorted(format_rat(h) for h in pair.H),
                "K": sorted(format_rat(k) for k in pair.K),
                "witness": format_rat(verts[ws[0]]) if ws else None,
            }
        if entry is not None and (examples_cap is None or len(report["pairs"]) < examples_cap):
            report["pairs"].append(entry)
        if ws:
            satisfied += 1
        else:
            failing.append(entry)
    report.update(
        total_pairs=len(pairs), satisfied_pairs=satisfied, failing_pairs=failing,
        pairs_truncated=examples_cap is not None and len(pairs) > examples_cap,
    )
    return report


def ceiling_obstruction(g: Graph, q: Rat, window: Optional[Window] = None) -> bool:
    """No vertex at or below q can witness the pair ({q-1, q}, {q-1, q}):
    (P1) forces any such witness strictly above q.  Returns True when the
    witness set over the initial segment is empty, as it must be for every
    graph produced by a run."""
    q = Fraction(q)
    if jclass(q) != 0:
        raise ValueError(f"{format_rat(q)} is not in J_0")
    if q not in g.vertices or q - 1 not in g.vertices:
        raise ValueError("both q and q-1 must be vertices")
    keep = {v for v in g.vertices if v <= q}
    if window is not None:
        keep = {v for v in keep if window.lo is None or v > window.lo}
    sub = g.restrict(keep)
    return witness_set(sub, {q - 1, q}, {q - 1, q}) == frozenset()


# ---------------------------------------------------------------------------
# the positive family of co-finite-per-unit-interval subsets of Q

ALL = "all"  # sentinel: a caller asking to excise a whole interval


class MalformedSpecError(ValueError):
    pass


@dataclass(frozen=True)
class PqrSpec:
    """A member of the family Q minus finitely many points per unit interval:
    finitely many intervals carry explicit excluded sets, the rest exclude
    nothing."""

    excluded: tuple  # tuple of (interval_index, frozenset of Rat)

    @staticmethod
    def build(excluded: dict) -> "PqrSpec":
        items = []
        for idx, pts in sorted(excluded.items()):
            if pts == ALL:
                raise MalformedSpecError(
                    f"excluded set for interval [{idx}, {idx + 1}) must be finite"
                )
            fs = frozenset(Fraction(p) for p in pts)
            for p in fs:
                if not idx <= p < idx + 1:
                    raise MalformedSpecError(
                        f"{format_rat(p)} is outside [{idx}, {idx + 1})"
                    )
            if fs:
                items.append((idx, fs))
        return PqrSpec(tuple(items))

    def excludes(self, q: Rat) -> bool:
        idx = math.floor(q)
        for i, pts in self.excluded:
            if i == idx:
                return q in pts
        return False

    def contains(self, q: Rat) -> bool:
        return not self.excludes(q)

    def minus(self, points: Iterable[Rat]) -> "PqrSpec":
        extra: dict = {i: set(pts) for i, pts in self.excluded}
        for p in points:
            p = Fraction(p)
            extra.setdefault(math.floor(p), set()).add(p)
        return PqrSpec.build(extra)

    def plus(self, points: Iterable[Rat]) -> "PqrSpec":
        back = frozenset(Fraction(p) for p in points)
        trimmed: dict = {}
        for i, pts in self.excluded:
            rem = pts - back
            if rem:
                trimmed[i] = rem
        return PqrSpec.build(trimmed)

    def excluded_count(self) -> int:
        return sum(len(pts) for _, pts in self.excluded)


def pqr_membership(spec: PqrSpec) -> dict:
    """Well-formed specs are always members; the report carries the axiom
    witnesses that make the family positive."""
    for idx, pts in spec.excluded:
        for p in pts:
            if not idx <= p < idx + 1:
                raise MalformedSpecError(f"{format_rat(p)} outside its interval")
    demo = spec.minus([Fraction(1, 2) + spec_floor_probe(spec)])
    restored = spec.plus([p for _, pts in spec.excluded for p in pts])
    return {
        "member": True,
        "nonempty": True,  # Q minus finitely many points is never empty
        "upward_closed_witness": restored.excluded_count() == 0,
        "finite_deletion_witness": demo.excluded_count() == spec.excluded_count() + 1,
        "coinfinite_member_witness": {
            "rule": "exclude the integer n from every interval [n, n+1)",
            "per_interval_excluded": 1,
            "complement_meets_every_unit_interval": True,
        },
    }


def spec_floor_probe(spec: PqrSpec) -> int:
    """An interval index not yet carrying exclusions of 1/2, for the
    finite-deletion demo."""
    used = {i for i, pts in spec.excluded if any(p - i == Fraction(1, 2) for p in pts)}
    i = 0
    while i in used:
        i += 1
    return i


def pqr_to_json(spec: PqrSpec) -> str:
    return json.dumps(
        {str(i): sorted(format_rat(p) for p in pts) for i, pts in spec.excluded},
        sort_keys=True,
    )
