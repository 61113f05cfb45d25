"""The poset of finite K_n-free graphs on rational vertices and the
deterministic filter construction that grows finite approximations of the
K_n-free ultrahomogeneous graph on Q.

Conditions are finite graphs satisfying, for all rationals a, b:

  (P1)  {a,b} and {a+1,b} both edges  =>  b > a+1
  (P2)  {a, a-1} is never an edge

ordered by end-extension: p <= q iff p's graph extends q's without touching
q's induced edges.  Two families of dense sets drive the construction: vertex
injectors (one per rational) and extension-property witnesses, one per
(H, K, m) with K a K_{n-1}-free subset of H.
"""

from __future__ import annotations

import heapq
import json
import math
import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Union

from .graphs import Graph, edge, find_clique
from .qline import Rat, Window, denominator_class, format_rat, rationals_in

DEFAULT_DENOM_CEILING = 100_000
ENV_DENOM_CEILING = "CHAINFORGE_DENOM_CEILING"


def denom_ceiling() -> int:
    raw = os.environ.get(ENV_DENOM_CEILING)
    return int(raw) if raw else DEFAULT_DENOM_CEILING


class CliqueBoundMismatch(ValueError):
    pass


class WitnessSearchExhausted(RuntimeError):
    """The denominator ceiling was hit before a witness appeared; a
    configuration error, not a mathematical failure."""


@dataclass(frozen=True)
class Condition:
    graph: Graph
    n: int

    def __post_init__(self) -> None:
        if self.n < 3:
            raise ValueError("clique bound must be >= 3")

    @property
    def vertices(self) -> frozenset:
        return self.graph.vertices

    @property
    def edges(self) -> frozenset:
        return self.graph.edges


def empty_condition(n: int) -> Condition:
    return Condition(Graph(frozenset(), frozenset()), n)


def p1_violations(g: Graph) -> list[dict]:
    out = []
    for e in g.edges:
        for a, b in ((min(e), max(e)), (max(e), min(e))):
            if a + 1 != b and frozenset((a + 1, b)) in g.edges and b <= a + 1:
                out.append({"clause": "P1", "witness": [format_rat(a), format_rat(b)]})
    uniq = {json.dumps(v, sort_keys=True): v for v in out}
    return [uniq[k] for k in sorted(uniq)]


def is_condition(g: Graph, n: int) -> tuple[bool, list[dict]]:
    """Check the three defining clauses, returning named violations."""
    if n < 3:
        raise ValueError("clique bound must be >= 3")
    violations: list[dict] = []
    clique = find_clique(g, n)
    if clique is not None:
        violations.append(
            {"clause": f"K{n}", "witness": sorted(format_rat(v) for v in clique)}
        )
    violations.extend(p1_violations(g))
    for e in g.edges:
        a, b = sorted(e)
        if b - a == 1:
            violations.append({"clause": "P2", "witness": [format_rat(b)]})
    return (not violations), violations


def leq(p: Condition, q: Condition) -> bool:
    """End-extension order: p extends q and induces exactly q's edges on q's
    vertices."""
    if p.n != q.n:
        raise CliqueBoundMismatch(f"clique bounds differ: {p.n} != {q.n}")
    if not p.vertices >= q.vertices:
        return False
    induced = frozenset(e for e in p.edges if e <= q.vertices)
    return induced == q.edges


# ---------------------------------------------------------------------------
# dense sets and extenders


@dataclass(frozen=True)
class Dq:
    q: Rat


@dataclass(frozen=True)
class DHKm:
    H: frozenset
    K: frozenset
    m: int

    def __post_init__(self) -> None:
        if not self.K <= self.H:
            raise ValueError("K must be a subset of H")
        if self.m < 1:
            raise ValueError("m must be >= 1")


DenseSetId = Union[Dq, DHKm]


def dense_set_label(d: DenseSetId) -> dict:
    if isinstance(d, Dq):
        return {"type": "Dq", "q": format_rat(d.q)}
    return {
        "type": "DHKm",
        "H": sorted(format_rat(h) for h in d.H),
        "K": sorted(format_rat(k) for k in d.K),
        "m": d.m,
    }


def extend_Dq(p: Condition, q: Rat) -> Condition:
    """Meet the vertex-injector dense set: add q isolated if missing."""
    q = Fraction(q)
    if q in p.vertices:
        return p
    return Condition(Graph(p.vertices | {q}, p.edges), p.n)


def _applicable(p: Condition, H: frozenset, K: frozenset) -> bool:
    """Whether (H, K) is an extension-property test pair for p: K must be
    K_{n-1}-free in p's graph."""
    return find_clique(p.graph, p.n - 1, within=K) is None


def canonical_witness(
    lo: Rat, hi: Rat, forbidden: frozenset, ceiling: Optional[int] = None
) -> Rat:
    """Smallest-denominator, then smallest-value element of J_0 in the open
    interval (lo, hi) avoiding `forbidden`."""
    if ceiling is None:
        ceiling = denom_ceiling()
    d = 1
    while d <= ceiling:
        if denominator_class(d) == 0:
            k = math.floor(lo * d) + 1
            while Fraction(k, d) < hi:
                if math.gcd(k, d) == 1:
                    q = Fraction(k, d)
                    if lo < q and q not in forbidden:
                        return q
                k += 1
        d += 1
    raise WitnessSearchExhausted(
        f"no witness in ({lo}, {hi}) below denominator {ceiling}"
    )


@dataclass(frozen=True)
class ExtensionRecord:
    applicable: bool
    witness: Optional[Rat]
    edges_added: tuple


def extend_DHKm(
    p: Condition, H: Iterable[Rat], K: Iterable[Rat], m: int,
    ceiling: Optional[int] = None,
) -> tuple[Condition, ExtensionRecord]:
    """Meet the extension-property dense set for (H, K, m): ensure H is
    present, then attach a fresh witness joined to exactly K, chosen
    canonically from J_0 just above max H."""
    H = frozenset(Fraction(h) for h in H)
    K = frozenset(Fraction(k) for k in K)
    if not K <= H:
        raise ValueError("K must be a subset of H")
    if m < 1:
        raise ValueError("m must be >= 1")
    for h in sorted(H):
        p = extend_Dq(p, h)
    if not _applicable(p, H, K):
        return p, ExtensionRecord(applicable=False, witness=None, edges_added=())
    m_H = max(H) if H else Fraction(0)
    forbidden = frozenset().union(*({a - 1, a, a + 1} for a in p.vertices)) if p.vertices else frozenset()
    q = canonical_witness(m_H, m_H + Fraction(1, m), forbidden, ceiling)
    new_edges = tuple(sorted((edge(q, k) for k in K), key=sorted))
    p1 = Condition(Graph(p.vertices | {q}, p.edges | frozenset(new_edges)), p.n)
    ok, violations = is_condition(p1.graph, p1.n)
    if not ok:
        raise AssertionError(f"extension produced an invalid condition: {violations}")
    return p1, ExtensionRecord(applicable=True, witness=q, edges_added=new_edges)


# ---------------------------------------------------------------------------
# the deterministic filter run


def _rat_key(r: Rat) -> tuple[int, int]:
    return (r.numerator, r.denominator)


def _encoding_size(H: frozenset, K: frozenset, m: int) -> int:
    return sum(abs(h.numerator) + h.denominator for h in H) + len(K) + m


@dataclass
class GenericRun:
    n: int
    window: Window
    schedule: list = field(default_factory=list)
    conditions: list = field(default_factory=list)
    log: list = field(default_factory=list)
    coverage: dict = field(default_factory=dict)

    @property
    def final(self) -> Condition:
        return self.conditions[-1] if self.conditions else empty_condition(self.n)


def generic_run(
    n: int,
    steps: int,
    window: Window,
    h_bound: int = 2,
    m_bound: int = 2,
    ceiling: Optional[int] = None,
) -> GenericRun:
    """Grow a decreasing sequence of conditions through a fair deterministic
    interleave of the two dense-set families.  Identical inputs give
    identical runs."""
    if n < 3:
        raise ValueError("clique bound must be >= 3")
    if steps < 1:
        raise ValueError("steps must be >= 1")
    if not window.bounded:
        raise ValueError("generic_run needs a bounded window")

    run = GenericRun(n=n, window=window)
    cond = empty_condition(n)

    dq_source = rationals_in(window.lo, window.hi, window.denom_bound)
    heap: list[tuple] = []
    seen_pairs: set[tuple] = set()

    def push_candidates(new_vertex: Rat, existing: frozenset) -> None:
        hs = [frozenset((new_vertex,))]
        if h_bound >= 2:
            hs.extend(frozenset((new_vertex, u)) for u in existing)
        for H in hs:
            h_key = tuple(sorted(_rat_key(h) for h in H))
            subsets = [frozenset()]
            for v in sorted(H):
                subsets += [s | {v} for s in subsets]
            for K in subsets:
                k_key = tuple(sorted(_rat_key(k) for k in K))
                for m in range(1, m_bound + 1):
                    entry = (h_key, k_key, m)
                    if entry not in seen_pairs:
                        seen_pairs.add(entry)
                        es = _encoding_size(H, K, m)
                        heapq.heappush(heap, (es, h_key, k_key, m))

    # the degenerate pair with H empty; max of nothing is read as 0
    heapq.heappush(heap, (1, (), (), 1))
    seen_pairs.add(((), (), 1))
    if m_bound >= 2:
        heapq.heappush(heap, (2, (), (), 2))
        seen_pairs.add(((), (), 2))

    max_dq_denom = 0
    max_es = 0

    for step in range(steps):
        use_dq = step % 2 == 0 or not heap
        before = cond.vertices
        if use_dq:
            try:
                q = next(dq_source)
            except StopIteration:
                use_dq = False
            else:
                dense: DenseSetId = Dq(q)
                cond = extend_Dq(cond, q)
                record = {
                    "step": step,
                    "dense_set": dense_set_label(dense),
                    "applicable": True,
                    "witness": None,
                    "edges_added": [],
                }
                max_dq_denom = max(max_dq_denom, q.denominator)
        if not use_dq:
            if not heap:
                break
            es, h_key, k_key, m = heapq.heappop(heap)
            H = frozenset(Fraction(a, b) for a, b in h_key)
            K = frozenset(Fraction(a, b) for a, b in k_key)
            dense = DHKm(H, K, m)
            cond, ext = extend_DHKm(cond, H, K, m, ceiling)
            record = {
                "step": step,
                "dense_set": dense_set_label(dense),
                "applicable": ext.applicable,
                "witness": format_rat(ext.witness) if ext.witness is not None else None,
                "edges_added": [sorted(format_rat(v) for v in e) for e in ext.edges_added],
            }
            max_es = max(max_es, es)
        for v in sorted(cond.vertices - before):
            push_candidates(v, before)
            before = before | {v}
        if run.conditions and not leq(cond, run.conditions[-1]):
            raise AssertionError("extender broke the filter-chain property")
        run.schedule.append(dense)
        run.conditions.append(cond)
        run.log.append(record)

    run.coverage = {
        "dq_denominator_covered": max_dq_denom,
        "dhkm_encoding_size_covered": max_es,
        "dhkm_entries_met": sum(
            1 for r in run.log if r["dense_set"]["type"] == "DHKm"
        ),
    }
    return run


def union_graph(run: GenericRun) -> Graph:
    """The union of the run's decreasing sequence: its largest graph."""
    return run.final.graph


def log_jsonl(run: GenericRun) -> str:
    return "\n".join(json.dumps(r, sort_keys=True) for r in run.log) + "\n"


def replay(n: int, log: list[dict], ceiling: Optional[int] = None) -> Condition:
    """Re-apply a run's log from the empty condition; reproduces the final
    condition bit-exactly."""
    cond = empty_condition(n)
    for record in log:
        label = record["dense_set"]
        if label["type"] == "Dq":
            cond = extend_Dq(cond, Fraction(label["q"]))
        else:
            H = [Fraction(h) for h in label["H"]]
            K = [Fraction(k) for k in label["K"]]
            cond, _ = extend_DHKm(cond, H, K, label["m"], ceiling)
    return cond
