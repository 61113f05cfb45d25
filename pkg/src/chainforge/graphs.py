"""Small immutable graphs on rational vertices, shared by the forcing poset
and the saturation machinery."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import FrozenSet, Iterable, Optional

from .qline import Rat, format_rat

Edge = FrozenSet[Rat]


def edge(a: Rat, b: Rat) -> Edge:
    if a == b:
        raise ValueError("loops are not allowed")
    return frozenset((a, b))


@dataclass(frozen=True)
class Graph:
    vertices: frozenset
    edges: frozenset

    def __post_init__(self) -> None:
        for e in self.edges:
            if len(e) != 2 or not e <= self.vertices:
                raise ValueError(f"bad edge {set(e)}")

    @staticmethod
    def build(vertices: Iterable[Rat], edges: Iterable[Iterable[Rat]] = ()) -> "Graph":
        vs = frozenset(Fraction(v) for v in vertices)
        es = frozenset(frozenset(Fraction(x) for x in e) for e in edges)
        return Graph(vs, es)

    def adjacency(self) -> dict:
        adj = getattr(self, "_adj", None)
        if adj is None:
            adj = {v: set() for v in self.vertices}
            for e in self.edges:
                a, b = tuple(e)
                adj[a].add(b)
                adj[b].add(a)
            object.__setattr__(self, "_adj", adj)
        return adj

    def int_view(self) -> tuple:
        """Cached integer-indexed view: (sorted vertices, vertex -> id map,
        adjacency as a list of id sets).  Rational hashing is expensive;
        bulk scans should run on ids."""
        view = getattr(self, "_int_view", None)
        if view is None:
            verts = sorted(self.vertices)
            idx = {v: i for i, v in enumerate(verts)}
            adj: list[set] = [set() for _ in verts]
            for e in self.edges:
                a, b = tuple(e)
                adj[idx[a]].add(idx[b])
                adj[idx[b]].add(idx[a])
            view = (verts, idx, adj)
            object.__setattr__(self, "_int_view", view)
        return view

    def has_edge(self, a: Rat, b: Rat) -> bool:
        return frozenset((a, b)) in self.edges

    def restrict(self, keep: Iterable[Rat]) -> "Graph":
        ks = frozenset(keep) & self.vertices
        return Graph(ks, frozenset(e for e in self.edges if e <= ks))


def find_clique(g: Graph, k: int, within: Optional[Iterable[Rat]] = None) -> Optional[frozenset]:
    """Some k-clique of g (restricted to `within` if given), or None."""
    verts = sorted(g.vertices if within is None else frozenset(within) & g.vertices)
    if k <= 0:
        return frozenset()
    if k == 1:
        return frozenset([verts[0]]) if verts else None
    adj = g.adjacency()

    def extend(clique: list, candidates: list) -> Optional[frozenset]:
        if len(clique) == k:
            return frozenset(clique)
        for i, v in enumerate(candidates):
            nxt = [u for u in candidates[i + 1 :] if u in adj[v]]
            if len(clique) + 1 + len(nxt) >= k:
                found = extend(clique + [v], nxt)
                if found is not None:
                    return found
        return None

    return extend([], verts)


def is_kn_free(g: Graph, n: int, within: Optional[Iterable[Rat]] = None) -> bool:
    return find_clique(g, n, within) is None


def to_dot(g: Graph) -> str:
    lines = ["graph {"]
    for v in sorted(g.vertices):
        lines.append(f'  "{format_rat(v)}";')
    for e in sorted(g.edges, key=lambda e: sorted(e)):
        a, b = sorted(e)
        lines.append(f'  "{format_rat(a)}" -- "{format_rat(b)}";')
    lines.append("}")
    return "\n".join(lines) + "\n"
