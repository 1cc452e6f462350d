"""The range graph of a rule: vertices are alternatives, edges its range.

Two independent edge-connectivity checkers live here.  The primary one
tests the defining condition on every pair of non-incident edges; the
second scans all four-vertex subsets for the three forbidden induced
subgraphs (two disjoint edges, a path on four vertices, a triangle with
a pendant).  They cross-validate each other in the test suite.
"""

import math
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, permutations

from consular.core import (
    Committee,
    RuleOracle,
    RuleTable,
    alt_name,
    committee,
    enumerate_profiles,
)


@dataclass(frozen=True)
class RangeGraph:
    m: int
    edges: frozenset[Committee]

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("need at least one vertex")
        for e in self.edges:
            if not (isinstance(e, tuple) and len(e) == 2 and 0 <= e[0] < e[1] < self.m):
                raise ValueError(f"invalid edge {e!r} for m={self.m}")

    def adjacency(self) -> list[set[int]]:
        adj: list[set[int]] = [set() for _ in range(self.m)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj


def range_graph(m: int, edges) -> RangeGraph:
    return RangeGraph(m, frozenset(committee(u, v) for u, v in edges))


def build_range_graph(rule: RuleOracle, m: int, n: int, budget: int | None = None) -> RangeGraph:
    """Exact range of the rule, collected over every profile."""
    if isinstance(rule, RuleTable) and rule.m == m and rule.n == n:
        return RangeGraph(m, frozenset(rule.outcomes))
    edges = {rule(p) for p in enumerate_profiles(m, n, budget)}
    return RangeGraph(m, frozenset(edges))


def check_weak_viability(graph: RangeGraph) -> bool:
    """Every alternative appears on some winning committee (no isolated vertex)."""
    covered = {v for e in graph.edges for v in e}
    return len(covered) == graph.m


def is_onto(graph: RangeGraph) -> bool:
    return len(graph.edges) == graph.m * (graph.m - 1) // 2


def is_bipartite(graph: RangeGraph) -> tuple[tuple[int, ...], tuple[int, ...]] | None:
    """Two-colouring by BFS from the lowest vertex of each component.

    The root of each component lands in the first part, so the returned
    partition is canonical.  Returns None when an odd cycle exists.
    """
    adj = graph.adjacency()
    colour: dict[int, int] = {}
    for root in range(graph.m):
        if root in colour:
            continue
        colour[root] = 0
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for u in sorted(adj[v]):
                if u not in colour:
                    colour[u] = 1 - colour[v]
                    queue.append(u)
                elif colour[u] == colour[v]:
                    return None
    first = tuple(v for v in range(graph.m) if colour[v] == 0)
    second = tuple(v for v in range(graph.m) if colour[v] == 1)
    return first, second


def is_edge_connected(graph: RangeGraph) -> tuple[Committee, Committee] | None:
    """First pair of non-incident edges missing a required cross edge, or None.

    For non-incident edges {a,b} and {c,d} each endpoint of either edge
    must be adjacent to an endpoint of the other.
    """
    edges = sorted(graph.edges)
    present = graph.edges
    for i, (a, b) in enumerate(edges):
        for c, d in edges[i + 1 :]:
            if a in (c, d) or b in (c, d):
                continue
            ac = committee(a, c) in present
            ad = committee(a, d) in present
            bc = committee(b, c) in present
            bd = committee(b, d) in present
            if not ((ac or ad) and (bc or bd) and (ac or bc) and (ad or bd)):
                return (a, b), (c, d)
    return None


@lru_cache(maxsize=1)
def _forbidden_patterns() -> frozenset[frozenset[Committee]]:
    """All labelled edge sets on four vertices isomorphic to a forbidden graph."""
    shapes = [
        ((0, 1), (2, 3)),
        ((0, 1), (1, 2), (2, 3)),
        ((0, 1), (1, 2), (0, 2), (2, 3)),
    ]
    patterns = set()
    for shape in shapes:
        for perm in permutations(range(4)):
            patterns.add(frozenset(committee(perm[u], perm[v]) for u, v in shape))
    return frozenset(patterns)


def find_forbidden_subgraph(graph: RangeGraph) -> tuple[int, int, int, int] | None:
    """Brute-force scan for an induced 2K2, P4 or paw; first witness or None."""
    patterns = _forbidden_patterns()
    for quad in combinations(range(graph.m), 4):
        local = {v: i for i, v in enumerate(quad)}
        induced = frozenset(
            committee(local[u], local[v])
            for u, v in graph.edges
            if u in local and v in local
        )
        if induced in patterns:
            return quad
    return None


def diameter(graph: RangeGraph) -> int | float:
    """Max shortest-path length over vertex pairs; infinity if disconnected."""
    if graph.m <= 1:
        return 0
    adj = graph.adjacency()
    worst = 0
    for src in range(graph.m):
        dist = {src: 0}
        queue = deque([src])
        while queue:
            v = queue.popleft()
            for u in adj[v]:
                if u not in dist:
                    dist[u] = dist[v] + 1
                    queue.append(u)
        if len(dist) < graph.m:
            return math.inf
        worst = max(worst, max(dist.values()))
    return worst


def is_acyclic(graph: RangeGraph) -> bool:
    parent = list(range(graph.m))

    def find(v: int) -> int:
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for u, v in sorted(graph.edges):
        ru, rv = find(u), find(v)
        if ru == rv:
            return False
        parent[ru] = rv
    return True


def all_vertices_in_3cycle(graph: RangeGraph) -> int | None:
    """Lowest vertex lying on no triangle, or None when all do."""
    adj = graph.adjacency()
    for v in range(graph.m):
        if not any(adj[u] & adj[v] for u in adj[v]):
            return v
    return None


def triangle_for_edge(graph: RangeGraph, edge: Committee) -> int | None:
    """Lowest common neighbour of the edge's endpoints, or None."""
    if edge not in graph.edges:
        raise ValueError(f"{edge!r} is not an edge of the graph")
    adj = graph.adjacency()
    common = adj[edge[0]] & adj[edge[1]]
    return min(common) if common else None


def to_dot(graph: RangeGraph, name: str = "range") -> str:
    """Deterministic DOT export: vertices then edges, both in canonical order."""
    lines = [f'graph "{name}" {{']
    for v in range(graph.m):
        lines.append(f"  {alt_name(v)};")
    for u, v in sorted(graph.edges):
        lines.append(f"  {alt_name(u)} -- {alt_name(v)};")
    lines.append("}")
    return "\n".join(lines) + "\n"
