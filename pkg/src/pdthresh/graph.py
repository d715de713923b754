"""Undirected graphs on vertices 1..n and the structural predicates used by
the thresholding results: connectivity, completeness, chordality, perfect
clique orderings, removable vertices and broken cycles.

Vertices are 1-based everywhere in the public API. Internally adjacency is
kept as 0-based neighbour sets.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Optional

from .errors import (
    NotASubgraphError,
    NotChordalError,
    NotConnectedError,
    PdThreshError,
)


def _norm_edge(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class UndirectedGraph:
    """Simple undirected graph on the vertex set {1, ..., n}."""

    n: int
    edges: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise PdThreshError(f"vertex count must be an integer >= 1, got {self.n!r}")
        normed = set()
        for e in self.edges:
            u, v = (int(x) for x in e)
            if u == v:
                raise PdThreshError(f"self-loop at vertex {u}")
            if not (1 <= u <= self.n and 1 <= v <= self.n):
                raise PdThreshError(f"edge ({u}, {v}) out of range 1..{self.n}")
            normed.add(_norm_edge(u, v))
        object.__setattr__(self, "edges", frozenset(normed))
        adj = [set() for _ in range(self.n)]
        for u, v in normed:
            adj[u - 1].add(v - 1)
            adj[v - 1].add(u - 1)
        object.__setattr__(self, "_adj", tuple(frozenset(a) for a in adj))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable, strict: bool = False) -> "UndirectedGraph":
        """Build a graph; with ``strict`` duplicate edges raise instead of merging."""
        edges = [tuple(e) for e in edges]
        if strict:
            seen = set()
            for u, v in edges:
                key = _norm_edge(int(u), int(v))
                if key in seen:
                    raise PdThreshError(f"duplicate edge {key}")
                seen.add(key)
        return cls(n, frozenset(edges))

    @classmethod
    def complete(cls, n: int) -> "UndirectedGraph":
        return cls(n, frozenset(combinations(range(1, n + 1), 2)))

    @classmethod
    def empty(cls, n: int) -> "UndirectedGraph":
        return cls(n, frozenset())

    @classmethod
    def path(cls, n: int) -> "UndirectedGraph":
        return cls(n, frozenset((i, i + 1) for i in range(1, n)))

    @classmethod
    def cycle(cls, n: int) -> "UndirectedGraph":
        if n < 3:
            raise PdThreshError("a cycle needs at least 3 vertices")
        return cls(n, frozenset([(i, i + 1) for i in range(1, n)] + [(1, n)]))

    @classmethod
    def star(cls, n: int) -> "UndirectedGraph":
        return cls(n, frozenset((1, i) for i in range(2, n + 1)))

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    def has_edge(self, u: int, v: int) -> bool:
        return (v - 1) in self._adj[u - 1]

    def neighbors(self, v: int) -> list[int]:
        return sorted(w + 1 for w in self._adj[v - 1])

    def degree(self, v: int) -> int:
        return len(self._adj[v - 1])

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def is_subgraph_of(self, other: "UndirectedGraph") -> bool:
        return self.n == other.n and self.edges <= other.edges

    def __repr__(self):
        return f"UndirectedGraph(n={self.n}, edges={self.sorted_edges()})"


@dataclass(frozen=True)
class Decomposition:
    """Vertex partition (A, B, C) in which the complete set C separates A from B."""

    part_a: frozenset
    part_b: frozenset
    separator_c: frozenset

    def __post_init__(self):
        for name in ("part_a", "part_b", "separator_c"):
            object.__setattr__(self, name, frozenset(int(v) for v in getattr(self, name)))

    def is_valid_for(self, g: UndirectedGraph) -> bool:
        a, b, c = self.part_a, self.part_b, self.separator_c
        if a & b or a & c or b & c:
            return False
        if a | b | c != set(g.vertices):
            return False
        if not is_complete(g, c):
            return False
        return not any(g.has_edge(u, v) for u in a for v in b)


@dataclass(frozen=True)
class CliqueOrdering:
    """Perfect ordering of maximal cliques with histories, separators and residuals.

    ``separators``, ``residual_a`` and ``residual_b`` are indexed like ``cliques``;
    entry 0 is empty because they are only defined from the second clique on.
    """

    cliques: tuple
    histories: tuple
    separators: tuple
    residual_a: tuple
    residual_b: tuple

    @classmethod
    def from_cliques(cls, cliques: Iterable[Iterable[int]]) -> "CliqueOrdering":
        cliques = tuple(frozenset(c) for c in cliques)
        histories, seps, res_a, res_b = [], [], [], []
        h = frozenset()
        for q, c in enumerate(cliques):
            s = c & h if q else frozenset()
            seps.append(s)
            res_a.append(h - s if q else frozenset())
            res_b.append(c - s if q else frozenset())
            h = h | c
            histories.append(h)
        return cls(cliques, tuple(histories), tuple(seps), tuple(res_a), tuple(res_b))

    def __len__(self):
        return len(self.cliques)

    def has_running_intersection(self) -> bool:
        for q in range(1, len(self.cliques)):
            if not any(self.separators[q] <= self.cliques[p] for p in range(q)):
                return False
        return True


def _bfs_dist(g: UndirectedGraph, start: int, allowed: Optional[set] = None) -> dict:
    """Breadth-first distances from ``start`` (1-based), restricted to ``allowed``."""
    dist = {start: 0}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for w in sorted(g._adj[u - 1]):
            w += 1
            if w in dist or (allowed is not None and w not in allowed):
                continue
            dist[w] = dist[u] + 1
            queue.append(w)
    return dist


def connected_components(g: UndirectedGraph) -> list[set]:
    """Vertex sets of the connected components, ordered by smallest member."""
    seen = set()
    comps = []
    for v in g.vertices:
        if v in seen:
            continue
        comp = set(_bfs_dist(g, v))
        seen |= comp
        comps.append(comp)
    return comps


def is_connected(g: UndirectedGraph) -> bool:
    return len(_bfs_dist(g, 1)) == g.n


def _check_vertices(g: UndirectedGraph, s: Iterable[int]) -> list[int]:
    s = sorted({int(v) for v in s})
    for v in s:
        if not 1 <= v <= g.n:
            raise PdThreshError(f"vertex {v} out of range 1..{g.n}")
    return s


def is_complete(g: UndirectedGraph, s: Optional[Iterable[int]] = None) -> bool:
    """True iff every pair of distinct vertices in ``s`` (default: all) is adjacent."""
    s = list(g.vertices) if s is None else _check_vertices(g, s)
    return all(g.has_edge(u, v) for u, v in combinations(s, 2))


def is_union_of_complete_components(g: UndirectedGraph) -> bool:
    return all(is_complete(g, comp) for comp in connected_components(g))


def induced_subgraph(g: UndirectedGraph, s: Iterable[int]) -> tuple[UndirectedGraph, dict]:
    """Subgraph induced by ``s`` relabelled to 1..|s| in ascending order.

    Returns the subgraph and the old -> new label map.
    """
    s = _check_vertices(g, s)
    if not s:
        raise PdThreshError("induced subgraph of an empty vertex set")
    relabel = {v: i + 1 for i, v in enumerate(s)}
    edges = [(relabel[u], relabel[v]) for u, v in g.edges if u in relabel and v in relabel]
    return UndirectedGraph(len(s), frozenset(edges)), relabel


def is_tree(g: UndirectedGraph) -> bool:
    return len(g.edges) == g.n - 1 and is_connected(g)


def is_forest(g: UndirectedGraph) -> bool:
    # acyclic iff |E| = n - (number of components)
    return len(g.edges) == g.n - len(connected_components(g))


def path_order(g: UndirectedGraph) -> Optional[list[int]]:
    """Vertex sequence along ``g`` if ``g`` is a single path, else None.

    The sequence starts at the lower-indexed endpoint.
    """
    if g.n == 1:
        return [1]
    if not is_tree(g) or any(g.degree(v) > 2 for v in g.vertices):
        return None
    start = min(v for v in g.vertices if g.degree(v) == 1)
    order = [start]
    prev = None
    while len(order) < g.n:
        nxt = [w for w in g.neighbors(order[-1]) if w != prev]
        prev = order[-1]
        order.append(nxt[0])
    return order


def maximum_cardinality_search(g: UndirectedGraph) -> list[int]:
    """Visit order of maximum cardinality search, ties to the lowest index."""
    weight = [0] * g.n
    visited = [False] * g.n
    order = []
    for _ in range(g.n):
        best = -1
        for v in range(g.n):
            if not visited[v] and (best < 0 or weight[v] > weight[best]):
                best = v
        visited[best] = True
        order.append(best + 1)
        for w in g._adj[best]:
            if not visited[w]:
                weight[w] += 1
    return order


def is_perfect_elimination_order(g: UndirectedGraph, order: list[int]) -> bool:
    """Check that each vertex's later neighbours form a clique."""
    pos = {v: i for i, v in enumerate(order)}
    for v in order:
        later = [w for w in g.neighbors(v) if pos[w] > pos[v]]
        if not later:
            continue
        # classic linear-time test: the earliest later neighbour must see the rest
        u = min(later, key=pos.__getitem__)
        for w in later:
            if w != u and not g.has_edge(u, w):
                return False
    return True


def chordality(g: UndirectedGraph) -> Optional[list[int]]:
    """Perfect elimination order (first eliminated first) or None if not chordal."""
    order = maximum_cardinality_search(g)[::-1]
    return order if is_perfect_elimination_order(g, order) else None


def is_chordal(g: UndirectedGraph) -> bool:
    return chordality(g) is not None


def perfect_clique_ordering(g: UndirectedGraph) -> CliqueOrdering:
    """Maximal cliques of a connected chordal graph in a perfect order."""
    peo = chordality(g)
    if peo is None:
        raise NotChordalError("graph is not chordal")
    if not is_connected(g):
        raise NotConnectedError("perfect clique ordering requires a connected graph")
    pos = {v: i for i, v in enumerate(peo)}
    candidates = [
        frozenset([v] + [w for w in g.neighbors(v) if pos[w] > pos[v]]) for v in peo
    ]
    maximal = [c for c in candidates if not any(c < d for d in candidates)]
    # candidates follow elimination order; reversing gives the search visit order
    return CliqueOrdering.from_cliques(maximal[::-1])


def removable_vertex(g: UndirectedGraph) -> int:
    """A vertex whose removal leaves the graph connected.

    Picks the vertex farthest from vertex 1 in breadth-first distance, lowest
    index among ties.
    """
    if g.n < 2:
        raise PdThreshError("removable_vertex needs at least 2 vertices")
    dist = _bfs_dist(g, 1)
    if len(dist) != g.n:
        raise NotConnectedError("graph is not connected")
    far = max(dist.values())
    return min(v for v, d in dist.items() if d == far)


def broken_cycle_witness(g: UndirectedGraph, h: UndirectedGraph) -> Optional[list[int]]:
    """Cycle of ``g`` made of a path in ``h`` closed by an edge of ``g`` missing from ``h``.

    Returns ``[v1, ..., vm]`` where consecutive vertices are joined in ``h`` and
    ``(vm, v1)`` is in ``g`` but not in ``h``; None when every component of ``h``
    is an induced subgraph of ``g``. The shortest such cycle is returned, ties
    broken by the lexicographically smallest missing edge.
    """
    if not h.is_subgraph_of(g):
        raise NotASubgraphError("h is not a subgraph of g on the same vertex set")
    best = None
    dists = {}
    for u, v in sorted(g.edges - h.edges):
        if u not in dists:
            dists[u] = _bfs_dist(h, u)
        d = dists[u].get(v)
        if d is not None and (best is None or d < best[0]):
            best = (d, u, v)
            if d == 2:
                break
    if best is None:
        return None
    _, u, v = best
    # walk back along decreasing distance from u, preferring low labels
    du = dists[u]
    path = [v]
    while path[-1] != u:
        cur = path[-1]
        path.append(min(w for w in h.neighbors(cur) if du.get(w) == du[cur] - 1))
    return path[::-1]


def find_cycle(g: UndirectedGraph) -> Optional[list[int]]:
    """Shortest cycle through the lexicographically first closing edge, or None."""
    for u, v in g.sorted_edges():
        without = UndirectedGraph(g.n, g.edges - {(u, v)})
        dist = _bfs_dist(without, u)
        if v in dist:
            path = [v]
            while path[-1] != u:
                cur = path[-1]
                path.append(min(w for w in without.neighbors(cur) if dist.get(w) == dist[cur] - 1))
            return path[::-1]
    return None


def bfs_tree_edges(t: UndirectedGraph, root: int = 1) -> list[tuple[int, int]]:
    """Breadth-first (parent, child) edges reachable from ``root``, children ascending."""
    if not 1 <= root <= t.n:
        raise PdThreshError(f"root {root} out of range")
    edges = []
    seen = {root}
    queue = deque([root])
    while queue:
        p = queue.popleft()
        for c in t.neighbors(p):
            if c not in seen:
                seen.add(c)
                edges.append((p, c))
                queue.append(c)
    return edges
