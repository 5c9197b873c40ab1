"""Simple undirected graphs, rooted trees and tree constructions.

Vertices are the integers ``0 .. n-1``.  Graphs are immutable; every
operation that changes the vertex set returns a new graph together with
an index map.
"""
from __future__ import annotations

import itertools
import random
import re
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable

from .errors import InputError, ResourceError

DEFAULT_TREE_CAP = 1_000_000


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph with a declared degree bound.

    ``adjacency[v]`` is the sorted tuple of neighbours of ``v``.
    """

    vertex_count: int
    adjacency: tuple[tuple[int, ...], ...]
    declared_max_degree: int

    def __post_init__(self):
        n = self.vertex_count
        if n < 0:
            raise InputError("vertex_count must be nonnegative")
        if len(self.adjacency) != n:
            raise InputError(f"adjacency has {len(self.adjacency)} rows, expected {n}")
        if self.declared_max_degree < 1:
            raise InputError("declared_max_degree must be positive")
        for v, nbrs in enumerate(self.adjacency):
            if list(nbrs) != sorted(set(nbrs)):
                raise InputError(f"neighbours of {v} not sorted or repeated")
            for u in nbrs:
                if not 0 <= u < n:
                    raise InputError(f"neighbour {u} of {v} out of range")
                if u == v:
                    raise InputError(f"self-loop at {v}")
                if v not in self.adjacency[u]:
                    raise InputError(f"edge {v}-{u} is not symmetric")
            if len(nbrs) > self.declared_max_degree:
                raise InputError(
                    f"vertex {v} has degree {len(nbrs)} > declared maximum "
                    f"{self.declared_max_degree}"
                )

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]], max_degree: int | None = None) -> "Graph":
        """Build a graph from an edge list.

        ``max_degree`` defaults to the actual maximum degree (at least 1).
        Duplicate edges are rejected, as are self-loops.
        """
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise InputError(f"edge ({u}, {v}) out of range for {n} vertices")
            if u == v:
                raise InputError(f"self-loop at {u}")
            if v in nbrs[u]:
                raise InputError(f"parallel edge ({u}, {v})")
            nbrs[u].add(v)
            nbrs[v].add(u)
        adjacency = tuple(tuple(sorted(s)) for s in nbrs)
        if max_degree is None:
            max_degree = max([len(s) for s in nbrs] + [1])
        return cls(n, adjacency, max_degree)

    @property
    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.vertex_count) for v in self.adjacency[u] if u < v]

    @property
    def max_degree(self) -> int:
        """Actual maximum degree (0 for an edgeless graph)."""
        return max((len(a) for a in self.adjacency), default=0)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def is_connected(self) -> bool:
        if self.vertex_count == 0:
            return True
        return len(_reachable(self, 0)) == self.vertex_count

    def components(self) -> list[list[int]]:
        seen = [False] * self.vertex_count
        out = []
        for s in range(self.vertex_count):
            if not seen[s]:
                comp = sorted(_reachable(self, s))
                for v in comp:
                    seen[v] = True
                out.append(comp)
        return out

    def is_forest(self) -> bool:
        return len(self.edges) == self.vertex_count - len(self.components())


def _reachable(g: Graph, start: int) -> set[int]:
    seen = {start}
    todo = [start]
    while todo:
        v = todo.pop()
        for u in g.adjacency[v]:
            if u not in seen:
                seen.add(u)
                todo.append(u)
    return seen


@dataclass(frozen=True)
class RootedTree:
    """A tree together with a distinguished root vertex."""

    underlying: Graph
    root: int
    parent: tuple[int, ...] = field(init=False, repr=False, compare=False)
    order: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        g = self.underlying
        n = g.vertex_count
        if n == 0 or not 0 <= self.root < n:
            raise InputError("root must be a vertex of a nonempty tree")
        if len(g.edges) != n - 1 or not g.is_connected():
            raise InputError("underlying graph is not a tree")
        parent = [-1] * n
        order = [self.root]
        queue = deque([self.root])
        while queue:
            v = queue.popleft()
            for u in g.adjacency[v]:
                if u != parent[v]:
                    parent[u] = v
                    order.append(u)
                    queue.append(u)
        object.__setattr__(self, "parent", tuple(parent))
        object.__setattr__(self, "order", tuple(order))
        # implied by the degree bound, but checked rather than assumed
        for v in range(n):
            if v != self.root and len(self.children(v)) > g.declared_max_degree - 1:
                raise InputError(f"vertex {v} has too many children")

    @property
    def vertex_count(self) -> int:
        return self.underlying.vertex_count

    @property
    def root_is_leaf(self) -> bool:
        return self.underlying.degree(self.root) <= 1

    def children(self, v: int) -> list[int]:
        return [u for u in self.underlying.adjacency[v] if u != self.parent[v]]

    def depth(self) -> int:
        depth = [0] * self.vertex_count
        for v in self.order[1:]:
            depth[v] = depth[self.parent[v]] + 1
        return max(depth)


def closed_neighborhood(g: Graph, v: int) -> frozenset[int]:
    """Return N[v] = N(v) | {v}."""
    if not 0 <= v < g.vertex_count:
        raise InputError(f"vertex {v} out of range")
    return frozenset(g.adjacency[v]) | {v}


def delete_vertices(g: Graph, removed: Iterable[int]) -> tuple[Graph, dict[int, int]]:
    """Induced subgraph on the surviving vertices.

    Survivors are renumbered ``0..m-1`` in increasing order; the returned
    dict maps old index to new index.
    """
    removed = set(removed)
    for v in removed:
        if not 0 <= v < g.vertex_count:
            raise InputError(f"vertex {v} out of range")
    keep = [v for v in range(g.vertex_count) if v not in removed]
    index = {old: new for new, old in enumerate(keep)}
    adjacency = tuple(
        tuple(index[u] for u in g.adjacency[v] if u in index) for v in keep
    )
    return Graph(len(keep), adjacency, g.declared_max_degree), index


def dary_tree_size(d: int, k: int) -> int:
    if d == 1:
        return k + 1
    return (d ** (k + 1) - 1) // (d - 1)


def complete_dary_tree(d: int, k: int, max_vertices: int = DEFAULT_TREE_CAP) -> RootedTree:
    """Complete d-ary tree T_{k,d}: every internal vertex has d children, leaves at depth k.

    Vertices are numbered breadth first; the children of ``i`` are
    ``d*i + 1 .. d*i + d``.
    """
    if d < 1:
        raise InputError("d must be at least 1")
    if k < 0:
        raise InputError("k must be nonnegative")
    n = dary_tree_size(d, k)
    if n > max_vertices:
        raise ResourceError(f"T_{{{k},{d}}} has {n} vertices, cap is {max_vertices}")
    internal = dary_tree_size(d, k - 1) if k > 0 else 0
    edges = [(i, d * i + j) for i in range(internal) for j in range(1, d + 1)]
    return RootedTree(Graph.from_edges(n, edges, max_degree=d + 1), 0)


def saw_tree(g: Graph, v: int, max_vertices: int = 200_000) -> tuple[RootedTree, list[int]]:
    """Self-avoiding-walk tree of ``g`` rooted at ``v``.

    Each tree vertex is a self-avoiding walk from ``v``; the second return
    value maps tree vertices to the last vertex of their walk.  Cycle
    closures are resolved by neighbour order: when the walk leaves ``u``
    towards its i-th neighbour, ``u`` and its earlier neighbours are
    pinned unoccupied and thus deleted from the remaining graph.  Walks that
    would close a cycle are therefore never generated, and the result is
    a plain tree with ``Z_g`` dividing ``Z_tree`` and the same root ratio.
    """
    if not 0 <= v < g.vertex_count:
        raise InputError(f"vertex {v} out of range")
    if not g.is_connected():
        raise InputError("saw_tree requires a connected graph")

    origin = [v]
    edges: list[tuple[int, int]] = []
    # stack of (tree node, graph vertex, removed set)
    stack = [(0, v, frozenset())]
    while stack:
        node, u, removed = stack.pop()
        removed = removed | {u}
        pending = []
        for w in g.adjacency[u]:
            if w in removed:
                continue
            child = len(origin)
            if child >= max_vertices:
                raise ResourceError(f"SAW tree exceeds {max_vertices} vertices")
            origin.append(w)
            edges.append((node, child))
            pending.append((child, w, removed))
            removed = removed | {w}
        stack.extend(reversed(pending))
    tree_graph = Graph.from_edges(len(origin), edges, max_degree=g.declared_max_degree)
    return RootedTree(tree_graph, 0), origin


# -- named graphs -------------------------------------------------------------

def empty_graph(n: int) -> Graph:
    return Graph.from_edges(n, [])


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, itertools.combinations(range(n), 2))


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise InputError("a cycle needs at least 3 vertices")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def star_graph(leaves: int) -> Graph:
    """K_{1,leaves} with centre 0."""
    return Graph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def random_connected_graph(n: int, max_degree: int, rng: random.Random, density: float = 0.4) -> Graph:
    """Random connected graph with every degree at most ``max_degree``.

    A random spanning tree is grown first, then each remaining pair is
    added with probability ``density`` while both ends have spare degree.
    """
    if n < 1:
        raise InputError("n must be positive")
    if max_degree < 2 and n > 2:
        raise InputError("max_degree < 2 cannot connect more than two vertices")
    nbrs: list[set[int]] = [set() for _ in range(n)]
    order = list(range(n))
    rng.shuffle(order)
    for i in range(1, n):
        candidates = [u for u in order[:i] if len(nbrs[u]) < max_degree]
        u, w = rng.choice(candidates), order[i]
        nbrs[u].add(w)
        nbrs[w].add(u)
    for u, w in itertools.combinations(range(n), 2):
        if w in nbrs[u] or len(nbrs[u]) >= max_degree or len(nbrs[w]) >= max_degree:
            continue
        if rng.random() < density:
            nbrs[u].add(w)
            nbrs[w].add(u)
    edges = [(u, w) for u in range(n) for w in nbrs[u] if u < w]
    return Graph.from_edges(n, edges, max_degree=max_degree)


def random_corpus(count: int, seed: int, max_vertices: int = 10, max_degree: int = 5) -> list[Graph]:
    """Seeded list of random connected graphs on 1..max_vertices vertices."""
    rng = random.Random(seed)
    return [
        random_connected_graph(rng.randint(1, max_vertices), max_degree, rng)
        for _ in range(count)
    ]


# -- edge-list text format ----------------------------------------------------

class EdgeListError(InputError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


_HEADER = re.compile(r"^n\s+(\d+)$")
_EDGE = re.compile(r"^(\d+)\s+(\d+)$")


def parse_edge_list(text: str) -> Graph:
    """Parse "u v" lines; "#" starts a comment; optional header "n <count>"."""
    declared = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _HEADER.match(line)
        if m:
            if declared is not None or edges:
                raise EdgeListError("header must precede edges and appear once", lineno)
            declared = int(m.group(1))
            continue
        m = _EDGE.match(line)
        if not m:
            raise EdgeListError(f"expected 'u v', got {raw!r}", lineno)
        u, v = int(m.group(1)), int(m.group(2))
        if u == v:
            raise EdgeListError(f"self-loop at {u}", lineno)
        if declared is not None and max(u, v) >= declared:
            raise EdgeListError(f"vertex {max(u, v)} exceeds header count {declared}", lineno)
        if (u, v) in edges or (v, u) in edges:
            raise EdgeListError(f"parallel edge {u} {v}", lineno)
        edges.append((u, v))
    n = declared if declared is not None else 1 + max((max(e) for e in edges), default=-1)
    return Graph.from_edges(n, edges)


def format_edge_list(g: Graph) -> str:
    lines = [f"n {g.vertex_count}"] + [f"{u} {v}" for u, v in g.edges]
    return "\n".join(lines) + "\n"
