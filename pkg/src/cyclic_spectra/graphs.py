"""Finite simple graphs, rooted graphs, named families, star and comb products."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable

import numpy as np

#: hard cap keeping the dense oracle feasible
VERTEX_CAP = 20_000


def _normalize_edges(n: int, edges: Iterable[tuple[int, int]]) -> frozenset[tuple[int, int]]:
    out = set()
    for i, j in edges:
        if i == j:
            raise ValueError(f"loop at vertex {i}")
        if not (0 <= i < n and 0 <= j < n):
            raise ValueError(f"edge ({i}, {j}) out of range for n={n}")
        out.add((min(i, j), max(i, j)))
    return frozenset(out)


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph on vertices 0..n-1."""

    n: int
    edges: frozenset[tuple[int, int]]

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise ValueError("negative vertex count")
        if n > VERTEX_CAP:
            raise ValueError(f"vertex count {n} exceeds cap {VERTEX_CAP}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", _normalize_edges(n, edges))

    def degree(self, v: int) -> int:
        return sum(1 for i, j in self.edges if v in (i, j))

    def neighbors(self, v: int) -> list[int]:
        out = [j if i == v else i for i, j in self.edges if v in (i, j)]
        return sorted(out)


@dataclass(frozen=True)
class RootedGraph:
    graph: Graph
    root: int

    def __post_init__(self):
        if not (0 <= self.root < self.graph.n):
            raise ValueError(f"root {self.root} out of range")

    @property
    def n(self) -> int:
        return self.graph.n

    def root_degree(self) -> int:
        return self.graph.degree(self.root)


def adjacency(g: Graph) -> np.ndarray:
    """Symmetric 0/1 int64 adjacency matrix."""
    a = np.zeros((g.n, g.n), dtype=np.int64)
    for i, j in g.edges:
        a[i, j] = 1
        a[j, i] = 1
    return a


def adjacency_rows(g: Graph) -> list[list[int]]:
    """Adjacency matrix as plain Python int rows (for exact big-int work)."""
    rows = [[0] * g.n for _ in range(g.n)]
    for i, j in g.edges:
        rows[i][j] = 1
        rows[j][i] = 1
    return rows


def delete_root(g: RootedGraph) -> Graph:
    """Induced subgraph on the non-root vertices, relabeled order-preservingly."""
    keep = [v for v in range(g.n) if v != g.root]
    index = {v: k for k, v in enumerate(keep)}
    edges = [
        (index[i], index[j])
        for i, j in g.graph.edges
        if i != g.root and j != g.root
    ]
    return Graph(g.n - 1, edges)


def disjoint_union(g1: Graph, g2: Graph) -> Graph:
    edges = list(g1.edges) + [(i + g1.n, j + g1.n) for i, j in g2.edges]
    return Graph(g1.n + g2.n, edges)


# ----------------------------------------------------------------------
# products

def star_product(g1: RootedGraph, g2: RootedGraph) -> RootedGraph:
    """Glue the two graphs at their roots.

    Labeling: g1 keeps its labels; the non-root vertices of g2 are appended in
    increasing order.  With this convention iterated products associate as
    exact matrix equalities.
    """
    n1 = g1.n

    def relabel2(v: int) -> int:
        if v == g2.root:
            return g1.root
        return n1 + v - (1 if v > g2.root else 0)

    edges = list(g1.graph.edges)
    edges += [(relabel2(i), relabel2(j)) for i, j in g2.graph.edges]
    return RootedGraph(Graph(n1 + g2.n - 1, edges), g1.root)


def comb_product(g1: RootedGraph, g2: RootedGraph) -> RootedGraph:
    """Attach a copy of g2 (at its root) to every vertex of g1.

    Vertex (x1, x2) is labeled x1 * n2 + x2 (row-major), which makes the
    adjacency equal to A1 (x) P2 + I1 (x) A2 in Kronecker indexing.
    """
    n1, n2 = g1.n, g2.n
    if n1 * n2 > VERTEX_CAP:
        raise ValueError(f"comb product size {n1 * n2} exceeds cap {VERTEX_CAP}")
    edges = []
    for i, j in g1.graph.edges:
        edges.append((i * n2 + g2.root, j * n2 + g2.root))
    for x in range(n1):
        for i, j in g2.graph.edges:
            edges.append((x * n2 + i, x * n2 + j))
    return RootedGraph(Graph(n1 * n2, edges), g1.root * n2 + g2.root)


def nfold_star(g: RootedGraph, n: int) -> RootedGraph:
    if n < 1:
        raise ValueError("fold count must be >= 1")
    out = g
    for _ in range(n - 1):
        out = star_product(out, g)
    return out


def nfold_comb(g: RootedGraph, n: int) -> RootedGraph:
    if n < 1:
        raise ValueError("fold count must be >= 1")
    out = g
    for _ in range(n - 1):
        out = comb_product(out, g)
    return out


# ----------------------------------------------------------------------
# named families

def complete(d: int) -> RootedGraph:
    if d < 1:
        raise ValueError("complete graph needs at least one vertex")
    edges = [(i, j) for i in range(d) for j in range(i + 1, d)]
    return RootedGraph(Graph(d, edges), 0)


def star(n: int) -> RootedGraph:
    """Star graph on n+1 vertices, rooted at the center."""
    if n < 1:
        raise ValueError("star graph needs at least one ray")
    return RootedGraph(Graph(n + 1, [(0, i) for i in range(1, n + 1)]), 0)


def friendship(n: int) -> RootedGraph:
    """n triangles sharing one hub vertex, rooted at the hub."""
    if n < 1:
        raise ValueError("friendship graph needs at least one triangle")
    edges = [(0, i) for i in range(1, 2 * n + 1)]
    edges += [(2 * i - 1, 2 * i) for i in range(1, n + 1)]
    return RootedGraph(Graph(2 * n + 1, edges), 0)


def path(n: int) -> RootedGraph:
    """Path on n vertices, rooted at an endpoint."""
    if n < 1:
        raise ValueError("path needs at least one vertex")
    return RootedGraph(Graph(n, [(i, i + 1) for i in range(n - 1)]), 0)


_FAMILIES = {
    "complete": complete,
    "star": star,
    "friendship": friendship,
    "path": path,
}


def named(spec: str) -> RootedGraph:
    """Build a named family from a 'name:param' string, e.g. 'complete:3'."""
    try:
        name, _, arg = spec.partition(":")
        return _FAMILIES[name](int(arg))
    except (KeyError, ValueError) as exc:
        raise ValueError(f"bad graph family spec {spec!r}") from exc


# ----------------------------------------------------------------------
# I/O: edge-list text and JSON, both bit-exact round trips

def format_graph_text(g: RootedGraph) -> str:
    lines = [f"n {g.n} root {g.root}"]
    lines += [f"{i} {j}" for i, j in sorted(g.graph.edges)]
    return "\n".join(lines) + "\n"


def parse_graph_text(text: str) -> RootedGraph:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty graph file")
    head = lines[0].split()
    if len(head) != 4 or head[0] != "n" or head[2] != "root":
        raise ValueError(f"bad header {lines[0]!r}")
    n, root = int(head[1]), int(head[3])
    edges = []
    for ln in lines[1:]:
        i, j = ln.split()
        edges.append((int(i), int(j)))
    return RootedGraph(Graph(n, edges), root)


def graph_to_json(g: RootedGraph) -> dict:
    return {
        "n": g.n,
        "root": g.root,
        "edges": [list(e) for e in sorted(g.graph.edges)],
    }


def graph_from_json(data: dict | str) -> RootedGraph:
    if isinstance(data, str):
        data = json.loads(data)
    edges = [(int(i), int(j)) for i, j in data["edges"]]
    return RootedGraph(Graph(int(data["n"]), edges), int(data["root"]))
