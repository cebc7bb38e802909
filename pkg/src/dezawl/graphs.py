"""Graph construction and combinatorial parameter verification.

Adjacency is stored as one bitset (Python int) per row, so common-neighbor
counts are popcounts of bitwise intersections. Graphs are treated as
immutable once built; derived graphs are produced by copy.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Union

import numpy as np

from .group import FamilyGroup, Group, Subgroup, cosets, subgroup_generated


class Graph:
    """Loopless graph or digraph on vertices 0..n-1."""

    def __init__(
        self,
        n: int,
        directed: bool = False,
        labels: Optional[Sequence[str]] = None,
    ) -> None:
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        self.n = n
        self.directed = directed
        self.rows = [0] * n
        if labels is not None and len(labels) != n:
            raise ValueError("labels length does not match vertex count")
        self.labels = list(labels) if labels is not None else None

    @classmethod
    def from_edges(
        cls,
        n: int,
        edges: Iterable[tuple[int, int]],
        directed: bool = False,
        labels: Optional[Sequence[str]] = None,
    ) -> "Graph":
        g = cls(n, directed, labels)
        for u, v in edges:
            g._add_arc(u, v)
            if not directed:
                g._add_arc(v, u)
        return g

    def _add_arc(self, u: int, v: int) -> None:
        if not (0 <= u < self.n and 0 <= v < self.n):
            raise ValueError(f"arc ({u}, {v}) out of range")
        if u == v:
            raise ValueError("loops are not allowed")
        self.rows[u] |= 1 << v

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def neighbors(self, u: int) -> list[int]:
        row = self.rows[u]
        out = []
        v = 0
        while row:
            if row & 1:
                out.append(v)
            row >>= 1
            v += 1
        return out

    def degree(self, u: int) -> int:
        return self.rows[u].bit_count()

    def arc_count(self) -> int:
        return sum(r.bit_count() for r in self.rows)

    def edge_count(self) -> int:
        if self.directed:
            return self.arc_count()
        return self.arc_count() // 2

    def edges(self) -> list[tuple[int, int]]:
        """Arcs for digraphs; unordered pairs (u < v) for graphs."""
        out = []
        for u in range(self.n):
            for v in self.neighbors(u):
                if self.directed or u < v:
                    out.append((u, v))
        return out

    def common_neighbors(self, u: int, v: int) -> int:
        return (self.rows[u] & self.rows[v]).bit_count()

    def is_regular(self) -> Optional[int]:
        """The common degree, or None if degrees differ (or n = 0)."""
        if self.n == 0:
            return None
        degs = {self.degree(u) for u in range(self.n)}
        if len(degs) == 1:
            return degs.pop()
        return None

    def without_edge(self, u: int, v: int) -> "Graph":
        """Copy with the edge (u, v) removed, both directions if undirected."""
        if not self.has_edge(u, v):
            raise ValueError(f"({u}, {v}) is not an edge")
        g = Graph(self.n, self.directed, self.labels)
        g.rows = list(self.rows)
        g.rows[u] &= ~(1 << v)
        if not self.directed:
            g.rows[v] &= ~(1 << u)
        return g

    def to_matrix(self) -> np.ndarray:
        m = np.zeros((self.n, self.n), dtype=bool)
        for u in range(self.n):
            for v in self.neighbors(u):
                m[u, v] = True
        return m

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return (
            self.n == other.n
            and self.directed == other.directed
            and self.rows == other.rows
            and self.labels == other.labels
        )

    def __repr__(self) -> str:
        kind = "digraph" if self.directed else "graph"
        return f"Graph({kind}, n={self.n}, edges={self.edge_count()})"


@dataclass(frozen=True)
class DezaParameters:
    """Parameters (n, k, beta, alpha) with beta >= alpha.

    degenerate marks the single-common-neighbor-value case (alpha = beta).
    """

    n: int
    k: int
    beta: int
    alpha: int
    strictly: bool
    strongly_regular: bool
    degenerate: bool = False

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.n, self.k, self.beta, self.alpha)


@dataclass(frozen=True)
class NotDezaVerdict:
    """Why a graph is not Deza, with a witness vertex pair where applicable."""

    reason: str
    witness: Optional[tuple[int, int]] = None


@dataclass(frozen=True)
class DDGParameters:
    """Divisible design parameters (n, k, alpha, beta, m, l): alpha common
    neighbors within a class, beta across classes, m classes of size l."""

    n: int
    k: int
    alpha: int
    beta: int
    m: int
    l: int

    def as_tuple(self) -> tuple[int, int, int, int, int, int]:
        return (self.n, self.k, self.alpha, self.beta, self.m, self.l)


@dataclass(frozen=True)
class DDGFailure:
    reason: str
    witness: Optional[tuple[int, int]] = None


def cayley_graph(g: Group, s: Iterable[int]) -> Graph:
    """Cayley (di)graph with vertex set g and arcs (x, sx) for s in S.

    Undirected iff S is inverse-closed. Raises ValueError if e is in S.
    """
    s_set = set(int(x) for x in s)
    if g.identity in s_set:
        raise ValueError("connection set must not contain the identity")
    symmetric = all(g.inverse(x) in s_set for x in s_set)
    graph = Graph(g.order, directed=not symmetric, labels=[g.name(x) for x in g.elements()])
    for x in g.elements():
        for t in s_set:
            graph._add_arc(x, g.mul(t, x))
    return graph


def grid_graph(l: int, m: int) -> Graph:
    """The (l x m)-grid: vertices (i, j), adjacent iff exactly one
    coordinate agrees (the line graph of the complete bipartite graph)."""
    if l < 1 or m < 1:
        raise ValueError("grid dimensions must be at least 1")
    labels = [f"({i},{j})" for i in range(l) for j in range(m)]
    g = Graph(l * m, directed=False, labels=labels)
    for i in range(l):
        for j in range(m):
            u = i * m + j
            for jj in range(j + 1, m):
                g._add_arc(u, i * m + jj)
                g._add_arc(i * m + jj, u)
            for ii in range(i + 1, l):
                g._add_arc(u, ii * m + j)
                g._add_arc(ii * m + j, u)
    return g


def diameter(g: Graph) -> Union[int, float]:
    """Maximum eccentricity over all vertices; inf if not strongly connected."""
    if g.n == 0:
        return 0
    best = 0
    for src in range(g.n):
        dist = [-1] * g.n
        dist[src] = 0
        queue = deque([src])
        while queue:
            u = queue.popleft()
            for v in g.neighbors(u):
                if dist[v] < 0:
                    dist[v] = dist[u] + 1
                    queue.append(v)
        ecc = max(dist)
        if min(dist) < 0:
            return float("inf")
        best = max(best, ecc)
    return best


def deza_parameters(g: Graph) -> Union[DezaParameters, NotDezaVerdict]:
    """Classify g by exhaustive common-neighbor counting over all pairs.

    Returns DezaParameters when the graph is regular and at most two distinct
    common-neighbor counts occur; otherwise a NotDezaVerdict with a witness.
    A strongly regular graph is one where the count depends only on
    adjacency; strictly Deza means diameter 2 and not strongly regular.
    """
    if g.directed:
        raise ValueError("Deza parameters are defined for undirected graphs")
    if g.n == 0:
        return DezaParameters(0, 0, 0, 0, strictly=False,
                              strongly_regular=True, degenerate=True)
    k = g.is_regular()
    if k is None:
        degs = [g.degree(u) for u in range(g.n)]
        u = degs.index(min(degs))
        v = degs.index(max(degs))
        return NotDezaVerdict("not regular", (u, v))

    values: dict[int, tuple[int, int]] = {}
    for u in range(g.n):
        for v in range(u + 1, g.n):
            c = g.common_neighbors(u, v)
            if c not in values:
                values[c] = (u, v)
                if len(values) > 2:
                    return NotDezaVerdict(
                        "more than two common-neighbor counts", (u, v)
                    )

    if not values:  # n <= 1
        return DezaParameters(g.n, 0, 0, 0, strictly=False,
                              strongly_regular=True, degenerate=True)
    counts = sorted(values, reverse=True)
    beta = counts[0]
    alpha = counts[-1]
    degenerate = len(counts) == 1

    # Strong regularity: the count is a function of adjacency alone.
    adj_counts: set[int] = set()
    non_counts: set[int] = set()
    for u in range(g.n):
        for v in range(u + 1, g.n):
            c = g.common_neighbors(u, v)
            (adj_counts if g.has_edge(u, v) else non_counts).add(c)
    srg = len(adj_counts) <= 1 and len(non_counts) <= 1
    strictly = (not srg) and diameter(g) == 2
    return DezaParameters(g.n, k, beta, alpha, strictly=strictly,
                          strongly_regular=srg, degenerate=degenerate)


def ddg_check(
    g: Graph, partition: Sequence[Sequence[int]]
) -> Union[DDGParameters, DDGFailure]:
    """Check the two-level common-neighbor condition for a class partition.

    Vertices in the same class must share alpha common neighbors, vertices in
    different classes beta. Classes must be equal-sized; a malformed
    partition (not covering every vertex exactly once) raises ValueError.
    For singleton classes alpha is vacuous and reported as 0.
    """
    if g.directed:
        raise ValueError("divisible design check requires an undirected graph")
    seen = [0] * g.n
    for cls in partition:
        for v in cls:
            if not 0 <= v < g.n:
                raise ValueError(f"vertex {v} out of range")
            seen[v] += 1
    if any(c != 1 for c in seen):
        raise ValueError("classes do not partition the vertex set")

    k = g.is_regular()
    if k is None:
        return DDGFailure("not regular")
    sizes = {len(cls) for cls in partition}
    if len(sizes) != 1:
        return DDGFailure("classes have unequal sizes")
    l = sizes.pop()
    m = len(partition)

    class_of = [0] * g.n
    for i, cls in enumerate(partition):
        for v in cls:
            class_of[v] = i

    alpha: Optional[int] = None
    beta: Optional[int] = None
    for u in range(g.n):
        for v in range(u + 1, g.n):
            c = g.common_neighbors(u, v)
            if class_of[u] == class_of[v]:
                if alpha is None:
                    alpha = c
                elif c != alpha:
                    return DDGFailure("within-class count not constant", (u, v))
            else:
                if beta is None:
                    beta = c
                elif c != beta:
                    return DDGFailure("between-class count not constant", (u, v))
    return DDGParameters(g.n, k, alpha if alpha is not None else 0,
                         beta if beta is not None else 0, m, l)


def canonical_ddg_partition(g: Group, k: int) -> list[tuple[int, ...]]:
    """Right cosets of the subgroup A union cbA (a dihedral subgroup of
    order 2k); these are the 4 classes of the divisible design."""
    if not isinstance(g, FamilyGroup) or g.k != k:
        raise ValueError("group was not built by family_group(k)")
    cb = g.mul(g.c, g.b)
    d_sub = subgroup_generated(g, [g.a, cb])
    if d_sub.order != 2 * k:
        raise AssertionError("A union cbA does not have order 2k")
    return cosets(g, d_sub, side="right")


# Serialization: edge list (undirected only), DOT, and JSON.

def write_edgelist(g: Graph) -> str:
    """Header 'n m' then one 'u v' line per edge with u < v, 0-based."""
    if g.directed:
        raise ValueError("edge-list format is defined for undirected graphs")
    lines = [f"{g.n} {g.edge_count()}"]
    for u, v in g.edges():
        lines.append(f"{u} {v}")
    return "\n".join(lines) + "\n"


def parse_edgelist(text: str) -> Graph:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty edge-list input")
    head = lines[0].split()
    if len(head) != 2:
        raise ValueError(f"bad header {lines[0]!r}, expected 'n m'")
    n, m = int(head[0]), int(head[1])
    edges = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise ValueError(f"bad edge line {ln!r}")
        edges.append((int(parts[0]), int(parts[1])))
    if len(edges) != m:
        raise ValueError(f"header claims {m} edges, found {len(edges)}")
    return Graph.from_edges(n, edges, directed=False)


def to_dot(g: Graph, name: str = "G") -> str:
    kind, sep = ("digraph", "->") if g.directed else ("graph", "--")
    lines = [f"{kind} {name} {{"]
    if g.labels is not None:
        for v in range(g.n):
            lines.append(f'  {v} [label="{g.labels[v]}"];')
    for u, v in g.edges():
        lines.append(f"  {u} {sep} {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def graph_to_json(g: Graph) -> str:
    obj = {
        "n": g.n,
        "directed": g.directed,
        "labels": g.labels,
        "edges": [[u, v] for u, v in g.edges()],
    }
    return json.dumps(obj, sort_keys=True) + "\n"


def graph_from_json(text: str) -> Graph:
    obj = json.loads(text)
    edges = [(int(u), int(v)) for u, v in obj["edges"]]
    return Graph.from_edges(
        int(obj["n"]), edges, directed=bool(obj["directed"]), labels=obj.get("labels")
    )


def save_graph(g: Graph, fmt: str) -> str:
    if fmt == "edgelist":
        return write_edgelist(g)
    if fmt == "dot":
        return to_dot(g)
    if fmt == "json":
        return graph_to_json(g)
    raise ValueError(f"unknown format {fmt!r}")


def load_graph(text: str) -> Graph:
    """Parse JSON if the input looks like JSON, else the edge-list format."""
    stripped = text.lstrip()
    if stripped.startswith("{"):
        return graph_from_json(text)
    return parse_edgelist(text)
