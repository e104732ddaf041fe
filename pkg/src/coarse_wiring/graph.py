"""Finite simple undirected graphs, ladder generators and a few structural queries."""

from __future__ import annotations

import math
import re
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterable, Mapping, NamedTuple

DEFAULT_MATERIALIZATION_CAP = 10**7

Edge = tuple[str, str]


class GraphError(ValueError):
    """Structural problem with a graph (self-loop, duplicate, dangling endpoint)."""


class InstanceTooLarge(GraphError):
    def __init__(self, count: int, cap: int):
        super().__init__(f"instance too large: {count} vertices exceeds materialization cap {cap}")
        self.count = count
        self.cap = cap


class GridLabel(NamedTuple):
    family: int
    col: int
    row: int


@lru_cache(maxsize=None)
def vertex_key(v: str) -> tuple:
    """Natural sort key, so that ``v1_0_10`` sorts after ``v1_0_9``."""
    parts = re.split(r"(\d+)", v)
    return tuple(int(p) if i % 2 else p for i, p in enumerate(parts))


def edge_key(e: Edge) -> tuple:
    return (vertex_key(e[0]), vertex_key(e[1]))


def make_edge(u: str, v: str) -> Edge:
    if u == v:
        raise GraphError(f"self-loop at {u!r}")
    return (u, v) if vertex_key(u) < vertex_key(v) else (v, u)


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph over string vertex ids.

    ``vertices`` and ``edges`` are kept in canonical (natural-sorted) order; each
    edge is stored with its smaller endpoint first.
    """

    name: str
    vertices: tuple[str, ...]
    edges: tuple[Edge, ...]
    labels: Mapping[str, GridLabel] = field(default_factory=dict, hash=False)

    @classmethod
    def build(
        cls,
        vertices: Iterable[str],
        edges: Iterable[tuple[str, str]] = (),
        labels: Mapping[str, GridLabel] | None = None,
        name: str = "G",
    ) -> "Graph":
        vs = list(vertices)
        vset = set(vs)
        if len(vset) != len(vs):
            dup = next(v for v in vs if vs.count(v) > 1)
            raise GraphError(f"duplicate vertex id {dup!r}")
        es: set[Edge] = set()
        for u, v in edges:
            e = make_edge(u, v)
            if u not in vset or v not in vset:
                missing = u if u not in vset else v
                raise GraphError(f"edge {u}-{v} has undeclared endpoint {missing!r}")
            if e in es:
                raise GraphError(f"duplicate edge {e[0]}-{e[1]}")
            es.add(e)
        labels = dict(labels or {})
        for v in labels:
            if v not in vset:
                raise GraphError(f"label for undeclared vertex {v!r}")
        return cls(
            name=name,
            vertices=tuple(sorted(vs, key=vertex_key)),
            edges=tuple(sorted(es, key=edge_key)),
            labels=labels,
        )

    def __len__(self) -> int:
        return len(self.vertices)

    @property
    def num_vertices(self) -> int:
        return len(self.vertices)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @cached_property
    def vertex_set(self) -> frozenset[str]:
        return frozenset(self.vertices)

    @cached_property
    def edge_set(self) -> frozenset[Edge]:
        return frozenset(self.edges)

    @cached_property
    def adjacency(self) -> dict[str, frozenset[str]]:
        adj: dict[str, set[str]] = {v: set() for v in self.vertices}
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return {v: frozenset(ns) for v, ns in adj.items()}

    @cached_property
    def by_label(self) -> dict[GridLabel, str]:
        return {lab: v for v, lab in self.labels.items()}

    def has_edge(self, u: str, v: str) -> bool:
        return v in self.adjacency.get(u, ())

    def neighbors(self, v: str) -> frozenset[str]:
        return self.adjacency[v]

    def subgraph(self, vertices: Iterable[str], edges: Iterable[Edge] | None = None, name: str | None = None) -> "Graph":
        """Subgraph on ``vertices``; induced unless ``edges`` is given."""
        vs = set(vertices)
        if edges is None:
            es = [e for e in self.edges if e[0] in vs and e[1] in vs]
        else:
            es = [make_edge(*e) for e in edges]
            for e in es:
                if e not in self.edge_set:
                    raise GraphError(f"{e[0]}-{e[1]} is not an edge of {self.name}")
        labels = {v: self.labels[v] for v in vs if v in self.labels}
        return Graph.build(vs, es, labels, name=name or self.name)

    def same_as(self, other: "Graph") -> bool:
        return (
            self.name == other.name
            and self.vertices == other.vertices
            and self.edges == other.edges
            and dict(self.labels) == dict(other.labels)
        )


def disjoint_union(graphs: Iterable[Graph], name: str = "G") -> Graph:
    vs: list[str] = []
    es: list[Edge] = []
    labels: dict[str, GridLabel] = {}
    for g in graphs:
        vs.extend(g.vertices)
        es.extend(g.edges)
        labels.update(g.labels)
    return Graph.build(vs, es, labels, name=name)


@dataclass(frozen=True)
class LadderSpec:
    columns: int
    spacing: int
    segments: int

    def __post_init__(self):
        for fname in ("columns", "spacing", "segments"):
            if getattr(self, fname) < 1:
                raise ValueError(f"LadderSpec.{fname} must be >= 1")

    @property
    def height(self) -> int:
        return self.spacing * self.segments

    @property
    def num_vertices(self) -> int:
        return self.columns * (self.height + 1)

    @property
    def num_edges(self) -> int:
        return self.columns * self.height + (self.segments + 1) * (self.columns - 1)


def ladder_vertex_id(prefix: str, family: int, col: int, row: int) -> str:
    return f"{prefix}{family}_{col}_{row}"


def build_ladder(
    spec: LadderSpec,
    family: int = 1,
    prefix: str = "v",
    name: str | None = None,
    cap: int = DEFAULT_MATERIALIZATION_CAP,
) -> Graph:
    """Ladder with ``columns`` vertical paths of ``spacing*segments`` edges and a rung
    wherever the row is a multiple of ``spacing``."""
    if spec.num_vertices > cap:
        raise InstanceTooLarge(spec.num_vertices, cap)
    c, H, top = spec.columns, spec.spacing, spec.height
    rows = range(top + 1)
    vid = [[f"{prefix}{family}_{i}_{j}" for j in rows] for i in range(c)]
    labels: dict[str, GridLabel] = {}
    new_label = tuple.__new__
    for i, col in enumerate(vid):
        labels.update(zip(col, [new_label(GridLabel, (family, i, j)) for j in rows]))
    # emitted directly in canonical order: column-major vertices, and for each lower
    # endpoint (i, j) the vertical edge before the rung
    edges = []
    for i, col in enumerate(vid):
        nxt = vid[i + 1] if i + 1 < c else None
        for j in range(top):
            edges.append((col[j], col[j + 1]))
            if nxt is not None and j % H == 0:
                edges.append((col[j], nxt[j]))
        if nxt is not None:
            edges.append((col[top], nxt[top]))
    return Graph(
        name=name or f"ladder_{c}_{H}_{spec.segments}",
        vertices=tuple(labels),
        edges=tuple(edges),
        labels=labels,
    )


def components(g: Graph) -> list[Graph]:
    """Connected components, ordered by their smallest vertex."""
    seen: set[str] = set()
    out = []
    for root in g.vertices:
        if root in seen:
            continue
        seen.add(root)
        part = [root]
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w in g.adjacency[u]:
                if w not in seen:
                    seen.add(w)
                    part.append(w)
                    queue.append(w)
        out.append(g.subgraph(part))
    return out


def is_connected(g: Graph) -> bool:
    return len(components(g)) <= 1


def is_acyclic(g: Graph) -> bool:
    # a forest has exactly |V| - #components edges
    return g.num_edges == g.num_vertices - len(components(g))


def _chain_representatives(g: Graph) -> list[Edge]:
    """One edge per maximal chain of edges joined through degree-2 vertices."""
    adj = g.adjacency
    seen: set[Edge] = set()
    reps = []
    for e in g.edges:
        if e in seen:
            continue
        reps.append(e)
        seen.add(e)
        stack = [e]
        while stack:
            u, v = stack.pop()
            for x in (u, v):
                if len(adj[x]) != 2:
                    continue
                for y in adj[x]:
                    f = make_edge(x, y)
                    if f not in seen:
                        seen.add(f)
                        stack.append(f)
    return reps


def girth_volume(g: Graph) -> float:
    """Vertex count of a shortest cycle (``math.inf`` for a forest).

    For an edge ``uv`` the shortest ``u``-``v`` path avoiding that edge closes the
    shortest cycle through it. A cycle through one edge of a chain of degree-2
    vertices runs through the whole chain, so one BFS per chain suffices.
    """
    best = math.inf
    adj = g.adjacency
    for u, v in _chain_representatives(g):
        dist = {u: 0}
        queue = deque([u])
        while queue:
            x = queue.popleft()
            if dist[x] + 1 >= best - 1:
                break
            for y in adj[x]:
                if y in dist or (x == u and y == v):
                    continue
                dist[y] = dist[x] + 1
                if y == v:
                    queue.clear()
                    break
                queue.append(y)
        if v in dist:
            best = min(best, dist[v] + 1)
    return best
