"""Wirings of a guest graph into a host graph and their coarse measurements.

A wiring sends every guest vertex to a host vertex and every guest edge to a walk
in the host joining the images of its endpoints. It is a coarse k-wiring when no
host vertex receives more than k guest vertices and no host edge lies on the
walks of more than k guest edges.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, NamedTuple

from .graph import Edge, Graph, make_edge, vertex_key

Walk = tuple[str, ...]


class WiringStructureError(ValueError):
    """The wiring refers to ids that do not exist in its guest or host."""


class InvalidWiringError(ValueError):
    """A measurement was requested on a wiring that fails validation."""


class Violation(NamedTuple):
    kind: str
    subject: str
    message: str


def _orient(e: Edge, walk: Walk, vmap: Mapping[str, str]) -> Walk:
    u, v = e
    if walk and walk[0] != vmap.get(u) and walk[-1] == vmap.get(u):
        return walk[::-1]
    return walk


@dataclass(frozen=True, eq=False)
class Wiring:
    guest: Graph
    host: Graph
    vmap: Mapping[str, str]
    walks: Mapping[Edge, Walk]

    @classmethod
    def make(cls, guest: Graph, host: Graph, vmap: Mapping[str, str], walks: Mapping[tuple[str, str], Iterable[str]]) -> "Wiring":
        """Build a wiring, storing each guest edge smaller-endpoint first with its walk
        oriented to start at the image of that endpoint."""
        vmap = dict(vmap)
        norm: dict[Edge, Walk] = {}
        for (u, v), walk in walks.items():
            walk = tuple(walk)
            if vertex_key(u) > vertex_key(v):
                u, v, walk = v, u, walk[::-1]
            norm[(u, v)] = _orient((u, v), walk, vmap)
        return cls(guest, host, vmap, norm)

    def same_as(self, other: "Wiring") -> bool:
        return (
            self.guest.same_as(other.guest)
            and self.host.same_as(other.host)
            and dict(self.vmap) == dict(other.vmap)
            and dict(self.walks) == dict(other.walks)
        )

    @cached_property
    def violations(self) -> tuple[Violation, ...]:
        return tuple(_violations(self))


def _check_structure(w: Wiring) -> None:
    for g, h in w.vmap.items():
        if g not in w.guest.vertex_set:
            raise WiringStructureError(f"vmap names unknown guest vertex {g!r}")
        if h not in w.host.vertex_set:
            raise WiringStructureError(f"vmap target {h!r} is not a host vertex")
    for e, walk in w.walks.items():
        if e not in w.guest.edge_set:
            raise WiringStructureError(f"walk given for non-edge {e[0]}-{e[1]}")
        for h in walk:
            if h not in w.host.vertex_set:
                raise WiringStructureError(f"walk for {e[0]}-{e[1]} visits unknown host vertex {h!r}")


def _violations(w: Wiring):
    for g in w.guest.vertices:
        if g not in w.vmap:
            yield Violation("missing-vertex", g, f"guest vertex {g} has no image")
    for e in w.guest.edges:
        name = f"{e[0]}-{e[1]}"
        walk = w.walks.get(e)
        if walk is None:
            yield Violation("missing-edge", name, f"guest edge {name} has no walk")
            continue
        if not walk:
            yield Violation("empty-walk", name, f"walk for {name} is empty")
            continue
        a, b = w.vmap.get(e[0]), w.vmap.get(e[1])
        if (walk[0], walk[-1]) not in ((a, b), (b, a)):
            yield Violation(
                "endpoints", name, f"walk for {name} runs {walk[0]}..{walk[-1]} but endpoints map to {a}, {b}"
            )
        for x, y in zip(walk, walk[1:]):
            if not w.host.has_edge(x, y):
                yield Violation("non-adjacent", name, f"walk for {name} steps {x}->{y}, not a host edge")


def validate(w: Wiring) -> list[Violation]:
    """Empty list iff ``w`` is a well-formed wiring.

    Raises WiringStructureError if ids do not resolve in the guest/host.
    """
    _check_structure(w)
    return list(w.violations)


def _require_valid(w: Wiring) -> None:
    bad = validate(w)
    if bad:
        raise InvalidWiringError("; ".join(v.message for v in bad[:5]))


def walk_edges(walk: Walk) -> set[Edge]:
    return {make_edge(x, y) for x, y in zip(walk, walk[1:])}


def host_edge_loads(w: Wiring) -> Counter:
    """Number of distinct guest edges whose walk uses each host edge."""
    loads: Counter = Counter()
    for walk in w.walks.values():
        loads.update(walk_edges(walk))
    return loads


def vertex_multiplicity(w: Wiring) -> int:
    _require_valid(w)
    counts = Counter(w.vmap.values())
    return max(counts.values(), default=0)


def edge_congestion(w: Wiring) -> int:
    _require_valid(w)
    return max(host_edge_loads(w).values(), default=0)


def wiring_k(w: Wiring) -> int:
    """Least k for which ``w`` is a coarse k-wiring."""
    return max(vertex_multiplicity(w), edge_congestion(w), 1)


def image_vertices(w: Wiring) -> set[str]:
    verts = set(w.vmap.values())
    for walk in w.walks.values():
        verts.update(walk)
    return verts


def image(w: Wiring) -> Graph:
    _require_valid(w)
    edges: set[Edge] = set()
    for walk in w.walks.values():
        edges |= walk_edges(walk)
    return w.host.subgraph(image_vertices(w), edges, name=w.host.name)


def volume(w: Wiring) -> int:
    _require_valid(w)
    return len(image_vertices(w))


def loop_erase(walk: Walk) -> Walk:
    """Simple path from ``walk[0]`` to ``walk[-1]`` using a subset of the walk's edges."""
    path: list[str] = []
    pos: dict[str, int] = {}
    for x in walk:
        if x in pos:
            for y in path[pos[x] + 1:]:
                del pos[y]
            del path[pos[x] + 1:]
        else:
            pos[x] = len(path)
            path.append(x)
    return tuple(path)


def normalize_to_simple_paths(w: Wiring) -> Wiring:
    return Wiring(w.guest, w.host, dict(w.vmap), {e: loop_erase(walk) for e, walk in w.walks.items()})


def identity_wiring(g: Graph) -> Wiring:
    return Wiring(g, g, {v: v for v in g.vertices}, {e: e for e in g.edges})


def merge_wirings(parts: Iterable[Wiring], guest: Graph, host: Graph) -> Wiring:
    """Union of wirings of disjoint guest pieces into one guest/host pair."""
    vmap: dict[str, str] = {}
    walks: dict[Edge, Walk] = {}
    for w in parts:
        vmap.update(w.vmap)
        walks.update(w.walks)
    return Wiring(guest, host, vmap, walks)
