"""Exact minimal-volume coarse k-wiring search for small instances.

The search is image-first: candidate host vertex sets S are tried in order of
increasing size (lexicographically within a size), and for each S a backtracking
search decides whether the guest has a coarse k-wiring whose image is exactly S.
Sizes below ceil(|V guest| / k) are skipped, since the vertex map alone needs that
many host vertices. The first feasible S gives the exact minimum; exhausting every
S up to a cap certifies that no k-wiring of volume <= cap exists.

Walks are restricted to simple paths inside host[S]. Loop-erasing any walk gives a
simple path over a subset of its edges, which can only lower congestion and volume,
so nothing is lost.

Pruning rules, all sound for image exactly S:

* a vertex of degree <= 1 in host[S] cannot be interior to a simple path, so it
  must receive a guest vertex;
* a guest vertex g placed on h has at least deg(g) - (k-1) incident edges with
  non-trivial walks, each leaving h, so deg(g) - (k-1) <= k * deg_S(h);
* for k = 1 the walks are edge-disjoint and non-trivial, so the induced map on
  GF(2) cycle spaces is injective and host[S] needs at least the guest's cycle rank.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations
from typing import Iterable, Iterator, Sequence

from .graph import Graph, components, girth_volume
from .wiring import Wiring


class SearchRefused(ValueError):
    """Instance is beyond the configured search limits."""


class Status(str, Enum):
    EXACT = "exact"
    INFEASIBLE = "infeasible-within-cap"
    EXHAUSTED = "budget-exhausted"


@dataclass(frozen=True)
class SearchLimits:
    max_guest_vertices: int = 12
    max_host_vertices: int = 70
    max_candidates_per_size: int = 2_000_000
    # girth floor and per-candidate cycle-rank test for k = 1; off gives plain exhaustion
    cycle_space_pruning: bool = True


DEFAULT_LIMITS = SearchLimits()


@dataclass(frozen=True)
class SearchBudget:
    k: int
    volume_cap: int | None = None
    node_limit: int | None = None
    deterministic: bool = True
    jobs: int = 1

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be >= 1")
        for name in ("volume_cap", "node_limit", "jobs"):
            val = getattr(self, name)
            if val is not None and val < 1:
                raise ValueError(f"{name} must be positive")


@dataclass(frozen=True)
class SearchResult:
    """Outcome of ``min_wiring_volume``.

    ``lower_bound`` is certified in every status: no coarse k-wiring has smaller
    volume. For ``exact`` it equals ``min_volume``.
    """

    status: Status
    min_volume: float
    witness: Wiring | None
    explored: int
    lower_bound: float
    sizes_refuted: tuple[int, ...] = field(default=())

    def summary(self) -> tuple:
        """Comparable digest (witness compared by content)."""
        wit = None
        if self.witness is not None:
            wit = (tuple(sorted(self.witness.vmap.items())), tuple(sorted(self.witness.walks.items())))
        return (self.status, self.min_volume, self.explored, self.lower_bound, wit)


# ---------------------------------------------------------------------------
# candidate image sets


def _adjacency_masks(g: Graph) -> list[int]:
    index = {v: i for i, v in enumerate(g.vertices)}
    masks = [0] * len(g.vertices)
    for u, v in g.edges:
        masks[index[u]] |= 1 << index[v]
        masks[index[v]] |= 1 << index[u]
    return masks


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def connected_vertex_sets(adj: Sequence[int], size: int) -> Iterator[int]:
    """Every connected vertex set of the given size exactly once, as a bitmask.

    ESU enumeration: a set is grown from its smallest vertex ``root``, only through
    vertices larger than ``root`` that are exclusive neighbours of the newest vertex.
    """
    n = len(adj)
    if size < 1:
        return

    def extend(sub: int, nbhd: int, ext: int, root: int, k: int):
        if k == size:
            yield sub
            return
        while ext:
            low = ext & -ext
            w = low.bit_length() - 1
            ext ^= low
            excl = adj[w] & ~sub & ~nbhd
            excl &= ~((1 << (root + 1)) - 1)
            yield from extend(sub | low, nbhd | adj[w], ext | excl, root, k + 1)

    for root in range(n):
        above = adj[root] & ~((1 << (root + 1)) - 1)
        yield from extend(1 << root, adj[root] | (1 << root), above, root, 1)


def candidate_sets(adj: Sequence[int], size: int, max_parts: int, limit: int) -> list[tuple[int, ...]]:
    """Vertex sets of ``size`` whose induced subgraph has at most ``max_parts``
    components, sorted lexicographically as index tuples."""
    if max_parts <= 1:
        out = [tuple(_bits(m)) for m in _take(connected_vertex_sets(adj, size), limit)]
        out.sort()
        return out
    by_size = {s: list(connected_vertex_sets(adj, s)) for s in range(1, size + 1)}
    results: set[int] = set()

    def grow(acc: int, closed: int, remaining: int, parts: int, min_low: int):
        if remaining == 0:
            results.add(acc)
            if len(results) > limit:
                raise SearchRefused(f"more than {limit} candidate image sets of size {size}")
            return
        if parts == max_parts:
            return
        for s in range(1, remaining + 1):
            for comp in by_size[s]:
                low = (comp & -comp).bit_length() - 1
                # parts taken in increasing order of their smallest vertex
                if low <= min_low or comp & closed:
                    continue
                nb = comp
                for i in _bits(comp):
                    nb |= adj[i]
                grow(acc | comp, closed | nb, remaining - s, parts + 1, low)

    grow(0, 0, size, 0, -1)
    return sorted(tuple(_bits(m)) for m in results)


def _take(it: Iterable[int], limit: int) -> list[int]:
    out = []
    for x in it:
        out.append(x)
        if len(out) > limit:
            raise SearchRefused(f"more than {limit} candidate image sets")
    return out


# ---------------------------------------------------------------------------
# decision problem for one image set


class _Cut(Exception):
    pass


@dataclass
class _Instance:
    """Index-based view of a (guest, host, k) search, cheap to ship to workers."""

    k: int
    n_guest: int
    order: list[int]  # guest vertex indices in assignment order
    back: list[list[tuple[int, int]]]  # per position: (earlier guest vertex, guest edge id)
    host_adj: list[int]
    degree: list[int]
    cycle_rank: int

    @classmethod
    def build(cls, guest: Graph, host: Graph, k: int) -> "_Instance":
        gidx = {v: i for i, v in enumerate(guest.vertices)}
        gadj: list[set[int]] = [set() for _ in guest.vertices]
        edge_id = {}
        for eid, (u, v) in enumerate(guest.edges):
            a, b = gidx[u], gidx[v]
            gadj[a].add(b)
            gadj[b].add(a)
            edge_id[(a, b)] = edge_id[(b, a)] = eid
        order: list[int] = []
        for comp in components(guest):
            # BFS inside each component so every vertex after the first has a placed neighbour
            start = gidx[comp.vertices[0]]
            seen = {start}
            frontier = [start]
            while frontier:
                order.extend(frontier)
                nxt = []
                for x in frontier:
                    for y in sorted(gadj[x]):
                        if y not in seen:
                            seen.add(y)
                            nxt.append(y)
                frontier = nxt
        pos = {g: t for t, g in enumerate(order)}
        back = [[(u, edge_id[(g, u)]) for u in sorted(gadj[g], key=pos.get) if pos[u] < t] for t, g in enumerate(order)]
        rank = guest.num_edges - guest.num_vertices + len(components(guest))
        return cls(k, len(guest.vertices), order, back, _adjacency_masks(host), [len(a) for a in gadj], rank)


def _simple_paths(adj: Sequence[int], allowed: int, a: int, b: int) -> list[tuple[int, ...]]:
    out: list[tuple[int, ...]] = []
    path = [a]

    def dfs(x: int, used: int):
        if x == b:
            out.append(tuple(path))
            return
        nxt = adj[x] & allowed & ~used
        for y in _bits(nxt):
            path.append(y)
            dfs(y, used | (1 << y))
            path.pop()

    dfs(a, 1 << a)
    out.sort(key=lambda p: (len(p), p))
    return out


def _feasible(inst: _Instance, S: tuple[int, ...], node_cap: int | None):
    """Search for a coarse k-wiring with image exactly S.

    Returns (nodes, outcome, solution) with outcome in {"found", "refuted", "cut"} and
    solution a (vmap, walks) pair of index structures when found.
    """
    k = inst.k
    allowed = 0
    for h in S:
        allowed |= 1 << h
    adj = inst.host_adj
    # components of host[S], for a cheap reachability test
    comp_of: dict[int, int] = {}
    for h in S:
        if h in comp_of:
            continue
        stack = [h]
        comp_of[h] = h
        while stack:
            x = stack.pop()
            for y in _bits(adj[x] & allowed):
                if y not in comp_of:
                    comp_of[y] = h
                    stack.append(y)
    deg_s = {h: bin(adj[h] & allowed).count("1") for h in S}
    if k == 1:
        edges_s = sum(deg_s.values()) // 2
        if edges_s - len(S) + len(set(comp_of.values())) < inst.cycle_rank:
            return 0, "refuted", None
    leaves = {h for h in S if deg_s[h] <= 1}
    if len(leaves) > inst.n_guest:
        return 0, "refuted", None
    open_leaves = [len(leaves)]
    path_cache: dict[tuple[int, int], list] = {}

    def paths(a: int, b: int):
        key = (a, b)
        if key not in path_cache:
            if (b, a) in path_cache:
                path_cache[key] = [p[::-1] for p in path_cache[(b, a)]]
            else:
                path_cache[key] = _simple_paths(adj, allowed, a, b)
        return path_cache[key]

    mult = dict.fromkeys(S, 0)
    cover = dict.fromkeys(S, 0)
    load: dict[tuple[int, int], int] = {}
    vmap: dict[int, int] = {}
    walks: dict[int, tuple[int, ...]] = {}
    uncovered = [len(S)]
    nodes = [0]
    n = inst.n_guest

    def tick():
        nodes[0] += 1
        if node_cap is not None and nodes[0] > node_cap:
            raise _Cut

    def touch(vs, delta):
        for x in vs:
            before = cover[x]
            cover[x] = before + delta
            if before == 0 and delta > 0:
                uncovered[0] -= 1
            elif cover[x] == 0:
                uncovered[0] += 1

    def assign(t: int) -> bool:
        if t == n:
            return uncovered[0] == 0
        if open_leaves[0] > n - t:
            return False
        g = inst.order[t]
        back = inst.back[t]
        anchor = comp_of[vmap[back[0][0]]] if back else None
        need = inst.degree[g] - (k - 1)
        for h in S:
            if mult[h] >= k or (anchor is not None and comp_of[h] != anchor) or need > k * deg_s[h]:
                continue
            tick()
            if mult[h] == 0 and h in leaves:
                open_leaves[0] -= 1
            mult[h] += 1
            vmap[g] = h
            touch((h,), 1)
            if route(t, 0, h):
                return True
            touch((h,), -1)
            del vmap[g]
            mult[h] -= 1
            if mult[h] == 0 and h in leaves:
                open_leaves[0] += 1
        return False

    def route(t: int, i: int, h: int) -> bool:
        back = inst.back[t]
        if i == len(back):
            return assign(t + 1)
        u, eid = back[i]
        a = vmap[u]
        if a == h:
            walks[eid] = (h,)
            if route(t, i + 1, h):
                return True
            del walks[eid]
            return False
        for p in paths(a, h):
            es = [(x, y) if x < y else (y, x) for x, y in zip(p, p[1:])]
            if any(load.get(e, 0) >= k for e in es):
                continue
            tick()
            for e in es:
                load[e] = load.get(e, 0) + 1
            touch(p, 1)
            walks[eid] = p
            if route(t, i + 1, h):
                return True
            del walks[eid]
            touch(p, -1)
            for e in es:
                load[e] -= 1
        return False

    try:
        ok = assign(0)
    except _Cut:
        return nodes[0], "cut", None
    if ok:
        return nodes[0], "found", (dict(vmap), dict(walks))
    return nodes[0], "refuted", None


_WORKER: _Instance | None = None


def _init_worker(inst: _Instance) -> None:
    global _WORKER
    _WORKER = inst


def _worker_check(args):
    S, node_cap = args
    return _feasible(_WORKER, S, node_cap)


# ---------------------------------------------------------------------------
# public entry points


def _witness(guest: Graph, host: Graph, solution) -> Wiring:
    vmap_i, walks_i = solution
    vmap = {guest.vertices[g]: host.vertices[h] for g, h in vmap_i.items()}
    walks = {guest.edges[e]: tuple(host.vertices[h] for h in p) for e, p in walks_i.items()}
    return Wiring.make(guest, host, vmap, walks)


def volume_floor(n_guest: int, k: int) -> int:
    return -(-n_guest // k)


def cycle_rank(g: Graph) -> int:
    return g.num_edges - g.num_vertices + len(components(g))


def analytic_floor(gamma: Graph, host: Graph, k: int) -> float:
    """Volume lower bound that needs no search.

    The vertex map needs ceil(|V|/k) host vertices. For k = 1 a guest with a cycle
    has an image with a cycle (cycle spaces inject), so the image has at least
    girth(host) vertices, and no 1-wiring exists at all into a forest.
    """
    floor: float = volume_floor(gamma.num_vertices, k)
    if k == 1 and cycle_rank(gamma) > 0:
        floor = max(floor, girth_volume(host))
    return floor


def min_wiring_volume(
    gamma: Graph, host: Graph, budget: SearchBudget, limits: SearchLimits = DEFAULT_LIMITS
) -> SearchResult:
    """Exact wir^k(gamma -> host), or a certified bound when capped or out of budget."""
    k = budget.k
    n_g, n_h = gamma.num_vertices, host.num_vertices
    if n_g == 0:
        return SearchResult(Status.EXACT, 0, Wiring(gamma, host, {}, {}), 0, 0)
    if limits.cycle_space_pruning:
        floor = analytic_floor(gamma, host, k)
    else:
        floor = volume_floor(n_g, k)
    top = n_h if budget.volume_cap is None else min(budget.volume_cap, n_h)

    def infeasible(explored: int, refuted=()) -> SearchResult:
        # the cap only bounds what was searched; beyond |V host| nothing exists at all
        if budget.volume_cap is None or budget.volume_cap >= n_h:
            bound = math.inf
        else:
            bound = budget.volume_cap + 1
        return SearchResult(Status.INFEASIBLE, math.inf, None, explored, bound, tuple(refuted))

    if floor > top:
        return infeasible(0)
    floor = int(floor)
    if n_g > limits.max_guest_vertices or n_h > limits.max_host_vertices:
        raise SearchRefused(
            f"instance {n_g} guest / {n_h} host vertices exceeds search limits "
            f"({limits.max_guest_vertices} / {limits.max_host_vertices})"
        )

    inst = _Instance.build(gamma, host, k)
    if not limits.cycle_space_pruning:
        inst.cycle_rank = 0
    max_parts = len(components(gamma))
    node_limit = budget.node_limit
    total = 0
    refuted: list[int] = []
    pool = ProcessPoolExecutor(budget.jobs, initializer=_init_worker, initargs=(inst,)) if budget.jobs > 1 else None
    try:
        for size in range(floor, top + 1):
            cands = candidate_sets(inst.host_adj, size, max_parts, limits.max_candidates_per_size)
            for nodes, outcome, sol in _outcomes(inst, cands, node_limit, pool, budget.jobs):
                if outcome == "cut":
                    return SearchResult(Status.EXHAUSTED, math.inf, None, total + nodes, size, tuple(refuted))
                total += nodes
                if outcome == "found":
                    return SearchResult(Status.EXACT, size, _witness(gamma, host, sol), total, size, tuple(refuted))
                if node_limit is not None and total > node_limit:
                    return SearchResult(Status.EXHAUSTED, math.inf, None, total, size, tuple(refuted))
            refuted.append(size)
    finally:
        if pool is not None:
            pool.shutdown()
    return infeasible(total, refuted)


def _outcomes(inst: _Instance, cands: list, node_limit: int | None, pool, jobs: int):
    """Per-candidate results in canonical order.

    Every candidate is searched with the same per-candidate cap, so the results, and
    hence the aggregate, do not depend on the number of workers.
    """
    if pool is None:
        for S in cands:
            yield _feasible(inst, S, node_limit)
        return
    chunk = max(1, jobs * 4)
    for start in range(0, len(cands), chunk):
        batch = cands[start:start + chunk]
        yield from pool.map(_worker_check, [(S, node_limit) for S in batch])


def wiring_profile_point(
    k: int, size_bound: int, candidates: Iterable[Graph], host: Graph, limits: SearchLimits = DEFAULT_LIMITS
) -> tuple[float, Graph | None]:
    """max over candidate guests of wir^k(guest -> host), with an attaining guest."""
    best: float = -1
    arg = None
    for gamma in candidates:
        if gamma.num_vertices > size_bound:
            raise ValueError(f"candidate {gamma.name} has more than {size_bound} vertices")
        res = min_wiring_volume(gamma, host, SearchBudget(k), limits)
        if res.status is Status.EXHAUSTED:  # pragma: no cover - no node limit set
            raise SearchRefused(f"search for {gamma.name} ran out of budget")
        if res.min_volume > best:
            best, arg = res.min_volume, gamma
    return (0, None) if arg is None else (best, arg)


def enumerate_subgraphs(
    g: Graph, max_vertices: int, connected_only: bool = True, guard: int = 1_000_000
) -> Iterator[Graph]:
    """All subgraphs with 1..max_vertices vertices (vertex subset plus any subset of
    the induced edges), distinct as labelled subgraphs of ``g``."""
    adj = _adjacency_masks(g)
    n = len(g.vertices)
    produced = 0
    for size in range(1, min(max_vertices, n) + 1):
        if connected_only:
            vsets = sorted(tuple(_bits(m)) for m in connected_vertex_sets(adj, size))
        else:
            vsets = list(combinations(range(n), size))
        for vs in vsets:
            verts = [g.vertices[i] for i in vs]
            sub = g.subgraph(verts)
            m = len(sub.edges)
            if m > 20:
                raise SearchRefused(f"vertex set of size {size} induces {m} edges; too many edge subsets")
            for mask in range(1 << m):
                es = [sub.edges[i] for i in range(m) if mask >> i & 1]
                if connected_only and len(es) < size - 1:
                    continue
                cand = Graph.build(verts, es, sub.labels, name=f"{g.name}_sub{produced}")
                if connected_only and len(components(cand)) != 1:
                    continue
                produced += 1
                if produced > guard:
                    raise SearchRefused(f"more than {guard} subgraphs")
                yield cand
