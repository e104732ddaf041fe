"""Explicit wirings of subgraphs of X into Y.

``subdivision_wiring`` uses that Y_n subdivides X_n (a 1-wiring);
``collapse_wiring`` projects every column onto column 0 (an f(n)-wiring whose image
is a single vertical path); ``compact_reembedding_wiring`` re-embeds a small
subgraph around its nearest rung without stretching (a 1-wiring of volume |V|);
``composite_wiring`` splits a subgraph of X by family and dispatches each piece.
"""

from __future__ import annotations

from collections import defaultdict

from .families import PAPER, FamilyConfig, PreconditionError, build_Y, vol_X
from .graph import Graph, GridLabel, components, disjoint_union
from .wiring import Wiring, merge_wirings


class LabelError(ValueError):
    """Guest vertices or edges that are not consistent with X_n."""


class HorizonExceeded(ValueError):
    pass


def check_labels(gamma: Graph, n: int, cfg: FamilyConfig) -> None:
    """Every vertex of ``gamma`` is a vertex of X_n and every edge an edge of X_n."""
    k, hx = cfg.f(n), cfg.hx(n)
    top = hx * k
    for v in gamma.vertices:
        lab = gamma.labels.get(v)
        if lab is None:
            raise LabelError(f"vertex {v} has no grid label")
        if lab.family != n or not 0 <= lab.col < k or not 0 <= lab.row <= top:
            raise LabelError(f"vertex {v} with label {tuple(lab)} is not in X_{n}")
    for u, v in gamma.edges:
        a, b = gamma.labels[u], gamma.labels[v]
        vertical = a.col == b.col and abs(a.row - b.row) == 1
        rung = a.row == b.row and abs(a.col - b.col) == 1 and a.row % hx == 0
        if not (vertical or rung):
            raise LabelError(f"{u}-{v} is not an edge of X_{n}")


def _host_id(host: Graph, n: int, col: int, row: int) -> str:
    return host.by_label[GridLabel(n, col, row)]


def _vertical_walk(host: Graph, n: int, col: int, lo: int, hi: int) -> tuple[str, ...]:
    step = 1 if hi >= lo else -1
    return tuple(_host_id(host, n, col, r) for r in range(lo, hi + step, step))


def _wiring_from_rows(gamma: Graph, host: Graph, n: int, row_of: dict[str, int], col_of: dict[str, int]) -> Wiring:
    """Vertices go to (col_of[v], row_of[v]) in Y_n; edges to the straight host path
    between the images (a rung, a vertical run, or a single vertex)."""
    vmap = {v: _host_id(host, n, col_of[v], row_of[v]) for v in gamma.vertices}
    walks = {}
    for u, v in gamma.edges:
        cu, cv = col_of[u], col_of[v]
        ru, rv = row_of[u], row_of[v]
        if cu == cv:
            walks[(u, v)] = _vertical_walk(host, n, cu, ru, rv)
        elif ru == rv:
            walks[(u, v)] = (vmap[u], vmap[v])
        else:  # pragma: no cover - excluded by the constructions
            raise AssertionError("diagonal edge image")
    return Wiring.make(gamma, host, vmap, walks)


def subdivision_wiring(gamma: Graph, n: int, cfg: FamilyConfig = PAPER, host: Graph | None = None) -> Wiring:
    """1-wiring of a subgraph of X_n into Y_n along the subdivision X_n -> Y_n.

    Row q*hx + s (0 <= s < hx) goes to row q*hy + s; the vertical edge entering a rung
    from below is stretched over the hy - hx + 1 edges that separate the rows.
    """
    check_labels(gamma, n, cfg)
    host = host if host is not None else build_Y(n, cfg)
    hx, hy = cfg.hx(n), cfg.hy(n)
    rows = {}
    for v in gamma.vertices:
        q, s = divmod(gamma.labels[v].row, hx)
        rows[v] = q * hy + s
    cols = {v: gamma.labels[v].col for v in gamma.vertices}
    return _wiring_from_rows(gamma, host, n, rows, cols)


def _collapse(gamma: Graph, n: int, host: Graph) -> Wiring:
    rows = {v: gamma.labels[v].row for v in gamma.vertices}
    cols = dict.fromkeys(gamma.vertices, 0)
    return _wiring_from_rows(gamma, host, n, rows, cols)


def collapse_wiring(gamma: Graph, n: int, cfg: FamilyConfig = PAPER, host: Graph | None = None) -> Wiring:
    """(i, j) -> (0, j) in Y_n; rungs collapse to a point."""
    if cfg.f(n) < 2:
        raise PreconditionError(f"collapse wiring needs f(n) >= 2, got f({n}) = {cfg.f(n)}")
    check_labels(gamma, n, cfg)
    return _collapse(gamma, n, host if host is not None else build_Y(n, cfg))


def collapse_volume(n: int, cfg: FamilyConfig = PAPER) -> int:
    """Volume of the collapse wiring of all of X_n: one column of hx(n) f(n) + 1 rows."""
    return cfg.hx(n) * cfg.f(n) + 1


def compact_reembedding_wiring(gamma: Graph, n: int, cfg: FamilyConfig = PAPER, host: Graph | None = None) -> Wiring:
    """Volume-preserving 1-wiring of a small subgraph of X_n into Y_n.

    Needs 2|V gamma| < hx(n). Each component then meets at most one rung row. A
    component meeting rung row q*hx keeps its signed row offsets s from that rung and
    lands at q*hy + s; a component inside the open segment (q*hx, (q+1)*hx) lands at
    q*hy + s with s its offset above the lower rung. Images of different components
    cannot collide because hy - hx >= hx / 2.
    """
    check_labels(gamma, n, cfg)
    hx, hy = cfg.hx(n), cfg.hy(n)
    if not 2 * gamma.num_vertices < hx:
        raise PreconditionError(
            f"phi precondition violated: schedule too small (2*{gamma.num_vertices} >= hx({n}) = {hx})"
        )
    host = host if host is not None else build_Y(n, cfg)
    rows: dict[str, int] = {}
    for comp in components(gamma):
        labs = [gamma.labels[v] for v in comp.vertices]
        anchors = {lab.row // hx for lab in labs if lab.row % hx == 0}
        if len(anchors) > 1:  # pragma: no cover - ruled out by the precondition
            raise AssertionError("component spans two rung rows")
        if anchors:
            q = anchors.pop()
        else:
            q = labs[0].row // hx
        for v, lab in zip(comp.vertices, labs):
            rows[v] = q * hy + (lab.row - q * hx)
    cols = {v: gamma.labels[v].col for v in gamma.vertices}
    return _wiring_from_rows(gamma, host, n, rows, cols)


def split_by_family(gamma: Graph) -> dict[int, Graph]:
    """Pieces of ``gamma`` lying in the individual components X_n, keyed by n."""
    groups: dict[int, list[str]] = defaultdict(list)
    for v in gamma.vertices:
        lab = gamma.labels.get(v)
        if lab is None:
            raise LabelError(f"vertex {v} has no grid label")
        groups[lab.family].append(v)
    edges: dict[int, list] = defaultdict(list)
    for u, v in gamma.edges:
        a, b = gamma.labels[u].family, gamma.labels[v].family
        if a != b:
            raise LabelError(f"{u}-{v} joins X_{a} and X_{b}")
        edges[a].append((u, v))
    return {n: gamma.subgraph(vs, edges[n], name=f"{gamma.name}_{n}") for n, vs in sorted(groups.items())}


def budget_index(size: int, cfg: FamilyConfig = PAPER, horizon: int = 64) -> int:
    """Least n with vol_X(n) >= size."""
    for n in range(1, horizon + 1):
        if vol_X(n, cfg) >= size:
            return n
    raise HorizonExceeded(f"no n <= {horizon} has vol_X(n) >= {size}")


def composite_method(n_i: int, n: int) -> str:
    if n_i < n:
        return "subdivide"
    if n_i == n:
        return "collapse"
    return "phi"


def composite_wiring(gamma: Graph, cfg: FamilyConfig = PAPER, horizon: int = 64) -> Wiring:
    """Wire a labelled subgraph of X into Y with k <= f(n) and volume <= 2 vol_X(n).

    ``n`` is the budget index, the least n with vol_X(n) >= |V gamma|. Each family
    piece gamma_i of X_{n_i} goes into its own component Y_{n_i}: subdivision if
    n_i < n, collapse if n_i = n, compact re-embedding if n_i > n. The host of the
    result is the disjoint union of the Y components used.
    """
    if gamma.num_vertices == 0:
        return Wiring(gamma, Graph.build([], name="Y"), {}, {})
    n = budget_index(gamma.num_vertices, cfg, horizon)
    pieces = split_by_family(gamma)
    hosts = {n_i: build_Y(n_i, cfg) for n_i in pieces}
    host = disjoint_union(hosts.values(), name="Y" + "_".join(str(n_i) for n_i in pieces))
    parts = []
    for n_i, piece in pieces.items():
        method = composite_method(n_i, n)
        if method == "subdivide":
            parts.append(subdivision_wiring(piece, n_i, cfg, host=host))
        elif method == "collapse":
            check_labels(piece, n_i, cfg)
            # f(1) = 1 only arises when the whole budget is X_1; the projection is then injective
            parts.append(_collapse(piece, n_i, host))
        else:
            parts.append(compact_reembedding_wiring(piece, n_i, cfg, host=host))
    return merge_wirings(parts, gamma, host)
