"""Line-based text formats for graphs and wirings.

Graph files::

    graph <name>
    v <id> [n=<nat> col=<nat> row=<nat>]
    e <id> <id>

Wiring files::

    wiring <guest-name> -> <host-name>
    vmap <guest-v> <host-v>
    emap <guest-u> <guest-v> : <host-v0> ... <host-vk>

Blank lines and ``#`` comments are ignored on input. Output is canonical (sorted),
so ``serialize(parse(text)) == text`` for canonical files.
"""

from __future__ import annotations

from pathlib import Path

from .graph import Graph, GraphError, GridLabel, vertex_key
from .wiring import Wiring


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def _lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line.split()


def _nat(tok: str, lineno: int) -> int:
    if not tok.isdigit():
        raise ParseError(f"expected natural number, got {tok!r}", lineno)
    return int(tok)


def parse_graph(text: str) -> Graph:
    name = None
    vertices: list[str] = []
    seen: set[str] = set()
    labels: dict[str, GridLabel] = {}
    edges: list[tuple[str, str]] = []
    seen_edges: set[frozenset] = set()
    for lineno, toks in _lines(text):
        kind = toks[0]
        if kind == "graph":
            if name is not None or len(toks) != 2:
                raise ParseError("expected a single 'graph <name>' header", lineno)
            name = toks[1]
        elif name is None:
            raise ParseError("missing 'graph <name>' header", lineno)
        elif kind == "v":
            if len(toks) not in (2, 5):
                raise ParseError("expected 'v <id>' or 'v <id> n=.. col=.. row=..'", lineno)
            vid = toks[1]
            if vid in seen:
                raise ParseError(f"duplicate vertex id {vid!r}", lineno)
            seen.add(vid)
            vertices.append(vid)
            if len(toks) == 5:
                fields = {}
                for tok in toks[2:]:
                    key, _, val = tok.partition("=")
                    fields[key] = _nat(val, lineno)
                if set(fields) != {"n", "col", "row"}:
                    raise ParseError("label must give n=, col= and row=", lineno)
                labels[vid] = GridLabel(fields["n"], fields["col"], fields["row"])
        elif kind == "e":
            if len(toks) != 3:
                raise ParseError("expected 'e <id> <id>'", lineno)
            u, v = toks[1], toks[2]
            if u == v:
                raise ParseError(f"self-loop at {u!r}", lineno)
            for x in (u, v):
                if x not in seen:
                    raise ParseError(f"dangling endpoint {x!r}", lineno)
            key = frozenset((u, v))
            if key in seen_edges:
                raise ParseError(f"duplicate edge {u}-{v}", lineno)
            seen_edges.add(key)
            edges.append((u, v))
        else:
            raise ParseError(f"unknown record {kind!r}", lineno)
    if name is None:
        raise ParseError("empty graph file")
    try:
        return Graph.build(vertices, edges, labels, name=name)
    except GraphError as exc:  # pragma: no cover - all cases caught above
        raise ParseError(str(exc)) from exc


def serialize_graph(g: Graph) -> str:
    out = [f"graph {g.name}"]
    for v in g.vertices:
        lab = g.labels.get(v)
        out.append(f"v {v}" if lab is None else f"v {v} n={lab.family} col={lab.col} row={lab.row}")
    out.extend(f"e {u} {v}" for u, v in g.edges)
    return "\n".join(out) + "\n"


def parse_wiring(text: str, guest: Graph, host: Graph) -> Wiring:
    """Parse a wiring file against already-loaded guest and host graphs.

    Only syntax and id resolution are checked here; use ``validate`` for the
    wiring invariants (adjacency of walk steps, endpoints).
    """
    header = False
    vmap: dict[str, str] = {}
    walks: dict[tuple[str, str], tuple[str, ...]] = {}
    for lineno, toks in _lines(text):
        kind = toks[0]
        if kind == "wiring":
            if header or len(toks) != 4 or toks[2] != "->":
                raise ParseError("expected a single 'wiring <guest> -> <host>' header", lineno)
            if toks[1] != guest.name or toks[3] != host.name:
                raise ParseError(
                    f"header names {toks[1]} -> {toks[3]} do not match graphs {guest.name} -> {host.name}", lineno
                )
            header = True
        elif not header:
            raise ParseError("missing 'wiring' header", lineno)
        elif kind == "vmap":
            if len(toks) != 3:
                raise ParseError("expected 'vmap <guest-v> <host-v>'", lineno)
            g, h = toks[1], toks[2]
            if g not in guest.vertex_set:
                raise ParseError(f"unknown guest vertex {g!r}", lineno)
            if h not in host.vertex_set:
                raise ParseError(f"unknown host vertex {h!r}", lineno)
            if g in vmap:
                raise ParseError(f"duplicate vmap for {g!r}", lineno)
            vmap[g] = h
        elif kind == "emap":
            if len(toks) < 5 or toks[3] != ":":
                raise ParseError("expected 'emap <u> <v> : <h0> ... <hk>'", lineno)
            u, v = toks[1], toks[2]
            if not guest.has_edge(u, v):
                raise ParseError(f"{u}-{v} is not a guest edge", lineno)
            walk = tuple(toks[4:])
            for h in walk:
                if h not in host.vertex_set:
                    raise ParseError(f"unknown host vertex {h!r}", lineno)
            if vertex_key(u) > vertex_key(v):
                u, v, walk = v, u, walk[::-1]
            if (u, v) in walks:
                raise ParseError(f"duplicate emap for {u}-{v}", lineno)
            walks[(u, v)] = walk
        else:
            raise ParseError(f"unknown record {kind!r}", lineno)
    if not header:
        raise ParseError("empty wiring file")
    return Wiring.make(guest, host, vmap, walks)


def serialize_wiring(w: Wiring) -> str:
    out = [f"wiring {w.guest.name} -> {w.host.name}"]
    for g in w.guest.vertices:
        if g in w.vmap:
            out.append(f"vmap {g} {w.vmap[g]}")
    for e in w.guest.edges:
        if e in w.walks:
            out.append(f"emap {e[0]} {e[1]} : {' '.join(w.walks[e])}")
    return "\n".join(out) + "\n"


def read_graph(path: str | Path) -> Graph:
    return parse_graph(Path(path).read_text(encoding="utf-8"))


def write_graph(g: Graph, path: str | Path) -> None:
    Path(path).write_text(serialize_graph(g), encoding="utf-8")


def read_wiring(path: str | Path, guest: Graph, host: Graph) -> Wiring:
    return parse_wiring(Path(path).read_text(encoding="utf-8"), guest, host)


def write_wiring(w: Wiring, path: str | Path) -> None:
    Path(path).write_text(serialize_wiring(w), encoding="utf-8")
