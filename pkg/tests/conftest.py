from __future__ import annotations

import itertools
import math
import random
from collections import Counter
from pathlib import Path

import networkx as nx
import pytest

from coarse_wiring.graph import Graph, make_edge

FIXTURES = Path(__file__).parent / "fixtures"

_criteria: dict[str, tuple[str, float]] = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py::test_criterion_" not in report.nodeid:
        return
    if report.when == "call" or report.failed:
        _criteria[report.nodeid.split("::")[-1]] = (report.outcome, report.duration)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_criteria, key=lambda t: int(t.split("_")[2])):
        outcome, secs = _criteria[name]
        num, label = name.split("_", 3)[2:]
        verdict = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"criterion {num} ({label.replace('_', ' ')}): {verdict} [{secs:.2f} s]")


@pytest.fixture
def fixtures() -> Path:
    return FIXTURES


def to_nx(g: Graph) -> nx.Graph:
    G = nx.Graph()
    G.add_nodes_from(g.vertices)
    G.add_edges_from(g.edges)
    return G


def random_connected_subgraph(g: Graph, rng: random.Random, max_vertices: int) -> Graph:
    """Grow a random connected vertex set, then keep a random connected edge subset."""
    start = rng.choice(g.vertices)
    vs = {start}
    frontier = set(g.adjacency[start])
    target = rng.randint(1, max_vertices)
    while len(vs) < target and frontier:
        v = rng.choice(sorted(frontier))
        vs.add(v)
        frontier |= g.adjacency[v]
        frontier -= vs
    induced = [e for e in g.edges if e[0] in vs and e[1] in vs]
    # random spanning tree plus a random share of the remaining induced edges
    order = sorted(vs)
    rng.shuffle(order)
    tree, seen = [], {order[0]}
    while len(seen) < len(vs):
        u, v = rng.choice([e for e in induced if (e[0] in seen) != (e[1] in seen)])
        tree.append((u, v))
        seen |= {u, v}
    extra = [e for e in induced if e not in tree and rng.random() < 0.5]
    return g.subgraph(vs, tree + extra, name="gamma")


def brute_force_wir(guest: Graph, host: Graph, k: int) -> float:
    """Minimal volume of a coarse k-wiring by exhausting vmaps and simple-path routings."""
    if guest.num_vertices == 0:
        return 0
    H = to_nx(host)
    best = math.inf
    for images in itertools.product(host.vertices, repeat=guest.num_vertices):
        if max(Counter(images).values()) > k:
            continue
        vmap = dict(zip(guest.vertices, images))
        options = []
        for u, v in guest.edges:
            a, b = vmap[u], vmap[v]
            if a == b:
                options.append([(a,)])
            elif nx.has_path(H, a, b):
                options.append([tuple(p) for p in nx.all_simple_paths(H, a, b)])
            else:
                options = None
                break
        if options is None:
            continue
        for choice in itertools.product(*options):
            load = Counter(make_edge(p[i], p[i + 1]) for p in choice for i in range(len(p) - 1))
            if load and max(load.values()) > k:
                continue
            used = set(images).union(*choice)
            best = min(best, len(used))
    return best


def random_small_graph(rng: random.Random, n: int, p: float, name: str, connected: bool = False) -> Graph:
    while True:
        vs = [f"{name}{i}" for i in range(n)]
        es = [(vs[i], vs[j]) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
        g = Graph.build(vs, es, name=name)
        if not connected or nx.is_connected(to_nx(g)):
            return g
