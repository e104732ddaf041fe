import itertools
import math
import random

import networkx as nx
import pytest

from conftest import brute_force_wir, random_connected_subgraph, random_small_graph, to_nx
from coarse_wiring.canonical import collapse_wiring, subdivision_wiring
from coarse_wiring.families import build_X, build_Y, toy_config
from coarse_wiring.graph import Graph, LadderSpec, build_ladder, girth_volume
from coarse_wiring.search import (
    SearchBudget,
    SearchLimits,
    SearchRefused,
    Status,
    _adjacency_masks,
    analytic_floor,
    connected_vertex_sets,
    enumerate_subgraphs,
    min_wiring_volume,
    wiring_profile_point,
)
from coarse_wiring.wiring import validate, volume, wiring_k

XPP = build_ladder(LadderSpec(2, 2, 2), name="Xpp")
YPP = build_ladder(LadderSpec(2, 4, 2), name="Ypp")
TRIANGLE = Graph.build("abc", [("a", "b"), ("b", "c"), ("a", "c")], name="tri")
PATH3 = Graph.build(["p0", "p1", "p2"], [("p0", "p1"), ("p1", "p2")], name="path")


def solve(g, h, k, **kw):
    return min_wiring_volume(g, h, SearchBudget(k, **kw))


def check_witness(res, k):
    assert res.status is Status.EXACT
    w = res.witness
    assert validate(w) == []
    assert wiring_k(w) <= k
    assert volume(w) == res.min_volume == res.lower_bound


def test_single_vertex():
    res = solve(Graph.build(["a"]), YPP, 1)
    check_witness(res, 1)
    assert res.min_volume == 1


def test_ladder_pair_k2_attains_counting_floor():
    res = solve(XPP, YPP, 2)
    check_witness(res, 2)
    assert res.min_volume == 5 == math.ceil(XPP.num_vertices / 2)


def test_ladder_pair_k1_capped_is_infeasible():
    res = solve(XPP, YPP, 1, volume_cap=9)
    assert res.status is Status.INFEASIBLE
    assert res.witness is None and res.min_volume == math.inf
    assert res.lower_bound == 10 == girth_volume(YPP)


def test_ladder_pair_k1_uncapped():
    res = solve(XPP, YPP, 1)
    check_witness(res, 1)
    assert res.min_volume >= 10


PLAIN = SearchLimits(cycle_space_pruning=False)


@pytest.mark.parametrize("seed", range(12))
def test_cycle_space_pruning_is_sound(seed):
    rng = random.Random(300 + seed)
    gamma = random_connected_subgraph(XPP, rng, 8)
    pruned = solve(gamma, YPP, 1)
    plain = min_wiring_volume(gamma, YPP, SearchBudget(1), PLAIN)
    assert pruned.min_volume == plain.min_volume
    assert pruned.explored <= plain.explored


def test_ladder_pair_k1_plain_exhaustion():
    plain = min_wiring_volume(XPP, YPP, SearchBudget(1), PLAIN)
    assert plain.min_volume == solve(XPP, YPP, 1).min_volume == 18


def test_analytic_floor():
    assert analytic_floor(XPP, YPP, 1) == 10
    assert analytic_floor(XPP, YPP, 2) == 5
    assert analytic_floor(TRIANGLE, PATH3, 1) == math.inf


@pytest.mark.parametrize("k, expected", [(1, math.inf), (2, 2), (3, 1)])
def test_triangle_into_path(k, expected):
    res = solve(TRIANGLE, PATH3, k)
    assert res.min_volume == expected == brute_force_wir(TRIANGLE, PATH3, k)
    if expected == math.inf:
        assert res.status is Status.INFEASIBLE and res.lower_bound == math.inf
    else:
        check_witness(res, k)


def test_triangle_into_path_capped():
    res = solve(TRIANGLE, PATH3, 1, volume_cap=2)
    assert res.status is Status.INFEASIBLE and res.lower_bound == 3


def tiny_instance(seed):
    rng = random.Random(seed)
    guest = random_small_graph(rng, rng.randint(1, 4), 0.5, "g")
    host = random_small_graph(rng, rng.randint(2, 5), 0.45, "h", connected=rng.random() < 0.8)
    return guest, host


@pytest.mark.parametrize("seed", range(40))
def test_agrees_with_brute_force(seed):
    guest, host = tiny_instance(seed)
    for k in (1, 2, 3):
        res = solve(guest, host, k)
        assert res.min_volume == brute_force_wir(guest, host, k)
        if res.status is Status.EXACT:
            check_witness(res, k)
            assert res.min_volume >= math.ceil(guest.num_vertices / k)


@pytest.mark.parametrize("seed", range(20))
def test_monotone_in_k(seed):
    rng = random.Random(1000 + seed)
    guest = random_small_graph(rng, rng.randint(2, 6), 0.45, "g")
    host = build_ladder(LadderSpec(2, rng.randint(1, 3), rng.randint(1, 2)), name="h")
    values = [solve(guest, host, k).min_volume for k in (1, 2, 3, 4)]
    assert values == sorted(values, reverse=True)


@pytest.mark.parametrize("seed", range(5))
def test_disconnected_guest_against_brute_force(seed):
    rng = random.Random(500 + seed)
    a = random_small_graph(rng, 2, 1.0, "a")
    b = random_small_graph(rng, 2, 1.0, "b")
    guest = Graph.build(a.vertices + b.vertices, a.edges + b.edges, name="g")
    host = random_small_graph(rng, 5, 0.3, "h")
    for k in (1, 2):
        assert solve(guest, host, k).min_volume == brute_force_wir(guest, host, k)


def test_deterministic_replay_and_workers():
    first = solve(XPP, YPP, 2).summary()
    assert solve(XPP, YPP, 2).summary() == first
    assert solve(XPP, YPP, 2, jobs=2).summary() == first
    capped = solve(XPP, YPP, 1, volume_cap=9)
    assert solve(XPP, YPP, 1, volume_cap=9, jobs=2).summary() == capped.summary()


def test_node_limit_exhaustion():
    res = solve(XPP, YPP, 1, node_limit=5)
    assert res.status is Status.EXHAUSTED
    assert res.witness is None
    assert 10 <= res.lower_bound <= solve(XPP, YPP, 1).min_volume


def test_refusal():
    big = build_ladder(LadderSpec(2, 40, 1))
    with pytest.raises(SearchRefused, match="limits"):
        solve(XPP, big, 2)
    # trivially infeasible instances need no search and are never refused
    assert solve(TRIANGLE, build_ladder(LadderSpec(1, 200, 1)), 1).status is Status.INFEASIBLE


def test_budget_validation():
    with pytest.raises(ValueError):
        SearchBudget(0)
    with pytest.raises(ValueError):
        SearchBudget(1, volume_cap=0)


OFFSET = toy_config(2, offset=1)


def test_offset_schedule_reproduces_ladder_pair():
    assert build_X(2, OFFSET).num_vertices == XPP.num_vertices
    assert build_Y(2, OFFSET).num_vertices == YPP.num_vertices


@pytest.mark.parametrize("seed", range(15))
def test_oracle_never_beaten_by_constructions(seed):
    rng = random.Random(seed)
    X, Y = build_X(2, OFFSET), build_Y(2, OFFSET)
    gamma = X if seed == 0 else random_connected_subgraph(X, rng, 8)
    col = collapse_wiring(gamma, 2, OFFSET, host=Y)
    sub = subdivision_wiring(gamma, 2, OFFSET, host=Y)
    assert solve(gamma, Y, wiring_k(col)).min_volume <= volume(col)
    assert solve(gamma, Y, 1).min_volume <= volume(sub)


# profile and subgraph enumeration


def naive_subgraphs(g: Graph, max_vertices: int, connected_only: bool):
    out = set()
    for size in range(1, max_vertices + 1):
        for vs in itertools.combinations(g.vertices, size):
            induced = [e for e in g.edges if e[0] in vs and e[1] in vs]
            for r in range(len(induced) + 1):
                for es in itertools.combinations(induced, r):
                    G = nx.Graph(list(es))
                    G.add_nodes_from(vs)
                    if connected_only and not nx.is_connected(G):
                        continue
                    out.add((frozenset(vs), frozenset(es)))
    return out


def as_keys(graphs):
    keys = [(frozenset(g.vertices), frozenset(g.edges)) for g in graphs]
    assert len(keys) == len(set(keys))
    return set(keys)


def test_enumerate_path_on_two_vertices():
    p2 = Graph.build(["a", "b"], [("a", "b")])
    assert len(list(enumerate_subgraphs(p2, 2))) == 3
    assert len(list(enumerate_subgraphs(p2, 2, connected_only=False))) == 4
    assert list(enumerate_subgraphs(Graph.build([]), 3)) == []


@pytest.mark.parametrize("connected_only", [True, False])
def test_enumerate_against_naive(connected_only):
    g = build_ladder(LadderSpec(2, 2, 1))
    got = as_keys(enumerate_subgraphs(g, 3, connected_only))
    assert got == naive_subgraphs(g, 3, connected_only)


@pytest.mark.parametrize("seed", range(10))
def test_connected_vertex_sets_against_networkx(seed):
    G = nx.gnp_random_graph(8, 0.35, seed=seed)
    g = Graph.build([str(v) for v in G], [(str(u), str(v)) for u, v in G.edges])
    adj = _adjacency_masks(g)
    idx = {v: i for i, v in enumerate(g.vertices)}
    for size in range(1, 6):
        got = list(connected_vertex_sets(adj, size))
        assert len(got) == len(set(got))
        expect = {
            sum(1 << idx[str(v)] for v in vs)
            for vs in itertools.combinations(G, size)
            if nx.is_connected(G.subgraph(vs))
        }
        assert set(got) == expect


def test_profile_examples():
    assert wiring_profile_point(1, 1, [Graph.build(["a"])], YPP) == (1, Graph.build(["a"]))
    value, arg = wiring_profile_point(2, 10, [XPP], YPP)
    assert value == 5 and arg is XPP
    with pytest.raises(ValueError):
        wiring_profile_point(2, 3, [XPP], YPP)


def test_profile_of_small_ladder():
    g, host = build_ladder(LadderSpec(2, 2, 1)), build_ladder(LadderSpec(2, 4, 1))
    cands = list(enumerate_subgraphs(g, 6))
    value, arg = wiring_profile_point(1, 6, cands, host)
    # only the whole 6-cycle forces a cycle in the image, and the host's only cycle has 10 vertices
    assert value == 10 == girth_volume(host)
    assert arg.num_edges == 6


def test_profile_refused_when_a_candidate_is():
    limits = SearchLimits(max_guest_vertices=2)
    with pytest.raises(SearchRefused):
        wiring_profile_point(2, 10, [XPP], YPP, limits)


def test_witness_image_is_connected_for_connected_guest():
    res = solve(XPP, YPP, 2)
    w = res.witness
    used = set(w.vmap.values()).union(*w.walks.values())
    assert nx.is_connected(to_nx(YPP).subgraph(used))
