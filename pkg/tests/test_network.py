from __future__ import annotations

import math
import random
from itertools import combinations

import pytest

import oracles
from conftest import golden
from scimetrics.network import (
    CountryGraph,
    IoFailure,
    NonPositiveIterations,
    betweenness,
    build_graph,
    export_network,
    filter_by_degree,
    fit_unit_square,
    initial_positions,
    kamada_kawai_layout,
    louvain,
    modularity,
    parse_pajek,
    render_graphml,
    render_pajek,
    stress,
)
from test_crediting import record


def graph_from(edges, extra_vertices=()):
    weights = {}
    vertices = set(extra_vertices)
    for e in edges:
        pair = tuple(sorted(e[:2]))
        weights[pair] = e[2] if len(e) > 2 else 1
        vertices.update(pair)
    return CountryGraph(vertices=tuple(sorted(vertices)), edges=weights)


def random_connected_graph(rng, n):
    vertices = [f"v{i:02d}" for i in range(n)]
    edges = set()
    shuffled = vertices[1:]
    rng.shuffle(shuffled)
    connected = [vertices[0]]
    for v in shuffled:  # random spanning tree
        edges.add(tuple(sorted((v, rng.choice(connected)))))
        connected.append(v)
    for a, b in combinations(vertices, 2):
        if rng.random() < 0.25:
            edges.add((a, b))
    return graph_from(edges)


# --- construction -----------------------------------------------------------

def test_build_graph_triple():
    g = build_graph([record("P1", ["CN", "US", "DE"])])
    assert g.edges == {("CN", "DE"): 1, ("CN", "US"): 1, ("DE", "US"): 1}


def test_build_graph_accumulates_weights():
    g = build_graph([record("P1", ["CN", "US"]), record("P2", ["US", "CN"])])
    assert g.edges == {("CN", "US"): 2}


def test_build_graph_keeps_single_country_vertices():
    g = build_graph([record("P1", ["JP"]), record("P2", ["CN", "US"])])
    assert g.vertices == ("CN", "JP", "US")
    assert g.degree("JP") == 0


def test_build_graph_duplicate_country_authors_no_self_loop():
    g = build_graph([record("P1", ["CN", "CN"])])
    assert g.edges == {}


def test_build_graph_matches_golden_edges(analyzed_records):
    g = build_graph(analyzed_records)
    expected = {}
    for line in golden("edges.csv").splitlines()[1:]:
        a, b, w = line.split(",")
        expected[(a, b)] = int(w)
    assert g.edges == expected


def test_edge_weight_total_is_pair_count(analyzed_records):
    g = build_graph(analyzed_records)
    expected = sum(
        math.comb(len(r.distinct_countries()), 2) for r in analyzed_records
    )
    assert sum(g.edges.values()) == expected


# --- degree filter -----------------------------------------------------------

def test_filter_star_keeps_only_hub():
    g = graph_from([("hub", f"s{i}") for i in range(5)])
    filtered = filter_by_degree(g, 2)
    assert filtered.vertices == ("hub",)
    assert filtered.edges == {}


def test_filter_zero_is_identity(analyzed_records):
    g = build_graph(analyzed_records)
    filtered = filter_by_degree(g, 0)
    assert filtered.vertices == g.vertices
    assert filtered.edges == g.edges


def test_filter_triangle_with_pendant():
    g = graph_from([("a", "b"), ("b", "c"), ("a", "c"), ("c", "d")])
    filtered = filter_by_degree(g, 2)
    assert filtered.vertices == ("a", "b", "c")
    assert set(filtered.edges) == {("a", "b"), ("a", "c"), ("b", "c")}


def test_filter_monotone(analyzed_records):
    g = build_graph(analyzed_records)
    previous = set(g.vertices)
    for threshold in range(0, 15):
        current = set(filter_by_degree(g, threshold).vertices)
        assert current <= previous
        previous = current


# --- betweenness -------------------------------------------------------------

def test_betweenness_path():
    assert betweenness(graph_from([("a", "b"), ("b", "c")])) == {"a": 0.0, "b": 1.0, "c": 0.0}


def test_betweenness_k4_all_zero():
    g = graph_from([(a, b) for a, b in combinations("abcd", 2)])
    assert all(v == 0.0 for v in betweenness(g).values())


def test_betweenness_star_hub():
    g = graph_from([("hub", f"s{i}") for i in range(4)])
    scores = betweenness(g)
    assert scores["hub"] == 6.0  # C(4,2) pairs route through the hub
    assert all(scores[f"s{i}"] == 0.0 for i in range(4))


def test_betweenness_disconnected_components():
    g = graph_from([("a", "b"), ("b", "c"), ("x", "y")])
    scores = betweenness(g)
    assert scores == {"a": 0.0, "b": 1.0, "c": 0.0, "x": 0.0, "y": 0.0}


def test_betweenness_matches_bruteforce_on_random_graphs():
    rng = random.Random(1234)
    for _ in range(150):
        g = random_connected_graph(rng, rng.randint(2, 8))
        expected = oracles.oracle_betweenness(g.vertices, g.edges)
        got = betweenness(g)
        for v in g.vertices:
            assert got[v] == pytest.approx(expected[v], abs=1e-9)


# --- louvain ------------------------------------------------------------------

def two_cliques_bridge():
    edges = [(a, b) for a, b in combinations(["a1", "a2", "a3", "a4"], 2)]
    edges += [(a, b) for a, b in combinations(["b1", "b2", "b3", "b4"], 2)]
    edges.append(("a1", "b1"))
    return graph_from(edges)


def test_louvain_separates_planted_cliques_every_seed():
    g = two_cliques_bridge()
    for seed in range(10):
        partition = louvain(g, seed)
        blocks = {}
        for v, c in partition.items():
            blocks.setdefault(c, set()).add(v)
        assert set(map(frozenset, blocks.values())) == {
            frozenset({"a1", "a2", "a3", "a4"}),
            frozenset({"b1", "b2", "b3", "b4"}),
        }


def test_louvain_single_edge_one_community():
    partition = louvain(graph_from([("x", "y", 3)]), 0)
    assert partition["x"] == partition["y"] == 0


def test_louvain_no_edges_all_singletons():
    g = CountryGraph(vertices=("a", "b", "c"), edges={})
    assert louvain(g, 0) == {"a": 0, "b": 1, "c": 2}


def test_louvain_ids_canonical_and_stable():
    g = two_cliques_bridge()
    partition = louvain(g, 3)
    assert partition["a1"] == 0  # community holding the smallest label gets id 0
    assert partition["b1"] == 1


def test_louvain_reaches_exhaustive_optimum_on_small_graphs():
    rng = random.Random(777)
    for _ in range(40):
        g = random_connected_graph(rng, rng.randint(2, 7))
        partition = louvain(g, 0)
        got = modularity(g, partition)
        best = oracles.oracle_best_modularity(g.vertices, dict(g.edges))
        assert got == pytest.approx(best, abs=1e-9)


def test_modularity_merged_not_worse_than_singletons(analyzed_records):
    g = filter_by_degree(build_graph(analyzed_records), 6)
    partition = louvain(g, 0)
    singletons = {v: i for i, v in enumerate(g.vertices)}
    assert modularity(g, partition) >= modularity(g, singletons)


# --- layout -------------------------------------------------------------------

def test_layout_rejects_nonpositive_iterations():
    with pytest.raises(NonPositiveIterations):
        kamada_kawai_layout(graph_from([("a", "b")]), seed=0, max_iter=0)


def test_layout_two_vertices_rest_at_spring_length():
    pos = kamada_kawai_layout(graph_from([("a", "b")]), seed=0)
    assert math.dist(pos["a"], pos["b"]) == pytest.approx(1.0, abs=1e-3)


def test_layout_triangle_symmetric():
    g = graph_from([("p", "q"), ("q", "r"), ("p", "r")])
    pos = kamada_kawai_layout(g, seed=5)
    distances = [math.dist(pos[a], pos[b]) for a, b in [("p", "q"), ("q", "r"), ("p", "r")]]
    spread = (max(distances) - min(distances)) / max(distances)
    assert spread <= 0.01


def test_layout_path_descends():
    g = graph_from([("a", "b"), ("b", "c"), ("c", "d")])
    s0 = stress(g, initial_positions(g, seed=2))
    s1 = stress(g, kamada_kawai_layout(g, seed=2))
    assert s1 < s0


def test_layout_packs_disconnected_components():
    g = graph_from([("a", "b"), ("x", "y")])
    pos = kamada_kawai_layout(g, seed=0)
    assert len(pos) == 4
    lhs = {pos["a"][0], pos["b"][0]}
    rhs = {pos["x"][0], pos["y"][0]}
    assert max(lhs) < min(rhs)  # second component shifted right


def test_fit_unit_square_bounds(analyzed_records):
    g = filter_by_degree(build_graph(analyzed_records), 8)
    pos = fit_unit_square(kamada_kawai_layout(g, seed=1))
    xs = [p[0] for p in pos.values()]
    ys = [p[1] for p in pos.values()]
    assert min(xs) >= -1e-12 and max(xs) <= 1 + 1e-12
    assert min(ys) >= -1e-12 and max(ys) <= 1 + 1e-12
    assert max(max(xs) - min(xs), max(ys) - min(ys)) == pytest.approx(1.0)


# --- interchange formats -------------------------------------------------------

def test_pajek_exact_bytes():
    g = CountryGraph(
        vertices=("CN", "US"),
        edges={("CN", "US"): 3},
        position={"CN": (0.25, 0.5), "US": (0.75, 0.5)},
    )
    assert render_pajek(g) == (
        "*Vertices 2\n"
        '1 "CN" 0.250000 0.500000\n'
        '2 "US" 0.750000 0.500000\n'
        "*Edges\n"
        "1 2 3\n"
    )


def test_pajek_round_trip_byte_identical(tmp_path, analyzed_records):
    g = filter_by_degree(build_graph(analyzed_records), 6)
    g.position = fit_unit_square(kamada_kawai_layout(g, seed=0))
    first = tmp_path / "first.net"
    export_network(g, "pajek", first)
    parsed = parse_pajek(first)
    second = tmp_path / "second.net"
    export_network(parsed, "pajek", second)
    assert first.read_bytes() == second.read_bytes()


def test_pajek_parse_rejects_garbage(tmp_path):
    bad = tmp_path / "bad.net"
    bad.write_text("*Vertices 1\nnot-a-vertex\n*Edges\n", encoding="utf-8")
    with pytest.raises(IoFailure):
        parse_pajek(bad)


def test_graphml_is_schema_consistent(analyzed_records):
    import xml.etree.ElementTree as ET

    g = filter_by_degree(build_graph(analyzed_records), 6)
    g.betweenness = betweenness(g)
    g.community = louvain(g, 0)
    g.position = fit_unit_square(kamada_kawai_layout(g, seed=0))
    root = ET.fromstring(render_graphml(g))
    ns = {"g": "http://graphml.graphdrawing.org/xmlns"}
    declared = {k.get("id"): k.get("for") for k in root.findall("g:key", ns)}
    assert set(declared) == {"betweenness", "community", "x", "y", "weight"}
    graph_el = root.find("g:graph", ns)
    assert graph_el.get("edgedefault") == "undirected"
    node_ids = set()
    for node in graph_el.findall("g:node", ns):
        node_ids.add(node.get("id"))
        for data in node.findall("g:data", ns):
            assert declared[data.get("key")] == "node"
    assert node_ids == set(g.vertices)
    for edge in graph_el.findall("g:edge", ns):
        assert edge.get("source") in node_ids
        assert edge.get("target") in node_ids
        for data in edge.findall("g:data", ns):
            assert declared[data.get("key")] == "edge"


def test_dot_export(tmp_path):
    g = graph_from([("CN", "US", 3)])
    out = tmp_path / "net.dot"
    export_network(g, "dot", out)
    text = out.read_text()
    assert '"CN" -- "US" [weight=3];' in text
    assert text.startswith("graph countries {")
