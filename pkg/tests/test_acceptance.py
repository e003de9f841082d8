"""Acceptance suite: one test per criterion, each printing a PASS line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the per-criterion
lines. Formula-level checks pin published reference values; corpus-level
checks run on the bundled sample corpus against independent oracles.
"""

from __future__ import annotations

import hashlib
import math
import random
import shutil
import time
from itertools import combinations

import pytest

import oracles
from scimetrics.cli import main
from scimetrics.countries import bundled_data_path
from scimetrics.crediting import build_ledger
from scimetrics.indicators import cagr, cpp, gini, rgi, ricr, sicp, simpson_diversity
from scimetrics.network import (
    CountryGraph,
    betweenness,
    build_graph,
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
from test_network import graph_from, random_connected_graph


def report(criterion: int, text: str) -> None:
    print(f"\nACCEPTANCE {criterion:02d} PASS - {text}")


def timed(fn, *args):
    start = time.perf_counter()
    result = fn(*args)
    return result, time.perf_counter() - start


def test_acceptance_01_cagr_reference_value():
    cagr(951, 2773, 15)  # warm-up
    rate, elapsed = timed(cagr, 951, 2773, 15)
    assert rate * 100 == pytest.approx(7.94, abs=0.05)
    assert elapsed < 1e-3
    report(1, f"cagr(951, 2773, 15) = {rate*100:.2f}% in {elapsed*1e6:.0f} us")


def test_acceptance_02_yearly_cpp_values():
    pairs = [
        (12580, 951, 13.23), (16026, 946, 16.94), (16796, 1017, 16.52),
        (17190, 1087, 15.81), (13735, 1144, 12.01), (17642, 1197, 14.74),
        (19031, 1467, 12.97), (18627, 1466, 12.71), (17426, 1502, 11.60),
        (15082, 1365, 11.05), (16857, 2223, 7.58), (24236, 3574, 6.78),
        (17579, 3595, 4.89), (11484, 3645, 3.15), (4272, 2773, 1.54),
    ]
    cpp(1, 1)  # warm-up
    start = time.perf_counter()
    for tc, tp, printed in pairs:
        assert cpp(tc, tp) == pytest.approx(printed, abs=0.01)
    elapsed = time.perf_counter() - start
    assert elapsed < 1e-3
    report(2, f"all 15 yearly CPP values within 0.01 in {elapsed*1e6:.0f} us")


def test_acceptance_03_collaboration_shares():
    assert sicp(3789, 27252) == pytest.approx(13.90, abs=0.01)
    for icp, tp, printed in ((481, 4794, 10.03), (993, 6800, 14.60), (2315, 15658, 14.78)):
        assert sicp(icp, tp) == pytest.approx(printed, abs=0.01)
    report(3, "world SICP 13.90 and all three five-year block shares within 0.01")


def test_acceptance_04_relative_collaboration_rates():
    assert ricr(10.08, 13.90) == pytest.approx(0.73, abs=0.01)
    assert ricr(90.91, 13.90) == pytest.approx(6.54, abs=0.01)
    assert ricr(100.00, 13.90) == pytest.approx(7.19, abs=0.01)
    report(4, "RICR reproduces 0.73 / 6.54 / 7.19 within 0.01")


def test_acceptance_05_relative_growth_index():
    india = rgi(0.19, 0.0794)
    china = rgi(0.15, 0.0794)
    assert india == pytest.approx(2.39, abs=0.005)
    assert china == pytest.approx(1.89, abs=0.005)
    # the reference series prints 2.44 / 1.86, computed from unrounded inputs
    assert india == pytest.approx(2.44, abs=0.06)
    assert china == pytest.approx(1.86, abs=0.06)
    report(5, f"RGI from rounded inputs: {india:.2f} / {china:.2f}, within 0.06 of 2.44 / 1.86")


def test_acceptance_06_gini_property_suite():
    assert gini([7, 7, 7]) == 0.0
    rng = random.Random(2024)
    for _ in range(200):  # single holder: exact (n-1)/n
        n = rng.randint(2, 12)
        holder_value = float(rng.randint(1, 10**6))
        values = [0.0] * (n - 1) + [holder_value]
        rng.shuffle(values)
        assert gini(values) == (n - 1) / n
    for _ in range(200):  # scale and permutation invariance
        n = rng.randint(1, 12)
        values = [rng.randint(0, 1000) for _ in range(n)]
        if sum(values) == 0:
            values[0] = 1
        reference = gini(values)
        scaled = gini([3.7 * v for v in values])
        shuffled_vals = list(values)
        rng.shuffle(shuffled_vals)
        assert abs(scaled - reference) <= 1e-12
        assert abs(gini(shuffled_vals) - reference) <= 1e-12
    checked = 0
    for _ in range(1000):  # brute-force pairwise oracle
        n = rng.randint(1, 12)
        values = [rng.uniform(0, 100) for _ in range(n)]
        assert gini(values) == pytest.approx(oracles.oracle_gini(values), abs=1e-10)
        checked += 1
    report(6, f"gini: equality, exact single-holder, invariances, {checked} oracle vectors")


def test_acceptance_07_sid_property_suite():
    assert simpson_diversity([42]) == 0.0
    assert simpson_diversity([1] * 12) == 1.0
    rng = random.Random(31)
    for _ in range(500):  # merging two categories never increases SID
        counts = [rng.randint(1, 40) for _ in range(rng.randint(3, 12))]
        i, j = rng.sample(range(len(counts)), 2)
        merged = [c for k, c in enumerate(counts) if k not in (i, j)] + [counts[i] + counts[j]]
        assert simpson_diversity(merged) <= simpson_diversity(counts) + 1e-12
    for _ in range(500):
        counts = [rng.randint(0, 60) for _ in range(rng.randint(1, 12))]
        if sum(counts) < 2:
            counts.append(3)
        assert simpson_diversity(counts) == pytest.approx(
            oracles.oracle_simpson(counts), abs=1e-12
        )
    report(7, "SID: endpoints, 500 merge-monotonicity cases, 500 oracle vectors")


def test_acceptance_08_credit_conservation(analyzed_records, ledger):
    attributed = [r for r in analyzed_records if r.distinct_countries()]
    pub_gap = abs(sum(ledger.pub_credit.values()) - len(attributed))
    cite_gap = abs(sum(ledger.cite_credit.values()) - sum(r.citations for r in attributed))
    assert pub_gap < 1e-9 and cite_gap < 1e-9
    for seed in range(3):
        shuffled = list(analyzed_records)
        random.Random(seed).shuffle(shuffled)
        other = build_ledger(shuffled)
        assert other.pub_credit == ledger.pub_credit
        assert other.cite_credit == ledger.cite_credit
    report(8, f"conservation gaps {pub_gap:.1e}/{cite_gap:.1e}; ledger bit-identical under shuffles")


def test_acceptance_09_betweenness_oracle():
    g = graph_from([(a, b) for a, b in combinations("abcd", 2)])
    assert all(v == 0.0 for v in betweenness(g).values())
    for n in (4, 5, 7, 9):
        star = graph_from([("hub", f"s{i}") for i in range(n - 1)])
        assert betweenness(star)["hub"] == math.comb(n - 1, 2)
    rng = random.Random(90210)
    checked = 0
    while checked < 1000:
        g = random_connected_graph(rng, rng.randint(2, 8))
        expected = oracles.oracle_betweenness(g.vertices, g.edges)
        got = betweenness(g)
        for v in g.vertices:
            assert got[v] == pytest.approx(expected[v], abs=1e-9)
        checked += 1
    report(9, f"K4 zero, star hubs C(n-1,2), {checked} random graphs vs exhaustive oracle")


def test_acceptance_10_louvain_optimality():
    cliques = [(a, b) for a, b in combinations(["a1", "a2", "a3", "a4"], 2)]
    cliques += [(a, b) for a, b in combinations(["b1", "b2", "b3", "b4"], 2)]
    cliques.append(("a1", "b1"))
    g = graph_from(cliques)
    for seed in range(10):
        partition = louvain(g, seed)
        blocks = {}
        for v, c in partition.items():
            blocks.setdefault(c, set()).add(v)
        assert set(map(frozenset, blocks.values())) == {
            frozenset({"a1", "a2", "a3", "a4"}),
            frozenset({"b1", "b2", "b3", "b4"}),
        }
    rng = random.Random(451)
    checked = 0
    while checked < 200:
        g = random_connected_graph(rng, rng.randint(2, 8))
        if rng.random() < 0.5:
            g = CountryGraph(
                vertices=g.vertices, edges={e: rng.randint(1, 5) for e in g.edges}
            )
        achieved = modularity(g, louvain(g, seed=rng.randint(0, 99)))
        optimum = oracles.oracle_best_modularity(g.vertices, dict(g.edges))
        assert achieved == pytest.approx(optimum, abs=1e-9)
        checked += 1
    report(10, f"planted cliques for seeds 0..9; optimum matched on {checked} graphs <= 8 vertices")


def test_acceptance_11_layout_descends():
    pos = kamada_kawai_layout(graph_from([("a", "b")]), seed=0)
    assert math.dist(pos["a"], pos["b"]) == pytest.approx(1.0, abs=1e-3)
    tri = graph_from([("p", "q"), ("q", "r"), ("p", "r")])
    tri_pos = kamada_kawai_layout(tri, seed=9)
    dists = [math.dist(tri_pos[a], tri_pos[b]) for a, b in [("p", "q"), ("q", "r"), ("p", "r")]]
    assert (max(dists) - min(dists)) / max(dists) <= 0.01
    rng = random.Random(11)
    for run in range(100):
        g = random_connected_graph(rng, rng.randint(2, 20))
        seed = rng.randint(0, 10**6)
        s_initial = stress(g, initial_positions(g, seed))
        s_final = stress(g, kamada_kawai_layout(g, seed=seed))
        assert s_final <= s_initial + 1e-12
    report(11, "2-vertex rest length, triangle spread <= 1%, stress descent on 100 runs")


def test_acceptance_12_network_interchange(analyzed_records, tmp_path):
    g = filter_by_degree(build_graph(analyzed_records), 6)
    g.betweenness = betweenness(g)
    g.community = louvain(g, 0)
    g.position = fit_unit_square(kamada_kawai_layout(g, seed=0))
    first = tmp_path / "first.net"
    first.write_text(render_pajek(g), encoding="utf-8", newline="\n")
    reparsed = parse_pajek(first)
    assert render_pajek(reparsed).encode() == first.read_bytes()

    import xml.etree.ElementTree as ET

    root = ET.fromstring(render_graphml(g))
    ns = {"g": "http://graphml.graphdrawing.org/xmlns"}
    declared = {k.get("id"): k.get("for") for k in root.findall("g:key", ns)}
    graph_el = root.find("g:graph", ns)
    nodes = set()
    for node in graph_el.findall("g:node", ns):
        nodes.add(node.get("id"))
        assert all(declared[d.get("key")] == "node" for d in node.findall("g:data", ns))
    for edge in graph_el.findall("g:edge", ns):
        assert edge.get("source") in nodes and edge.get("target") in nodes
        assert all(declared[d.get("key")] == "edge" for d in edge.findall("g:data", ns))
    report(12, "Pajek export->parse->export byte-identical; GraphML schema-consistent")


def test_acceptance_13_end_to_end_determinism(tmp_path):
    out = tmp_path / "bundle"
    args = [
        "analyze",
        "--corpus", str(bundled_data_path("sample_corpus.csv")),
        "--rules", str(bundled_data_path("sample_rules.txt")),
        "--scheme", f"regions={bundled_data_path('regions.csv')}",
        "--scheme", f"income={bundled_data_path('income.csv')}",
        "--scheme", f"unasur={bundled_data_path('group_unasur.csv')}",
        "--scheme", f"asean={bundled_data_path('group_asean.csv')}",
        "--scheme", f"d8={bundled_data_path('group_d8.csv')}",
        "--scheme", f"eagles={bundled_data_path('group_eagles.csv')}",
        "--top-threshold", "5",
        "--seed", "42",
        "--out", str(out),
    ]
    assert main(args) == 0
    first = {p.name: hashlib.sha256(p.read_bytes()).hexdigest() for p in out.iterdir()}
    shutil.rmtree(out)
    start = time.perf_counter()
    assert main(args) == 0
    elapsed = time.perf_counter() - start
    second = {p.name: hashlib.sha256(p.read_bytes()).hexdigest() for p in out.iterdir()}
    assert first == second
    assert elapsed < 5.0
    report(13, f"two identical runs byte-identical ({len(first)} files); pipeline {elapsed:.2f}s")
