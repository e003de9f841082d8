"""Network file export/import: Pajek .net (bit-exact), GraphML, DOT."""

from __future__ import annotations

import re
from pathlib import Path
from xml.sax.saxutils import escape, quoteattr

from .graph import CountryGraph

FORMATS = ("pajek", "graphml", "dot")


class IoFailure(Exception):
    pass


def render_pajek(graph: CountryGraph) -> str:
    """Frozen layout: 1-based ids in sorted-vertex order, coordinates to 6 dp.

    Line 1: ``*Vertices N``; then one ``<id> "<label>" [<x> <y>]`` per vertex;
    then ``*Edges``; then ``<i> <j> <w>`` with i < j, sorted by (i, j); LF ends.
    """
    index = {v: i + 1 for i, v in enumerate(graph.vertices)}
    lines = [f"*Vertices {graph.n_vertices}"]
    for v in graph.vertices:
        if graph.position and v in graph.position:
            x, y = graph.position[v]
            lines.append(f'{index[v]} "{v}" {x:.6f} {y:.6f}')
        else:
            lines.append(f'{index[v]} "{v}"')
    lines.append("*Edges")
    for (a, b), w in sorted(graph.edges.items(), key=lambda kv: (index[kv[0][0]], index[kv[0][1]])):
        lines.append(f"{index[a]} {index[b]} {w}")
    return "\n".join(lines) + "\n"


_VERTEX_RE = re.compile(
    r'^(\d+)\s+"([^"]*)"(?:\s+(-?\d+(?:\.\d+)?)\s+(-?\d+(?:\.\d+)?))?\s*$'
)


def parse_pajek(path: str | Path) -> CountryGraph:
    """Read a .net file written by :func:`render_pajek` (or compatible)."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise IoFailure(str(exc)) from exc
    lines = text.splitlines()
    if not lines or not lines[0].lower().startswith("*vertices"):
        raise IoFailure(f"{path}: missing *Vertices header")
    try:
        n = int(lines[0].split()[1])
    except (IndexError, ValueError) as exc:
        raise IoFailure(f"{path}: bad *Vertices header {lines[0]!r}") from exc
    labels: dict[int, str] = {}
    position: dict[str, tuple[float, float]] = {}
    cursor = 1
    for _ in range(n):
        if cursor >= len(lines):
            raise IoFailure(f"{path}: truncated vertex section")
        match = _VERTEX_RE.match(lines[cursor])
        if not match:
            raise IoFailure(f"{path}: bad vertex line {lines[cursor]!r}")
        vid, label, x, y = match.groups()
        labels[int(vid)] = label
        if x is not None:
            position[label] = (float(x), float(y))
        cursor += 1
    if cursor >= len(lines) or lines[cursor].lower() != "*edges":
        raise IoFailure(f"{path}: missing *Edges header")
    cursor += 1
    edges: dict[tuple[str, str], int] = {}
    for line in lines[cursor:]:
        if not line.strip():
            continue
        parts = line.split()
        if len(parts) != 3:
            raise IoFailure(f"{path}: bad edge line {line!r}")
        try:
            i, j, w = int(parts[0]), int(parts[1]), int(parts[2])
        except ValueError as exc:
            raise IoFailure(f"{path}: bad edge line {line!r}") from exc
        a, b = labels[i], labels[j]
        key = (a, b) if a < b else (b, a)
        edges[key] = w
    return CountryGraph(
        vertices=tuple(sorted(labels.values())), edges=edges, position=position
    )


def render_graphml(graph: CountryGraph) -> str:
    keys = []
    if graph.betweenness:
        keys.append(('betweenness', "node", "double"))
    if graph.community:
        keys.append(("community", "node", "int"))
    if graph.position:
        keys.append(("x", "node", "double"))
        keys.append(("y", "node", "double"))
    keys.append(("weight", "edge", "int"))
    out = ['<?xml version="1.0" encoding="UTF-8"?>']
    out.append('<graphml xmlns="http://graphml.graphdrawing.org/xmlns">')
    for name, domain, kind in keys:
        out.append(
            f'  <key id="{name}" for="{domain}" attr.name="{name}" attr.type="{kind}"/>'
        )
    out.append('  <graph id="G" edgedefault="undirected">')
    for v in graph.vertices:
        data = []
        if graph.betweenness and v in graph.betweenness:
            data.append(f'<data key="betweenness">{graph.betweenness[v]!r}</data>')
        if graph.community and v in graph.community:
            data.append(f'<data key="community">{graph.community[v]}</data>')
        if graph.position and v in graph.position:
            x, y = graph.position[v]
            data.append(f'<data key="x">{x:.6f}</data>')
            data.append(f'<data key="y">{y:.6f}</data>')
        if data:
            out.append(f"    <node id={quoteattr(v)}>" + "".join(data) + "</node>")
        else:
            out.append(f"    <node id={quoteattr(v)}/>")
    for (a, b), w in sorted(graph.edges.items()):
        out.append(
            f"    <edge source={quoteattr(a)} target={quoteattr(b)}>"
            f'<data key="weight">{w}</data></edge>'
        )
    out.append("  </graph>")
    out.append("</graphml>")
    return "\n".join(out) + "\n"


def render_dot(graph: CountryGraph) -> str:
    out = ["graph countries {"]
    for v in graph.vertices:
        attrs = []
        if graph.betweenness and v in graph.betweenness:
            attrs.append(f"betweenness={graph.betweenness[v]!r}")
        if graph.community and v in graph.community:
            attrs.append(f"community={graph.community[v]}")
        rendered = f" [{', '.join(attrs)}]" if attrs else ""
        out.append(f'  "{escape(v)}"{rendered};')
    for (a, b), w in sorted(graph.edges.items()):
        out.append(f'  "{escape(a)}" -- "{escape(b)}" [weight={w}];')
    out.append("}")
    return "\n".join(out) + "\n"


def export_network(graph: CountryGraph, format: str, path: str | Path) -> None:
    """Write the graph in one of FORMATS; attributes travel where the format allows."""
    if format not in FORMATS:
        raise ValueError(f"unknown format {format!r}, expected one of {FORMATS}")
    renderers = {"pajek": render_pajek, "graphml": render_graphml, "dot": render_dot}
    try:
        Path(path).write_text(renderers[format](graph), encoding="utf-8", newline="\n")
    except OSError as exc:
        raise IoFailure(str(exc)) from exc
