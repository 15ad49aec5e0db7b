"""Plain-text graph files, the three reference fixtures, and DOT export.

File format (ASCII, one item per line)::

    # comment
    nodes 3
    A 1 2
    B 0 1

Blank lines and ``#`` comments are ignored anywhere.  The ``nodes`` header
comes before any edge line.  Repeated edge lines are harmless.
"""

from __future__ import annotations

import re

from .relation import COLORS, MAX_NODES, TriGraph


_NUM = re.compile(r"[0-9]+")


class GraphParseError(ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


def parse_graph(text: str) -> TriGraph:
    n = None
    edges: dict[str, set] = {tag: set() for tag in COLORS}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "nodes":
            if n is not None:
                raise GraphParseError(lineno, "duplicate nodes header")
            if len(parts) != 2 or not _NUM.fullmatch(parts[1]):
                raise GraphParseError(lineno, "expected 'nodes <n>'")
            n = int(parts[1])
            if n > MAX_NODES:
                raise GraphParseError(lineno, f"at most {MAX_NODES} nodes supported")
            continue
        if n is None:
            raise GraphParseError(lineno, "edge line before the nodes header")
        if len(parts) != 3:
            raise GraphParseError(lineno, "expected '<color> <u> <v>'")
        tag, u, v = parts
        if tag not in COLORS:
            raise GraphParseError(lineno, f"unknown color {tag!r}")
        if not (_NUM.fullmatch(u) and _NUM.fullmatch(v)):
            raise GraphParseError(lineno, "node ids must be non-negative integers")
        u, v = int(u), int(v)
        if u >= n or v >= n:
            raise GraphParseError(lineno, f"node out of range 0..{n - 1}")
        edges[tag].add((u, v))
    if n is None:
        raise GraphParseError(max(1, len(text.splitlines())), "missing nodes header")
    return TriGraph.from_edges(n, edges["A"], edges["B"], edges["C"])


def format_graph(g: TriGraph, comment: str | None = None) -> str:
    lines = []
    if comment:
        lines.extend(f"# {c}" for c in comment.splitlines())
    lines.append(f"nodes {g.n}")
    lines.extend(f"{s.color} {s.src} {s.dst}" for s in g.edges())
    return "\n".join(lines) + "\n"


FIXTURES = {
    "G1": TriGraph.from_edges(4, a=[(1, 3)], b=[(0, 1), (3, 0), (2, 3)], c=[(0, 3), (1, 2)]),
    "G2": TriGraph.from_edges(3, a=[(1, 2)], b=[(0, 1), (2, 0)], c=[(0, 2)]),
    "G3": TriGraph.from_edges(3, a=[(1, 2), (2, 0)], b=[(0, 1)], c=[(0, 2)]),
}

FIXTURE_CRITERIA = {"G1": "F1", "G2": "F2", "G3": "F3"}


def fixture_text(name: str) -> str:
    return format_graph(FIXTURES[name])


# A solid, B dotted, C dashed; colors follow the usual azure/black/crimson.
EDGE_STYLE = {
    "A": ("solid", "azure4"),
    "B": ("dotted", "black"),
    "C": ("dashed", "crimson"),
}


def to_dot(g: TriGraph, name: str = "G") -> str:
    out = [f"digraph {name} {{", "  node [shape=circle];"]
    out.extend(f"  {x};" for x in range(g.n))
    for s in g.edges():
        style, color = EDGE_STYLE[s.color]
        out.append(f'  {s.src} -> {s.dst} [style={style}, color={color}, label="{s.color}"];')
    out.append("}")
    return "\n".join(out) + "\n"
