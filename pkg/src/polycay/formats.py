"""Instance text formats (1-based in files, 0-based in memory).

    poset format:  header `poset <d>`, then lines `<i> < <j>` (cover
                   relations; the parser closes them transitively).
    graph format:  header `graph <d>`, then lines `<i> <j>` (edges).
    vrep format:   header `vrep <D> <n>`, then n lines of D integers.

Blank lines are allowed; everything else is an error with a line number.
"""

from __future__ import annotations

from .errors import InvariantError, ParseError
from .geometry import LatticePolytope
from .graphs import Graph, graph_from_edges
from .posets import Poset, poset_from_relations


def _lines(text: str):
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line:
            yield no, line


def _header(items, expected: str, n_fields: int):
    try:
        no, line = next(items)
    except StopIteration:
        raise ParseError("empty file") from None
    fields = line.split()
    if fields[0] != expected:
        raise ParseError(f"expected header {expected!r}, got {fields[0]!r}", line=no)
    if len(fields) != n_fields + 1:
        raise ParseError(f"header needs {n_fields} integer field(s)", line=no)
    try:
        values = [int(f) for f in fields[1:]]
    except ValueError:
        raise ParseError("non-integer header field", line=no) from None
    if any(v < 0 for v in values):
        raise ParseError("negative header field", line=no)
    return values


def parse_poset(text: str) -> Poset:
    items = _lines(text)
    (d,) = _header(items, "poset", 1)
    pairs = []
    for no, line in items:
        fields = line.split()
        if len(fields) != 3 or fields[1] != "<":
            raise ParseError("expected `i < j`", line=no)
        try:
            i, j = int(fields[0]), int(fields[2])
        except ValueError:
            raise ParseError("non-integer element", line=no) from None
        if not (1 <= i <= d and 1 <= j <= d):
            raise ParseError(f"element outside 1..{d}", line=no)
        pairs.append((i - 1, j - 1))
    try:
        return poset_from_relations(d, pairs)
    except InvariantError as exc:
        raise ParseError(str(exc)) from exc


def parse_graph(text: str) -> Graph:
    items = _lines(text)
    (d,) = _header(items, "graph", 1)
    edges = []
    for no, line in items:
        fields = line.split()
        if len(fields) != 2:
            raise ParseError("expected `i j`", line=no)
        try:
            i, j = int(fields[0]), int(fields[1])
        except ValueError:
            raise ParseError("non-integer vertex", line=no) from None
        if not (1 <= i <= d and 1 <= j <= d):
            raise ParseError(f"vertex outside 1..{d}", line=no)
        if i == j:
            raise ParseError(f"loop at vertex {i}", line=no)
        edges.append((i - 1, j - 1))
    return graph_from_edges(d, edges)


def parse_vrep(text: str) -> LatticePolytope:
    items = _lines(text)
    dim, n = _header(items, "vrep", 2)
    points = []
    for no, line in items:
        fields = line.split()
        if len(fields) != dim:
            raise ParseError(f"expected {dim} integers", line=no)
        try:
            points.append(tuple(int(f) for f in fields))
        except ValueError:
            raise ParseError("non-integer coordinate", line=no) from None
    if len(points) != n:
        raise ParseError(f"header announced {n} points, found {len(points)}")
    if not points:
        raise ParseError("vrep needs at least one point")
    return LatticePolytope(points)


def serialize_poset(p: Poset) -> str:
    lines = [f"poset {p.d}"]
    lines += [f"{i + 1} < {j + 1}" for i, j in p.relations]
    return "\n".join(lines) + "\n"


def serialize_graph(g: Graph) -> str:
    lines = [f"graph {g.d}"]
    lines += [f"{i + 1} {j + 1}" for i, j in g.edges]
    return "\n".join(lines) + "\n"


def serialize_vrep(p: LatticePolytope) -> str:
    lines = [f"vrep {p.dim} {len(p.generators)}"]
    lines += [" ".join(str(x) for x in g) for g in p.generators]
    return "\n".join(lines) + "\n"


_PARSERS = {"poset": parse_poset, "graph": parse_graph, "vrep": parse_vrep}


def read_instance(path: str, kind: str):
    """Parse and validate a poset/graph/vrep file."""
    if kind not in _PARSERS:
        raise ValueError(f"unknown instance kind {kind!r}")
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    return _PARSERS[kind](text)
