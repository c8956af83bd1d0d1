"""Base graph model: labeled graph, schema derivation and filter primitives.

A :class:`LabeledGraph` is a directed graph whose vertices each carry exactly
one label. It is built once by :func:`ingest_graph` and frozen afterwards;
every other module only reads from it, so the adjacency and label indexes are
precomputed here.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .errors import DuplicateNodeId, ParseError, UnknownEndpoint, UnknownLabel, UnknownVertex

VertexId = str
Label = str
Edge = tuple[VertexId, VertexId]


class LabeledGraph:
    """Immutable directed vertex-labeled graph.

    Instances should be produced through :func:`ingest_graph`, which validates
    the input and drops self-loops and duplicate edges. After construction the
    graph must not be mutated; all readers may share it freely.
    """

    __slots__ = (
        "vertices",
        "edges",
        "labels",
        "label_of",
        "dropped_self_loops",
        "dropped_duplicate_edges",
        "_out",
        "_in",
        "_by_label",
        "_schema_cache",
    )

    def __init__(
        self,
        vertices: frozenset[VertexId],
        edges: frozenset[Edge],
        labels: frozenset[Label],
        label_of: dict[VertexId, Label],
        dropped_self_loops: int = 0,
        dropped_duplicate_edges: int = 0,
    ):
        self.vertices = vertices
        self.edges = edges
        self.labels = labels
        self.label_of = label_of
        self.dropped_self_loops = dropped_self_loops
        self.dropped_duplicate_edges = dropped_duplicate_edges

        out: dict[VertexId, list[VertexId]] = {v: [] for v in vertices}
        inc: dict[VertexId, list[VertexId]] = {v: [] for v in vertices}
        for u, v in edges:
            out[u].append(v)
            inc[v].append(u)
        self._out = {v: tuple(sorted(ws)) for v, ws in out.items()}
        self._in = {v: tuple(sorted(ws)) for v, ws in inc.items()}

        by_label: dict[Label, list[VertexId]] = {l: [] for l in labels}
        for v in vertices:
            by_label[label_of[v]].append(v)
        self._by_label = {l: tuple(sorted(vs)) for l, vs in by_label.items()}
        self._schema_cache: "SchemaGraph | None" = None

    def out_neighbors(self, v: VertexId) -> tuple[VertexId, ...]:
        return self._out[v]

    def in_neighbors(self, v: VertexId) -> tuple[VertexId, ...]:
        return self._in[v]

    def vertices_with_label(self, label: Label) -> tuple[VertexId, ...]:
        """All vertices carrying ``label``, sorted. Unused labels yield ()."""
        return self._by_label.get(label, ())

    def has_edge(self, u: VertexId, v: VertexId) -> bool:
        return (u, v) in self.edges

    def schema(self) -> "SchemaGraph":
        """Cached :func:`derive_schema` result (the graph is frozen)."""
        if self._schema_cache is None:
            self._schema_cache = derive_schema(self)
        return self._schema_cache

    def __repr__(self) -> str:  # pragma: no cover
        return (
            f"LabeledGraph(|V|={len(self.vertices)}, |E|={len(self.edges)}, "
            f"|L|={len(self.labels)})"
        )


@dataclass(frozen=True)
class SchemaGraph:
    """Reachability graph over labels: edge (l1,l2) iff some data edge joins
    an l1-vertex to an l2-vertex."""

    labels: frozenset[Label]
    edges: frozenset[tuple[Label, Label]]

    def successors(self, label: Label) -> list[Label]:
        return sorted(l2 for (l1, l2) in self.edges if l1 == label)

    def undirected_neighbors(self, label: Label) -> list[Label]:
        out = {l2 for (l1, l2) in self.edges if l1 == label}
        out.update(l1 for (l1, l2) in self.edges if l2 == label)
        return sorted(out)


@dataclass(frozen=True)
class Filter:
    """A user selection: a set of data vertices constraining matches."""

    members: frozenset[VertexId] = field(default_factory=frozenset)

    @classmethod
    def of(cls, g: LabeledGraph, ids: Iterable[VertexId]) -> "Filter":
        members = frozenset(ids)
        missing = members - g.vertices
        if missing:
            raise UnknownVertex(f"filter references unknown vertices: {sorted(missing)}")
        return cls(members)

    def __bool__(self) -> bool:
        return bool(self.members)

    def __iter__(self) -> Iterator[VertexId]:
        return iter(self.members)


EMPTY_FILTER = Filter()


def ingest_graph(
    nodes: Sequence[tuple[VertexId, Label]],
    edges: Sequence[Edge],
    labels: Iterable[Label] | None = None,
) -> LabeledGraph:
    """Build a frozen :class:`LabeledGraph` from node and edge sequences.

    Node ids must be unique and every edge endpoint must appear among the
    nodes. Self-loops and duplicate edges are dropped (counted on the result).
    ``labels`` may declare extra labels beyond those used by nodes; the label
    set of the graph is the union.
    """
    label_of: dict[VertexId, Label] = {}
    for vid, label in nodes:
        if vid in label_of:
            raise DuplicateNodeId(f"duplicate node id: {vid}")
        label_of[vid] = label

    vertex_set = frozenset(label_of)
    kept: set[Edge] = set()
    self_loops = 0
    duplicates = 0
    for u, v in edges:
        if u not in vertex_set:
            raise UnknownEndpoint(f"edge ({u}, {v}) references unknown node {u}")
        if v not in vertex_set:
            raise UnknownEndpoint(f"edge ({u}, {v}) references unknown node {v}")
        if u == v:
            self_loops += 1
            continue
        if (u, v) in kept:
            duplicates += 1
            continue
        kept.add((u, v))

    label_set = set(label_of.values())
    if labels is not None:
        label_set.update(labels)

    return LabeledGraph(
        vertices=vertex_set,
        edges=frozenset(kept),
        labels=frozenset(label_set),
        label_of=label_of,
        dropped_self_loops=self_loops,
        dropped_duplicate_edges=duplicates,
    )


def derive_schema(g: LabeledGraph) -> SchemaGraph:
    """Scan all edges and collect the label pairs they realize."""
    schema_edges = frozenset((g.label_of[u], g.label_of[v]) for (u, v) in g.edges)
    return SchemaGraph(labels=g.labels, edges=schema_edges)


def filter_labels(g: LabeledGraph, f: Filter) -> set[Label]:
    """Labels occurring among the filter's members (the set L_F)."""
    return {g.label_of[v] for v in f.members}


def restrict_filter(g: LabeledGraph, f: Filter, sub_labels: set[Label]) -> set[VertexId]:
    """Members of ``f`` whose label lies in ``sub_labels`` (the set F restricted)."""
    unknown = set(sub_labels) - g.labels
    if unknown:
        raise UnknownLabel(f"labels not in schema: {sorted(unknown)}")
    return {v for v in f.members if g.label_of[v] in sub_labels}


# --- ingestion text format ---------------------------------------------------
#
# Line-oriented: `N <id> <label>` declares a node, `E <src> <dst>` an edge,
# `#` starts a comment. Node lines must precede edge lines referencing them.


def parse_graph_text(text: str) -> LabeledGraph:
    """Parse the line-oriented ingestion format and freeze the graph."""
    nodes: list[tuple[VertexId, Label]] = []
    edges: list[Edge] = []
    seen: set[VertexId] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        kind = parts[0]
        if kind == "N":
            if len(parts) != 3:
                raise ParseError("expected `N <id> <label>`", lineno)
            _, vid, label = parts
            if vid in seen:
                raise ParseError(f"duplicate node id: {vid}", lineno)
            seen.add(vid)
            nodes.append((vid, label))
        elif kind == "E":
            if len(parts) != 3:
                raise ParseError("expected `E <src-id> <dst-id>`", lineno)
            _, src, dst = parts
            if src not in seen:
                raise ParseError(f"edge references undeclared node: {src}", lineno)
            if dst not in seen:
                raise ParseError(f"edge references undeclared node: {dst}", lineno)
            edges.append((src, dst))
        else:
            raise ParseError(f"unknown record type: {kind!r}", lineno)
    return ingest_graph(nodes, edges)


def graph_to_text(g: LabeledGraph) -> str:
    """Serialize a graph back to the ingestion format (sorted, stable)."""
    lines = [f"N {v} {g.label_of[v]}" for v in sorted(g.vertices)]
    lines += [f"E {u} {v}" for (u, v) in sorted(g.edges)]
    return "\n".join(lines) + ("\n" if lines else "")
