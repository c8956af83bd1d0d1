"""Label-preserving homomorphic matching of tree patterns in the data graph.

A match binds every pattern label to one data vertex so that every pattern
edge is realized by a data edge (in the edge's stated direction, or in either
direction when ``undirected`` is set) and every vertex whose label occurs in
the filter's label set is itself a filter member.

Pattern vertices are labels and every data vertex carries exactly one label,
so bindings are injective by construction and the tree instance has all its
vertices and edges distinct.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .core import Filter, Label, LabeledGraph, VertexId, filter_labels
from .errors import UnknownLabel
from .patterns import GraphPattern


@dataclass(frozen=True)
class Match:
    """One concrete instance of a pattern in the data graph."""

    pattern: GraphPattern
    binding: tuple[tuple[Label, VertexId], ...]  # sorted by label
    instance_edges: frozenset[tuple[VertexId, VertexId]]  # original data direction
    undirected: bool

    @property
    def assignment(self) -> dict[Label, VertexId]:
        return dict(self.binding)

    @property
    def instance_vertices(self) -> frozenset[VertexId]:
        return frozenset(v for _, v in self.binding)

    def vertex_for(self, label: Label) -> VertexId:
        for l, v in self.binding:
            if l == label:
                return v
        raise UnknownLabel(f"label {label!r} not bound in this match")


def candidate_vertices(
    g: LabeledGraph, f: Filter, label: Label, filter_label_set: set[Label] | None = None
) -> tuple[VertexId, ...]:
    """Vertices a pattern label may bind to: all label carriers, cut down to
    filter members when the label occurs in the filter."""
    l_f = filter_labels(g, f) if filter_label_set is None else filter_label_set
    vs = g.vertices_with_label(label)
    if label in l_f:
        return tuple(v for v in vs if v in f.members)
    return vs


def _neighbor_constraint(
    g: LabeledGraph,
    pattern: GraphPattern,
    label: Label,
    other_label: Label,
    other_vertex: VertexId,
    undirected: bool,
) -> set[VertexId]:
    """Vertices that may bind ``label`` given the binding of an adjacent
    pattern label."""
    allowed: set[VertexId] = set()
    if (label, other_label) in pattern.edges:
        # data edge must run binding(label) -> other_vertex
        allowed.update(g.in_neighbors(other_vertex))
        if undirected:
            allowed.update(g.out_neighbors(other_vertex))
    if (other_label, label) in pattern.edges:
        allowed.update(g.out_neighbors(other_vertex))
        if undirected:
            allowed.update(g.in_neighbors(other_vertex))
    return {v for v in allowed if g.label_of[v] == label}


def enumerate_matches(
    g: LabeledGraph, pattern: GraphPattern, f: Filter, undirected: bool = True
) -> Iterator[Match]:
    """Yield every match, lazily, ordered lexicographically by the binding
    id tuple taken over the sorted pattern labels."""
    labels = sorted(pattern.vertices)
    l_f = filter_labels(g, f)
    base: dict[Label, tuple[VertexId, ...]] = {}
    for label in labels:
        cands = candidate_vertices(g, f, label, l_f)
        if not cands:
            return
        base[label] = cands

    pattern_adj: dict[Label, list[Label]] = {l: [] for l in labels}
    for a, b in pattern.edges:
        pattern_adj[a].append(b)
        pattern_adj[b].append(a)

    bound: dict[Label, VertexId] = {}

    def extend(i: int) -> Iterator[Match]:
        if i == len(labels):
            edges = set()
            for a, b in pattern.edges:
                va, vb = bound[a], bound[b]
                if (va, vb) in g.edges:
                    edges.add((va, vb))
                if undirected and (vb, va) in g.edges:
                    edges.add((vb, va))
            yield Match(
                pattern=pattern,
                binding=tuple((l, bound[l]) for l in labels),
                instance_edges=frozenset(edges),
                undirected=undirected,
            )
            return
        label = labels[i]
        assigned_neighbors = [n for n in pattern_adj[label] if n in bound]
        if assigned_neighbors:
            options: set[VertexId] | None = None
            for n in assigned_neighbors:
                allowed = _neighbor_constraint(g, pattern, label, n, bound[n], undirected)
                options = allowed if options is None else options & allowed
            candidates = sorted((options or set()) & set(base[label]))
        else:
            candidates = list(base[label])
        for v in candidates:
            bound[label] = v
            yield from extend(i + 1)
            del bound[label]

    yield from extend(0)


def terminal_path_endpoints(
    m: Match, from_label: Label, to_label: Label
) -> set[tuple[VertexId, VertexId]]:
    """Concrete (u, b) endpoint pairs of the instance path between two
    pattern labels.

    The instance of a tree pattern connects any two bound vertices by exactly
    one path; in directed mode the pair is only reported when that path runs
    forward from ``from_label`` to ``to_label``.
    """
    if from_label not in m.pattern.vertices or to_label not in m.pattern.vertices:
        raise UnknownLabel(f"labels {from_label!r}/{to_label!r} not in pattern")
    if not m.undirected and not m.pattern.path_is_directed(from_label, to_label):
        return set()
    return {(m.vertex_for(from_label), m.vertex_for(to_label))}
