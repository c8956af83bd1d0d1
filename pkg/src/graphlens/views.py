"""View construction: projecting the data graph onto chosen label sets.

A view shows the vertices of the *view labels* (l_c) connected through
invisible *bridge vertices* carrying the *bridge labels* (l_b). Every view
vertex u holds the set of bridges it reaches through some pattern match
(``vertex_support``), and two view vertices are linked when they share a
bridge reachable from one and reaching the other (``edge_support``). Weights
are the cardinalities of these support sets.

The construction never enumerates matches. Per generated pattern it first
runs a two-pass semijoin reduction (so a vertex remains a candidate exactly
when it participates in at least one full match) and then composes the edge
relations along the pattern's tree path between a view label and a bridge
label. Over fully reduced candidate sets that composition yields exactly the
pairs realized by full matches, in time near-linear in input plus output.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Callable

from .core import Filter, Label, LabeledGraph, VertexId, filter_labels, restrict_filter
from .errors import (
    DisjointnessViolation,
    EmptyLabelSet,
    PreconditionViolation,
    UnknownLabel,
    UnknownVertex,
)
from .patterns import GraphPattern, PatternPair, generate_pattern_pairs

ViewEdge = tuple[VertexId, VertexId]


@dataclass(frozen=True)
class View:
    """The raw projection: vertices, bridges, edges and their support sets."""

    graph: LabeledGraph
    l_c: frozenset[Label]
    l_b: frozenset[Label]
    filter: Filter
    c_q: frozenset[VertexId]
    b_q: frozenset[VertexId]
    e_q: frozenset[ViewEdge]
    vertex_support: dict[VertexId, frozenset[VertexId]]
    edge_support: dict[ViewEdge, frozenset[VertexId]]
    undirected: bool

    @property
    def l_q(self) -> frozenset[Label]:
        return self.l_c | self.l_b


@dataclass(frozen=True)
class WeightedView:
    view: View
    vertex_weight: dict[VertexId, int]
    edge_weight: dict[ViewEdge, int]

    def document(self) -> dict:
        """Wire/file form. Field order is fixed for byte-stable output."""
        v = self.view
        return {
            "l_c": sorted(v.l_c),
            "l_b": sorted(v.l_b),
            "filter": sorted(v.filter.members),
            "vertices": [
                {
                    "id": u,
                    "label": v.graph.label_of[u],
                    "weight": self.vertex_weight[u],
                    "support": sorted(v.vertex_support[u]),
                }
                for u in sorted(v.c_q)
            ],
            "edges": [
                {
                    "u": a,
                    "v": b,
                    "weight": self.edge_weight[(a, b)],
                    "support": sorted(v.edge_support[(a, b)]),
                }
                for a, b in sorted(v.e_q)
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.document(), indent=2) + "\n"


def _edge_key(u: VertexId, v: VertexId) -> ViewEdge:
    return (u, v) if u <= v else (v, u)


def _realized_neighbors(
    g: LabeledGraph,
    pattern: GraphPattern,
    from_label: Label,
    to_label: Label,
    vertex: VertexId,
    undirected: bool,
) -> list[VertexId]:
    """Data vertices adjacent to ``vertex`` realizing the pattern edge
    between ``from_label`` and ``to_label``, seen from the from side."""
    found: list[VertexId] = []
    if (from_label, to_label) in pattern.edges:
        found.extend(g.out_neighbors(vertex))
        if undirected:
            found.extend(g.in_neighbors(vertex))
    if (to_label, from_label) in pattern.edges:
        found.extend(g.in_neighbors(vertex))
        if undirected:
            found.extend(g.out_neighbors(vertex))
    return [w for w in found if g.label_of[w] == to_label]


def _full_reduce(
    g: LabeledGraph,
    pattern: GraphPattern,
    base: dict[Label, set[VertexId]],
    undirected: bool,
) -> dict[Label, set[VertexId]] | None:
    """Two-pass semijoin reduction over the pattern tree.

    Returns per-label vertex sets such that every remaining vertex occurs in
    at least one full match, or None when the pattern has no match at all.
    """
    labels = sorted(pattern.vertices)
    if len(labels) == 1:
        only = labels[0]
        return {only: set(base[only])} if base[only] else None

    adj = pattern.undirected_adjacency()
    root = pattern.source
    order: list[Label] = [root]
    parent: dict[Label, Label] = {root: root}
    for cur in order:
        for nxt in adj[cur]:
            if nxt not in parent:
                parent[nxt] = cur
                order.append(nxt)

    feasible: dict[Label, set[VertexId]] = {}
    for label in reversed(order):
        children = [c for c in adj[label] if parent.get(c) == label and c != label]
        keep = set()
        for v in base[label]:
            ok = True
            for child in children:
                if not any(
                    w in feasible[child]
                    for w in _realized_neighbors(g, pattern, label, child, v, undirected)
                ):
                    ok = False
                    break
            if ok:
                keep.add(v)
        if not keep:
            return None
        feasible[label] = keep

    reduced: dict[Label, set[VertexId]] = {root: feasible[root]}
    for label in order[1:]:
        par = parent[label]
        keep = set()
        for v in feasible[label]:
            if any(
                w in reduced[par]
                for w in _realized_neighbors(g, pattern, label, par, v, undirected)
            ):
                keep.add(v)
        if not keep:
            return None
        reduced[label] = keep
    return reduced


def _chain_pairs(
    g: LabeledGraph,
    pattern: GraphPattern,
    reduced: dict[Label, set[VertexId]],
    start_label: Label,
    end_label: Label,
    start_restrict: frozenset[VertexId] | None,
    undirected: bool,
) -> set[tuple[VertexId, VertexId]]:
    """(u, b) pairs connected along the pattern's tree path between two
    labels, over fully reduced candidates."""
    path = pattern.tree_path(start_label, end_label)
    starts = reduced[start_label]
    if start_restrict is not None:
        starts = starts & start_restrict
    if not starts:
        return set()

    frontier: dict[VertexId, set[VertexId]] = {u: {u} for u in sorted(starts)}
    for prev_label, next_label in zip(path, path[1:]):
        step: dict[VertexId, set[VertexId]] = {}
        allowed = reduced[next_label]
        for w in {x for xs in frontier.values() for x in xs}:
            step[w] = {
                y
                for y in _realized_neighbors(g, pattern, prev_label, next_label, w, undirected)
                if y in allowed
            }
        nxt: dict[VertexId, set[VertexId]] = {}
        for u, layer in frontier.items():
            out: set[VertexId] = set()
            for w in layer:
                out |= step[w]
            if out:
                nxt[u] = out
        frontier = nxt
        if not frontier:
            return set()
    return {(u, b) for u, layer in frontier.items() for b in layer}


def _member_pairs(
    g: LabeledGraph,
    member: GraphPattern,
    base: dict[Label, set[VertexId]],
    l_c: frozenset[Label],
    l_b: frozenset[Label],
    c_q: frozenset[VertexId],
    undirected: bool,
) -> tuple[set[tuple[VertexId, VertexId]], set[VertexId]]:
    """Support pairs (view vertex, bridge) and participating bridges
    contributed by one pattern of a pair."""
    reduced = _full_reduce(g, member, base, undirected)
    if reduced is None:
        return set(), set()
    bridges: set[VertexId] = set()
    for lb in sorted(member.vertices & l_b):
        bridges |= reduced[lb]
    pairs: set[tuple[VertexId, VertexId]] = set()
    for lc in sorted(member.vertices & l_c):
        for lb in sorted(member.vertices & l_b):
            pairs |= _chain_pairs(g, member, reduced, lc, lb, c_q, undirected)
    return pairs, bridges


def gen_view(
    g: LabeledGraph,
    f: Filter,
    l_c: set[Label],
    l_b: set[Label],
    undirected: bool = True,
) -> View:
    """Generate the view of ``g`` for view labels ``l_c`` over bridge labels
    ``l_b`` under filter ``f``.

    The view's vertices are the filter's l_c members when any exist,
    otherwise all l_c-labeled vertices; supports and edges come from matches
    of the generated pattern pairs, restricted so that every match vertex
    whose label occurs in the filter is itself a filter member.
    """
    l_c = frozenset(l_c)
    l_b = frozenset(l_b)
    if not l_c or not l_b:
        raise EmptyLabelSet("l_c and l_b must be nonempty")
    if l_c & l_b:
        raise DisjointnessViolation(f"l_c and l_b overlap: {sorted(l_c & l_b)}")
    unknown = (l_c | l_b) - g.labels
    if unknown:
        raise UnknownLabel(f"labels not in schema: {sorted(unknown)}")
    stray = f.members - g.vertices
    if stray:
        raise UnknownVertex(f"filter references unknown vertices: {sorted(stray)}")

    l_f = filter_labels(g, f)
    selected_c = restrict_filter(g, f, set(l_c))
    if selected_c:
        c_q = frozenset(selected_c)
    else:
        c_q = frozenset(v for label in l_c for v in g.vertices_with_label(label))

    pairs: list[PatternPair] = generate_pattern_pairs(
        g.schema(), set(l_f), set(l_b), set(l_c), undirected=undirected
    )

    vertex_support: dict[VertexId, set[VertexId]] = {u: set() for u in c_q}
    edge_support: dict[ViewEdge, set[VertexId]] = {}
    b_q: set[VertexId] = set()

    for pair in pairs:
        base: dict[Label, set[VertexId]] = {}
        for label in sorted(pair.left.vertices):
            vs = set(g.vertices_with_label(label))
            if label in l_f:
                vs &= f.members
            base[label] = vs

        comb_pairs: set[tuple[VertexId, VertexId]] = set()
        for member in pair.members():
            member_pairs, member_bridges = _member_pairs(
                g, member, base, l_c, l_b, c_q, undirected
            )
            comb_pairs |= member_pairs
            b_q |= member_bridges

        for u, b in comb_pairs:
            vertex_support[u].add(b)

        # within one combination, an edge {u,v} gains bridge b when the pair's
        # patterns connect b to both u and v
        by_bridge: dict[VertexId, set[VertexId]] = {}
        for u, b in comb_pairs:
            by_bridge.setdefault(b, set()).add(u)
        for b, us in by_bridge.items():
            if len(us) < 2:
                continue
            ordered = sorted(us)
            for i, u in enumerate(ordered):
                for v in ordered[i + 1 :]:
                    edge_support.setdefault((u, v), set()).add(b)

    return View(
        graph=g,
        l_c=l_c,
        l_b=l_b,
        filter=f,
        c_q=c_q,
        b_q=frozenset(b_q),
        e_q=frozenset(edge_support),
        vertex_support={u: frozenset(s) for u, s in vertex_support.items()},
        edge_support={e: frozenset(s) for e, s in edge_support.items()},
        undirected=undirected,
    )


def weigh(view: View, aggregate: Callable[[frozenset], int] = len) -> WeightedView:
    """Attach weights: by default the cardinality of each support set."""
    return WeightedView(
        view=view,
        vertex_weight={u: aggregate(s) for u, s in view.vertex_support.items()},
        edge_weight={e: aggregate(s) for e, s in view.edge_support.items()},
    )


def minimal_view(view: View) -> View:
    """Drop every view vertex with empty support.

    Edges never touch empty-support vertices (an edge bridge supports both
    endpoints), so only the vertex bookkeeping shrinks. The result is
    vis-equivalent to the input and is a fixed point of this function.
    """
    keep = frozenset(u for u in view.c_q if view.vertex_support[u])
    e_keep = frozenset(e for e in view.e_q if e[0] in keep and e[1] in keep)
    return View(
        graph=view.graph,
        l_c=view.l_c,
        l_b=view.l_b,
        filter=view.filter,
        c_q=keep,
        b_q=view.b_q,
        e_q=e_keep,
        vertex_support={u: view.vertex_support[u] for u in keep},
        edge_support={e: view.edge_support[e] for e in e_keep},
        undirected=view.undirected,
    )


def vis_equivalent(v1: View, v2: View) -> bool:
    """Whether two views differ only in vertices of empty support.

    Requires both views to share the label choice and to agree on the filter
    outside the view labels; anything else is a comparison of unrelated
    views and raises :class:`PreconditionViolation`.
    """
    if v1.l_c != v2.l_c or v1.l_b != v2.l_b:
        raise PreconditionViolation("views use different label sets")
    f1_rest = v1.filter.members - restrict_filter(v1.graph, v1.filter, set(v1.l_c))
    f2_rest = v2.filter.members - restrict_filter(v2.graph, v2.filter, set(v2.l_c))
    if f1_rest != f2_rest:
        raise PreconditionViolation("filters differ outside the view labels")
    for u in v1.c_q - v2.c_q:
        if v1.vertex_support[u]:
            return False
    for u in v2.c_q - v1.c_q:
        if v2.vertex_support[u]:
            return False
    return True


def minimal_weighted_json(view: View) -> str:
    """Serialization of the minimal weighted view (the apply response)."""
    return weigh(minimal_view(view)).to_json()


def full_weighted_json(view: View) -> str:
    return weigh(view).to_json()
