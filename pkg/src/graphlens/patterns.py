"""Tree-shaped label patterns over the schema, and their reversed-path pairs.

A pattern is the template a query is matched against: a tree whose vertices
are labels, containing one view-side terminal (``source``) and one
bridge-side terminal (``sink``) plus any filter labels, with a directed
source-to-sink path. Patterns are generated per (bridge label, view label)
combination; labels outside the terminal set may be used as intermediate
vertices when the schema offers no shorter connection.

Finding the smallest such tree is the Steiner minimal tree problem, which is
NP-complete; the generator uses the classical metric-closure/minimum-spanning
-tree approximation (factor 2) with lexicographic tie-breaking so the output
is reproducible.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable

from .core import Label, SchemaGraph
from .errors import DisjointnessViolation, EmptyLabelSet, Unconnectable, UnknownLabel


@dataclass(frozen=True)
class GraphPattern:
    """Tree of labels with a directed path from ``source`` to ``sink``."""

    vertices: frozenset[Label]
    edges: frozenset[tuple[Label, Label]]
    source: Label
    sink: Label

    def undirected_adjacency(self) -> dict[Label, list[Label]]:
        adj: dict[Label, list[Label]] = {v: [] for v in self.vertices}
        for a, b in self.edges:
            adj[a].append(b)
            adj[b].append(a)
        return {v: sorted(ns) for v, ns in adj.items()}

    def tree_path(self, a: Label, b: Label) -> list[Label]:
        """Vertex sequence of the unique tree path from ``a`` to ``b``."""
        if a not in self.vertices or b not in self.vertices:
            raise UnknownLabel(f"labels {a!r}/{b!r} not in pattern")
        if a == b:
            return [a]
        adj = self.undirected_adjacency()
        parent: dict[Label, Label] = {a: a}
        queue = deque([a])
        while queue:
            cur = queue.popleft()
            if cur == b:
                break
            for nxt in adj[cur]:
                if nxt not in parent:
                    parent[nxt] = cur
                    queue.append(nxt)
        path = [b]
        while path[-1] != a:
            path.append(parent[path[-1]])
        path.reverse()
        return path

    def path_is_directed(self, a: Label, b: Label) -> bool:
        """True iff every edge on the tree path a..b is oriented forward."""
        path = self.tree_path(a, b)
        return all((p, q) in self.edges for p, q in zip(path, path[1:]))

    def is_tree(self) -> bool:
        if len(self.edges) != len(self.vertices) - 1:
            return False
        if not self.vertices:
            return False
        adj = self.undirected_adjacency()
        start = next(iter(sorted(self.vertices)))
        seen = {start}
        queue = deque([start])
        while queue:
            for nxt in adj[queue.popleft()]:
                if nxt not in seen:
                    seen.add(nxt)
                    queue.append(nxt)
        return seen == self.vertices

    def serialize(self) -> str:
        vs = ",".join(sorted(self.vertices))
        es = ",".join(f"{a}>{b}" for a, b in sorted(self.edges))
        return f"pattern{{vertices=[{vs}], edges=[{es}], source={self.source}, sink={self.sink}}}"


@dataclass(frozen=True)
class PatternPair:
    """The two patterns of one (bridge, view) label combination.

    ``left`` carries the directed path view-label -> bridge-label. ``right``
    is ``left`` with exactly that terminal path reversed; it is omitted in
    undirected mode, where a single pattern suffices.
    """

    left: GraphPattern
    right: GraphPattern | None
    bridge_label: Label
    view_label: Label

    def members(self) -> tuple[GraphPattern, ...]:
        return (self.left,) if self.right is None else (self.left, self.right)


def _symmetric_adjacency(schema: SchemaGraph) -> dict[Label, list[Label]]:
    adj: dict[Label, set[Label]] = {l: set() for l in schema.labels}
    for a, b in schema.edges:
        adj[a].add(b)
        adj[b].add(a)
    return {l: sorted(ns) for l, ns in adj.items()}


def _bfs_distances(adj: dict[Label, list[Label]], start: Label) -> dict[Label, int]:
    dist = {start: 0}
    queue = deque([start])
    while queue:
        cur = queue.popleft()
        for nxt in adj[cur]:
            if nxt not in dist:
                dist[nxt] = dist[cur] + 1
                queue.append(nxt)
    return dist


def _lex_shortest_path(
    adj: dict[Label, list[Label]], dist_to_target: dict[Label, int], start: Label
) -> list[Label]:
    """Lexicographically smallest shortest path from start, walking downhill
    on precomputed distances-to-target (adjacency must match the distances)."""
    path = [start]
    cur = start
    while dist_to_target[cur] > 0:
        cur = min(n for n in adj[cur] if dist_to_target.get(n, -1) == dist_to_target[cur] - 1)
        path.append(cur)
    return path


class _UnionFind:
    def __init__(self, items: Iterable[Label]):
        self.parent = {x: x for x in items}

    def find(self, x: Label) -> Label:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a: Label, b: Label) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[rb] = ra
        return True


def _kmb_tree(
    schema: SchemaGraph, terminals: list[Label], source: Label
) -> set[tuple[Label, Label]]:
    """Metric closure + MST + path expansion + leaf pruning; returns an
    undirected edge set (each edge as a sorted label pair)."""
    adj = _symmetric_adjacency(schema)
    dist_from = {t: _bfs_distances(adj, t) for t in terminals}

    closure: list[tuple[int, Label, Label]] = []
    for i, a in enumerate(terminals):
        for b in terminals[i + 1 :]:
            if b not in dist_from[a]:
                raise Unconnectable(f"labels {a!r} and {b!r} are not connected in the schema")
            closure.append((dist_from[a][b], a, b))
    closure.sort()

    uf = _UnionFind(terminals)
    expanded: set[tuple[Label, Label]] = set()
    for _, a, b in closure:
        if uf.union(a, b):
            # expand the closure edge back into a concrete schema path
            path = _lex_shortest_path(adj, dist_from[b], a)
            for p, q in zip(path, path[1:]):
                expanded.add((min(p, q), max(p, q)))

    # the union of paths may contain cycles: extract a deterministic
    # spanning tree by BFS from the source
    sub_adj: dict[Label, set[Label]] = {}
    for p, q in expanded:
        sub_adj.setdefault(p, set()).add(q)
        sub_adj.setdefault(q, set()).add(p)
    sub_adj.setdefault(source, set())
    tree: set[tuple[Label, Label]] = set()
    seen = {source}
    queue = deque([source])
    while queue:
        cur = queue.popleft()
        for nxt in sorted(sub_adj[cur]):
            if nxt not in seen:
                seen.add(nxt)
                tree.add((min(cur, nxt), max(cur, nxt)))
                queue.append(nxt)

    # prune non-terminal leaves left over from discarded cycle edges
    terminal_set = set(terminals)
    while True:
        degree: dict[Label, int] = {}
        for p, q in tree:
            degree[p] = degree.get(p, 0) + 1
            degree[q] = degree.get(q, 0) + 1
        removable = [
            (p, q)
            for (p, q) in tree
            if (degree[p] == 1 and p not in terminal_set)
            or (degree[q] == 1 and q not in terminal_set)
        ]
        if not removable:
            return tree
        for e in removable:
            tree.discard(e)


def _orient_from_root(
    undirected_edges: set[tuple[Label, Label]], root: Label
) -> frozenset[tuple[Label, Label]]:
    adj: dict[Label, set[Label]] = {}
    for p, q in undirected_edges:
        adj.setdefault(p, set()).add(q)
        adj.setdefault(q, set()).add(p)
    adj.setdefault(root, set())
    oriented: set[tuple[Label, Label]] = set()
    seen = {root}
    queue = deque([root])
    while queue:
        cur = queue.popleft()
        for nxt in sorted(adj[cur]):
            if nxt not in seen:
                seen.add(nxt)
                oriented.add((cur, nxt))
                queue.append(nxt)
    return frozenset(oriented)


def steiner_tree_pattern(
    schema: SchemaGraph,
    terminals: set[Label],
    source: Label,
    sink: Label,
) -> GraphPattern:
    """Build an approximately minimal tree pattern containing ``terminals``.

    Labels outside the terminal set may appear as intermediate vertices.
    Schema edges are treated as traversable both ways here (a pattern pair
    always covers both orientations of its terminal path, so generation is
    direction-agnostic); the tree is oriented away from ``source``, which
    makes the source-to-sink path directed. Raises :class:`Unconnectable`
    when the terminals do not share a schema component.
    """
    unknown = set(terminals) - schema.labels
    if unknown:
        raise UnknownLabel(f"labels not in schema: {sorted(unknown)}")
    if not terminals:
        raise EmptyLabelSet("terminal set must not be empty")
    if source not in terminals or sink not in terminals:
        raise UnknownLabel("source and sink must be terminals")

    ordered = sorted(terminals)
    if len(ordered) == 1:
        only = ordered[0]
        return GraphPattern(frozenset([only]), frozenset(), only, only)

    tree = _kmb_tree(schema, ordered, source)
    edges = _orient_from_root(tree, source)
    vertices = frozenset(v for e in edges for v in e) | {source, sink}
    return GraphPattern(vertices=vertices, edges=edges, source=source, sink=sink)


def _reverse_terminal_path(left: GraphPattern) -> GraphPattern:
    path = left.tree_path(left.source, left.sink)
    path_edges = set(zip(path, path[1:]))
    edges = (set(left.edges) - path_edges) | {(q, p) for p, q in path_edges}
    return GraphPattern(
        vertices=left.vertices,
        edges=frozenset(edges),
        source=left.sink,
        sink=left.source,
    )


def generate_pattern_pairs(
    schema: SchemaGraph,
    l_f: set[Label],
    l_b: set[Label],
    l_c: set[Label],
    undirected: bool = True,
) -> list[PatternPair]:
    """One pattern pair per (bridge label, view label) combination.

    The left pattern spans the filter labels plus the two terminals and has
    its directed path running view label -> bridge label; the right pattern
    reverses exactly that path. In undirected mode only the left pattern is
    produced per combination.
    """
    if not l_b or not l_c:
        raise EmptyLabelSet("bridge and view label sets must be nonempty")
    if l_b & l_c:
        raise DisjointnessViolation(f"label sets overlap: {sorted(l_b & l_c)}")
    unknown = (set(l_f) | l_b | l_c) - schema.labels
    if unknown:
        raise UnknownLabel(f"labels not in schema: {sorted(unknown)}")

    pairs: list[PatternPair] = []
    for bridge in sorted(l_b):
        for view in sorted(l_c):
            terminals = set(l_f) | {bridge, view}
            try:
                left = steiner_tree_pattern(schema, terminals, source=view, sink=bridge)
            except Unconnectable as exc:
                raise Unconnectable(f"combination ({bridge}, {view}): {exc}") from exc
            right = None if undirected else _reverse_terminal_path(left)
            pairs.append(PatternPair(left=left, right=right, bridge_label=bridge, view_label=view))
    return pairs


def is_pair(p1: GraphPattern, p2: GraphPattern) -> bool:
    """Whether two patterns differ by exactly one reversed terminal path."""
    if p1.vertices != p2.vertices:
        return False
    d1 = p1.edges - p2.edges
    d2 = p2.edges - p1.edges
    if not d1:
        return False
    if d2 != {(b, a) for a, b in d1}:
        return False
    # d1 must form a single simple directed path a -> ... -> b
    outs: dict[Label, list[Label]] = {}
    indeg: dict[Label, int] = {}
    for a, b in d1:
        outs.setdefault(a, []).append(b)
        indeg[b] = indeg.get(b, 0) + 1
    starts = [a for a in outs if indeg.get(a, 0) == 0]
    if len(starts) != 1:
        return False
    cur = starts[0]
    visited = {cur}
    used = 0
    while cur in outs:
        nexts = outs[cur]
        if len(nexts) != 1:
            return False
        cur = nexts[0]
        if cur in visited:
            return False
        visited.add(cur)
        used += 1
    return used == len(d1)
