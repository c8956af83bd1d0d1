"""Desk-scale brute-force oracles.

Everything here re-derives results straight from the definitions by
exhaustive enumeration, sharing no algorithmic machinery with the production
path: matches come from trying every binding tuple, view supports from
collecting pairs off the enumerated matches, Steiner optima from trying every
edge subset. Only usable on small inputs; the CLI ``oracle`` command and the
test suite run these against the real implementations.
"""

from __future__ import annotations

from itertools import combinations, product

from .core import Filter, Label, LabeledGraph, SchemaGraph, VertexId, filter_labels
from .errors import Unconnectable
from .patterns import GraphPattern, generate_pattern_pairs


def brute_matches(
    g: LabeledGraph, pattern: GraphPattern, f: Filter, undirected: bool = True
) -> list[dict[Label, VertexId]]:
    """Every binding of pattern labels to vertices satisfying the match
    conditions, found by trying the full cartesian product."""
    labels = sorted(pattern.vertices)
    l_f = filter_labels(g, f)
    pools: list[list[VertexId]] = []
    for label in labels:
        pool = [
            v
            for v in g.vertices_with_label(label)
            if label not in l_f or v in f.members
        ]
        if not pool:
            return []
        pools.append(pool)

    found: list[dict[Label, VertexId]] = []
    for combo in product(*pools):
        binding = dict(zip(labels, combo))
        ok = True
        for a, b in pattern.edges:
            va, vb = binding[a], binding[b]
            realized = (va, vb) in g.edges or (undirected and (vb, va) in g.edges)
            if not realized:
                ok = False
                break
        if ok:
            found.append(binding)
    return found


def brute_view_supports(
    g: LabeledGraph,
    f: Filter,
    l_c: set[Label],
    l_b: set[Label],
    undirected: bool = True,
) -> tuple[
    frozenset[VertexId],
    frozenset[VertexId],
    dict[VertexId, frozenset[VertexId]],
    dict[tuple[VertexId, VertexId], frozenset[VertexId]],
]:
    """(c_q, b_q, vertex_support, edge_support) derived by enumerating every
    match of every generated pattern."""
    l_f = filter_labels(g, f)
    selected = {v for v in f.members if g.label_of[v] in l_c}
    if selected:
        c_q = frozenset(selected)
    else:
        c_q = frozenset(v for label in l_c for v in g.vertices_with_label(label))

    pairs = generate_pattern_pairs(g.schema(), set(l_f), set(l_b), set(l_c), undirected)

    def member_pairs(member: GraphPattern) -> tuple[set, set]:
        pair_set: set[tuple[VertexId, VertexId]] = set()
        bridges: set[VertexId] = set()
        for binding in brute_matches(g, member, f, undirected):
            for label, v in binding.items():
                if label in l_b:
                    bridges.add(v)
            for lc in member.vertices & frozenset(l_c):
                u = binding[lc]
                if u not in c_q:
                    continue
                for lb in member.vertices & frozenset(l_b):
                    pair_set.add((u, binding[lb]))
        return pair_set, bridges

    vertex_support: dict[VertexId, set[VertexId]] = {u: set() for u in c_q}
    edge_support: dict[tuple[VertexId, VertexId], set[VertexId]] = {}
    b_q: set[VertexId] = set()
    for pair in pairs:
        comb_pairs: set[tuple[VertexId, VertexId]] = set()
        for member in pair.members():
            member_set, member_bridges = member_pairs(member)
            comb_pairs |= member_set
            b_q |= member_bridges
        for u, b in comb_pairs:
            vertex_support[u].add(b)
        for u, b in comb_pairs:
            for v, b2 in comb_pairs:
                if b == b2 and u != v:
                    key = (u, v) if u <= v else (v, u)
                    edge_support.setdefault(key, set()).add(b)

    return (
        c_q,
        frozenset(b_q),
        {u: frozenset(s) for u, s in vertex_support.items()},
        {e: frozenset(s) for e, s in edge_support.items()},
    )


def exact_steiner_edge_count(schema: SchemaGraph, terminals: set[Label]) -> int | None:
    """Minimum edge count of a tree containing all terminals, by trying every
    (symmetrized) edge subset in increasing size. None when no tree exists."""
    if len(terminals) == 1:
        return 0
    edge_pool = sorted({tuple(sorted(e)) for e in schema.edges})
    max_size = max(len(schema.labels) - 1, len(terminals) - 1)
    for k in range(len(terminals) - 1, max_size + 1):
        for subset in combinations(edge_pool, k):
            span = {v for e in subset for v in e}
            if not terminals <= span:
                continue
            if len(span) != k + 1:
                continue
            adj: dict[Label, set[Label]] = {v: set() for v in span}
            for a, b in subset:
                adj[a].add(b)
                adj[b].add(a)
            start = next(iter(span))
            seen = {start}
            stack = [start]
            while stack:
                cur = stack.pop()
                for nxt in adj[cur]:
                    if nxt not in seen:
                        seen.add(nxt)
                        stack.append(nxt)
            if seen == span:
                return k
    return None


def solver_agrees_with_oracle(
    schema: SchemaGraph,
    terminals: set[Label],
    source: Label,
    sink: Label,
) -> tuple[bool, str]:
    """Check the production solver against the exhaustive optimum:
    feasibility must agree and the tree must stay within twice the optimum."""
    from .patterns import steiner_tree_pattern

    optimum = exact_steiner_edge_count(schema, terminals)
    try:
        pattern = steiner_tree_pattern(schema, terminals, source, sink)
    except Unconnectable:
        if optimum is None:
            return True, "both unconnectable"
        return False, f"solver failed but a tree of {optimum} edges exists"
    if optimum is None:
        return False, "solver produced a tree where none should exist"
    if not pattern.is_tree():
        return False, f"not a tree: {pattern.serialize()}"
    if not terminals <= pattern.vertices:
        return False, f"missing terminals: {pattern.serialize()}"
    if len(pattern.edges) > 2 * max(optimum, 1):
        return False, f"tree size {len(pattern.edges)} exceeds twice the optimum {optimum}"
    return True, f"tree {len(pattern.edges)} vs optimum {optimum}"
