"""Interaction operators over navigation states, and the history graph.

A navigation state is (filter, view labels, bridge labels). Three operators
move between states:

- selection keeps the labels and grows or swaps the filter's view-label part,
- expansion switches the view labels and sheds filter members carrying the
  new view labels,
- navigation switches both label sets and keeps the filter.

Every applied operator is recorded as a step in a :class:`NavGraph`; a user's
history is a walk in that graph and can be exported, parsed back and
replayed. States are value-compared, so revisiting a state merges nodes.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations

from .core import Filter, Label, LabeledGraph, VertexId, restrict_filter
from .errors import (
    DisjointnessViolation,
    EmptyLabelSet,
    IllegalStep,
    ParseError,
    PreconditionViolation,
    SelectionOutsideView,
    TooLarge,
    UnknownLabel,
)
from .views import gen_view, minimal_view


class OpKind(Enum):
    SELECTION = "sigma"
    EXPANSION = "xi"
    NAVIGATION = "eta"


@dataclass(frozen=True)
class NavState:
    filter: frozenset[VertexId]
    l_c: frozenset[Label]
    l_b: frozenset[Label]

    def __post_init__(self):
        if not self.l_c or not self.l_b:
            raise EmptyLabelSet("state label sets must be nonempty")
        if self.l_c & self.l_b:
            raise DisjointnessViolation(f"state labels overlap: {sorted(self.l_c & self.l_b)}")

    def filter_obj(self) -> Filter:
        return Filter(self.filter)

    def canonical(self) -> str:
        return (
            f"F={','.join(sorted(self.filter))};"
            f"LC={','.join(sorted(self.l_c))};"
            f"LB={','.join(sorted(self.l_b))}"
        )

    def digest(self) -> str:
        return hashlib.sha256(self.canonical().encode()).hexdigest()[:12]


def make_state(
    g: LabeledGraph, filter_ids: set[VertexId], l_c: set[Label], l_b: set[Label]
) -> NavState:
    """Validated state constructor (labels and filter checked against g)."""
    unknown = (set(l_c) | set(l_b)) - g.labels
    if unknown:
        raise UnknownLabel(f"labels not in schema: {sorted(unknown)}")
    Filter.of(g, filter_ids)
    return NavState(frozenset(filter_ids), frozenset(l_c), frozenset(l_b))


def select(
    g: LabeledGraph, s: NavState, f_select: set[VertexId], undirected: bool = True
) -> NavState:
    """Selection: add the picked view vertices to the filter.

    The picked vertices must be visible, i.e. present in the minimal view of
    the current state. A pick overlapping the current filter replaces the
    filter's view-label part instead of accumulating.
    """
    if not f_select:
        raise PreconditionViolation("selection must not be empty")
    visible = minimal_view(gen_view(g, s.filter_obj(), set(s.l_c), set(s.l_b), undirected)).c_q
    hidden = set(f_select) - visible
    if hidden:
        raise SelectionOutsideView(f"not in the current minimal view: {sorted(hidden)}")
    if s.filter & f_select:
        kept = s.filter - restrict_filter(g, s.filter_obj(), set(s.l_c))
        new_filter = kept | f_select
    else:
        new_filter = s.filter | f_select
    return NavState(frozenset(new_filter), s.l_c, s.l_b)


def expand(g: LabeledGraph, s: NavState, l_c_new: set[Label]) -> NavState:
    """Expansion: move to the given view labels, dropping filter members
    that carry them."""
    if not l_c_new:
        raise EmptyLabelSet("expansion labels must be nonempty")
    if set(l_c_new) & s.l_b:
        raise DisjointnessViolation(
            f"expansion labels overlap bridge labels: {sorted(set(l_c_new) & s.l_b)}"
        )
    unknown = set(l_c_new) - g.labels
    if unknown:
        raise UnknownLabel(f"labels not in schema: {sorted(unknown)}")
    new_filter = s.filter - restrict_filter(g, s.filter_obj(), set(l_c_new))
    return NavState(frozenset(new_filter), frozenset(l_c_new), s.l_b)


def navigate(
    g: LabeledGraph, s: NavState, l_c_new: set[Label], l_b_new: set[Label]
) -> NavState:
    """Navigation: switch to another view, carrying the filter verbatim."""
    if not l_c_new or not l_b_new:
        raise EmptyLabelSet("navigation labels must be nonempty")
    if set(l_c_new) & set(l_b_new):
        raise DisjointnessViolation(
            f"navigation labels overlap: {sorted(set(l_c_new) & set(l_b_new))}"
        )
    unknown = (set(l_c_new) | set(l_b_new)) - g.labels
    if unknown:
        raise UnknownLabel(f"labels not in schema: {sorted(unknown)}")
    return NavState(s.filter, frozenset(l_c_new), frozenset(l_b_new))


def nav_state_count(n: int, m: int) -> int:
    """Size of the full state space over n vertices and m labels."""
    return 2**n * (3**m - 2 ** (m + 1) + 1)


def enumerate_nav_states(g: LabeledGraph) -> set[NavState]:
    """Desk-scale oracle: every (F, L_C, L_B) with nonempty disjoint labels."""
    if len(g.vertices) > 12 or len(g.labels) > 4:
        raise TooLarge("enumeration is limited to 12 vertices and 4 labels")
    vertices = sorted(g.vertices)
    labels = sorted(g.labels)
    filters = [frozenset(c) for r in range(len(vertices) + 1) for c in combinations(vertices, r)]
    label_subsets = [
        frozenset(c) for r in range(1, len(labels) + 1) for c in combinations(labels, r)
    ]
    states: set[NavState] = set()
    for l_c in label_subsets:
        for l_b in label_subsets:
            if l_c & l_b:
                continue
            for f in filters:
                states.add(NavState(f, l_c, l_b))
    return states


@dataclass
class NavGraph:
    """The visited part of the navigation state space: a walk plus branches."""

    graph: LabeledGraph
    entry: NavState
    states: set[NavState] = field(default_factory=set)
    steps: list[tuple[NavState, NavState, OpKind]] = field(default_factory=list)

    def __post_init__(self):
        self.states.add(self.entry)

    def record_step(self, src: NavState, dst: NavState, op: OpKind) -> "NavGraph":
        """Append a step after checking the operator's defining condition."""
        if op is OpKind.SELECTION:
            if src.l_c != dst.l_c or src.l_b != dst.l_b:
                raise IllegalStep("selection must keep both label sets")
        elif op is OpKind.EXPANSION:
            if src.l_b != dst.l_b:
                raise IllegalStep("expansion must keep the bridge labels")
            expected = src.filter - restrict_filter(self.graph, src.filter_obj(), set(dst.l_c))
            if dst.filter != expected:
                raise IllegalStep("expansion must shed exactly the new view-label members")
        elif op is OpKind.NAVIGATION:
            if src.filter != dst.filter:
                raise IllegalStep("navigation must keep the filter")
        else:  # pragma: no cover
            raise IllegalStep(f"unknown operator {op!r}")
        self.states.add(src)
        self.states.add(dst)
        self.steps.append((src, dst, op))
        return self

    def final_state(self) -> NavState:
        return self.steps[-1][1] if self.steps else self.entry

    def walk(self) -> list[NavState]:
        """The state sequence along the recorded steps, starting at entry."""
        seq = [self.entry]
        for src, dst, _ in self.steps:
            seq.append(dst)
        return seq

    def export(self) -> str:
        """Ordered text log: state table, entry marker, one line per step."""
        lines = ["# graphlens history v1"]
        listed: list[NavState] = []
        seen: set[NavState] = set()
        for s in [self.entry] + [x for st in self.steps for x in (st[0], st[1])]:
            if s not in seen:
                seen.add(s)
                listed.append(s)
        for s in listed:
            lines.append(
                f"state {s.digest()} F={','.join(sorted(s.filter))} "
                f"LC={','.join(sorted(s.l_c))} LB={','.join(sorted(s.l_b))}"
            )
        lines.append(f"entry {self.entry.digest()}")
        for src, dst, op in self.steps:
            lines.append(f"step {src.digest()} {op.value} {dst.digest()}")
        return "\n".join(lines) + "\n"


def parse_history(g: LabeledGraph, text: str) -> NavGraph:
    """Parse an export and replay its validation; tampered logs are rejected."""
    states: dict[str, NavState] = {}
    entry: NavState | None = None
    steps: list[tuple[str, str, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if parts[0] == "state":
            if len(parts) != 5:
                raise ParseError("expected `state <hash> F=.. LC=.. LB=..`", lineno)
            digest = parts[1]
            fields = {}
            for part in parts[2:]:
                key, _, value = part.partition("=")
                fields[key] = [x for x in value.split(",") if x]
            state = make_state(
                g, set(fields.get("F", [])), set(fields.get("LC", [])), set(fields.get("LB", []))
            )
            if state.digest() != digest:
                raise ParseError(f"state hash mismatch: {digest}", lineno)
            states[digest] = state
        elif parts[0] == "entry":
            if len(parts) != 2 or parts[1] not in states:
                raise ParseError("entry must reference a listed state", lineno)
            entry = states[parts[1]]
        elif parts[0] == "step":
            if len(parts) != 4:
                raise ParseError("expected `step <hash> <op> <hash>`", lineno)
            steps.append((parts[1], parts[3], parts[2]))
        else:
            raise ParseError(f"unknown record type: {parts[0]!r}", lineno)
    if entry is None:
        raise ParseError("history has no entry state")
    nav = NavGraph(graph=g, entry=entry)
    ops = {op.value: op for op in OpKind}
    for src_d, dst_d, op_name in steps:
        if src_d not in states or dst_d not in states:
            raise ParseError(f"step references unlisted state: {src_d} -> {dst_d}")
        if op_name not in ops:
            raise ParseError(f"unknown operator: {op_name}")
        nav.record_step(states[src_d], states[dst_d], ops[op_name])
    return nav
