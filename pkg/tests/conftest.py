import random

import pytest

from graphlens.core import LabeledGraph, ingest_graph

# Desk fixture used across the suite: two X vertices fan out over three Y
# vertices which feed two Z sinks.
G0_NODES = [
    ("x1", "X"), ("x2", "X"),
    ("y1", "Y"), ("y2", "Y"), ("y3", "Y"),
    ("z1", "Z"), ("z2", "Z"),
]
G0_EDGES = [
    ("x1", "y1"), ("x1", "y2"), ("x2", "y2"), ("x2", "y3"),
    ("y1", "z1"), ("y2", "z1"), ("y3", "z2"),
]


@pytest.fixture
def g0() -> LabeledGraph:
    return ingest_graph(G0_NODES, G0_EDGES)


# A 15-vertex, 7-label graph shaped like the small publication network used
# in the examples: label1 vertices bridge into a label3 layer, and a chain
# label2 -> label4 -> label5 -> label6 -> label7 hangs off the side.
FIG_NODES = [
    ("v1", "label1"), ("v2", "label1"), ("v3", "label1"),
    ("v4", "label2"), ("v5", "label2"),
    ("v6", "label3"), ("v7", "label3"), ("v8", "label3"), ("v9", "label3"),
    ("v10", "label4"), ("v11", "label4"),
    ("v12", "label5"), ("v13", "label5"),
    ("v14", "label6"), ("v15", "label7"),
]
FIG_EDGES = [
    ("v1", "v6"), ("v1", "v7"), ("v2", "v7"), ("v2", "v8"), ("v3", "v8"), ("v3", "v9"),
    ("v1", "v4"), ("v2", "v5"),
    ("v4", "v10"), ("v5", "v11"),
    ("v10", "v12"), ("v11", "v13"),
    ("v12", "v14"), ("v14", "v15"),
]


@pytest.fixture
def fig_graph() -> LabeledGraph:
    return ingest_graph(FIG_NODES, FIG_EDGES)


def random_labeled_graph(
    rng: random.Random,
    max_vertices: int = 12,
    max_labels: int = 4,
    connected_schema: bool = False,
) -> LabeledGraph:
    """Small random graph for oracle comparisons and operator fuzzing."""
    n_labels = rng.randint(2, max_labels)
    labels = [f"L{i}" for i in range(n_labels)]
    n = rng.randint(2, max_vertices)
    nodes = [(f"v{i}", rng.choice(labels)) for i in range(n)]
    nodes[0] = ("v0", labels[0])
    nodes[1] = ("v1", labels[1])  # at least two labels in every graph
    used = sorted({label for _, label in nodes})
    density = rng.uniform(0.05, 0.5)
    edges = [
        (f"v{i}", f"v{j}")
        for i in range(n)
        for j in range(n)
        if i != j and rng.random() < density
    ]
    if connected_schema and len(used) > 1:
        # chain one vertex of each label so every label pair is connectable
        carriers = {label: next(v for v, l in nodes if l == label) for label in used}
        for a, b in zip(used, used[1:]):
            edges.append((carriers[a], carriers[b]))
    return ingest_graph(nodes, edges)
