import random

import pytest

from graphlens.core import Filter, ingest_graph
from graphlens.errors import (
    DisjointnessViolation,
    EmptyLabelSet,
    PreconditionViolation,
    Unconnectable,
    UnknownLabel,
)
from graphlens.oracle import brute_view_supports
from graphlens.views import gen_view, minimal_view, vis_equivalent, weigh

from conftest import random_labeled_graph


def check_view_invariants(v):
    g = v.graph
    assert all(g.label_of[u] in v.l_c for u in v.c_q)
    assert all(g.label_of[b] in v.l_b for b in v.b_q)
    assert v.l_q == v.l_c | v.l_b
    assert set(v.vertex_support) == set(v.c_q)
    for sup in v.vertex_support.values():
        assert sup <= v.b_q
    for (a, b), sup in v.edge_support.items():
        assert a < b and a in v.c_q and b in v.c_q
        assert sup and sup <= v.b_q
        # an edge bridge supports both endpoints
        assert sup <= v.vertex_support[a]
        assert sup <= v.vertex_support[b]
    assert v.e_q == frozenset(v.edge_support)


def test_gen_view_x_over_y(g0):
    v = gen_view(g0, Filter(), {"X"}, {"Y"})
    assert v.c_q == {"x1", "x2"}
    assert v.b_q == {"y1", "y2", "y3"}
    assert v.vertex_support["x1"] == {"y1", "y2"}
    assert v.vertex_support["x2"] == {"y2", "y3"}
    assert v.e_q == {("x1", "x2")}
    assert v.edge_support[("x1", "x2")] == {"y2"}
    check_view_invariants(v)


def test_gen_view_z_over_y_filtered(g0):
    v = gen_view(g0, Filter(frozenset({"x1"})), {"Z"}, {"Y"})
    assert v.c_q == {"z1", "z2"}
    assert v.vertex_support["z1"] == {"y1", "y2"}
    assert v.vertex_support["z2"] == frozenset()
    assert v.e_q == frozenset()
    check_view_invariants(v)


def test_gen_view_selected_branch(g0):
    # filter members carrying view labels switch c_q to exactly those members
    v = gen_view(g0, Filter(frozenset({"x1", "z1"})), {"Z"}, {"Y"})
    assert v.c_q == {"z1"}
    assert v.vertex_support["z1"] == {"y1", "y2"}
    check_view_invariants(v)


def test_gen_view_empty_filter_never_selects(g0):
    v = gen_view(g0, Filter(), {"Z"}, {"Y"})
    assert v.c_q == {"z1", "z2"}


def test_gen_view_validation(g0):
    with pytest.raises(EmptyLabelSet):
        gen_view(g0, Filter(), set(), {"Y"})
    with pytest.raises(DisjointnessViolation):
        gen_view(g0, Filter(), {"X"}, {"X"})
    with pytest.raises(UnknownLabel):
        gen_view(g0, Filter(), {"Q"}, {"Y"})


def test_gen_view_unconnectable():
    g = ingest_graph([("a", "A"), ("b", "B")], [])
    with pytest.raises(Unconnectable):
        gen_view(g, Filter(), {"A"}, {"B"})


def test_weigh_cardinalities(g0):
    wv = weigh(gen_view(g0, Filter(), {"X"}, {"Y"}))
    assert wv.vertex_weight == {"x1": 2, "x2": 2}
    assert wv.edge_weight == {("x1", "x2"): 1}


def test_weigh_zero_weight_vertex(g0):
    wv = weigh(gen_view(g0, Filter(frozenset({"x1"})), {"Z"}, {"Y"}))
    assert wv.vertex_weight == {"z1": 2, "z2": 0}
    assert wv.edge_weight == {}


def test_weigh_custom_aggregator(g0):
    wv = weigh(gen_view(g0, Filter(), {"X"}, {"Y"}), aggregate=lambda s: 10 * len(s))
    assert wv.vertex_weight["x1"] == 20


def test_minimal_view_drops_empty_supports(g0):
    v = gen_view(g0, Filter(frozenset({"x1"})), {"Z"}, {"Y"})
    mv = minimal_view(v)
    assert mv.c_q == {"z1"}
    assert mv.vertex_support == {"z1": frozenset({"y1", "y2"})}
    check_view_invariants(mv)


def test_minimal_view_noop_and_idempotent(g0):
    v = gen_view(g0, Filter(), {"X"}, {"Y"})
    mv = minimal_view(v)
    assert mv.c_q == v.c_q  # nothing to drop
    assert minimal_view(mv) == mv


def test_vis_equivalent_with_minimal(g0):
    v = gen_view(g0, Filter(frozenset({"x1"})), {"Z"}, {"Y"})
    assert vis_equivalent(v, minimal_view(v))


def test_vis_equivalent_filters_differ_on_view_labels(g0):
    # selecting z1 shrinks the view by exactly the empty-support vertex z2
    v1 = gen_view(g0, Filter(frozenset({"x1", "z1"})), {"Z"}, {"Y"})
    v2 = gen_view(g0, Filter(frozenset({"x1"})), {"Z"}, {"Y"})
    assert vis_equivalent(v1, v2)


def test_vis_equivalent_false_when_support_differs(g0):
    v3 = gen_view(g0, Filter(frozenset({"x1", "z2"})), {"Z"}, {"Y"})
    v4 = gen_view(g0, Filter(frozenset({"x1", "z1"})), {"Z"}, {"Y"})
    # difference vertices: z2 (empty) vs z1 (supported) -> not equivalent
    assert not vis_equivalent(v3, v4)
    v5 = gen_view(g0, Filter(frozenset({"x1", "z2"})), {"Z"}, {"Y"})
    v6 = gen_view(g0, Filter(frozenset({"x1"})), {"Z"}, {"Y"})
    # v6 shows the supported z1 that v5 hides
    assert not vis_equivalent(v5, v6)


def test_vis_equivalent_preconditions(g0):
    v1 = gen_view(g0, Filter(), {"X"}, {"Y"})
    v2 = gen_view(g0, Filter(), {"Z"}, {"Y"})
    with pytest.raises(PreconditionViolation):
        vis_equivalent(v1, v2)
    v3 = gen_view(g0, Filter(frozenset({"y1"})), {"X"}, {"Y"})
    with pytest.raises(PreconditionViolation):
        vis_equivalent(v1, v3)


def test_serialization_field_order_and_bytes(g0):
    wv = weigh(gen_view(g0, Filter(), {"X"}, {"Y"}))
    assert list(wv.document().keys()) == ["l_c", "l_b", "filter", "vertices", "edges"]
    expected = """{
  "l_c": [
    "X"
  ],
  "l_b": [
    "Y"
  ],
  "filter": [],
  "vertices": [
    {
      "id": "x1",
      "label": "X",
      "weight": 2,
      "support": [
        "y1",
        "y2"
      ]
    },
    {
      "id": "x2",
      "label": "X",
      "weight": 2,
      "support": [
        "y2",
        "y3"
      ]
    }
  ],
  "edges": [
    {
      "u": "x1",
      "v": "x2",
      "weight": 1,
      "support": [
        "y2"
      ]
    }
  ]
}
"""
    assert wv.to_json() == expected
    assert wv.to_json() == weigh(gen_view(g0, Filter(), {"X"}, {"Y"})).to_json()


def test_directed_mode_matches_undirected_on_one_way_data(g0):
    # all G0 edges run X->Y->Z, so exact-direction matching finds the same
    # chains and the pair's second pattern adds nothing
    for l_c, l_b in [({"X"}, {"Y"}), ({"Z"}, {"Y"}), ({"X"}, {"Z"})]:
        vu = gen_view(g0, Filter(), l_c, l_b, undirected=True)
        vd = gen_view(g0, Filter(), l_c, l_b, undirected=False)
        assert vu.vertex_support == vd.vertex_support
        assert vd.edge_support == vu.edge_support


def test_directed_mode_rejects_mixed_direction_chains():
    # a -> m <- b: undirected mode links a and b through m, directed cannot
    g = ingest_graph(
        [("a", "A"), ("b", "B"), ("m", "M")],
        [("a", "m"), ("b", "m")],
    )
    vu = gen_view(g, Filter(), {"A"}, {"B"}, undirected=True)
    assert vu.vertex_support["a"] == {"b"}
    vd = gen_view(g, Filter(), {"A"}, {"B"}, undirected=False)
    assert vd.vertex_support["a"] == frozenset()


def test_gen_view_agrees_with_bruteforce_sample():
    rng = random.Random(515151)
    compared = 0
    while compared < 60:
        g = random_labeled_graph(rng)
        labels = sorted(g.labels)
        l_c = {rng.choice(labels)}
        rest = [l for l in labels if l not in l_c]
        if not rest:
            continue
        l_b = {rng.choice(rest)}
        f = Filter(frozenset(v for v in g.vertices if rng.random() < 0.25))
        undirected = rng.random() < 0.6
        try:
            v = gen_view(g, f, l_c, l_b, undirected=undirected)
        except Unconnectable:
            continue
        c_q, b_q, vs, es = brute_view_supports(g, f, l_c, l_b, undirected=undirected)
        assert v.c_q == c_q
        assert v.b_q == b_q
        assert v.vertex_support == vs
        assert v.edge_support == es
        check_view_invariants(v)
        compared += 1
