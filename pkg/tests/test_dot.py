from graphlens.core import Filter
from graphlens.dot import view_to_dot
from graphlens.views import View, gen_view, minimal_view, weigh


def test_dot_golden(g0):
    wv = weigh(gen_view(g0, Filter(), {"X"}, {"Y"}))
    expected = (
        "graph view {\n"
        '  "x1" [label="x1 (2)"];\n'
        '  "x2" [label="x2 (2)"];\n'
        '  "x1" -- "x2" [penwidth=1];\n'
        "}\n"
    )
    assert view_to_dot(wv) == expected


def test_dot_empty_view(g0):
    empty = View(
        graph=g0,
        l_c=frozenset({"X"}),
        l_b=frozenset({"Y"}),
        filter=Filter(),
        c_q=frozenset(),
        b_q=frozenset(),
        e_q=frozenset(),
        vertex_support={},
        edge_support={},
        undirected=True,
    )
    assert view_to_dot(weigh(empty)) == "graph view {\n}\n"


def test_dot_minimal_drops_zero_weight(g0):
    wv = weigh(minimal_view(gen_view(g0, Filter(frozenset({"x1"})), {"Z"}, {"Y"})))
    out = view_to_dot(wv)
    assert '"z1" [label="z1 (2)"];' in out
    assert "z2" not in out
