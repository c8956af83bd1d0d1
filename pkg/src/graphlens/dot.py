"""DOT rendering of weighted views.

Vertex weight is appended to the node label, edge weight becomes penwidth.
Output is fully sorted and the attribute order is fixed, so renders are
byte-stable and suitable for golden-file comparison.
"""

from __future__ import annotations

from .views import WeightedView


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def view_to_dot(wv: WeightedView, name: str = "view") -> str:
    v = wv.view
    lines = [f"graph {name} {{"]
    for u in sorted(v.c_q):
        label = f"{u} ({wv.vertex_weight[u]})"
        lines.append(f"  {_quote(u)} [label={_quote(label)}];")
    for a, b in sorted(v.e_q):
        lines.append(f"  {_quote(a)} -- {_quote(b)} [penwidth={wv.edge_weight[(a, b)]}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
