"""DOT rendering of trellis diagrams.

States appear as per-time columns (time 0 duplicated at both ends), dashed
edges carry the zero symbol, solid edges a nonzero one.  Output is fully
deterministic: states in lexicographic order, edges sorted.
"""

from __future__ import annotations

from .galois import Subspace
from .trellis import Trellis


def _label(vec) -> str:
    if not vec:
        return "-"
    return "".join(str(x) for x in vec)


def _node(col: int, vec) -> str:
    return f"t{col}_{_label(vec)}"


def to_dot(t: Trellis) -> str:
    lines = ["digraph trellis {", "  rankdir=LR;", '  node [shape=circle, fontsize=10];']
    cols = t.m + 1
    for col in range(cols):
        i = col % t.m
        states = sorted(Subspace.full(t.field, t.state_dims[i]).vectors())
        names = "; ".join(f'"{_node(col, v)}"' for v in states)
        lines.append(f"  {{ rank=same; {names}; }}")
        for v in states:
            lines.append(f'  "{_node(col, v)}" [label="{_label(v)}"];')
    for i in range(t.m):
        dl = t.state_dims[i]
        da = t.symbol_dims[i]
        edges = []
        for br in sorted(t.constraints[i].vectors()):
            left = br[:dl]
            sym = br[dl:dl + da]
            right = br[dl + da:]
            style = "dashed" if not any(sym) else "solid"
            attrs = [f"style={style}"]
            if da > 1 or (da == 1 and t.field.p > 2 and any(sym)):
                attrs.append(f'label="{_label(sym)}"')
            edges.append(
                f'  "{_node(i, left)}" -> "{_node(i + 1, right)}" [{", ".join(attrs)}];'
            )
        lines.extend(sorted(edges))
    lines.append("}")
    return "\n".join(lines) + "\n"
