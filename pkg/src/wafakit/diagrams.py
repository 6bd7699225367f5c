"""DOT and matplotlib renderings.

Alternating automata are drawn with one multi-arrow per transition
monomial: single-head monomials become plain edges, higher-degree ones
fan out of an auxiliary junction dot, with head multiplicities matching
the exponents.  Run trees render either as DOT digraphs or as PNG
figures written to disk.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .trees import Term
from .wafa import RunTree, Wafa


def _dot_id(name: str) -> str:
    return '"' + name.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _dot_label(text: str) -> str:
    # keeps \n line breaks intact, escapes quotes only
    return '"' + text.replace('"', '\\"') + '"'


def wafa_dot(A: Wafa) -> str:
    ring = A.ring
    lines = ["digraph wafa {", "  rankdir=LR;", "  node [shape=circle];"]
    for q in A.states:
        label = f"{q}\\nout={ring.format_value(A.tau[q])}"
        lines.append(f"  {_dot_id(q)} [label={_dot_label(label)}];")
    junction = 0

    def emit_monomial(src: str | None, mono, label: str):
        nonlocal junction
        heads: list[str] = []
        for v, e in mono.exps:
            heads.extend([A.states[v - 1]] * e)
        if src is None:
            start = f"__init{junction}"
            junction += 1
            lines.append(f"  {_dot_id(start)} [shape=point, style=invis];")
        else:
            start = src
        if len(heads) == 1:
            lines.append(f"  {_dot_id(start)} -> {_dot_id(heads[0])} [label={_dot_label(label)}];")
            return
        dot = f"__j{junction}"
        junction += 1
        lines.append(f"  {_dot_id(dot)} [shape=point, label=\"\"];")
        lines.append(f"  {_dot_id(start)} -> {_dot_id(dot)} [label={_dot_label(label)}, arrowhead=none];")
        for h in heads:
            lines.append(f"  {_dot_id(dot)} -> {_dot_id(h)};")

    for m in A.p0.monomials:
        label = "" if ring.is_one(m.coeff) else ring.format_value(m.coeff)
        if m.exps:
            emit_monomial(None, m, label)
    for q in A.states:
        for a in A.alphabet:
            for m in A.delta[(q, a)].monomials:
                coeff = "" if ring.is_one(m.coeff) else f":{ring.format_value(m.coeff)}"
                if m.exps:
                    emit_monomial(q, m, f"{a}{coeff}")
    lines.append("}")
    return "\n".join(lines) + "\n"


def run_dot(run: RunTree) -> str:
    lines = ["digraph run {", "  node [shape=box];"]
    counter = 0

    def walk(t: Term) -> str:
        nonlocal counter
        me = f"n{counter}"
        counter += 1
        lines.append(f"  {me} [label={_dot_id(t.sym)}];")
        for c in t.children:
            lines.append(f"  {me} -> {walk(c)};")
        return me

    walk(run.term)
    lines.append("}")
    return "\n".join(lines) + "\n"


def _layout(t: Term):
    """Leaf-ordered x coordinates, depth for y; returns nodes and edges."""
    nodes = []  # (x, y, label)
    edges = []  # ((x1,y1),(x2,y2))
    next_x = [0.0]

    def place(u: Term, depth: int):
        if not u.children:
            x = next_x[0]
            next_x[0] += 1.0
        else:
            xs = []
            for c in u.children:
                xs.append(place(c, depth + 1))
            x = sum(x0 for x0, _ in xs) / len(xs)
            for child_pt in xs:
                edges.append(((x, -depth), child_pt))
        nodes.append((x, -depth, u.sym))
        return (x, -depth)

    place(t, 0)
    return nodes, edges


def run_figure(run: RunTree, path: str):
    """Render one run tree to an image file."""
    nodes, edges = _layout(run.term)
    width = max(x for x, _, _ in nodes) - min(x for x, _, _ in nodes) + 1
    height = -min(y for _, y, _ in nodes) + 1
    fig, ax = plt.subplots(figsize=(max(3.0, 1.6 * width), max(2.0, 1.1 * height)))
    for (x1, y1), (x2, y2) in edges:
        ax.plot([x1, x2], [y1, y2], color="0.55", linewidth=1.0, zorder=1)
    for x, y, label in nodes:
        ax.text(
            x,
            y,
            label,
            ha="center",
            va="center",
            fontsize=9,
            zorder=2,
            bbox=dict(boxstyle="round,pad=0.25", facecolor="white", edgecolor="0.3"),
        )
    ax.set_axis_off()
    ax.margins(0.15)
    fig.savefig(path, dpi=120, bbox_inches="tight")
    plt.close(fig)
