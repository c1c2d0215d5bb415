"""DOT output for annotated trees."""

from __future__ import annotations

from .arrangement import ArrangementSpec
from .contribution import s_connected_components
from .errors import NotApplicableError
from .ish import classify_tree, lower_inefficient_nodes, upper_inefficient_nodes
from .trees import PlaneTree, maximal_cadet_sequences

__all__ = ["render_dot", "RENDER_MODES"]

RENDER_MODES = ("boxes", "connected", "classification")
_PALETTE = ("lightblue", "orange", "palegreen", "pink", "khaki", "plum", "lightgrey", "salmon")


def _groups(spec: ArrangementSpec, tree: PlaneTree):
    """Maximal runs and connected components as label tuples, each of size > 1."""
    runs, comps = [], []
    for chain in maximal_cadet_sequences(tree):
        for ctx in s_connected_components(spec, tree, chain):
            if ctx.k > 1:
                comps.append(ctx.nodes)
            for r in range(1, ctx.kprime + 1):
                box = ctx.box_nodes(r)
                if len(box) > 1:
                    runs.append(box)
    return runs, comps


def render_dot(spec: ArrangementSpec, tree: PlaneTree, what: str = "boxes") -> str:
    if what not in RENDER_MODES:
        raise ValueError(f"unknown render mode {what!r}; choose from {RENDER_MODES}")
    runs, comps = _groups(spec, tree)
    colour = {}
    for idx, comp in enumerate(comps):
        for v in comp:
            colour[v] = _PALETTE[idx % len(_PALETTE)]
    seen: dict[int, int] = {}
    for box in runs:
        for v in box:
            seen[v] = seen.get(v, 0) + 1

    label = None
    notes: dict[int, str] = {}
    if what == "classification":
        try:
            cls = classify_tree(spec, tree)
            label = "zero-contribution" if cls is None else str(cls)
        except NotApplicableError:
            cls = None
            label = "not almost transitive"
        if cls is not None:
            for w in lower_inefficient_nodes(spec, tree):
                notes[w] = "lower"
            for w in upper_inefficient_nodes(spec, tree):
                notes[w] = "upper"

    out = ["digraph tree {", "  graph [ordering=out, rankdir=BT];"]
    if label is not None:
        out.append(f'  graph [label="{label}", labelloc=t];')
    out.append("  node [shape=circle];")
    for v in tree.preorder():
        attrs = [f'label="{v}"']
        if v in colour:
            attrs.append(f'style=filled, fillcolor="{colour[v]}"')
        if seen.get(v, 0) > 1:
            attrs.append("peripheries=2")
        if v in notes:
            attrs.append(f'xlabel="{notes[v]}"')
        out.append(f"  n{v} [{', '.join(attrs)}];")
    for v in tree.preorder():
        for idx, c in enumerate(tree.children[v - 1]):
            if c is None:
                out.append(f"  l{v}_{idx} [shape=point, label=\"\"];")
                out.append(f"  n{v} -> l{v}_{idx} [dir=none];")
            else:
                out.append(f"  n{v} -> n{c} [dir=none];")
    clusters = comps if what == "connected" else runs
    # a node can only sit in one DOT cluster; shared nodes go to the first box
    placed: set[int] = set()
    for idx, group in enumerate(clusters):
        members = [v for v in group if v not in placed]
        placed.update(members)
        names = " ".join(f"n{v};" for v in members)
        out.append(f'  subgraph cluster_{idx} {{ style=dashed; label="{{{",".join(map(str, group))}}}"; {names} }}')
    out.append("}")
    return "\n".join(out) + "\n"
