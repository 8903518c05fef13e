"""Figure rendering for the report-producing commands.

Trees are drawn layered from a center root; anything else falls back to a
circular layout.  Files are written wherever the caller points.
"""

from __future__ import annotations

import math
from pathlib import Path
from typing import Iterable, Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .graph import Graph, _tree_centers, connected_components, is_forest


def _subtree_layout(
    g: Graph, root: int, parent: int, depth: int, next_x: list[float], pos: dict
) -> float:
    children = sorted(w for w in g.neighbors(root) if w != parent)
    if not children:
        x = next_x[0]
        next_x[0] += 1.0
    else:
        xs = [_subtree_layout(g, c, root, depth + 1, next_x, pos) for c in children]
        x = sum(xs) / len(xs)
    pos[root] = (x, -float(depth))
    return x


def graph_layout(g: Graph) -> dict[int, tuple[float, float]]:
    pos: dict[int, tuple[float, float]] = {}
    if g.n == 0:
        return pos
    if is_forest(g):
        next_x = [0.0]
        for block in connected_components(g):
            root = _tree_centers(g, block)[0]
            _subtree_layout(g, root, 0, 0, next_x, pos)
            next_x[0] += 1.0
        return pos
    for k, v in enumerate(sorted(g.vertices)):
        angle = 2.0 * math.pi * k / g.n
        pos[v] = (math.cos(angle), math.sin(angle))
    return pos


def render_graph(
    g: Graph, path: str | Path, title: str = "", highlight: Iterable[int] = ()
) -> Path:
    path = Path(path)
    hot = set(highlight)
    pos = graph_layout(g)
    fig, ax = plt.subplots(figsize=(4.2, 3.4))
    for i, j in sorted(g.edges):
        (x1, y1), (x2, y2) = pos[i], pos[j]
        ax.plot([x1, x2], [y1, y2], color="#667788", zorder=1, linewidth=1.4)
    for v in g.vertices:
        x, y = pos[v]
        color = "#d94f30" if v in hot else "#2a6fb0"
        ax.scatter([x], [y], s=360, color=color, zorder=2)
        ax.annotate(
            f"x{v}", (x, y), color="white", ha="center", va="center", zorder=3
        )
    if g.n == 0:
        ax.annotate("(empty)", (0.5, 0.5), ha="center", va="center")
    ax.set_title(title)
    ax.set_axis_off()
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def render_rank_chart(
    degrees: Sequence[int], ranks: Sequence[int], path: str | Path, title: str
) -> Path:
    path = Path(path)
    fig, ax = plt.subplots(figsize=(4.6, 3.2))
    ax.bar([str(d) for d in degrees], ranks, color="#2a6fb0")
    ax.set_xlabel("total degree")
    ax.set_ylabel("basis size")
    ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path
