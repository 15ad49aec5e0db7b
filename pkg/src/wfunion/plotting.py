"""Figures written next to the text/JSON reports (PNG, headless backend)."""

from __future__ import annotations

import math

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
from matplotlib.patches import FancyArrowPatch  # noqa: E402

from .relation import COLORS, TriGraph

STYLE = {
    "A": {"color": "#2a7fff", "linestyle": "solid"},
    "B": {"color": "black", "linestyle": "dotted"},
    "C": {"color": "crimson", "linestyle": "dashed"},
}


def _layout(n: int):
    if n == 1:
        return [(0.0, 0.0)]
    # first node at the left, counter-clockwise
    return [(-math.cos(2 * math.pi * i / n), -math.sin(2 * math.pi * i / n)) for i in range(n)]


def draw_graph(g: TriGraph, path: str, title: str | None = None, highlight=()) -> str:
    """Render ``g`` with per-color edge styles; ``highlight`` steps are drawn thick."""
    pos = _layout(g.n)
    hot = {tuple(s) for s in highlight}
    fig, ax = plt.subplots(figsize=(4.5, 4.5))
    for tag in COLORS:
        # parallel edges of different colors get different bends
        bend = {"A": 0.12, "B": 0.28, "C": -0.2}[tag]
        for x, y in sorted(g.color(tag)):
            width = 3.0 if (x, tag, y) in hot else 1.4
            if x == y:
                cx, cy = pos[x]
                r = 0.16 + 0.05 * COLORS.index(tag)
                ax.add_patch(plt.Circle((cx * 1.25, cy * 1.25), r, fill=False,
                                        lw=width, **STYLE[tag]))
                continue
            arrow = FancyArrowPatch(pos[x], pos[y], arrowstyle="-|>", mutation_scale=14,
                                    connectionstyle=f"arc3,rad={bend}", shrinkA=13, shrinkB=13,
                                    lw=width, **STYLE[tag])
            ax.add_patch(arrow)
    for i, (px, py) in enumerate(pos):
        ax.add_patch(plt.Circle((px, py), 0.1, color="white", ec="black", zorder=3))
        ax.text(px, py, str(i), ha="center", va="center", zorder=4)
    for tag in COLORS:
        ax.plot([], [], label=tag, **STYLE[tag])
    ax.legend(loc="upper right", fontsize=8, frameon=False)
    ax.set_xlim(-1.6, 1.6)
    ax.set_ylim(-1.6, 1.6)
    ax.set_aspect("equal")
    ax.axis("off")
    if title:
        ax.set_title(title, fontsize=10)
    fig.savefig(path, dpi=110, bbox_inches="tight")
    plt.close(fig)
    return path


def draw_counts(counts: dict, path: str, title: str | None = None) -> str:
    """Bar chart of a scan's integer counts (log scale when they span decades)."""
    items = [(k, v) for k, v in counts.items() if isinstance(v, int)]
    fig, ax = plt.subplots(figsize=(6, 3.2))
    labels = [k for k, _ in items]
    values = [v for _, v in items]
    ax.bar(range(len(items)), [max(v, 0) for v in values], color="#556b8d")
    ax.set_xticks(range(len(items)), labels, rotation=30, ha="right", fontsize=8)
    positive = [v for v in values if v > 0]
    if positive and max(positive) > 100 * min(positive):
        ax.set_yscale("symlog")
    for i, v in enumerate(values):
        ax.annotate(str(v), (i, max(v, 0)), ha="center", va="bottom", fontsize=7)
    if title:
        ax.set_title(title, fontsize=10)
    fig.tight_layout()
    fig.savefig(path, dpi=110)
    plt.close(fig)
    return path
