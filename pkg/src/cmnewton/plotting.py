"""Newton polygon figures."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

# fixed salt and no date stamp so identical input gives identical SVG bytes
STYLE = {
    "svg.hashsalt": "cmnewton",
    "svg.fonttype": "path",
    "font.size": 9,
    "axes.spines.right": False,
    "axes.spines.top": False,
    "lines.linewidth": 1.5,
    "lines.markersize": 5,
}


def render_newton_polygons(polygons, path, labels=None, title=None):
    """Draw one or more Newton polygons as lattice paths and save to ``path``.

    The format follows the file suffix (``.svg``, ``.png``, ``.pdf``).
    Identical polygons are drawn once, with their labels merged.
    """
    labels = list(labels) if labels is not None else [None] * len(polygons)
    merged: dict = {}
    for poly, lab in zip(polygons, labels):
        key = tuple(poly.vertices())
        merged.setdefault(key, []).append(lab)

    with plt.rc_context(STYLE):
        fig, ax = plt.subplots(figsize=(4.0, 3.2))
        width = max(key[-1][0] for key in merged)
        for k, (verts, labs) in enumerate(merged.items()):
            xs = [float(x) for x, _ in verts]
            ys = [float(y) for _, y in verts]
            text = ", ".join(str(lab) for lab in labs if lab is not None) or None
            ax.plot(xs, ys, marker="o", label=text, zorder=3 + k)
        ax.plot([0, width], [0, width / 2], linestyle=":", color="0.6", linewidth=1,
                label="supersingular", zorder=1)
        ax.set_xlim(-0.2, width + 0.2)
        ax.set_ylim(-0.2, width / 2 + 0.4 if width else 1)
        ax.set_xticks(range(width + 1))
        ax.set_yticks(range(width // 2 + 1))
        ax.grid(True, color="0.9", linewidth=0.5, zorder=0)
        ax.set_xlabel("height")
        ax.set_ylabel("dimension")
        if title:
            ax.set_title(title)
        if any(lab is not None for lab in labels) or len(merged) > 1:
            ax.legend(frameon=False, fontsize=7, loc="upper left")
        fig.tight_layout()
        fig.savefig(path, metadata={"Date": None} if str(path).endswith(".svg") else None)
        plt.close(fig)
    return path
