"""Render region and contour CSVs into fixed-layout scatter figures.

d=3 gives the 2D invariant plane with the O, B, G landmark annotations
and optional boundary-curve overlays; d=4 gives a 3D scatter.  Every
invariant axis is pinned to [0, 1] and output is PNG at 150 dpi with
pinned metadata, so a given set of input files renders byte-identically.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from . import schema

DPI = 150

ENSEMBLE_COLORS = {"schmidt": "red", "yb": "blue"}

# invariant-plane landmarks: separable corner, balanced two-term state,
# maximally entangled corner
LANDMARKS = {
    "O": (0.0, 0.0),
    "B": (0.75, 0.84375),
    "G": (1.0, 1.0),
}

_LABEL_OFFSETS = {"O": (0.015, 0.03), "B": (0.02, -0.045), "G": (-0.045, -0.06)}


@dataclass(frozen=True)
class PlotSpec:
    """One figure request: input files, output path, geometry knobs."""

    d: int
    out_path: str
    schmidt_path: str | None = None
    yb_path: str | None = None
    contours_path: str | None = None
    point_size: float = 2.0
    colors: dict[str, str] = field(default_factory=lambda: dict(ENSEMBLE_COLORS))

    def __post_init__(self):
        if self.d not in (3, 4):
            raise ValueError(f"only d=3 (2D) and d=4 (3D) figures are defined, got d={self.d}")
        if self.d == 4 and self.contours_path is not None:
            raise ValueError("boundary contours are 2D curves; no overlay exists for d=4")


def _gather_points(spec: PlotSpec) -> dict[str, list[tuple[float, ...]]]:
    points: dict[str, list[tuple[float, ...]]] = {}
    for path in (spec.schmidt_path, spec.yb_path):
        if path is None:
            continue
        for ensemble, coords in schema.read_region(path, spec.d).items():
            points.setdefault(ensemble, []).extend(coords)
    return points


def _scatter_order(points: dict) -> list[str]:
    """schmidt first so the yb overlay lands on top, extras last."""
    known = [k for k in ("schmidt", "yb") if k in points]
    return known + sorted(k for k in points if k not in ("schmidt", "yb"))


def _render_plane(spec: PlotSpec, ax) -> None:
    points = _gather_points(spec)
    for ensemble in _scatter_order(points):
        xs = [p[0] for p in points[ensemble]]
        ys = [p[1] for p in points[ensemble]]
        ax.scatter(xs, ys, s=spec.point_size, linewidths=0,
                   color=spec.colors.get(ensemble, "gray"), label=ensemble)
    if spec.contours_path is not None:
        for name, pts in schema.read_contours(spec.contours_path).items():
            ax.plot([p[0] for p in pts], [p[1] for p in pts],
                    color="black", linewidth=1.0, zorder=3)
    for name, (x, y) in LANDMARKS.items():
        ax.plot([x], [y], marker="o", markersize=4, color="black", zorder=4)
        dx, dy = _LABEL_OFFSETS[name]
        ax.annotate(f"{name} ({x:g}, {y:g})", (x, y), (x + dx, y + dy), zorder=4)
    ax.set_xlim(0.0, 1.0)
    ax.set_ylim(0.0, 1.0)
    ax.set_xlabel("$I'_1$")
    ax.set_ylabel("$I'_2$")
    if points:
        ax.legend(loc="lower right", markerscale=4)


def _render_volume(spec: PlotSpec, ax) -> None:
    points = _gather_points(spec)
    for ensemble in _scatter_order(points):
        xs = [p[0] for p in points[ensemble]]
        ys = [p[1] for p in points[ensemble]]
        zs = [p[2] for p in points[ensemble]]
        ax.scatter(xs, ys, zs, s=spec.point_size, linewidths=0,
                   color=spec.colors.get(ensemble, "gray"), label=ensemble)
    ax.set_xlim(0.0, 1.0)
    ax.set_ylim(0.0, 1.0)
    ax.set_zlim(0.0, 1.0)
    ax.set_xlabel("$I'_1$")
    ax.set_ylabel("$I'_2$")
    ax.set_zlabel("$I'_3$")
    if points:
        ax.legend(loc="upper left", markerscale=4)


def render(spec: PlotSpec) -> None:
    """Write the figure for `spec`; raises before touching the output on bad input."""
    fig = plt.figure(figsize=(6.4, 6.4) if spec.d == 3 else (7.2, 6.4))
    try:
        if spec.d == 3:
            _render_plane(spec, fig.add_subplot())
        else:
            _render_volume(spec, fig.add_subplot(projection="3d"))
        fig.savefig(spec.out_path, dpi=DPI, metadata={"Software": "figplot"})
    finally:
        plt.close(fig)
