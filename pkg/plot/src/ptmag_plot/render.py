"""Render parsed figure specs to image files.

One figure spec produces one image; panels become a grid of axes. All data
comes from the CSVs the spec names, validated column by column so a schema
mismatch fails with the offending column named rather than a matplotlib
traceback.
"""
from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .csvdata import SpecError, Table, load_table
from .figspec import FigureSpec, Panel

_DPI = 150
_PANEL_W, _PANEL_H = 4.8, 3.4


def _draw_trajectory(ax, panel: Panel, table: Table, context: str) -> None:
    x = table.numeric(panel.x, context)
    labels = panel.labels or panel.y
    marker = "o" if panel.type == "sweep" else None
    for name, label in zip(panel.y, labels):
        ax.plot(x, table.numeric(name, context), label=label,
                marker=marker, markersize=3, linewidth=1.4)
    if len(panel.y) > 1 or panel.labels:
        ax.legend(fontsize=8)


def _draw_grouped_sweep(ax, panel: Panel, table: Table, context: str) -> None:
    x = table.numeric(panel.x, context)
    y = table.numeric(panel.y[0], context)
    groups = table.numeric(panel.group_by, context)
    for value in np.unique(groups):
        mask = groups == value
        order = np.argsort(x[mask])
        ax.plot(x[mask][order], y[mask][order], marker="o", markersize=3,
                linewidth=1.4, label=f"{panel.group_by}={value:g}")
    ax.legend(fontsize=8)


def _draw_scatter(ax, panel: Panel, table: Table, context: str) -> None:
    x = table.numeric(panel.x, context)
    y = table.numeric(panel.y[0], context)
    ax.scatter(x, y, s=12, alpha=0.55, label=panel.y[0])
    if panel.overlay is not None:
        over = load_table(panel.overlay.csv)
        ox = over.numeric(panel.overlay.x, context)
        oy = over.numeric(panel.overlay.y, context)
        order = np.argsort(ox)
        ax.plot(ox[order], oy[order], color="tab:red", linewidth=1.6,
                label=panel.overlay.label or panel.overlay.y)
        ax.legend(fontsize=8)


def _reduce_values(panel: Panel, table: Table, context: str) -> np.ndarray:
    stack = np.stack([table.numeric(v, context) for v in panel.value])
    if panel.reduce == "max_abs":
        return np.max(np.abs(stack), axis=0)
    return np.max(stack, axis=0) - np.min(stack, axis=0)


def _draw_phase_surface(fig, ax, panel: Panel, table: Table,
                        context: str) -> None:
    x = table.numeric(panel.x, context)
    y = table.numeric(panel.y_axis, context)
    val = _reduce_values(panel, table, context)

    xs, ys = np.unique(x), np.unique(y)
    grid = np.full((len(ys), len(xs)), np.nan)
    ix = np.searchsorted(xs, x)
    iy = np.searchsorted(ys, y)
    grid[iy, ix] = val

    mesh = ax.pcolormesh(xs, ys, grid, shading="nearest", cmap="viridis")
    fig.colorbar(mesh, ax=ax, shrink=0.9)

    ep_x, ep_y = [], []
    if panel.ep_csv is not None:
        eps = load_table(panel.ep_csv)
        ep_x.extend(eps.numeric(panel.ep_x, context))
        ep_y.extend(eps.numeric(panel.ep_y, context))
    for mx, my in panel.ep_markers:
        ep_x.append(mx)
        ep_y.append(my)
    if ep_x:
        ax.scatter(ep_x, ep_y, marker="x", s=45, color="white",
                   linewidths=1.6, label="EP")
        ax.legend(fontsize=8, loc="upper right")


def _draw_panel(fig, ax, panel: Panel, index: int) -> None:
    context = f"panel {index + 1} ({panel.type})"
    table = load_table(panel.csv)
    if panel.type == "phase-surface":
        _draw_phase_surface(fig, ax, panel, table, context)
    elif panel.type == "scatter":
        _draw_scatter(ax, panel, table, context)
    elif panel.type == "sweep" and panel.group_by is not None:
        _draw_grouped_sweep(ax, panel, table, context)
    else:
        _draw_trajectory(ax, panel, table, context)

    if panel.logy:
        ax.set_yscale("log")
    if panel.title:
        ax.set_title(panel.title, fontsize=10)
    ax.set_xlabel(panel.xlabel or panel.x, fontsize=9)
    if panel.ylabel:
        ax.set_ylabel(panel.ylabel, fontsize=9)
    if panel.xlim:
        ax.set_xlim(*panel.xlim)
    if panel.ylim:
        ax.set_ylim(*panel.ylim)
    if panel.type != "phase-surface":
        ax.grid(alpha=0.3)
    ax.tick_params(labelsize=8)


def render_figure(spec: FigureSpec, out_dir: Path) -> Path:
    """Render every panel of a spec into one image under out_dir."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    n = len(spec.panels)
    ncols = min(spec.ncols, n)
    nrows = (n + ncols - 1) // ncols
    fig, axes = plt.subplots(nrows, ncols, squeeze=False,
                             figsize=(_PANEL_W * ncols, _PANEL_H * nrows),
                             layout="constrained")
    try:
        for i, panel in enumerate(spec.panels):
            _draw_panel(fig, axes[i // ncols][i % ncols], panel, i)
        for j in range(n, nrows * ncols):
            axes[j // ncols][j % ncols].set_axis_off()
        if spec.title:
            fig.suptitle(spec.title, fontsize=12)
        out_path = out_dir / spec.out_name
        fig.savefig(out_path, dpi=_DPI)
    finally:
        plt.close(fig)
    return out_path
