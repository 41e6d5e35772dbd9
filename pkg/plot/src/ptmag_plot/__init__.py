"""Batch figure renderer for ptmag scenario CSVs."""
from __future__ import annotations

from .csvdata import SpecError, Table, load_table, require_columns
from .figspec import PANEL_TYPES, FigureSpec, Panel, load_figure_spec
from .render import render_figure

__all__ = [
    "SpecError",
    "Table",
    "load_table",
    "require_columns",
    "PANEL_TYPES",
    "FigureSpec",
    "Panel",
    "load_figure_spec",
    "render_figure",
]
