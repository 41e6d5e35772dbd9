"""Figure-spec parsing.

A figure spec is a small JSON object: figure-level settings plus a list of
panels. Each panel names a CSV, the columns to draw, and how to draw them.
Relative CSV paths resolve against the directory holding the spec file, so a
spec dropped next to its scenario's CSVs works as-is.

Panel types:
    trajectory     time-series curves: one x column, one line per y column
    sweep          parameter-sweep curves with point markers; optional
                   group_by splits a single y column into one line per
                   distinct group value
    scatter        one point cloud, optionally with a summary line overlaid
                   from a second CSV
    phase-surface  heatmap of a reduced value over an (x, y_axis) grid,
                   optionally with exceptional-point markers
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .csvdata import SpecError

PANEL_TYPES = ("trajectory", "sweep", "scatter", "phase-surface")
REDUCE_MODES = ("max_abs", "spread")

_FIGURE_KEYS = {"title", "out_name", "ncols", "panels"}
_COMMON_KEYS = {"type", "csv", "title", "xlabel", "ylabel", "xlim", "ylim"}
_PANEL_KEYS = {
    "trajectory": _COMMON_KEYS | {"x", "y", "labels", "logy"},
    "sweep": _COMMON_KEYS | {"x", "y", "labels", "logy", "group_by"},
    "scatter": _COMMON_KEYS | {"x", "y", "overlay"},
    "phase-surface": _COMMON_KEYS | {"x", "y_axis", "value", "reduce",
                                     "ep_csv", "ep_x", "ep_y", "ep_markers"},
}


@dataclass(frozen=True)
class Overlay:
    """A single line drawn over a scatter panel from a second CSV."""

    csv: Path
    x: str
    y: str
    label: str | None = None


@dataclass(frozen=True)
class Panel:
    type: str
    csv: Path
    x: str
    y: tuple[str, ...] = ()
    labels: tuple[str, ...] | None = None
    title: str | None = None
    xlabel: str | None = None
    ylabel: str | None = None
    xlim: tuple[float, float] | None = None
    ylim: tuple[float, float] | None = None
    logy: bool = False
    group_by: str | None = None
    overlay: Overlay | None = None
    y_axis: str | None = None
    value: tuple[str, ...] = ()
    reduce: str = "max_abs"
    ep_csv: Path | None = None
    ep_x: str = "delta_star"
    ep_y: str = "g_over_2pi_MHz"
    ep_markers: tuple[tuple[float, float], ...] = ()


@dataclass(frozen=True)
class FigureSpec:
    path: Path
    out_name: str
    title: str | None
    ncols: int
    panels: tuple[Panel, ...] = field(default_factory=tuple)


def _take(raw: dict, key: str, kind, default, context: str):
    if key not in raw:
        return default
    val = raw[key]
    if kind is float and isinstance(val, int) and not isinstance(val, bool):
        val = float(val)
    bool_mismatch = isinstance(val, bool) and kind is not bool
    if bool_mismatch or not isinstance(val, kind):
        raise SpecError(f"{context}: {key} must be {kind.__name__}, "
                        f"got {type(val).__name__}")
    return val


def _str_tuple(raw: dict, key: str, context: str, minimum=1):
    if key not in raw:
        return ()
    val = raw[key]
    if (not isinstance(val, list) or len(val) < minimum
            or not all(isinstance(v, str) and v for v in val)):
        raise SpecError(f"{context}: {key} must be a list of at least "
                        f"{minimum} column name(s)")
    return tuple(val)


def _pair(raw: dict, key: str, context: str):
    if key not in raw:
        return None
    val = raw[key]
    ok = (isinstance(val, list) and len(val) == 2
          and all(isinstance(v, (int, float)) and not isinstance(v, bool)
                  for v in val))
    if not ok or not val[0] < val[1]:
        raise SpecError(f"{context}: {key} must be [low, high] with low < high")
    return (float(val[0]), float(val[1]))


def _resolve(base: Path, rel: str) -> Path:
    p = Path(rel)
    return p if p.is_absolute() else base / p


def _parse_overlay(raw, base: Path, context: str) -> Overlay:
    if not isinstance(raw, dict):
        raise SpecError(f"{context}: overlay must be an object")
    unknown = sorted(set(raw) - {"csv", "x", "y", "label"})
    if unknown:
        raise SpecError(f"{context}: unknown overlay keys: {', '.join(unknown)}")
    for key in ("csv", "x", "y"):
        if not isinstance(raw.get(key), str) or not raw[key]:
            raise SpecError(f"{context}: overlay needs a {key} string")
    return Overlay(csv=_resolve(base, raw["csv"]), x=raw["x"], y=raw["y"],
                   label=_take(raw, "label", str, None, context))


def _parse_panel(raw, base: Path, index: int) -> Panel:
    context = f"panel {index + 1}"
    if not isinstance(raw, dict):
        raise SpecError(f"{context}: must be an object")
    ptype = raw.get("type")
    if ptype not in PANEL_TYPES:
        raise SpecError(f"{context}: type must be one of "
                        f"{', '.join(PANEL_TYPES)}, got {ptype!r}")
    unknown = sorted(set(raw) - _PANEL_KEYS[ptype])
    if unknown:
        raise SpecError(f"{context} ({ptype}): unknown keys: "
                        f"{', '.join(unknown)}")
    if not isinstance(raw.get("csv"), str) or not raw["csv"]:
        raise SpecError(f"{context}: csv path is required")
    if not isinstance(raw.get("x"), str) or not raw["x"]:
        raise SpecError(f"{context}: x column is required")

    common = dict(
        type=ptype,
        csv=_resolve(base, raw["csv"]),
        x=raw["x"],
        title=_take(raw, "title", str, None, context),
        xlabel=_take(raw, "xlabel", str, None, context),
        ylabel=_take(raw, "ylabel", str, None, context),
        xlim=_pair(raw, "xlim", context),
        ylim=_pair(raw, "ylim", context),
    )

    if ptype in ("trajectory", "sweep"):
        y = _str_tuple(raw, "y", context)
        if not y:
            raise SpecError(f"{context}: y must list at least one column")
        labels = _str_tuple(raw, "labels", context) or None
        if labels is not None and len(labels) != len(y):
            raise SpecError(f"{context}: labels has {len(labels)} entries "
                            f"for {len(y)} y columns")
        group_by = _take(raw, "group_by", str, None, context)
        if group_by is not None and len(y) != 1:
            raise SpecError(f"{context}: group_by needs exactly one y column")
        return Panel(**common, y=y, labels=labels,
                     logy=_take(raw, "logy", bool, False, context),
                     group_by=group_by)

    if ptype == "scatter":
        y = _str_tuple(raw, "y", context)
        if len(y) != 1:
            raise SpecError(f"{context}: scatter needs exactly one y column")
        overlay = (_parse_overlay(raw["overlay"], base, context)
                   if "overlay" in raw else None)
        return Panel(**common, y=y, overlay=overlay)

    # phase-surface
    y_axis = _take(raw, "y_axis", str, None, context)
    if not y_axis:
        raise SpecError(f"{context}: y_axis column is required")
    value = _str_tuple(raw, "value", context)
    if not value:
        raise SpecError(f"{context}: value must list at least one column")
    reduce_ = _take(raw, "reduce", str, "max_abs", context)
    if reduce_ not in REDUCE_MODES:
        raise SpecError(f"{context}: reduce must be one of "
                        f"{', '.join(REDUCE_MODES)}, got {reduce_!r}")
    ep_csv = _take(raw, "ep_csv", str, None, context)
    markers = raw.get("ep_markers", [])
    if not isinstance(markers, list) or not all(
            isinstance(m, list) and len(m) == 2
            and all(isinstance(v, (int, float)) and not isinstance(v, bool)
                    for v in m) for m in markers):
        raise SpecError(f"{context}: ep_markers must be a list of [x, y] pairs")
    return Panel(**common, y_axis=y_axis, value=value, reduce=reduce_,
                 ep_csv=_resolve(base, ep_csv) if ep_csv else None,
                 ep_x=_take(raw, "ep_x", str, "delta_star", context),
                 ep_y=_take(raw, "ep_y", str, "g_over_2pi_MHz", context),
                 ep_markers=tuple((float(a), float(b)) for a, b in markers))


def load_figure_spec(path: Path) -> FigureSpec:
    """Parse and validate a figure-spec JSON file."""
    path = Path(path)
    if not path.is_file():
        raise SpecError(f"figure spec not found: {path}")
    try:
        raw = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise SpecError(f"{path.name}: invalid JSON ({exc})") from None
    if not isinstance(raw, dict):
        raise SpecError(f"{path.name}: top level must be an object")
    unknown = sorted(set(raw) - _FIGURE_KEYS)
    if unknown:
        raise SpecError(f"{path.name}: unknown figure keys: "
                        f"{', '.join(unknown)}")
    panels_raw = raw.get("panels")
    if not isinstance(panels_raw, list) or not panels_raw:
        raise SpecError(f"{path.name}: panels must be a non-empty list")
    base = path.parent
    panels = tuple(_parse_panel(p, base, i) for i, p in enumerate(panels_raw))
    ncols = _take(raw, "ncols", int, min(len(panels), 2), path.name)
    if ncols < 1:
        raise SpecError(f"{path.name}: ncols must be positive")
    out_name = _take(raw, "out_name", str, path.stem + ".png", path.name)
    return FigureSpec(path=path, out_name=out_name,
                      title=_take(raw, "title", str, None, path.name),
                      ncols=ncols, panels=panels)
