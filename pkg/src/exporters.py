"""Report writers: JSON, CSV samples and SVG plots with feature markers."""

from __future__ import annotations

import json
import logging
import math
from pathlib import Path
from typing import Any, Dict, Iterable, Optional, Sequence, Union

import numpy as np
import pandas as pd

from .features import CurveFeature
from .two_chain import ORACLE_SEEDED, SELF_INTERSECTION, SINGULAR, ZERO

logger = logging.getLogger(__name__)

SIGNIFICANT_DIGITS = 15
SVG_NS = "http://www.w3.org/2000/svg"
SVG_SIZE = 600
PADDING = 0.05

PathLike = Union[str, Path]


# ------------------------------------------------------------------ json --
def round_floats(value: Any, digits: int = SIGNIFICANT_DIGITS) -> Any:
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, (float, np.floating)):
        value = float(value)
        if not math.isfinite(value):
            return None
        return float(f"{value:.{digits}g}")
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, dict):
        return {str(k): round_floats(v, digits) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [round_floats(v, digits) for v in value]
    return value


def to_json(payload: Dict[str, Any]) -> str:
    return json.dumps(round_floats(payload), sort_keys=True, indent=2)


def write_json(payload: Dict[str, Any], path: PathLike) -> Path:
    path = Path(path)
    path.write_text(to_json(payload) + "\n", encoding="utf-8")
    logger.info("wrote %s", path)
    return path


# ------------------------------------------------------------------- csv --
def samples_frame(curve, n: int, period: Optional[float] = None) -> pd.DataFrame:
    """t, x, y[, z] at n equally spaced parameters over one period."""
    period = float(period if period is not None else getattr(curve, "period", 2 * math.pi))
    t = np.linspace(0.0, period, n, endpoint=False)
    values = curve.eval(t)
    columns = {"t": t, "x": values[0], "y": values[1]}
    if len(values) > 2:
        columns["z"] = values[2]
    return pd.DataFrame(columns)


def write_csv(frame: pd.DataFrame, path: PathLike) -> Path:
    path = Path(path)
    frame.to_csv(path, index=False, float_format=f"%.{SIGNIFICANT_DIGITS}g")
    logger.info("wrote %d rows to %s", len(frame), path)
    return path


# ------------------------------------------------------------------- svg --
def _props(attrs: Dict[str, Any]) -> str:
    return " ".join(f'{k.replace("_", "-")}="{v}"' for k, v in attrs.items())


def _fmt(v: float) -> str:
    text = f"{v:.4f}"
    return "0.0000" if text == "-0.0000" else text


def _marker(kind: str, provenance: str, x: float, y: float, r: float) -> str:
    if provenance == ORACLE_SEEDED:
        x0, x1, y0, y1 = _fmt(x - r), _fmt(x + r), _fmt(y - r), _fmt(y + r)
        d = f"M{x0},{y0} L{x1},{y1} M{x0},{y1} L{x1},{y0}"
        return f"<path {_props({'d': d, 'class': 'oracleSeeded'})}/>"
    if kind == SELF_INTERSECTION:
        return f"<circle {_props({'cx': _fmt(x), 'cy': _fmt(y), 'r': _fmt(r), 'class': kind})}/>"
    if kind == SINGULAR:
        pts = f"{_fmt(x)},{_fmt(y - r)} {_fmt(x + r)},{_fmt(y + r)} {_fmt(x - r)},{_fmt(y + r)}"
        return f"<polygon {_props({'points': pts, 'class': kind})}/>"
    if kind == ZERO:
        pts = f"{_fmt(x)},{_fmt(y - r)} {_fmt(x + r)},{_fmt(y)} {_fmt(x)},{_fmt(y + r)} {_fmt(x - r)},{_fmt(y)}"
        return f"<polygon {_props({'points': pts, 'class': kind})}/>"
    # folds
    attrs = {"x": _fmt(x - r), "y": _fmt(y - r), "width": _fmt(2 * r), "height": _fmt(2 * r), "class": kind}
    return f"<rect {_props(attrs)}/>"


STYLE = """
path.curve { fill: none; stroke: #1f4e79; stroke-width: 1.2; }
circle.selfIntersection { fill: #c0392b; }
polygon.singular { fill: #27ae60; }
polygon.zero { fill: #8e44ad; }
rect.foldPhiDot, rect.foldPsiDot { fill: #f39c12; }
path.oracleSeeded { stroke: #555555; stroke-width: 1.5; }
""".strip()


def render_svg(xs: Sequence[float], ys: Sequence[float], features: Iterable[CurveFeature] = ()) -> str:
    """SVG 1.1 of a closed polyline, viewport padded 5% beyond the bounding box."""
    xs, ys = np.asarray(xs, dtype=float), np.asarray(ys, dtype=float)
    xmin, xmax = float(xs.min()), float(xs.max())
    ymin, ymax = float(ys.min()), float(ys.max())
    span = max(xmax - xmin, ymax - ymin, 1e-12)
    pad = PADDING * span
    xmin, xmax, ymin, ymax = xmin - pad, xmax + pad, ymin - pad, ymax + pad
    scale = SVG_SIZE / max(xmax - xmin, ymax - ymin)
    width, height = (xmax - xmin) * scale, (ymax - ymin) * scale

    def to_px(x: float, y: float):
        # y grows downwards in SVG
        return (x - xmin) * scale, (ymax - y) * scale

    coords = [to_px(x, y) for x, y in zip(xs, ys)]
    d = "M" + " L".join(f"{_fmt(px)},{_fmt(py)}" for px, py in coords) + " Z"
    root = {
        "xmlns": SVG_NS,
        "version": "1.1",
        "width": _fmt(width),
        "height": _fmt(height),
        "viewBox": f"0 0 {_fmt(width)} {_fmt(height)}",
    }
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f"<svg {_props(root)}>",
        f"<style>\n{STYLE}\n</style>",
        f"<path {_props({'d': d, 'class': 'curve'})}/>",
    ]
    r = 0.01 * SVG_SIZE
    for f in sorted(features, key=lambda f: (f.kind, f.point[0], f.point[1])):
        px, py = to_px(f.point[0], f.point[1])
        lines.append(_marker(f.kind, f.provenance, px, py, r))
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def write_svg(curve, features: Iterable[CurveFeature], path: PathLike, n: int = 4096) -> Path:
    frame = samples_frame(curve, n)
    path = Path(path)
    path.write_text(render_svg(frame["x"], frame["y"], features), encoding="utf-8")
    logger.info("wrote %s", path)
    return path
