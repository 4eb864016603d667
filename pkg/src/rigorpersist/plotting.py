"""Deterministic SVG plots: diagram scatter and 1-D step functions.

No external plotting dependency and no timestamps; identical inputs give
byte-identical files.
"""

from __future__ import annotations

import math

_W = 640
_H = 640
_MARGIN = 60
_DIM_COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#8c564b")


def _svg_header(title: str) -> list:
    return [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_W}" height="{_H}" '
        f'viewBox="0 0 {_W} {_H}">',
        f"<title>{title}</title>",
        f'<rect width="{_W}" height="{_H}" fill="white"/>',
    ]


def _fmt(x: float) -> str:
    return f"{x:.2f}"


class _Frame:
    """Affine data-to-pixel map with a fixed margin."""

    def __init__(self, lo: float, hi: float):
        if hi <= lo:
            hi = lo + 1.0
        pad = 0.08 * (hi - lo)
        self.lo = lo - pad
        self.hi = hi + pad
        self.scale = (_W - 2 * _MARGIN) / (self.hi - self.lo)

    def x(self, v: float) -> float:
        return _MARGIN + (v - self.lo) * self.scale

    def y(self, v: float) -> float:
        return _H - _MARGIN - (v - self.lo) * self.scale


def plot_diagram(D, sink, eps: float | None = None) -> None:
    """Birth/death scatter with the diagonal; essentials sit on the top border.

    With ``eps`` a dashed line at death = birth + eps marks the short-interval
    band that filter_short(eps) would remove.
    """
    finite = [(dim, b, d) for dim, b, d in D.points if d != math.inf]
    essential = [(dim, b) for dim, b, d in D.points if d == math.inf]
    vals = [v for _, b, d in finite for v in (b, d)] + [b for _, b in essential]
    if eps is not None:
        vals.append(eps)
    lo = min(vals, default=0.0)
    hi = max(vals, default=1.0)
    fr = _Frame(min(lo, 0.0), hi)

    parts = _svg_header("persistence diagram")
    parts.append(
        f'<line x1="{_fmt(fr.x(fr.lo))}" y1="{_fmt(fr.y(fr.lo))}" '
        f'x2="{_fmt(fr.x(fr.hi))}" y2="{_fmt(fr.y(fr.hi))}" stroke="#888"/>'
    )
    if eps is not None and eps > 0:
        # points below this dashed line have persistence <= eps
        parts.append(
            f'<line x1="{_fmt(fr.x(fr.lo))}" y1="{_fmt(fr.y(fr.lo + eps))}" '
            f'x2="{_fmt(fr.x(fr.hi - eps))}" y2="{_fmt(fr.y(fr.hi))}" '
            f'stroke="#888" stroke-dasharray="6 4"/>'
        )
    parts.append(
        f'<line x1="{_MARGIN}" y1="{_H - _MARGIN}" x2="{_W - _MARGIN}" '
        f'y2="{_H - _MARGIN}" stroke="black"/>'
    )
    parts.append(
        f'<line x1="{_MARGIN}" y1="{_MARGIN}" x2="{_MARGIN}" '
        f'y2="{_H - _MARGIN}" stroke="black"/>'
    )
    parts.append(
        f'<text x="{_W // 2}" y="{_H - 18}" text-anchor="middle" '
        f'font-size="14">birth</text>'
    )
    parts.append(
        f'<text x="18" y="{_H // 2}" text-anchor="middle" font-size="14" '
        f'transform="rotate(-90 18 {_H // 2})">death</text>'
    )
    for dim, b, d in sorted(finite):
        c = _DIM_COLORS[dim % len(_DIM_COLORS)]
        parts.append(
            f'<circle cx="{_fmt(fr.x(b))}" cy="{_fmt(fr.y(d))}" r="4" '
            f'fill="{c}"><title>dim {dim}: ({b}, {d})</title></circle>'
        )
    for dim, b in sorted(essential):
        c = _DIM_COLORS[dim % len(_DIM_COLORS)]
        parts.append(
            f'<circle cx="{_fmt(fr.x(b))}" cy="{_MARGIN - 16}" r="4" '
            f'fill="{c}" stroke="black"><title>dim {dim}: ({b}, inf)</title></circle>'
        )
        parts.append(
            f'<text x="{_fmt(fr.x(b) + 8)}" y="{_MARGIN - 12}" '
            f'font-size="13">&#8734;</text>'
        )
    parts.append("</svg>")
    _write(sink, "\n".join(parts) + "\n")


def plot_step_segments(segments, sink) -> None:
    """Step plot from ((b, e), value) plateaus; dots mark breakpoint minima."""
    segs = sorted(((float(b), float(e)), float(v)) for (b, e), v in segments)
    if not segs:
        raise ValueError("nothing to plot: no valued segments")
    xs = [x for (b, e), _ in segs for x in (b, e)]
    vs = [v for _, v in segs]
    fx = _Frame(min(xs), max(xs))
    fy = _Frame(min(vs), max(vs))

    parts = _svg_header("piecewise-constant approximation")
    parts.append(
        f'<line x1="{_MARGIN}" y1="{_H - _MARGIN}" x2="{_W - _MARGIN}" '
        f'y2="{_H - _MARGIN}" stroke="black"/>'
    )
    parts.append(
        f'<line x1="{_MARGIN}" y1="{_MARGIN}" x2="{_MARGIN}" '
        f'y2="{_H - _MARGIN}" stroke="black"/>'
    )
    for (b, e), v in segs:
        parts.append(
            f'<line x1="{_fmt(fx.x(b))}" y1="{_fmt(fy.y(v))}" '
            f'x2="{_fmt(fx.x(e))}" y2="{_fmt(fy.y(v))}" '
            f'stroke="#1f77b4" stroke-width="2"/>'
        )
    # the function value at a breakpoint is the min of the adjacent plateaus
    at_point = {}
    for (b, e), v in segs:
        for x in (b, e):
            at_point[x] = min(at_point.get(x, math.inf), v)
    for x in sorted(at_point):
        v = at_point[x]
        parts.append(
            f'<circle cx="{_fmt(fx.x(x))}" cy="{_fmt(fy.y(v))}" r="4" '
            f'fill="#d62728"><title>({x}, {v})</title></circle>'
        )
    parts.append("</svg>")
    _write(sink, "\n".join(parts) + "\n")


def plot_step_1d(A, sink) -> None:
    """Step plot of a Complete 1-D approximation."""
    if len(A.domain) != 1:
        raise ValueError("step plot needs a 1-D approximation")
    if A.status != "Complete":
        raise ValueError("step plot needs a Complete approximation")
    plot_step_segments(
        ((r.axes[0], r.value[0]) for r in A.rectangles), sink
    )


def _write(sink, text: str) -> None:
    if isinstance(sink, (str, bytes)) or hasattr(sink, "__fspath__"):
        with open(sink, "w") as fh:
            fh.write(text)
    else:
        sink.write(text)
