"""Drawing traces: an affine chart avoiding every point, SVG 1.1 output,
and matplotlib figures for the report."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence
from xml.sax.saxutils import escape

from .polygon import TwistedPolygon
from .projective import RandomSource, _cross, _dot

PALETTE = ("#1f3b73", "#b8412c", "#2e7d32", "#7b1fa2", "#c17d11", "#00838f", "#5d4037")


@dataclass
class Chart:
    """Affine chart (u.P / w.P, v.P / w.P); w is the line sent to infinity."""
    w: tuple
    u: tuple
    v: tuple

    def __call__(self, P) -> tuple[float, float]:
        c = P.coords if hasattr(P, "coords") else P
        d = _dot(self.w, c)
        return float(Fraction(_dot(self.u, c), d)), float(Fraction(_dot(self.v, c), d))

    def as_dict(self) -> dict:
        return {"infinity": list(self.w), "u": list(self.u), "v": list(self.v)}


def _polygon_points(P: TwistedPolygon, closed: bool = True):
    pts = [P.vertex(i) for i in P.indices]
    return pts + [P.vertex(P.indices[0] + P.n)] if closed else pts


def pick_chart(points: Sequence, src: RandomSource | None = None, tries: int = 200) -> Chart:
    """A chart whose line at infinity misses all points, preferring z = 0."""
    coords = [p.coords if hasattr(p, "coords") else p for p in points]
    candidates = [(0, 0, 1)]
    src = src or RandomSource(0, bound=3, stream="chart")
    for _ in range(tries):
        candidates.append(src.random_vector())
    for w in candidates:
        if all(_dot(w, c) != 0 for c in coords):
            # complete w to a basis with two coordinate rows
            basis = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
            rest = [e for e in basis if any(_cross(w, e))]
            for i in range(len(rest)):
                for j in range(i + 1, len(rest)):
                    u, v = rest[i], rest[j]
                    if _dot(_cross(u, v), w) != 0:
                        return Chart(tuple(w), u, v)
    raise ValueError("no affine chart avoids all points")


def trace_points(polys: Sequence[TwistedPolygon]):
    return [p for P in polys for p in _polygon_points(P)]


def svg_document(polys: Sequence[TwistedPolygon], chart: Chart | None = None, size: int = 600,
                 title: str = "", labels: bool = False) -> str:
    """Nested polygons as an SVG 1.1 document (one closed path per polygon, one period)."""
    chart = chart or pick_chart(trace_points(polys))
    xy = [[chart(p) for p in _polygon_points(P)] for P in polys]
    flat = [q for path in xy for q in path]
    xs, ys = [q[0] for q in flat], [q[1] for q in flat]
    x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    span = max(x1 - x0, y1 - y0) or 1.0
    pad = 0.05 * span
    scale = size / (span + 2 * pad)

    def tr(q):
        return (q[0] - x0 + pad) * scale, (y1 - q[1] + pad) * scale

    out = ['<?xml version="1.0" encoding="UTF-8" standalone="no"?>',
           '<!DOCTYPE svg PUBLIC "-//W3C//DTD SVG 1.1//EN" '
           '"http://www.w3.org/Graphics/SVG/1.1/DTD/svg11.dtd">',
           f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{size}" height="{size}" '
           f'viewBox="0 0 {size} {size}">',
           f'<title>{escape(title)}</title>',
           f'<desc>chart: infinity={list(chart.w)} u={list(chart.u)} v={list(chart.v)}</desc>',
           f'<rect x="0" y="0" width="{size}" height="{size}" fill="white"/>']
    for k, path in enumerate(xy):
        pts = [tr(q) for q in path]
        d = "M" + " L".join(f"{a:.3f},{b:.3f}" for a, b in pts)
        col = PALETTE[k % len(PALETTE)]
        out.append(f'<path d="{d}" fill="none" stroke="{col}" stroke-width="1.5"/>')
        for a, b in pts[:-1]:
            out.append(f'<circle cx="{a:.3f}" cy="{b:.3f}" r="2.5" fill="{col}"/>')
        if labels:
            P = polys[k]
            for i, (a, b) in zip(P.indices, pts):
                out.append(f'<text x="{a + 4:.1f}" y="{b - 4:.1f}" font-size="10" fill="{col}">{i}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def plot_polygons(ax, polys: Sequence[TwistedPolygon], chart: Chart | None = None, labels=False):
    chart = chart or pick_chart(trace_points(polys))
    for k, P in enumerate(polys):
        pts = [chart(p) for p in _polygon_points(P)]
        col = PALETTE[k % len(PALETTE)]
        ax.plot([p[0] for p in pts], [p[1] for p in pts], "-o", color=col, lw=1.2, ms=3)
        if labels:
            for i, p in zip(P.indices, pts):
                ax.annotate(str(i), p, fontsize=7, color=col, xytext=(3, 3), textcoords="offset points")
    ax.set_aspect("equal")
    ax.set_xticks([])
    ax.set_yticks([])
    return chart
