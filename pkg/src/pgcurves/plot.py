"""Plain SVG line plots of curve projections."""
from __future__ import annotations

from xml.sax.saxutils import escape

import numpy as np

__all__ = ["PROJECTIONS", "project", "render_svg", "range_text"]

WIDTH, HEIGHT, MARGIN = 800, 600, 40
PROJECTIONS = {"yz": (1, 2), "xy": (0, 1), "xz": (0, 2)}
TICKS = 5


def project(points: np.ndarray, projection: str = "yz"):
    if projection not in PROJECTIONS:
        raise ValueError(f"unknown projection {projection!r}")
    i, j = PROJECTIONS[projection]
    return points[:, i], points[:, j]


def _range(v):
    lo, hi = float(np.min(v)), float(np.max(v))
    if hi - lo <= 1e-12 * max(1.0, abs(lo), abs(hi)):
        pad = 0.5 * max(1.0, abs(lo))
        lo, hi = lo - pad, hi + pad
    return lo, hi


def _px(v):
    return f"{v:.2f}"


def render_svg(u, v, title="", footer="", labels=("y", "z")) -> str:
    """One polyline mapping the data bounding box onto the viewport minus margins."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    (u0, u1), (v0, v1) = _range(u), _range(v)
    sx = (WIDTH - 2 * MARGIN) / (u1 - u0)
    sy = (HEIGHT - 2 * MARGIN) / (v1 - v0)
    px = MARGIN + (u - u0) * sx
    py = HEIGHT - MARGIN - (v - v0) * sy
    left, right, top, bottom = MARGIN, WIDTH - MARGIN, MARGIN, HEIGHT - MARGIN

    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<title>{escape(title)}</title>',
        f'<text x="{WIDTH // 2}" y="{MARGIN // 2 + 5}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="14">{escape(title)}</text>',
        f'<g stroke="black" stroke-width="1" fill="none">',
        f'<line x1="{left}" y1="{bottom}" x2="{right}" y2="{bottom}"/>',
        f'<line x1="{left}" y1="{bottom}" x2="{left}" y2="{top}"/>',
    ]
    labels_out = []
    for k in range(TICKS):
        frac = k / (TICKS - 1)
        x = left + frac * (right - left)
        y = bottom - frac * (bottom - top)
        lines.append(f'<line x1="{_px(x)}" y1="{bottom}" x2="{_px(x)}" y2="{bottom + 5}"/>')
        lines.append(f'<line x1="{left - 5}" y1="{_px(y)}" x2="{left}" y2="{_px(y)}"/>')
        labels_out.append(
            f'<text x="{_px(x)}" y="{bottom + 16}" text-anchor="middle">'
            f'{u0 + frac * (u1 - u0):.4g}</text>')
        labels_out.append(
            f'<text x="{left - 7}" y="{_px(y + 4)}" text-anchor="end">'
            f'{v0 + frac * (v1 - v0):.4g}</text>')
    lines.append("</g>")
    lines.append('<g font-family="sans-serif" font-size="10" fill="black">')
    lines.extend(labels_out)
    lines.append(f'<text x="{right}" y="{bottom - 6}" text-anchor="end">{escape(labels[0])}</text>')
    lines.append(f'<text x="{left + 6}" y="{top + 10}">{escape(labels[1])}</text>')
    lines.append("</g>")
    pts = " ".join(f"{_px(a)},{_px(b)}" for a, b in zip(px, py))
    lines.append(f'<polyline fill="none" stroke="#1f4e9c" stroke-width="1.5" points="{pts}"/>')
    if footer:
        lines.append(f'<text x="{WIDTH // 2}" y="{HEIGHT - 8}" text-anchor="middle" '
                     f'font-family="sans-serif" font-size="11">{escape(footer)}</text>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def range_text(name, values):
    lo, hi = float(np.min(values)), float(np.max(values))
    return f"{name} in [{lo + 0.0:.6g}, {hi + 0.0:.6g}]"
