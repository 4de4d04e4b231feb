"""Static SVG renderings of embeddings and PL maps (pure string builders)."""

from __future__ import annotations

from fractions import Fraction

__all__ = ["svg_line_realization", "svg_circle_embedding"]

_PALETTE = ["#1b6ca8", "#c43e3e", "#3e8e41", "#8e44ad", "#c87f0a", "#16737e"]


def _scale(lo: Fraction, hi: Fraction, width: int, margin: int):
    span = hi - lo if hi > lo else Fraction(1)

    def to_px(x: Fraction) -> float:
        return margin + float((x - lo) / span) * (width - 2 * margin)

    return to_px


def svg_line_realization(points: list[tuple[str, Fraction]], maps: list[tuple[str, tuple]]) -> str:
    """Points on the line plus the graphs of the realized maps."""
    width, height, margin = 720, 480, 40
    values = [p for _, p in points]
    for _, bps in maps:
        for x, y in bps:
            values.extend((x, y))
    lo, hi = min(values), max(values)
    px = _scale(lo, hi, width, margin)
    py = _scale(lo, hi, height, margin)
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        # identity diagonal for reference
        f'<line x1="{px(lo):.2f}" y1="{height - py(lo):.2f}" x2="{px(hi):.2f}" '
        f'y2="{height - py(hi):.2f}" stroke="#cccccc" stroke-dasharray="4 4"/>',
    ]
    for k, (label, bps) in enumerate(maps):
        color = _PALETTE[k % len(_PALETTE)]
        pts = " ".join(f"{px(x):.2f},{height - py(y):.2f}" for x, y in bps)
        out.append(f'<polyline points="{pts}" fill="none" stroke="{color}" stroke-width="1.5"/>')
        x0, y0 = bps[0]
        out.append(
            f'<text x="{px(x0):.2f}" y="{height - py(y0) - 4:.2f}" font-size="10" '
            f'fill="{color}">{label}</text>'
        )
    axis_y = height - margin / 2
    for label, p in points:
        out.append(
            f'<circle cx="{px(p):.2f}" cy="{axis_y:.2f}" r="3" fill="#222222"/>'
        )
        out.append(
            f'<text x="{px(p):.2f}" y="{axis_y - 6:.2f}" font-size="9" fill="#222222" '
            f'text-anchor="middle">{label}</text>'
        )
    out.append("</svg>")
    return "\n".join(out)


def svg_circle_embedding(points: list[tuple[str, Fraction]]) -> str:
    """Labeled points on the unit circle."""
    import math

    size, radius = 480, 180
    cx = cy = size / 2
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
        f'<rect width="{size}" height="{size}" fill="white"/>',
        f'<circle cx="{cx}" cy="{cy}" r="{radius}" fill="none" stroke="#999999"/>',
    ]
    for label, p in points:
        angle = 2 * math.pi * float(p)
        x = cx + radius * math.cos(angle)
        y = cy - radius * math.sin(angle)
        out.append(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="3" fill="#1b6ca8"/>')
        lx = cx + (radius + 14) * math.cos(angle)
        ly = cy - (radius + 14) * math.sin(angle)
        out.append(
            f'<text x="{lx:.2f}" y="{ly:.2f}" font-size="9" fill="#222222" '
            f'text-anchor="middle">{label}</text>'
        )
    out.append("</svg>")
    return "\n".join(out)
