"""Static SVG 1.1 drawings of covers, chains and output rectangles.

Coordinates are written as fixed-point decimals computed from the exact
rationals (rounded to 1e-8), so equal inputs give byte-identical files.
"""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path
from xml.sax.saxutils import quoteattr

from .approximations import CompactApprox, FunctionApprox
from .exact import RationalRect, union_bbox

__all__ = ["CHAIN_COLOURS", "render_svg", "write_svg"]

CHAIN_COLOURS = {"c1": "#d62728", "sigma": "#1f77b4", "c2": "#2ca02c", "tau": "#ff7f0e"}
_SCALE = 10**8


def _dec(q: Fraction) -> str:
    n = round(Fraction(q) * _SCALE)
    sign = "-" if n < 0 else ""
    whole, frac = divmod(abs(n), _SCALE)
    return f"{sign}{whole}.{frac:08d}".rstrip("0").rstrip(".") if frac else f"{sign}{whole}"


def _rect_el(r: RationalRect, cls: str, style: str) -> str:
    # y is flipped so the picture has the usual orientation
    return (
        f'<rect class="{cls}" x="{_dec(r.x_lo)}" y="{_dec(-r.y_hi)}" '
        f'width="{_dec(r.width)}" height="{_dec(r.height)}" style={quoteattr(style)}/>'
    )


def render_svg(
    bd: CompactApprox,
    phi: FunctionApprox | None = None,
    config=None,
    output: RationalRect | None = None,
) -> str:
    rects = list(bd.rects)
    if phi is not None:
        rects += [v for _, v in phi.pairs]
    if output is not None:
        rects.append(output)
    box = union_bbox(rects)
    pad = max(box.width, box.height) / 20
    box = box.expanded(pad)
    stroke = _dec(max(box.width, box.height) / 800)
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'viewBox="{_dec(box.x_lo)} {_dec(-box.y_hi)} {_dec(box.width)} {_dec(box.height)}" '
        'width="800" height="800">',
    ]
    if phi is not None:
        lines.append('<g id="values">')
        seen = set()
        for _, v in phi.pairs:
            if v not in seen:
                seen.add(v)
                lines.append(_rect_el(v, "value", f"fill:none;stroke:#999999;stroke-opacity:0.25;stroke-width:{stroke}"))
        lines.append("</g>")
    lines.append('<g id="boundary">')
    for r in bd.rects:
        lines.append(_rect_el(r, "cover", f"fill:#000000;fill-opacity:0.15;stroke:#000000;stroke-width:{stroke}"))
    lines.append("</g>")
    if config is not None:
        for name in ("c1", "sigma", "c2", "tau"):
            colour = CHAIN_COLOURS[name]
            lines.append(f'<g id="{name}">')
            for w in getattr(config, name).chains:
                for r in w.rects:
                    lines.append(_rect_el(r.expanded(w.radius), f"link-{name}",
                                          f"fill:{colour};fill-opacity:0.2;stroke:{colour};stroke-width:{stroke}"))
            lines.append("</g>")
    if output is not None:
        lines.append('<g id="output">')
        lines.append(_rect_el(output, "output", f"fill:none;stroke:#9467bd;stroke-width:{stroke}"))
        lines.append("</g>")
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def write_svg(path, *args, **kwargs) -> Path:
    path = Path(path)
    path.write_text(render_svg(*args, **kwargs))
    return path
