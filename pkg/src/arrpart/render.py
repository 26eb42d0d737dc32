"""Static SVG figures for two-dimensional arrangements: hyperplane
lines, the flag line and point, and chamber labels in stratification
order."""

from __future__ import annotations

from fractions import Fraction
from typing import Optional

from .errors import InputError
from .exact_geom import AffineForm, Vector
from .stratify import Stratification

_W = 640
_H = 480


def _line_box_clip(form: AffineForm, x0, y0, x1, y1) -> Optional[tuple]:
    """Intersection segment of {form = 0} with the [x0,x1]x[y0,y1] box."""
    a, b = form.linear
    c = form.constant
    pts = []
    if b != 0:
        for xx in (x0, x1):
            yy = -(a * xx + c) / b
            if y0 <= yy <= y1:
                pts.append((xx, yy))
    if a != 0:
        for yy in (y0, y1):
            xx = -(b * yy + c) / a
            if x0 <= xx <= x1:
                pts.append((xx, yy))
    uniq = []
    for p in pts:
        if p not in uniq:
            uniq.append(p)
    if len(uniq) < 2:
        return None
    uniq.sort()
    return uniq[0], uniq[-1]


def render_svg(strat: Stratification, pad_ratio: Fraction = Fraction(1, 4)) -> str:
    """Deterministic SVG for dim-2 stratifications."""
    if strat.dim != 2:
        raise InputError("SVG rendering is only available in dimension 2")
    arr = strat.arrangement
    flag = strat.flag

    anchors: list[Vector] = [flag.base_vertex()]
    for X in strat.poset.flats:
        if X.dim == 0:
            anchors.append(X.point)
    for s in strat.strata:
        anchors.append(s.base_point)
        anchors.append(s.chamber.interior_point)
    xs = [p[0] for p in anchors]
    ys = [p[1] for p in anchors]
    x0, x1 = min(xs), max(xs)
    y0, y1 = min(ys), max(ys)
    span = max(x1 - x0, y1 - y0, Fraction(1))
    pad = span * pad_ratio
    x0, x1, y0, y1 = x0 - pad, x1 + pad, y0 - pad, y1 + pad
    # keep the viewport square-ish for isotropic scaling
    w, h = x1 - x0, y1 - y0
    scale = min(Fraction(_W) / w, Fraction(_H) / h)

    def sx(x) -> float:
        return float((x - x0) * scale)

    def sy(y) -> float:
        return float(_H - (y - y0) * scale)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_W}" height="{_H}" '
        f'viewBox="0 0 {_W} {_H}">',
        '<rect width="100%" height="100%" fill="white"/>',
    ]
    for name, form in zip(arr.names, arr.forms):
        seg = _line_box_clip(form, x0, y0, x1, y1)
        if seg is None:
            continue
        (ax, ay), (bx, by) = seg
        parts.append(
            f'<line x1="{sx(ax):.2f}" y1="{sy(ay):.2f}" x2="{sx(bx):.2f}" '
            f'y2="{sy(by):.2f}" stroke="black" stroke-width="1.5"/>'
        )
        parts.append(
            f'<text x="{sx(bx):.2f}" y="{sy(by) - 4:.2f}" font-size="13" '
            f'fill="black">{name}</text>'
        )
    # flag line F1 (dashed) and flag point F0
    seg = _line_box_clip(flag.forms[1], x0, y0, x1, y1)
    if seg is not None:
        (ax, ay), (bx, by) = seg
        parts.append(
            f'<line x1="{sx(ax):.2f}" y1="{sy(ay):.2f}" x2="{sx(bx):.2f}" '
            f'y2="{sy(by):.2f}" stroke="steelblue" stroke-width="1.2" '
            f'stroke-dasharray="6 4"/>'
        )
        parts.append(
            f'<text x="{sx(bx) - 18:.2f}" y="{sy(by) - 6:.2f}" font-size="13" '
            f'fill="steelblue">F1</text>'
        )
    f0 = flag.base_vertex()
    parts.append(
        f'<circle cx="{sx(f0[0]):.2f}" cy="{sy(f0[1]):.2f}" r="4" fill="steelblue"/>'
    )
    parts.append(
        f'<text x="{sx(f0[0]) + 6:.2f}" y="{sy(f0[1]) - 6:.2f}" font-size="13" '
        f'fill="steelblue">F0</text>'
    )
    # chamber labels, stratification order
    for k, s in enumerate(strat.strata):
        px, py = s.chamber.interior_point
        parts.append(
            f'<text x="{sx(px):.2f}" y="{sy(py):.2f}" font-size="14" '
            f'fill="firebrick" text-anchor="middle">C{k}</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
