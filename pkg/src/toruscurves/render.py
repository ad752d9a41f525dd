"""Deterministic SVG rendering of Ford circles and triangulations.

Pure string assembly, no drawing dependency. Element order is fixed by
sorting on exact slope data, so a given input always produces the same
bytes.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .farey import Slope, iota
from .hyperbolic import Geodesic, ford_circle, geodesic_midpoint, geometric_horoball
from .triangulation import FareyLabelling, Triangulation, farey_labelling, horoballs

__all__ = ["ford_circles_svg", "triangulation_svg", "midpoint_overlay_svg"]


def _fmt(v: float) -> str:
    return f"{v:.4f}".rstrip("0").rstrip(".")


def _svg(width: float, height: float, body: list[str]) -> str:
    head = (
        '<?xml version="1.0" encoding="UTF-8"?>\n'
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{_fmt(width)}" height="{_fmt(height)}" '
        f'viewBox="0 0 {_fmt(width)} {_fmt(height)}">'
    )
    return "\n".join([head, *body, "</svg>"]) + "\n"


def _slopes_up_to(max_q: int, lo: int, hi: int) -> list[Slope]:
    out = []
    for q in range(1, max_q + 1):
        for p in range(lo * q, hi * q + 1):
            if math.gcd(p, q) == 1:
                out.append(Slope(p, q))
    return sorted(out, key=lambda s: (s.q, s.p))


def ford_circles_svg(max_denominator: int = 8, span: tuple[int, int] = (0, 1), size: int = 720) -> str:
    """Ford circles with denominator up to the bound, over [lo, hi].

    The horoball at infinity appears as the line y = 1.
    """
    lo, hi = span
    scale = size / (hi - lo)
    height = scale * 1.25

    def sx(x: float) -> float:
        return (x - lo) * scale

    def sy(y: float) -> float:
        return height - y * scale

    body = [
        f'<rect width="{_fmt(size)}" height="{_fmt(height)}" fill="white"/>',
        f'<line x1="0" y1="{_fmt(sy(0))}" x2="{_fmt(size)}" y2="{_fmt(sy(0))}" '
        'stroke="black" stroke-width="1"/>',
        f'<line x1="0" y1="{_fmt(sy(1))}" x2="{_fmt(size)}" y2="{_fmt(sy(1))}" '
        'stroke="steelblue" stroke-width="1.2"/>',
    ]
    for s in _slopes_up_to(max_denominator, lo, hi):
        circle = ford_circle(s)
        cx, cy = circle.center
        body.append(
            f'<circle cx="{_fmt(sx(float(cx)))}" cy="{_fmt(sy(float(cy)))}" '
            f'r="{_fmt(float(circle.radius) * scale)}" fill="none" '
            'stroke="steelblue" stroke-width="1"/>'
        )
        if s.q <= 4:
            body.append(
                f'<text x="{_fmt(sx(float(cx)))}" y="{_fmt(sy(-0.03))}" '
                f'font-size="11" text-anchor="middle">{s}</text>'
            )
    return _svg(size, height, body)


def _polygon_points(n: int, size: int) -> list[tuple[float, float]]:
    cx = cy = size / 2
    r = size * 0.42
    pts = []
    for v in range(n):
        ang = -math.pi / 2 + 2 * math.pi * v / n
        pts.append((cx + r * math.cos(ang), cy + r * math.sin(ang)))
    return pts


def triangulation_svg(
    t: Triangulation,
    labelling: FareyLabelling | None = None,
    highlight: int | None = None,
    size: int = 600,
) -> str:
    """A triangulation on a circle, optionally with slope labels.

    With `highlight` set, that vertex's horoball fan is shaded and its
    branch vertices are marked.
    """
    pts = _polygon_points(t.n, size)
    body = [f'<rect width="{size}" height="{size}" fill="white"/>']
    if highlight is not None:
        from .ksystem import branch_profile

        hb = horoballs(t)[highlight]
        from .triangulation import triangles as tri_list

        tris = tri_list(t)
        for idx in hb.fan:
            coords = " ".join(
                f"{_fmt(pts[v][0])},{_fmt(pts[v][1])}" for v in tris[idx]
            )
            body.append(f'<polygon points="{coords}" fill="#ffe9b3" stroke="none"/>')
        profile = branch_profile(t, highlight)
        for owned in profile.branch_vertices:
            for v in owned:
                x, y = pts[v]
                body.append(
                    f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="5" fill="none" '
                    'stroke="darkorange" stroke-width="1.5"/>'
                )
    edges = [((v, (v + 1) % t.n), "black", 1.5) for v in range(t.n)]
    edges += [(d, "gray", 1.0) for d in sorted(t.diagonals)]
    for (a, b), color, w in edges:
        body.append(
            f'<line x1="{_fmt(pts[a][0])}" y1="{_fmt(pts[a][1])}" '
            f'x2="{_fmt(pts[b][0])}" y2="{_fmt(pts[b][1])}" '
            f'stroke="{color}" stroke-width="{w}"/>'
        )
    for v, (x, y) in enumerate(pts):
        body.append(f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="3" fill="black"/>')
        label = str(v) if labelling is None else f"{v}: {labelling.labels[v]}"
        body.append(
            f'<text x="{_fmt(x)}" y="{_fmt(y - 8)}" font-size="11" '
            f'text-anchor="middle">{label}</text>'
        )
    return _svg(size, size, body)


def midpoint_overlay_svg(t: Triangulation, size: int = 720) -> str:
    """Ford circles of a labelling plus the maximal geodesic and midpoint.

    Renders every label's Ford circle, the geodesic joining a pair of
    maximal intersection, its midpoint, and the circle of the horoball
    selected near the midpoint (drawn heavier).
    """
    l = farey_labelling(t)
    labels = l.labels
    best = -1
    pair = (0, 1)
    for u in range(t.n):
        for v in range(u + 1, t.n):
            if iota(labels[u], labels[v]) > best:
                best = iota(labels[u], labels[v])
                pair = (u, v)
    chosen = geometric_horoball(t, l)
    mid = geodesic_midpoint(labels[pair[0]], labels[pair[1]])

    finite = [s for s in labels if not s.is_infinity]
    xs = [Fraction(s.p, s.q) for s in finite] + [Fraction(mid.x)]
    lo = float(min(xs)) - 0.4
    hi = float(max(xs)) + 0.4
    scale = size / (hi - lo)
    height = scale * 1.3

    def sx(x: float) -> float:
        return (x - lo) * scale

    def sy(y: float) -> float:
        return height - y * scale

    body = [
        f'<rect width="{_fmt(size)}" height="{_fmt(height)}" fill="white"/>',
        f'<line x1="0" y1="{_fmt(sy(0))}" x2="{_fmt(size)}" y2="{_fmt(sy(0))}" '
        'stroke="black" stroke-width="1"/>',
    ]
    for v, s in sorted(enumerate(labels), key=lambda it: (it[1].q, it[1].p)):
        heavy = v == chosen
        stroke = "crimson" if heavy else "steelblue"
        widthpx = 2.2 if heavy else 1.0
        if s.is_infinity:
            body.append(
                f'<line x1="0" y1="{_fmt(sy(1))}" x2="{_fmt(size)}" y2="{_fmt(sy(1))}" '
                f'stroke="{stroke}" stroke-width="{widthpx}"/>'
            )
            continue
        circle = ford_circle(s)
        cx, cy = circle.center
        body.append(
            f'<circle cx="{_fmt(sx(float(cx)))}" cy="{_fmt(sy(float(cy)))}" '
            f'r="{_fmt(float(circle.radius) * scale)}" fill="none" '
            f'stroke="{stroke}" stroke-width="{widthpx}"/>'
        )
    s1, s2 = labels[pair[0]], labels[pair[1]]
    if s1.is_infinity or s2.is_infinity:
        other = s2 if s1.is_infinity else s1
        x = float(Fraction(other.p, other.q))
        body.append(
            f'<line x1="{_fmt(sx(x))}" y1="{_fmt(sy(0))}" x2="{_fmt(sx(x))}" '
            f'y2="0" stroke="seagreen" stroke-width="1.4" stroke-dasharray="6,3"/>'
        )
    else:
        x1, x2 = float(Fraction(s1.p, s1.q)), float(Fraction(s2.p, s2.q))
        rad = abs(x2 - x1) / 2
        body.append(
            f'<path d="M {_fmt(sx(min(x1, x2)))} {_fmt(sy(0))} '
            f'A {_fmt(rad * scale)} {_fmt(rad * scale)} 0 0 1 '
            f'{_fmt(sx(max(x1, x2)))} {_fmt(sy(0))}" fill="none" '
            'stroke="seagreen" stroke-width="1.4" stroke-dasharray="6,3"/>'
        )
    body.append(
        f'<circle cx="{_fmt(sx(float(mid.x)))}" cy="{_fmt(sy(float(mid.y)))}" '
        'r="4" fill="seagreen"/>'
    )
    return _svg(size, height, body)
