"""SVG base diagrams.

The boundary polygon is laid out exactly (rational vertices); floats only
appear when coordinates are written out.  Heavy lines mark boundary edges,
an asterisk marks each node, and a dashed segment runs from each node to
the boundary along its branch cut.  Cuts follow eigenrays, so they open no
wedge except at ``n = 0`` nodes, whose eigenline is parallel to the edge;
there the cut leaves the edge perpendicularly and the gap is shaded.
"""

from __future__ import annotations

import math
import xml.etree.ElementTree as ET
from fractions import Fraction

from .base import DiskBase, InvalidBaseError, Node, oriented_eigen, require_valid
from .lattice import LatticeVector, cross, parabolic_from_eigen

__all__ = ["RenderError", "layout", "render_svg"]

SVG_NS = "http://www.w3.org/2000/svg"
SIZE = 400.0
MARGIN = 30.0


class RenderError(ValueError):
    pass


def _direction(u: LatticeVector) -> LatticeVector:
    # inward normal on the left of a counterclockwise traversal
    return LatticeVector(u.y, -u.x)


def layout(base: DiskBase) -> tuple[list[tuple[Fraction, Fraction]], list[Fraction]]:
    """Exact corner positions and edge lengths of a closed polygon.

    Missing lengths default to 1.  When the lengths do not close up, the
    residual is absorbed by lengthening the two edges whose directions
    bound it.
    """
    try:
        require_valid(base)
    except InvalidBaseError as err:
        raise RenderError(f"base cannot be embedded: {err}") from err
    k = base.k
    dirs = [_direction(u) for u in base.normals()]
    lengths = [Fraction(1) if e.length is None else e.length for e in base.edges]
    rx = sum(L * d.x for L, d in zip(lengths, dirs))
    ry = sum(L * d.y for L, d in zip(lengths, dirs))
    if rx or ry:
        tx, ty = -rx, -ry
        for p in range(k):
            q = next(j % k for j in range(p + 1, p + k + 1) if dirs[j % k] != dirs[p])
            dp, dq = dirs[p], dirs[q]
            det = cross(dp, dq)
            a = Fraction(tx * dq.y - ty * dq.x, det)
            b = Fraction(dp.x * ty - dp.y * tx, det)
            if det > 0 and a >= 0 and b >= 0:
                lengths[p] += a
                lengths[q] += b
                break
        else:  # pragma: no cover - directions of a valid base span the plane
            raise RenderError("could not close the boundary polygon")
    points = [(Fraction(0), Fraction(0))]
    for L, d in zip(lengths[:-1], dirs[:-1]):
        x, y = points[-1]
        points.append((x + L * d.x, y + L * d.y))
    return points, lengths


def _fmt(v: float) -> str:
    return f"{v:.3f}"


def _unit(v: LatticeVector) -> tuple[float, float]:
    # scale down exactly first: normals can outgrow the float range
    big = max(abs(v.x), abs(v.y))
    x, y = float(Fraction(v.x, big)), float(Fraction(v.y, big))
    norm = math.hypot(x, y)
    return x / norm, y / norm


def render_svg(base: DiskBase) -> str:
    """SVG 1.1 drawing: one ``line.edge`` per edge, one ``g.node`` asterisk
    and one ``path.branch`` per node, a ``polygon.gap`` per ``n = 0`` node."""
    points, lengths = layout(base)
    k = base.k
    xs = [x for x, _ in points]
    ys = [y for _, y in points]
    x0, y1 = min(xs), max(ys)
    span = max(max(xs) - x0, y1 - min(ys))
    scale = Fraction(SIZE) / span

    def to_screen(x: Fraction, y: Fraction) -> tuple[float, float]:
        return float(MARGIN + (x - x0) * scale), float(MARGIN + (y1 - y) * scale)

    def step(p: tuple[float, float], v: LatticeVector, r: float) -> tuple[float, float]:
        ux, uy = _unit(v)
        return p[0] + r * ux, p[1] - r * uy

    width = float(MARGIN * 2 + (max(xs) - x0) * scale)
    height = float(MARGIN * 2 + (y1 - min(ys)) * scale)
    ET.register_namespace("", SVG_NS)
    svg = ET.Element(
        "svg",
        {
            "xmlns": SVG_NS,
            "version": "1.1",
            "width": _fmt(width),
            "height": _fmt(height),
            "viewBox": f"0 0 {_fmt(width)} {_fmt(height)}",
        },
    )
    screen = [to_screen(x, y) for x, y in points]
    ET.SubElement(svg, "polygon", {
        "class": "region",
        "points": " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in screen),
        "fill": "#f2f2f2",
        "stroke": "none",
    })
    for i in range(k):
        (ax, ay), (bx, by) = screen[i], screen[(i + 1) % k]
        ET.SubElement(svg, "line", {
            "class": "edge",
            "x1": _fmt(ax), "y1": _fmt(ay), "x2": _fmt(bx), "y2": _fmt(by),
            "stroke": "black", "stroke-width": "3", "stroke-linecap": "round",
        })

    for i, c in enumerate(base.corners):
        if not isinstance(c, Node):
            continue
        u = base.normal(i)
        e = oriented_eigen(u, c.eigen)
        reach = float(Fraction(2, 5) * min(lengths[i - 1], lengths[i]) * c.slide * scale)
        corner = screen[i]
        if cross(u, e) == 0:
            node = step(corner, u, reach)
            # the wedge swept by the cut direction under the node's monodromy
            g = _direction(e)
            swept = parabolic_from_eigen(g.x, g.y).apply(-u)
            far = step(node, swept, reach)
            ET.SubElement(svg, "polygon", {
                "class": "gap",
                "points": " ".join(f"{_fmt(a)},{_fmt(b)}" for a, b in (node, corner, far)),
                "fill": "#bbbbbb", "fill-opacity": "0.6", "stroke": "none",
            })
        else:
            node = step(corner, _direction(e), reach)
        (sx, sy), (tx, ty) = corner, node
        ET.SubElement(svg, "path", {
            "class": "branch",
            "d": f"M {_fmt(sx)} {_fmt(sy)} L {_fmt(tx)} {_fmt(ty)}",
            "stroke": "black", "stroke-width": "1.2", "stroke-dasharray": "4 3", "fill": "none",
        })
        star = ET.SubElement(svg, "g", {"class": "node", "stroke": "black", "stroke-width": "1.5"})
        for angle in (90, 30, 150):
            dx, dy = 6.0 * math.cos(math.radians(angle)), 6.0 * math.sin(math.radians(angle))
            ET.SubElement(star, "line", {
                "x1": _fmt(tx - dx), "y1": _fmt(ty - dy), "x2": _fmt(tx + dx), "y2": _fmt(ty + dy),
            })
        if c.multiplicity > 1:
            label = ET.SubElement(svg, "text", {
                "class": "mult", "x": _fmt(tx + 8), "y": _fmt(ty - 8), "font-size": "12",
            })
            label.text = f"x{c.multiplicity}"
    ET.indent(svg)
    return '<?xml version="1.0" encoding="UTF-8"?>\n' + ET.tostring(svg, encoding="unicode") + "\n"
