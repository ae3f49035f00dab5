"""Deterministic PPM and SVG rendering of partitions.

The fundamental domain is drawn with one colored block per face, the
boundary set in black, walls dashed, the surface boundary as a thick
frame on the open seams, and singular vertices circled.  Identical
partition + style always produces byte-identical output: the palette is
a fixed table extended by golden-angle hues, floats are formatted with a
fixed precision, and nothing time- or environment-dependent is emitted.
"""

from __future__ import annotations

import colorsys
from dataclasses import dataclass

import numpy as np

from .partition import Partition, boundary_graph

_BASE_PALETTE = (
    (141, 211, 199), (255, 255, 179), (190, 186, 218), (251, 128, 114),
    (128, 177, 211), (253, 180, 98), (179, 222, 105), (252, 205, 229),
    (217, 217, 217), (188, 128, 189), (204, 235, 197), (255, 237, 111),
)


def domain_color(d: int) -> tuple[int, int, int]:
    if d < len(_BASE_PALETTE):
        return _BASE_PALETTE[d]
    hue = (d * 0.6180339887498949) % 1.0
    r, g, b = colorsys.hsv_to_rgb(hue, 0.45, 0.95)
    return int(round(r * 255)), int(round(g * 255)), int(round(b * 255))


@dataclass(frozen=True)
class RenderStyle:
    cell_px: int = 12
    boundary_px: int = 2
    frame_px: int = 4
    singular_radius_px: int = 5
    dash_px: int = 4


def _edge_segments(p: Partition, edge_ids) -> list[tuple[int, int, int, int]]:
    """Grid segments (x0, y0, x1, y1) of every raw representative."""
    c = p.complex
    W, H = c.spec.width, c.spec.height
    HOFF = W * (H + 1)
    segs = []
    reps = c.edge_raw_representatives
    for e in edge_ids:
        for raw in reps[int(e)]:
            raw = int(raw)
            if raw < HOFF:
                j, i = divmod(raw, W)
                segs.append((i, j, i + 1, j))
            else:
                j, i = divmod(raw - HOFF, W + 1)
                segs.append((i, j, i, j + 1))
    return segs


def _vertex_points(p: Partition, vertex_ids) -> list[tuple[int, int]]:
    c = p.complex
    W, H = c.spec.width, c.spec.height
    wanted = set(int(v) for v in vertex_ids)
    pts = []
    for raw in range((W + 1) * (H + 1)):
        if int(c.vertex_map[raw]) in wanted:
            j, i = divmod(raw, W + 1)
            pts.append((i, j))
    return pts


def _overlay_data(p: Partition):
    bg = boundary_graph(p)
    walls = sorted(p.walls)
    bset = [int(e) for e in bg.edge_ids if int(e) not in p.walls]
    singular = sorted(bg.singular_vertices)
    return bset, walls, singular


def render_ppm(p: Partition, style: RenderStyle = RenderStyle()) -> bytes:
    """Binary PPM (P6) image of the partition."""
    c = p.complex
    W, H = c.spec.width, c.spec.height
    s = style.cell_px
    m = style.frame_px + 2
    width_px = W * s + 2 * m
    height_px = H * s + 2 * m
    img = np.full((height_px, width_px, 3), 255, dtype=np.uint8)

    # faces; image row 0 is the top, grid row 0 the bottom
    dom = p.domains.reshape(H, W)
    for d in range(p.n_domains):
        color = np.array(domain_color(d), dtype=np.uint8)
        jj, ii = np.nonzero(dom == d)
        for j, i in zip(jj, ii):
            y0 = m + (H - 1 - j) * s
            x0 = m + i * s
            img[y0:y0 + s, x0:x0 + s] = color

    def px(gx, gy):
        return m + gx * s, m + (H - gy) * s

    def draw_segment(x0, y0, x1, y1, width, color, dashed=False):
        ax, ay = px(x0, y0)
        bx, by = px(x1, y1)
        half = width // 2
        if ay == by:  # horizontal
            lo, hi = sorted((ax, bx))
            xs = np.arange(lo, hi)
            if dashed:
                xs = xs[(xs - lo) % (2 * style.dash_px) < style.dash_px]
            img[max(ay - half, 0):ay + width - half, xs] = color
        else:
            lo, hi = sorted((ay, by))
            ys = np.arange(lo, hi)
            if dashed:
                ys = ys[(ys - lo) % (2 * style.dash_px) < style.dash_px]
            img[ys, max(ax - half, 0):ax + width - half] = color

    bset, walls, singular = _overlay_data(p)
    for seg in _edge_segments(p, bset):
        draw_segment(*seg, width=style.boundary_px, color=0)
    for seg in _edge_segments(p, walls):
        draw_segment(*seg, width=style.boundary_px, color=0, dashed=True)
    for seg in _edge_segments(p, c.boundary_edges):
        draw_segment(*seg, width=style.frame_px, color=40)

    # singular vertices: dark red rings
    yy, xx = np.mgrid[0:height_px, 0:width_px]
    for gx, gy in _vertex_points(p, singular):
        cx, cy = px(gx, gy)
        r2 = (xx - cx) ** 2 + (yy - cy) ** 2
        ring = (r2 >= (style.singular_radius_px - 1) ** 2) & (
            r2 <= (style.singular_radius_px + 1) ** 2
        )
        img[ring] = (170, 20, 20)

    header = f"P6\n{width_px} {height_px}\n255\n".encode("ascii")
    return header + img.tobytes()


def render_svg(p: Partition, style: RenderStyle = RenderStyle()) -> bytes:
    """SVG image of the partition; same overlays as the PPM renderer."""
    c = p.complex
    W, H = c.spec.width, c.spec.height
    s = style.cell_px
    m = style.frame_px + 2
    width_px = W * s + 2 * m
    height_px = H * s + 2 * m

    def px(gx, gy):
        return m + gx * s, m + (H - gy) * s

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width_px}" '
        f'height="{height_px}" viewBox="0 0 {width_px} {height_px}">',
        f'<rect width="{width_px}" height="{height_px}" fill="#ffffff"/>',
    ]
    # merge equal-domain runs within each row to keep files small
    dom = p.domains.reshape(H, W)
    for j in range(H - 1, -1, -1):
        i = 0
        while i < W:
            d = dom[j, i]
            i2 = i
            while i2 < W and dom[j, i2] == d:
                i2 += 1
            x0, y0 = px(i, j + 1)
            r, g, b = domain_color(int(d))
            parts.append(
                f'<rect x="{x0}" y="{y0}" width="{(i2 - i) * s}" height="{s}" '
                f'fill="#{r:02x}{g:02x}{b:02x}"/>'
            )
            i = i2

    bset, walls, singular = _overlay_data(p)

    def lines(edge_ids, stroke, width, dashed=False):
        dash = f' stroke-dasharray="{style.dash_px} {style.dash_px}"' if dashed else ""
        for x0, y0, x1, y1 in _edge_segments(p, edge_ids):
            ax, ay = px(x0, y0)
            bx, by = px(x1, y1)
            parts.append(
                f'<line x1="{ax}" y1="{ay}" x2="{bx}" y2="{by}" '
                f'stroke="{stroke}" stroke-width="{width}"{dash}/>'
            )

    lines(bset, "#000000", style.boundary_px)
    lines(walls, "#000000", style.boundary_px, dashed=True)
    lines(c.boundary_edges, "#282828", style.frame_px)
    for gx, gy in _vertex_points(p, singular):
        cx, cy = px(gx, gy)
        parts.append(
            f'<circle cx="{cx}" cy="{cy}" r="{style.singular_radius_px}" '
            f'fill="none" stroke="#aa1414" stroke-width="2"/>'
        )
    parts.append("</svg>")
    return "\n".join(parts).encode("utf-8")


def render(p: Partition, style: RenderStyle = RenderStyle(), fmt: str = "ppm") -> bytes:
    if fmt == "ppm":
        return render_ppm(p, style)
    if fmt == "svg":
        return render_svg(p, style)
    raise ValueError(f"unknown format {fmt!r}; use ppm or svg")
