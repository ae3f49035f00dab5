import math

import numpy as np
import pytest

from eulerpart import RenderStyle, SurfaceSpec, build_complex, cut, from_labels, render
from eulerpart.render import domain_color, render_ppm, render_svg


def bands3():
    c = build_complex(SurfaceSpec.moebius(12, 12))
    x = (np.arange(12) + 0.5) * math.pi / 12
    return from_labels(c, np.tile((np.sin(3 * x) > 0).astype(int), (12, 1)).ravel())


def test_ppm_header_and_size():
    p = bands3()
    style = RenderStyle(cell_px=8)
    data = render_ppm(p, style)
    assert data.startswith(b"P6\n")
    header, rest = data.split(b"\n", 1)
    dims, rest = rest.split(b"\n", 1)
    w, h = (int(t) for t in dims.split())
    maxval, pixels = rest.split(b"\n", 1)
    assert maxval == b"255"
    assert len(pixels) == w * h * 3


def test_renders_byte_identical():
    p = bands3()
    style = RenderStyle(cell_px=10)
    assert render_ppm(p, style) == render_ppm(p, style)
    assert render_svg(p, style) == render_svg(p, style)


def test_render_dispatch():
    p = bands3()
    assert render(p, fmt="ppm").startswith(b"P6")
    assert render(p, fmt="svg").startswith(b"<svg")
    with pytest.raises(ValueError):
        render(p, fmt="png")


def test_svg_contains_overlays():
    p = bands3()
    svg = render_svg(p).decode()
    assert "<line" in svg            # boundary set
    assert 'stroke="#282828"' in svg  # thick surface boundary
    assert svg.count("<svg") == 1


def test_walls_drawn_dashed():
    c = build_complex(SurfaceSpec.moebius(6, 6))
    p = cut(
        from_labels(c, np.zeros(36, dtype=int)),
        [c.horizontal_edge(i, 3) for i in range(6)],
    )
    svg = render_svg(p).decode()
    assert "stroke-dasharray" in svg


def test_singular_points_circled():
    c = build_complex(SurfaceSpec.rectangle(6, 6))
    lab = np.zeros((6, 6), dtype=int)
    lab[:3, :3], lab[:3, 3:], lab[3:, :3], lab[3:, 3:] = 0, 1, 2, 3
    p = from_labels(c, lab.ravel())
    svg = render_svg(p).decode()
    assert "<circle" in svg


def test_palette_deterministic_and_distinct():
    head = [domain_color(d) for d in range(30)]
    assert head == [domain_color(d) for d in range(30)]
    assert len(set(head)) == 30


def test_flat_rectangle_single_color():
    c = build_complex(SurfaceSpec.rectangle(4, 4))
    p = from_labels(c, np.zeros(16, dtype=int))
    svg = render_svg(p).decode()
    fills = {part.split('"')[0] for part in svg.split('fill="#')[1:]}
    # background white + one domain color
    assert len(fills) == 2
