import numpy as np
import pytest

from eulerpart import (
    EXPECTED_BOUNDARY_COMPONENTS,
    EXPECTED_CHI,
    SurfaceSpec,
    boundary_components,
    build_complex,
    euler_characteristic,
)

ALL_SURFACES = sorted(EXPECTED_CHI)
SIZES = [(2, 2), (3, 3), (4, 2), (2, 5), (6, 6), (5, 7)]


@pytest.mark.parametrize("name", ALL_SURFACES)
@pytest.mark.parametrize("size", SIZES)
def test_chi_table(name, size):
    c = build_complex(SurfaceSpec.named(name, *size))
    assert euler_characteristic(c) == EXPECTED_CHI[name]


@pytest.mark.parametrize("name", ALL_SURFACES)
@pytest.mark.parametrize("size", SIZES)
def test_boundary_component_table(name, size):
    c = build_complex(SurfaceSpec.named(name, *size))
    assert boundary_components(c) == EXPECTED_BOUNDARY_COMPONENTS[name]


def test_rectangle_2x2_counts():
    c = build_complex(SurfaceSpec.rectangle(2, 2))
    assert (c.n_vertices, c.n_edges, c.n_faces) == (9, 12, 4)


def test_moebius_boundary_is_one_cycle_of_2h_edges():
    for W, H in ((4, 6), (6, 6), (5, 3)):
        c = build_complex(SurfaceSpec.moebius(W, H))
        assert len(c.boundary_edges) == 2 * H
        assert boundary_components(c) == 1


def test_projective_4x4_closed():
    c = build_complex(SurfaceSpec.projective(4, 4))
    assert euler_characteristic(c) == 1
    assert len(c.boundary_edges) == 0


@pytest.mark.parametrize("name", ALL_SURFACES)
def test_edge_face_incidence(name):
    c = build_complex(SurfaceSpec.named(name, 5, 4))
    two_sided = c.edge_faces[:, 1] >= 0
    assert np.array_equal(two_sided, ~c.edge_is_boundary)
    # every face lists each of its edges exactly once
    for f in range(c.n_faces):
        for s in range(4):
            e = c.face_edges[f, s]
            slots = [(c.edge_faces[e, k], c.edge_sides[e, k]) for k in range(2)]
            assert (f, s) in slots


@pytest.mark.parametrize("name", ALL_SURFACES)
def test_parity_reverses_only_at_reversed_seams(name):
    spec = SurfaceSpec.named(name, 5, 4)
    c = build_complex(spec)
    n_reversed = int(np.sum(c.edge_parity == -1))
    expected = 0
    if spec.x_gluing == "reversed":
        expected += spec.height
    if spec.y_gluing == "reversed":
        expected += spec.width
    assert n_reversed == expected


@pytest.mark.parametrize("name", ALL_SURFACES)
def test_parity_product_around_interior_vertices(name):
    c = build_complex(SurfaceSpec.named(name, 6, 4))
    prod = np.ones(c.n_vertices, dtype=np.int64)
    ids = c.interior_edges
    np.multiply.at(prod, c.edge_vertices[ids].ravel(), np.repeat(c.edge_parity[ids], 2))
    assert np.all(prod[~c.vertex_is_boundary] == 1)


def test_grid_helpers_roundtrip():
    c = build_complex(SurfaceSpec.moebius(4, 4))
    # the reversed y-seam identifies top and bottom horizontal edges
    assert c.horizontal_edge(0, 4) == c.horizontal_edge(3, 0)
    assert c.vertex_id(0, 4) == c.vertex_id(4, 0)
    # face sides point at the right edges
    f = c.face_index(1, 2)
    assert c.face_edges[f, 0] == c.horizontal_edge(1, 2)
    assert c.face_edges[f, 2] == c.horizontal_edge(1, 3)
    assert c.face_edges[f, 3] == c.vertical_edge(1, 2)
    assert c.face_edges[f, 1] == c.vertical_edge(2, 2)


def test_size_validation():
    with pytest.raises(ValueError):
        SurfaceSpec.rectangle(1, 5)
    with pytest.raises(ValueError):
        SurfaceSpec.rectangle(5, 1)
    with pytest.raises(ValueError):
        SurfaceSpec(3, 3, "open", "weird")
    with pytest.raises(ValueError):
        SurfaceSpec.named("sphere", 4, 4)


def test_kind_detection_is_order_free():
    assert SurfaceSpec(4, 4, "periodic", "open").kind == "cylinder"
    assert SurfaceSpec(4, 4, "reversed", "open").kind == "moebius"
    assert SurfaceSpec(4, 4, "reversed", "periodic").kind == "klein"


def test_spec_flags():
    assert SurfaceSpec.torus(3, 3).orientable
    assert not SurfaceSpec.klein(3, 3).orientable
    assert SurfaceSpec.klein(3, 3).closed
    assert not SurfaceSpec.moebius(4, 4).closed
