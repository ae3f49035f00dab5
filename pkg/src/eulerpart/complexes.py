"""Quotient grid cell complexes for the supported flat surfaces.

Every surface here is a quotient of a ``width x height`` grid of unit
squares.  Each seam pair (left/right in x, bottom/top in y) is either left
``open`` (it becomes genuine boundary), glued ``periodic`` (straight
identification), or glued ``reversed`` (identification composed with a flip
of the other coordinate, which reverses orientation across the seam).

Conventions, fixed once and used everywhere:

* faces are indexed row-major, ``face = j*W + i`` for column ``i`` and
  row ``j``;
* raw grid vertices are ``j*(W+1) + i`` for ``0 <= i <= W``, ``0 <= j <= H``;
* raw horizontal edges (along x, from ``(i,j)`` to ``(i+1,j)``) are
  ``j*W + i``; raw vertical edges (along y) are ``W*(H+1) + j*(W+1) + i``;
* the reversed y-gluing identifies the top edge of column ``i`` with the
  bottom edge of column ``W-1-i`` (and symmetrically for x), so a
  ``reversed`` y-seam realizes the identification (x, y+pi) ~ (pi-x, y);
* canonical vertex/edge ids are the seam orbits of the raw ids, numbered
  compactly in increasing order of their smallest raw representative.

Seam orbits are closed under *both* gluing maps (corner orbits of the
projective model need the composition of the two), which the union-find
canonicalization handles by construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .errors import InvariantViolation
from .unionfind import UnionFind

OPEN = "open"
PERIODIC = "periodic"
REVERSED = "reversed"
GLUINGS = (OPEN, PERIODIC, REVERSED)

#: preset name -> (x_gluing, y_gluing)
PRESETS = {
    "rectangle": (OPEN, OPEN),
    "cylinder": (OPEN, PERIODIC),
    "moebius": (OPEN, REVERSED),
    "torus": (PERIODIC, PERIODIC),
    "klein": (PERIODIC, REVERSED),
    "projective": (REVERSED, REVERSED),
}

_KIND_BY_GLUINGS = {tuple(sorted(v)): k for k, v in PRESETS.items()}

#: exact Euler characteristic of each surface
EXPECTED_CHI = {
    "rectangle": 1,
    "cylinder": 0,
    "moebius": 0,
    "torus": 0,
    "klein": 0,
    "projective": 1,
}

#: number of boundary circles of each surface
EXPECTED_BOUNDARY_COMPONENTS = {
    "rectangle": 1,
    "cylinder": 2,
    "moebius": 1,
    "torus": 0,
    "klein": 0,
    "projective": 0,
}

# face side order: 0=S, 1=E, 2=N, 3=W; side s runs from corner s to corner
# (s+1) % 4 in the cyclic corner order 0=SW, 1=SE, 2=NE, 3=NW.
SIDE_S, SIDE_E, SIDE_N, SIDE_W = 0, 1, 2, 3


@dataclass(frozen=True)
class SurfaceSpec:
    """Dimensions and seam gluings of a quotient grid surface."""

    width: int
    height: int
    x_gluing: str = OPEN
    y_gluing: str = OPEN

    def __post_init__(self):
        if not (isinstance(self.width, int) and isinstance(self.height, int)):
            raise TypeError("width and height must be integers")
        if self.width < 2 or self.height < 2:
            raise ValueError("width and height must be at least 2")
        if self.x_gluing not in GLUINGS or self.y_gluing not in GLUINGS:
            raise ValueError(f"gluings must be one of {GLUINGS}")

    @property
    def kind(self) -> str:
        """Surface name determined by the (unordered) pair of gluings."""
        return _KIND_BY_GLUINGS[tuple(sorted((self.x_gluing, self.y_gluing)))]

    @property
    def orientable(self) -> bool:
        return REVERSED not in (self.x_gluing, self.y_gluing)

    @property
    def closed(self) -> bool:
        return OPEN not in (self.x_gluing, self.y_gluing)

    @classmethod
    def named(cls, name: str, width: int, height: int) -> "SurfaceSpec":
        try:
            gx, gy = PRESETS[name]
        except KeyError:
            raise ValueError(f"unknown surface {name!r}; presets: {sorted(PRESETS)}")
        return cls(width, height, gx, gy)

    @classmethod
    def rectangle(cls, width: int, height: int) -> "SurfaceSpec":
        return cls.named("rectangle", width, height)

    @classmethod
    def cylinder(cls, width: int, height: int) -> "SurfaceSpec":
        return cls.named("cylinder", width, height)

    @classmethod
    def moebius(cls, width: int, height: int) -> "SurfaceSpec":
        return cls.named("moebius", width, height)

    @classmethod
    def torus(cls, width: int, height: int) -> "SurfaceSpec":
        return cls.named("torus", width, height)

    @classmethod
    def klein(cls, width: int, height: int) -> "SurfaceSpec":
        return cls.named("klein", width, height)

    @classmethod
    def projective(cls, width: int, height: int) -> "SurfaceSpec":
        return cls.named("projective", width, height)


@dataclass(frozen=True, eq=False)
class CellComplex:
    """A quotient grid surface with canonical vertex/edge orbits.

    All arrays are indexed by canonical ids.  ``edge_faces`` holds the one
    or two incident faces of every edge (-1 in the second slot for boundary
    edges); ``edge_sides`` holds the side of each incident face the edge
    occupies; ``edge_parity`` is +1 where the two incident charts agree in
    orientation across the edge and -1 across a reversed seam.
    """

    spec: SurfaceSpec
    n_vertices: int
    n_edges: int
    n_faces: int
    edge_vertices: np.ndarray     # (E, 2) canonical endpoint ids, sorted
    edge_faces: np.ndarray        # (E, 2) face ids, -1 pad
    edge_sides: np.ndarray        # (E, 2) side of edge in each face, -1 pad
    edge_parity: np.ndarray       # (E,)  +1 / -1
    edge_is_horizontal: np.ndarray  # (E,) True for x-direction edges
    edge_is_boundary: np.ndarray  # (E,) bool
    vertex_is_boundary: np.ndarray  # (V,) bool
    face_edges: np.ndarray        # (F, 4) edge id per side S,E,N,W
    face_vertices: np.ndarray     # (F, 4) vertex id per corner SW,SE,NE,NW
    vertex_map: np.ndarray        # raw vertex id -> canonical id
    edge_map: np.ndarray          # raw edge id -> canonical id

    @property
    def euler_characteristic(self) -> int:
        return self.n_vertices - self.n_edges + self.n_faces

    @cached_property
    def interior_edges(self) -> np.ndarray:
        return np.flatnonzero(~self.edge_is_boundary)

    @cached_property
    def boundary_edges(self) -> np.ndarray:
        return np.flatnonzero(self.edge_is_boundary)

    @cached_property
    def adjacency(self) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        """(face_a, face_b, parity, edge_id) over all interior edges."""
        ids = self.interior_edges
        return (
            self.edge_faces[ids, 0],
            self.edge_faces[ids, 1],
            self.edge_parity[ids],
            ids,
        )

    @cached_property
    def vertex_faces(self):
        """CSR-style incidence: faces around each canonical vertex."""
        corners = self.face_vertices.ravel()
        faces = np.repeat(np.arange(self.n_faces, dtype=np.int64), 4)
        order = np.argsort(corners, kind="stable")
        starts = np.searchsorted(corners[order], np.arange(self.n_vertices + 1))
        return starts, faces[order]

    def faces_at_vertex(self, v: int) -> np.ndarray:
        starts, faces = self.vertex_faces
        return np.unique(faces[starts[v]:starts[v + 1]])

    # -- raw-coordinate helpers ------------------------------------------

    def vertex_id(self, i: int, j: int) -> int:
        """Canonical id of grid vertex (i, j), 0 <= i <= W, 0 <= j <= H."""
        W, H = self.spec.width, self.spec.height
        if not (0 <= i <= W and 0 <= j <= H):
            raise ValueError(f"vertex ({i},{j}) outside grid")
        return int(self.vertex_map[j * (W + 1) + i])

    def horizontal_edge(self, i: int, j: int) -> int:
        """Canonical id of the edge from (i, j) to (i+1, j)."""
        W, H = self.spec.width, self.spec.height
        if not (0 <= i < W and 0 <= j <= H):
            raise ValueError(f"horizontal edge ({i},{j}) outside grid")
        return int(self.edge_map[j * W + i])

    def vertical_edge(self, i: int, j: int) -> int:
        """Canonical id of the edge from (i, j) to (i, j+1)."""
        W, H = self.spec.width, self.spec.height
        if not (0 <= i <= W and 0 <= j < H):
            raise ValueError(f"vertical edge ({i},{j}) outside grid")
        return int(self.edge_map[W * (H + 1) + j * (W + 1) + i])

    def face_index(self, i: int, j: int) -> int:
        W, H = self.spec.width, self.spec.height
        if not (0 <= i < W and 0 <= j < H):
            raise ValueError(f"face ({i},{j}) outside grid")
        return j * W + i

    @cached_property
    def edge_raw_representatives(self) -> list[np.ndarray]:
        """Raw edge ids in each canonical orbit (1 or 2 entries)."""
        order = np.argsort(self.edge_map, kind="stable")
        starts = np.searchsorted(self.edge_map[order], np.arange(self.n_edges + 1))
        return [order[starts[k]:starts[k + 1]] for k in range(self.n_edges)]


def _raw_edge_endpoints(W: int, H: int) -> np.ndarray:
    """Raw endpoint vertex ids of every raw edge, horizontal block first."""
    n_h = W * (H + 1)
    n_v = (W + 1) * H
    out = np.empty((n_h + n_v, 2), dtype=np.int64)
    j, i = np.divmod(np.arange(n_h), W)
    out[:n_h, 0] = j * (W + 1) + i
    out[:n_h, 1] = j * (W + 1) + i + 1
    j, i = np.divmod(np.arange(n_v), W + 1)
    out[n_h:, 0] = j * (W + 1) + i
    out[n_h:, 1] = (j + 1) * (W + 1) + i
    return out


def build_complex(spec: SurfaceSpec) -> CellComplex:
    """Construct the canonical cell complex of a quotient grid surface."""
    W, H = spec.width, spec.height
    n_faces = W * H
    n_raw_v = (W + 1) * (H + 1)
    HOFF = W * (H + 1)  # vertical raw edges start here
    n_raw_e = HOFF + (W + 1) * H

    def vid(i, j):
        return j * (W + 1) + i

    def he(i, j):
        return j * W + i

    def ve(i, j):
        return HOFF + j * (W + 1) + i

    def fid(i, j):
        return j * W + i

    vpairs: list[tuple[np.ndarray, np.ndarray]] = []
    epairs: list[tuple[np.ndarray, np.ndarray]] = []
    # seam adjacency: (raw edge, face_a, side_a, face_b, side_b, parity)
    seam_adj: list[tuple[np.ndarray, ...]] = []

    jv = np.arange(H + 1)
    je = np.arange(H)
    if spec.x_gluing == PERIODIC:
        vpairs.append((vid(W, jv), vid(0, jv)))
        epairs.append((ve(W, je), ve(0, je)))
        seam_adj.append((ve(W, je), fid(W - 1, je), SIDE_E, fid(0, je), SIDE_W, +1))
    elif spec.x_gluing == REVERSED:
        vpairs.append((vid(W, jv), vid(0, H - jv)))
        epairs.append((ve(W, je), ve(0, H - 1 - je)))
        seam_adj.append((ve(W, je), fid(W - 1, je), SIDE_E, fid(0, H - 1 - je), SIDE_W, -1))

    iv = np.arange(W + 1)
    ie = np.arange(W)
    if spec.y_gluing == PERIODIC:
        vpairs.append((vid(iv, H), vid(iv, 0)))
        epairs.append((he(ie, H), he(ie, 0)))
        seam_adj.append((he(ie, H), fid(ie, H - 1), SIDE_N, fid(ie, 0), SIDE_S, +1))
    elif spec.y_gluing == REVERSED:
        vpairs.append((vid(iv, H), vid(W - iv, 0)))
        epairs.append((he(ie, H), he(W - 1 - ie, 0)))
        seam_adj.append((he(ie, H), fid(ie, H - 1), SIDE_N, fid(W - 1 - ie, 0), SIDE_S, -1))

    # vertex orbits: union-find over the (few) seam vertices; corner orbits
    # close up under the composition of both seam maps automatically
    vroot = np.arange(n_raw_v, dtype=np.int64)
    if vpairs:
        touched = np.unique(np.concatenate([np.concatenate(p) for p in vpairs]))
        uf = UnionFind(len(touched))
        local = {int(r): k for k, r in enumerate(touched)}
        for a_arr, b_arr in vpairs:
            for a, b in zip(np.atleast_1d(a_arr), np.atleast_1d(b_arr)):
                uf.union(local[int(a)], local[int(b)])
        # canonical representative: smallest raw id in the orbit
        rep = {}
        for k, r in enumerate(touched):
            root = uf.find(k)
            rep[root] = min(rep.get(root, int(r)), int(r))
        for k, r in enumerate(touched):
            vroot[int(r)] = rep[uf.find(k)]
    uniq_v, vertex_map = np.unique(vroot, return_inverse=True)
    n_vertices = len(uniq_v)

    # edge orbits have at most two members; pair straight to the minimum
    eroot = np.arange(n_raw_e, dtype=np.int64)
    for a_arr, b_arr in epairs:
        lo = np.minimum(a_arr, b_arr)
        hi = np.maximum(a_arr, b_arr)
        eroot[hi] = lo
    uniq_e, edge_map = np.unique(eroot, return_inverse=True)
    n_edges = len(uniq_e)

    # face incidence tables straight from the grid
    jj, ii = np.divmod(np.arange(n_faces), W)
    face_edges = np.empty((n_faces, 4), dtype=np.int64)
    face_edges[:, SIDE_S] = edge_map[he(ii, jj)]
    face_edges[:, SIDE_E] = edge_map[ve(ii + 1, jj)]
    face_edges[:, SIDE_N] = edge_map[he(ii, jj + 1)]
    face_edges[:, SIDE_W] = edge_map[ve(ii, jj)]
    face_vertices = np.empty((n_faces, 4), dtype=np.int64)
    face_vertices[:, 0] = vertex_map[vid(ii, jj)]
    face_vertices[:, 1] = vertex_map[vid(ii + 1, jj)]
    face_vertices[:, 2] = vertex_map[vid(ii + 1, jj + 1)]
    face_vertices[:, 3] = vertex_map[vid(ii, jj + 1)]

    # scatter (face, side) incidences into per-edge slots, (f, s) lex order
    flat_edges = face_edges.ravel()
    flat_faces = np.repeat(np.arange(n_faces, dtype=np.int64), 4)
    flat_sides = np.tile(np.arange(4, dtype=np.int64), n_faces)
    order = np.argsort(flat_edges, kind="stable")
    sorted_e = flat_edges[order]
    first = np.searchsorted(sorted_e, np.arange(n_edges))
    counts = np.searchsorted(sorted_e, np.arange(n_edges), side="right") - first
    if counts.min() < 1 or counts.max() > 2:
        raise InvariantViolation("edge incident to zero or more than two faces")
    edge_faces = np.full((n_edges, 2), -1, dtype=np.int64)
    edge_sides = np.full((n_edges, 2), -1, dtype=np.int64)
    edge_faces[:, 0] = flat_faces[order[first]]
    edge_sides[:, 0] = flat_sides[order[first]]
    two = counts == 2
    edge_faces[two, 1] = flat_faces[order[first[two] + 1]]
    edge_sides[two, 1] = flat_sides[order[first[two] + 1]]

    edge_parity = np.ones(n_edges, dtype=np.int8)
    for raw, _fa, _sa, _fb, _sb, par in seam_adj:
        if par == -1:
            edge_parity[edge_map[raw]] = -1

    edge_is_boundary = ~two
    edge_is_horizontal = uniq_e < HOFF

    raw_ev = _raw_edge_endpoints(W, H)
    edge_vertices = np.sort(vertex_map[raw_ev[uniq_e]], axis=1)

    vertex_is_boundary = np.zeros(n_vertices, dtype=bool)
    vertex_is_boundary[edge_vertices[edge_is_boundary].ravel()] = True

    cx = CellComplex(
        spec=spec,
        n_vertices=n_vertices,
        n_edges=n_edges,
        n_faces=n_faces,
        edge_vertices=edge_vertices,
        edge_faces=edge_faces,
        edge_sides=edge_sides,
        edge_parity=edge_parity,
        edge_is_horizontal=edge_is_horizontal,
        edge_is_boundary=edge_is_boundary,
        vertex_is_boundary=vertex_is_boundary,
        face_edges=face_edges,
        face_vertices=face_vertices,
        vertex_map=vertex_map,
        edge_map=edge_map,
    )
    _validate_complex(cx)
    return cx


def _validate_complex(c: CellComplex) -> None:
    kind = c.spec.kind
    if c.euler_characteristic != EXPECTED_CHI[kind]:
        raise InvariantViolation(
            f"chi = {c.euler_characteristic} for {kind}, expected {EXPECTED_CHI[kind]}"
        )
    # a loop around any interior vertex is contractible, so the parities of
    # its incident edges must multiply to +1 even at reversed seams
    prod = np.ones(c.n_vertices, dtype=np.int64)
    ids = c.interior_edges
    np.multiply.at(prod, c.edge_vertices[ids].ravel(), np.repeat(c.edge_parity[ids], 2))
    interior = ~c.vertex_is_boundary
    if not np.all(prod[interior] == 1):
        raise InvariantViolation("orientation parities inconsistent around a vertex")


def euler_characteristic(c: CellComplex) -> int:
    """V - E + F of the quotient complex."""
    return c.euler_characteristic


def subgraph_component_count(c: CellComplex, edge_ids: np.ndarray) -> int:
    """Number of connected components of an edge subgraph.

    Components are counted over the vertices actually touched by the given
    edges; isolated vertices of the ambient complex do not contribute.
    """
    edge_ids = np.asarray(edge_ids, dtype=np.int64)
    if edge_ids.size == 0:
        return 0
    ev = c.edge_vertices[edge_ids]
    verts, idx = np.unique(ev, return_inverse=True)
    idx = idx.reshape(ev.shape)
    n = len(verts)
    data = np.ones(len(edge_ids), dtype=np.int8)
    g = coo_matrix((data, (idx[:, 0], idx[:, 1])), shape=(n, n))
    count, _ = connected_components(g, directed=False)
    return int(count)


def boundary_components(c: CellComplex) -> int:
    """Number of connected components of the surface boundary."""
    return subgraph_component_count(c, c.boundary_edges)
