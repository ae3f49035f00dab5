"""Orientation double covers of the moebius and klein surfaces.

The cover of a ``W x H`` moebius grid is the ``W x 2H`` cylinder; the
cover of a klein grid is the torus of the same dimensions.  The covering
map sends a cover face ``(i, j)`` with ``j >= H`` to the base face
``(W-1-i, j-H)``, and the deck involution is
``(i, j) -> (W-1-i, (j+H) mod 2H)``.

A base domain is orientable iff its preimage in the cover splits into two
components, which gives a second, independent route to the orientability
character computed by the sign-tracking union-find.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .complexes import CellComplex, SurfaceSpec, build_complex
from .errors import InvariantViolation
from .partition import Partition, from_labels, invariants

COVERABLE = {"moebius": "cylinder", "klein": "torus"}


@dataclass(frozen=True, eq=False)
class CoverStructure:
    base: CellComplex
    cover: CellComplex
    face_projection: np.ndarray   # cover face -> base face
    face_deck: np.ndarray         # cover face -> cover face, the involution
    edge_projection: np.ndarray   # cover edge -> base edge


def double_cover(c: CellComplex) -> CoverStructure:
    """Build the orientation double cover of a moebius or klein complex."""
    kind = c.spec.kind
    if kind not in COVERABLE:
        raise ValueError(f"double cover supported for {sorted(COVERABLE)}, not {kind}")
    if c.spec.y_gluing != "reversed":
        raise ValueError("double cover construction expects the reversed seam in y")
    W, H = c.spec.width, c.spec.height
    cover = build_complex(SurfaceSpec.named(COVERABLE[kind], W, 2 * H))

    jj, ii = np.divmod(np.arange(W * 2 * H), W)
    upper = jj >= H
    proj_i = np.where(upper, W - 1 - ii, ii)
    proj_j = np.where(upper, jj - H, jj)
    face_projection = proj_j * W + proj_i
    deck_i = W - 1 - ii
    deck_j = (jj + H) % (2 * H)
    face_deck = deck_j * W + deck_i

    edge_projection = _edge_projection(c, cover)

    cs = CoverStructure(
        base=c,
        cover=cover,
        face_projection=face_projection,
        face_deck=face_deck,
        edge_projection=edge_projection,
    )
    _validate_cover(cs)
    return cs


def _edge_projection(base: CellComplex, cover: CellComplex) -> np.ndarray:
    """Map each canonical cover edge to the canonical base edge below it."""
    W, H = base.spec.width, base.spec.height
    H2 = 2 * H
    HOFF_cov = W * (H2 + 1)
    HOFF_base = W * (H + 1)
    n_raw = HOFF_cov + (W + 1) * H2

    raw_base = np.empty(n_raw, dtype=np.int64)
    # horizontal cover edge (i, j): segment (i,j)-(i+1,j)
    j, i = np.divmod(np.arange(HOFF_cov), W)
    low = j <= H  # rows 0..H project straight (row H is the mid seam)
    raw_base[:HOFF_cov] = np.where(low, j * W + i, (j - H) * W + (W - 1 - i))
    # vertical cover edge (i, j): segment (i,j)-(i,j+1)
    j, i = np.divmod(np.arange((W + 1) * H2), W + 1)
    low = j < H
    raw_base[HOFF_cov:] = HOFF_base + np.where(
        low, j * (W + 1) + i, (j - H) * (W + 1) + (W - i)
    )

    out = np.empty(cover.n_edges, dtype=np.int64)
    # scatter through the cover's raw->canonical map; orbit members agree
    out[cover.edge_map] = base.edge_map[raw_base]
    return out


def _validate_cover(cs: CoverStructure) -> None:
    a, pi = cs.face_deck, cs.face_projection
    if not np.array_equal(a[a], np.arange(len(a))):
        raise InvariantViolation("deck map is not an involution")
    if np.any(a == np.arange(len(a))):
        raise InvariantViolation("deck map has a fixed face")
    if not np.array_equal(pi[a], pi):
        raise InvariantViolation("deck map does not commute with the projection")
    if np.any(np.bincount(pi, minlength=cs.base.n_faces) != 2):
        raise InvariantViolation("base face without exactly two preimages")
    ids = cs.cover.interior_edges
    if not np.all(cs.cover.edge_parity[ids] == 1):
        raise InvariantViolation("cover complex is not orientable")


def lift_partition(cs: CoverStructure, p: Partition) -> Partition:
    """Pull a base partition back through the covering map."""
    if p.complex is not cs.base and p.complex.spec != cs.base.spec:
        raise ValueError("partition does not live on the base of this cover")
    labels = p.domains[cs.face_projection]
    walls = np.flatnonzero(np.isin(cs.edge_projection, np.fromiter(p.walls, dtype=np.int64))) if p.walls else ()
    return from_labels(cs.cover, labels, walls=walls)


def preimage_component_counts(cs: CoverStructure, p: Partition, lifted: Partition | None = None) -> np.ndarray:
    """Number of cover components over each base domain (always 1 or 2)."""
    lifted = lifted or lift_partition(cs, p)
    pairs = np.unique(
        np.stack([p.domains[cs.face_projection], lifted.domains], axis=1), axis=0
    )
    counts = np.bincount(pairs[:, 0], minlength=p.n_domains)
    if not np.all((counts == 1) | (counts == 2)):
        raise InvariantViolation(f"preimage component counts {counts.tolist()} outside {{1,2}}")
    return counts


def omega_via_cover(cs: CoverStructure, p: Partition) -> np.ndarray:
    """Per-domain orientability: orientable iff the preimage has two parts."""
    return preimage_component_counts(cs, p) == 2


@dataclass(frozen=True)
class CoverReport:
    kappa: int
    beta: int
    sigma: int
    kappa_star: int
    beta_star: int
    sigma_star: int
    n_nonorientable: int
    preimage_counts: tuple
    beta_interior: int            # base boundary-set components off the surface boundary
    beta_interior_star: int
    boundary_circles_joined: bool  # the two cover boundary circles meet through the lifted set
    relation_flags: dict


def cover_bookkeeping(cs: CoverStructure, p: Partition) -> CoverReport:
    """Lift a partition and check the covering relations.

    kappa* = 2 kappa - n and sigma* = 2 sigma are asserted outright.  The
    beta relations (beta* = 2 beta_i - 1 with every domain orientable and
    the cover boundary circles unjoined; beta* = 2 beta with exactly one
    non-orientable domain) are recorded as flagged observations together
    with their preconditions, not hard assertions.
    """
    lifted = lift_partition(cs, p)
    base_rep = invariants(p)
    cover_rep = invariants(lifted)
    counts = preimage_component_counts(cs, p, lifted)
    n_bad = int(np.sum(counts == 1))

    if cover_rep.kappa != 2 * base_rep.kappa - n_bad:
        raise InvariantViolation(
            f"kappa* = {cover_rep.kappa} != 2*{base_rep.kappa} - {n_bad}"
        )
    if cover_rep.sigma != 2 * base_rep.sigma:
        raise InvariantViolation(f"sigma* = {cover_rep.sigma} != 2*{base_rep.sigma}")

    joined = _cover_boundary_joined(lifted)
    flags = {
        "beta_star_eq_2beta_interior_minus_1": {
            "applies": n_bad == 0 and not joined and cs.cover.spec.kind == "cylinder",
            "holds": cover_rep.beta == 2 * base_rep.beta_interior - 1,
        },
        "beta_star_eq_2beta": {
            "applies": n_bad == 1,
            "holds": cover_rep.beta == 2 * base_rep.beta,
        },
    }
    return CoverReport(
        kappa=base_rep.kappa,
        beta=base_rep.beta,
        sigma=base_rep.sigma,
        kappa_star=cover_rep.kappa,
        beta_star=cover_rep.beta,
        sigma_star=cover_rep.sigma,
        n_nonorientable=n_bad,
        preimage_counts=tuple(int(x) for x in counts),
        beta_interior=base_rep.beta_interior,
        beta_interior_star=cover_rep.beta_interior,
        boundary_circles_joined=joined,
        relation_flags=flags,
    )


def _cover_boundary_joined(lifted: Partition) -> bool:
    """Do the two cover boundary circles share a component of the lifted
    boundary set united with the cover boundary?"""
    from scipy.sparse import coo_matrix
    from scipy.sparse.csgraph import connected_components

    c = lifted.complex
    if c.spec.closed:
        return False
    union_ids = np.concatenate([lifted.boundary_set, c.boundary_edges])
    if union_ids.size == 0:
        return False
    ev = c.edge_vertices[union_ids]
    verts, idx = np.unique(ev, return_inverse=True)
    idx = idx.reshape(ev.shape)
    g = coo_matrix(
        (np.ones(len(union_ids), dtype=np.int8), (idx[:, 0], idx[:, 1])),
        shape=(len(verts), len(verts)),
    )
    _n, comp = connected_components(g, directed=False)
    # the cylinder cover's boundary circles are the seams x=0 and x=W
    lo = c.vertex_id(0, 0)
    hi = c.vertex_id(c.spec.width, 0)
    return bool(comp[np.searchsorted(verts, lo)] == comp[np.searchsorted(verts, hi)])
