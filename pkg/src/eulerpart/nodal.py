"""Trigonometric eigenfunctions and their sign-pattern partitions.

Functions are finite sums of separable terms ``c * fx(x) * fy(y)`` with
``fx, fy`` a sine or cosine of an integer frequency plus a phase.  On the
moebius surface the fundamental domain is [0, pi] x [0, pi) with the
reversed seam in y, so admissible functions must satisfy both the
identification f(x, y) = f(pi - x, y + pi) and the Dirichlet condition
f(0, y) = f(pi, y) = 0; on the rectangle [0, pi]^2 they must vanish on
all four sides.  ``check_symmetry`` tests these numerically on a fixed
lattice and gates ``rasterize``.

Rasterization samples signs at face centers only.  A sample landing on
the zero set (within ``zero_tol``) raises ``ResolutionError`` rather than
being tie-broken; callers perturb the resolution instead, which keeps the
extracted boundary set an honest primal-edge subgraph.  ``stable_invariants``
runs the rasterization at N, 2N, 4N, ... and accepts once two consecutive
levels agree on (kappa, beta, sigma, omega).
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field

import numpy as np

from .complexes import SurfaceSpec, build_complex
from .errors import InstabilityError, ResolutionError, SymmetryError
from .partition import InvariantReport, Partition, from_labels, invariants

DEFAULT_MAX_REFINE_ENV = "NODAL_MAX_REFINE"


def _max_refine_default() -> int:
    try:
        return int(os.environ.get(DEFAULT_MAX_REFINE_ENV, "5"))
    except ValueError:
        return 5


@dataclass(frozen=True)
class Factor:
    kind: str                    # "sin" or "cos"
    freq: int
    phase: float = 0.0

    def __post_init__(self):
        if self.kind not in ("sin", "cos"):
            raise ValueError(f"factor kind must be sin or cos, got {self.kind!r}")

    def __call__(self, t):
        arg = self.freq * np.asarray(t, dtype=float) + self.phase
        return np.sin(arg) if self.kind == "sin" else np.cos(arg)


@dataclass(frozen=True)
class Term:
    coeff: float
    fx: Factor
    fy: Factor


@dataclass(frozen=True)
class Eigenfunction:
    terms: tuple
    name: str = ""

    def __call__(self, x, y):
        return evaluate(self, x, y)


def evaluate(f: Eigenfunction, x, y):
    """Sum of c * fx(x) * fy(y) over the terms, numpy-broadcasting."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    out = np.zeros(np.broadcast(x, y).shape, dtype=float)
    for t in f.terms:
        out += t.coeff * t.fx(x) * t.fy(y)
    return out


def phi_family(beta: float, theta: float) -> Eigenfunction:
    """cos(theta) sin(2x) sin(3y) + sin(theta) sin(3x) sin(2y + beta)."""
    return Eigenfunction(
        terms=(
            Term(math.cos(theta), Factor("sin", 2), Factor("sin", 3)),
            Term(math.sin(theta), Factor("sin", 3), Factor("sin", 2, beta)),
        ),
        name=f"phi(beta={beta:.6g},theta={theta:.6g})",
    )


def bands_family(m: int) -> Eigenfunction:
    """sin(m x); deck-invariant on the moebius surface for odd m."""
    return Eigenfunction(
        terms=(Term(1.0, Factor("sin", m), Factor("cos", 0)),),
        name=f"bands(m={m})",
    )


def ex3b_family(theta: float) -> Eigenfunction:
    """cos(theta) sin(x) cos(6y) + sin(theta) sin(6x) cos(y)."""
    return Eigenfunction(
        terms=(
            Term(math.cos(theta), Factor("sin", 1), Factor("cos", 6)),
            Term(math.sin(theta), Factor("sin", 6), Factor("cos", 1)),
        ),
        name=f"ex3b(theta={theta:.6g})",
    )


FAMILIES = {"phi": phi_family, "bands": bands_family, "ex3b": ex3b_family}


@dataclass(frozen=True)
class NodalConfig:
    n: int = 64                  # base grid resolution (N x N)
    zero_tol: float = 1e-12      # |sample| below this is a resolution error
    sym_tol: float = 1e-9        # symmetry / Dirichlet residual bound
    max_refine: int = field(default_factory=_max_refine_default)

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("resolution must be at least 2")
        if self.zero_tol <= 0 or self.sym_tol <= 0:
            raise ValueError("tolerances must be positive")
        if self.max_refine < 0:
            raise ValueError("max_refine must be non-negative")


_SYM_LATTICE = 101


def symmetry_residual(f: Eigenfunction, surface: str) -> float:
    """Largest symmetry / Dirichlet violation on the check lattice."""
    s = np.linspace(0.0, math.pi, _SYM_LATTICE)
    x, y = np.meshgrid(s, s, indexing="ij")
    if surface == "moebius":
        deck = np.abs(evaluate(f, x, y) - evaluate(f, math.pi - x, y + math.pi))
        dirichlet = max(
            float(np.max(np.abs(evaluate(f, 0.0, s)))),
            float(np.max(np.abs(evaluate(f, math.pi, s)))),
        )
        return max(float(np.max(deck)), dirichlet)
    if surface == "rectangle":
        return max(
            float(np.max(np.abs(evaluate(f, 0.0, s)))),
            float(np.max(np.abs(evaluate(f, math.pi, s)))),
            float(np.max(np.abs(evaluate(f, s, 0.0)))),
            float(np.max(np.abs(evaluate(f, s, math.pi)))),
        )
    raise ValueError(f"symmetry check supports moebius and rectangle, not {surface!r}")


def check_symmetry(f: Eigenfunction, surface: str, config: NodalConfig = NodalConfig()) -> bool:
    return symmetry_residual(f, surface) <= config.sym_tol


def rasterize(f: Eigenfunction, surface: str, config: NodalConfig = NodalConfig(), n: int | None = None) -> Partition:
    """Partition an N x N grid by the sign of f at face centers.

    Raises ResolutionError when a face center lands on the zero set, and
    SymmetryError when f fails the surface's symmetry gate.
    """
    n = config.n if n is None else n
    if surface == "moebius" and n % 2:
        raise ValueError("moebius rasterization needs an even resolution")
    res = symmetry_residual(f, surface)
    if res > config.sym_tol:
        raise SymmetryError(
            f"{f.name or 'function'} violates the {surface} symmetry: residual {res:.3e}"
        )
    c = build_complex(SurfaceSpec.named(surface, n, n))
    h = math.pi / n
    xc = (np.arange(n) + 0.5) * h
    yc = (np.arange(n) + 0.5) * h
    vals = evaluate(f, xc[None, :], yc[:, None])  # row j, column i
    bad = int(np.sum(np.abs(vals) <= config.zero_tol))
    if bad:
        raise ResolutionError(
            f"{bad} face-center samples on the zero set at n={n}", n=n, n_bad=bad
        )
    return from_labels(c, (vals > 0).astype(np.int64).ravel())


def _rasterize_perturbed(f, surface, config, n):
    """Rasterize, stepping the resolution past exact-zero samples."""
    step = 2 if surface == "moebius" else 1
    last = None
    for k in range(6):
        try:
            return rasterize(f, surface, config, n=n + k * step)
        except ResolutionError as e:
            last = e
    raise last


@dataclass(frozen=True)
class StableResult:
    report: InvariantReport
    partition: Partition
    n: int                       # resolution of the accepted level
    n_coarse: int                # resolution of the agreeing coarser level
    levels: tuple                # (n, kappa, beta, sigma, omega) per level


def stable_invariants(f: Eigenfunction, surface: str, config: NodalConfig = NodalConfig()) -> StableResult:
    """Invariants at increasing resolution until two levels agree."""
    history = []
    prev_key = None
    prev_n = None
    n = config.n
    for _level in range(config.max_refine + 1):
        p = _rasterize_perturbed(f, surface, config, n)
        actual_n = p.complex.spec.width
        rep = invariants(p)
        history.append((actual_n, *rep.key()))
        if prev_key is not None and rep.key() == prev_key:
            return StableResult(
                report=rep, partition=p, n=actual_n, n_coarse=prev_n, levels=tuple(history)
            )
        prev_key = rep.key()
        prev_n = actual_n
        n = 2 * actual_n
    raise InstabilityError(
        f"no agreement for {f.name or 'function'} on {surface} within "
        f"{config.max_refine} refinements: {history}",
        history=history,
    )
