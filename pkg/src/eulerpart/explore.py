"""Parameter sweeps, transition bracketing, and seeded random partitions.

Everything here is a pure function of its inputs and seeds: random
partitions come from a multi-source flood fill driven by a PCG64 stream,
sweeps and bisections reuse the deterministic stabilization from
``nodal``, and batch verification reduces its runs in seed order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .complexes import CellComplex, SurfaceSpec, build_complex
from .cover import COVERABLE, cover_bookkeeping, double_cover, omega_via_cover
from .errors import InstabilityError, InvariantViolation
from .nodal import FAMILIES, NodalConfig, stable_invariants
from .partition import (
    Partition,
    check_chi_sigma,
    from_labels,
    orientability_bits,
    verify_euler,
)


@dataclass(frozen=True)
class RandomSpec:
    seed: int
    k: int

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be at least 1")


def random_partition(c: CellComplex, spec: RandomSpec) -> Partition:
    """Seeded multi-source flood fill into k connected domains.

    k seed faces are drawn uniformly without replacement; unlabelled faces
    are claimed through interior adjacencies in rounds, with the claim
    order shuffled each round.  Identical seeds reproduce the partition
    bit for bit.
    """
    if spec.k > c.n_faces:
        raise ValueError(f"k={spec.k} exceeds the {c.n_faces} available faces")
    rng = np.random.default_rng(spec.seed)
    labels = np.full(c.n_faces, -1, dtype=np.int64)
    sources = rng.choice(c.n_faces, size=spec.k, replace=False)
    labels[sources] = np.arange(spec.k)

    fa, fb, _, _ids = c.adjacency
    both = np.concatenate([np.stack([fa, fb], 1), np.stack([fb, fa], 1)])
    while True:
        src_lab = labels[both[:, 0]]
        open_edges = (src_lab >= 0) & (labels[both[:, 1]] < 0)
        if not np.any(open_edges):
            break
        cand = both[open_edges]
        cand_lab = src_lab[open_edges]
        order = rng.permutation(len(cand))
        targets = cand[order, 1]
        first = np.unique(targets, return_index=True)[1]
        labels[targets[first]] = cand_lab[order][first]
    if np.any(labels < 0):
        raise InvariantViolation("flood fill left unlabelled faces")
    return from_labels(c, labels)


# ---------------------------------------------------------------------------
# sweeps


@dataclass(frozen=True)
class SweepRow:
    theta: float
    stable: bool
    n: int | None
    kappa: int | None
    beta: int | None
    sigma: int | None
    omega: int | None
    defect: int | None
    error: str | None = None


@dataclass(frozen=True)
class SweepResult:
    family: str
    beta: float | None
    rows: tuple
    findings: tuple

    @property
    def omega_column(self) -> list:
        return [r.omega for r in self.rows if r.stable]


def sweep(family: str, thetas, beta: float | None = None,
          config: NodalConfig = NodalConfig(), surface: str = "moebius") -> SweepResult:
    """One stabilized invariant row per parameter value.

    For the ``phi`` family ``beta`` is fixed and ``thetas`` vary; for
    ``bands`` the values are the integer frequencies.  Rows that fail to
    stabilize are marked rather than dropped.  Monotonicity violations of
    the omega column are reported as findings, never silently ignored.
    """
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}; choose from {sorted(FAMILIES)}")
    values = list(thetas)
    if any(b > a for a, b in zip(values, values[1:])) and any(
        b < a for a, b in zip(values, values[1:])
    ):
        raise ValueError("parameter values must be monotone")
    rows = []
    for v in values:
        if family == "phi":
            if beta is None:
                raise ValueError("the phi family needs beta")
            f = FAMILIES["phi"](beta, v)
        elif family == "bands":
            f = FAMILIES["bands"](int(v))
        else:
            f = FAMILIES["ex3b"](v)
        try:
            sr = stable_invariants(f, surface, config)
        except InstabilityError as e:
            rows.append(SweepRow(float(v), False, None, None, None, None, None, None, str(e)))
            continue
        r = sr.report
        rows.append(
            SweepRow(float(v), True, sr.n, r.kappa, r.beta, r.sigma, r.omega, r.defect)
        )
    findings = []
    omega_col = [(r.theta, r.omega) for r in rows if r.stable]
    rises = sum(
        1 for (_, a), (_, b) in zip(omega_col, omega_col[1:]) if b > a
    )
    falls = [(t1, t2) for (t1, a), (t2, b) in zip(omega_col, omega_col[1:]) if b < a]
    for t1, t2 in falls:
        findings.append(f"omega decreases between {t1:.6g} and {t2:.6g}")
    if rises > 1:
        findings.append(f"omega rises {rises} times; expected a single step")
    return SweepResult(family=family, beta=beta, rows=tuple(rows), findings=tuple(findings))


# ---------------------------------------------------------------------------
# transition bracketing


@dataclass(frozen=True)
class TransitionEstimate:
    beta: float
    theta_low: float             # omega = 0 here
    theta_high: float            # omega = 1 here
    resolutions: tuple           # stabilized n per accepted probe
    evaluations: int

    @property
    def width(self) -> float:
        return self.theta_high - self.theta_low


_PROBE_OFFSETS = (0.0, -1 / 16, 1 / 16, -1 / 8, 1 / 8, -3 / 16, 3 / 16)


def bisect_transition(beta: float, tol: float = 1e-3,
                      config: NodalConfig = NodalConfig(),
                      theta_low: float = 0.05,
                      theta_high: float = math.pi / 2 - 0.05) -> TransitionEstimate:
    """Bracket the orientability transition of the phi family in theta.

    Requires omega = 0 at ``theta_low`` and omega = 1 at ``theta_high``.
    Midpoints that fail to stabilize are skipped by probing nearby offsets;
    if no probe in a step stabilizes the bracket cannot shrink further and
    an InstabilityError is raised.
    """

    def stable_omega(theta: float) -> tuple[int, int]:
        sr = stable_invariants(FAMILIES["phi"](beta, theta), "moebius", config)
        return sr.report.omega, sr.n

    evaluations = 0
    resolutions = []

    w0, n0 = stable_omega(theta_low)
    w1, n1 = stable_omega(theta_high)
    evaluations += 2
    resolutions += [n0, n1]
    if w0 != 0 or w1 != 1:
        raise ValueError(
            f"no sign change: omega({theta_low:.4g})={w0}, omega({theta_high:.4g})={w1}"
        )
    lo, hi = theta_low, theta_high
    while hi - lo > tol:
        width = hi - lo
        for off in _PROBE_OFFSETS:
            mid = lo + width * (0.5 + off)
            try:
                w, n = stable_omega(mid)
            except InstabilityError:
                evaluations += 1
                continue
            evaluations += 1
            resolutions.append(n)
            if w == 0:
                lo = mid
            else:
                hi = mid
            break
        else:
            raise InstabilityError(
                f"bracket ({lo:.6g}, {hi:.6g}) cannot shrink: every probe is unstable"
            )
    return TransitionEstimate(
        beta=beta,
        theta_low=lo,
        theta_high=hi,
        resolutions=tuple(resolutions),
        evaluations=evaluations,
    )


# ---------------------------------------------------------------------------
# batch verification


@dataclass(frozen=True)
class BatchResult:
    surface: str
    count: int
    seed: int
    k_range: tuple
    verdict_mode: str            # pass_fail / conjecture / report_only
    passes: int
    failures: tuple              # serialized counterexample partitions
    defect_histogram: dict
    chi_sigma_ok: int
    cover_checked: int
    omega_agreements: int
    max_nonorientable: int

    @property
    def all_passed(self) -> bool:
        return not self.failures


def batch_verify(surface: str, count: int, seed: int, k_range: tuple = (1, 10),
                 size: int = 32, with_cover: bool | None = None) -> BatchResult:
    """Run seeded random partitions through every applicable check.

    On surfaces with a proven formula any wrong defect is a failure and
    the partition is serialized for replay.  On conjecture / report-only
    surfaces the defect histogram is the result.  The chi-sigma identity
    is checked everywhere; on moebius and klein the two orientability
    routes are compared per domain and the cover bookkeeping asserted.
    """
    from .jsonio import partition_to_json

    c = build_complex(SurfaceSpec.named(surface, size, size))
    cover = None
    if with_cover is None:
        with_cover = surface in COVERABLE
    if with_cover:
        cover = double_cover(c)
    k_lo, k_hi = k_range
    if not 1 <= k_lo <= k_hi:
        raise ValueError("bad k range")

    root = np.random.SeedSequence(seed)
    children = root.spawn(count)

    passes = 0
    failures = []
    hist: dict[int, int] = {}
    chi_ok = 0
    cover_checked = 0
    omega_agree = 0
    max_n = 0
    for i, child in enumerate(children):
        sub_seed = int(child.generate_state(1)[0])
        k = k_lo + i % (k_hi - k_lo + 1)
        p = random_partition(c, RandomSpec(seed=sub_seed, k=k))
        verdict = verify_euler(p)
        hist[verdict.measured_defect] = hist.get(verdict.measured_defect, 0) + 1
        ok = verdict.status != "fail"
        if check_chi_sigma(p).holds:
            chi_ok += 1
        else:
            ok = False
        if cover is not None:
            rep = cover_bookkeeping(cover, p)  # asserts kappa*/sigma* internally
            cover_checked += 1
            max_n = max(max_n, rep.n_nonorientable)
            if surface == "moebius" and rep.n_nonorientable > 1:
                raise InvariantViolation("more than one non-orientable domain on moebius")
            if np.array_equal(omega_via_cover(cover, p), orientability_bits(p)):
                omega_agree += 1
            else:
                ok = False
        if ok:
            passes += 1
        else:
            failures.append(partition_to_json(p))
    if surface in ("rectangle", "moebius"):
        mode = "pass_fail"
    elif surface in ("projective", "klein"):
        mode = "conjecture"
    else:
        mode = "report_only"
    return BatchResult(
        surface=surface,
        count=count,
        seed=seed,
        k_range=(k_lo, k_hi),
        verdict_mode=mode,
        passes=passes,
        failures=tuple(failures),
        defect_histogram=dict(sorted(hist.items())),
        chi_sigma_ok=chi_ok,
        cover_checked=cover_checked,
        omega_agreements=omega_agree,
        max_nonorientable=max_n,
    )
