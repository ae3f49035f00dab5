"""JSON serialization for every wire format, plus schema validation.

All emitted documents validate against the JSON Schemas shipped under
``eulerpart/schemas``; ``validate(name, obj)`` checks an object against a
schema by file stem.  Serialization is deterministic: callers should dump
with ``sort_keys=True`` (the CLI does).
"""

from __future__ import annotations

import json
from importlib import resources

from .complexes import PRESETS, CellComplex, SurfaceSpec, build_complex
from .cover import CoverReport
from .errors import EulerPartError
from .explore import BatchResult, SweepResult, TransitionEstimate
from .nodal import Eigenfunction, Factor, Term, FAMILIES
from .partition import (
    ChiSigmaReport,
    ComplementClass,
    DomainReport,
    InvariantReport,
    Partition,
    Verdict,
    from_labels,
)

_SCHEMA_CACHE: dict = {}
_REGISTRY = None

SCHEMA_NAMES = (
    "surface", "partition", "invariants", "verdict", "cover_report",
    "complement", "transition", "sweep", "batch", "chi_sigma",
    "eigenfunction", "surgery", "nodal_result",
)


def load_schema(name: str) -> dict:
    if name not in _SCHEMA_CACHE:
        path = resources.files("eulerpart").joinpath(f"schemas/{name}.json")
        _SCHEMA_CACHE[name] = json.loads(path.read_text(encoding="utf-8"))
    return _SCHEMA_CACHE[name]


def _registry():
    """Resolver registry so schemas can $ref their siblings by file name."""
    global _REGISTRY
    if _REGISTRY is None:
        from referencing import Registry, Resource

        _REGISTRY = Registry().with_resources(
            (f"{name}.json", Resource.from_contents(load_schema(name)))
            for name in SCHEMA_NAMES
        )
    return _REGISTRY


def validate(name: str, obj) -> None:
    """Raise jsonschema.ValidationError if obj does not match the schema."""
    import jsonschema

    validator = jsonschema.Draft202012Validator(load_schema(name), registry=_registry())
    validator.validate(obj)


# ---------------------------------------------------------------------------
# surfaces and partitions


def surface_to_json(spec: SurfaceSpec) -> dict:
    preset = PRESETS.get(spec.kind)
    if preset == (spec.x_gluing, spec.y_gluing):
        return {"surface": spec.kind, "width": spec.width, "height": spec.height}
    return {
        "width": spec.width,
        "height": spec.height,
        "x_gluing": spec.x_gluing,
        "y_gluing": spec.y_gluing,
    }


def surface_from_json(obj: dict) -> SurfaceSpec:
    if "surface" in obj:
        return SurfaceSpec.named(obj["surface"], int(obj["width"]), int(obj["height"]))
    return SurfaceSpec(
        int(obj["width"]),
        int(obj["height"]),
        obj.get("x_gluing", "open"),
        obj.get("y_gluing", "open"),
    )


def partition_to_json(p: Partition) -> dict:
    out = {
        "surface": surface_to_json(p.complex.spec),
        "labels": [int(x) for x in p.domains],
    }
    if p.walls:
        out["walls"] = [sorted(int(w) for w in p.walls)]
    return out


def partition_from_json(obj: dict, complex: CellComplex | None = None) -> Partition:
    spec = surface_from_json(obj["surface"])
    c = complex if complex is not None and complex.spec == spec else build_complex(spec)
    walls: list[int] = []
    raw_walls = obj.get("walls", [])
    for group in raw_walls:
        if isinstance(group, list):
            walls.extend(int(w) for w in group)
        else:
            walls.append(int(group))
    return from_labels(c, obj["labels"], walls=walls)


# ---------------------------------------------------------------------------
# eigenfunctions


def eigenfunction_from_json(obj: dict) -> Eigenfunction:
    if "family" in obj:
        name = obj["family"]
        if name not in FAMILIES:
            raise EulerPartError(f"unknown family {name!r}")
        if name == "phi":
            return FAMILIES["phi"](float(obj["beta"]), float(obj["theta"]))
        if name == "bands":
            return FAMILIES["bands"](int(obj["m"]))
        return FAMILIES["ex3b"](float(obj["theta"]))
    terms = []
    for t in obj["terms"]:
        terms.append(
            Term(
                float(t["c"]),
                Factor(t["fx"]["k"], int(t["fx"]["m"]), float(t["fx"].get("p", 0.0))),
                Factor(t["fy"]["k"], int(t["fy"]["m"]), float(t["fy"].get("p", 0.0))),
            )
        )
    return Eigenfunction(terms=tuple(terms))


def eigenfunction_to_json(f: Eigenfunction) -> dict:
    return {
        "terms": [
            {
                "c": t.coeff,
                "fx": {"k": t.fx.kind, "m": t.fx.freq, "p": t.fx.phase},
                "fy": {"k": t.fy.kind, "m": t.fy.freq, "p": t.fy.phase},
            }
            for t in f.terms
        ]
    }


# ---------------------------------------------------------------------------
# reports


def invariants_to_json(rep: InvariantReport, domains: list[DomainReport] | None = None) -> dict:
    out = {
        "surface": rep.surface,
        "kappa": rep.kappa,
        "beta": rep.beta,
        "sigma": rep.sigma,
        "omega": rep.omega,
        "delta": rep.delta,
        "defect": rep.defect,
        "beta_interior": rep.beta_interior,
        "n_singular_interior": rep.n_singular_interior,
        "n_singular_boundary": rep.n_singular_boundary,
        "orientable": [bool(b) for b in rep.orientable],
    }
    if domains is not None:
        out["domains"] = [domain_report_to_json(d) for d in domains]
    return out


def domain_report_to_json(d: DomainReport) -> dict:
    return {
        "domain": d.domain,
        "faces": d.n_faces,
        "chi": d.chi,
        "orientable": d.orientable,
        "boundary_circles": d.boundary_circles,
        "genus": d.genus,
        "crosscaps": d.crosscaps,
        "classification": d.classification,
        "normal": d.normal,
    }


def verdict_to_json(v: Verdict) -> dict:
    return {
        "surface": v.surface,
        "expected_defect": v.expected_defect,
        "measured_defect": v.measured_defect,
        "status": v.status,
        "conjecture": v.conjecture,
        "invariants": invariants_to_json(v.report),
    }


def chi_sigma_to_json(r: ChiSigmaReport) -> dict:
    return {
        "chi_surface": r.chi_surface,
        "sigma": r.sigma,
        "domain_chis": list(r.domain_chis),
        "lhs": r.lhs,
        "rhs": r.rhs,
        "holds": r.holds,
    }


def cover_report_to_json(r: CoverReport) -> dict:
    return {
        "kappa": r.kappa,
        "beta": r.beta,
        "sigma": r.sigma,
        "kappa_star": r.kappa_star,
        "beta_star": r.beta_star,
        "sigma_star": r.sigma_star,
        "n_nonorientable": r.n_nonorientable,
        "preimage_counts": list(r.preimage_counts),
        "beta_i": r.beta_interior,
        "beta_i_star": r.beta_interior_star,
        "boundary_circles_joined": r.boundary_circles_joined,
        "relation_flags": r.relation_flags,
    }


def complement_to_json(r: ComplementClass) -> dict:
    return {
        "n_components": r.n_components,
        "pieces": [
            {
                "kind": piece.kind,
                "faces": piece.faces,
                "chi": piece.chi,
                "orientable": piece.orientable,
                "boundary_circles": piece.boundary_circles,
            }
            for piece in r.pieces
        ],
    }


def transition_to_json(t: TransitionEstimate) -> dict:
    return {
        "beta": t.beta,
        "theta_low": t.theta_low,
        "theta_high": t.theta_high,
        "width": t.width,
        "resolutions": list(t.resolutions),
        "evaluations": t.evaluations,
    }


def sweep_to_json(s: SweepResult) -> dict:
    rows = []
    for r in s.rows:
        row = {"theta": r.theta, "stable": r.stable}
        if r.stable:
            row.update(
                n=r.n, kappa=r.kappa, beta=r.beta, sigma=r.sigma,
                omega=r.omega, defect=r.defect,
            )
        else:
            row["error"] = r.error
        rows.append(row)
    return {
        "family": s.family,
        "beta": s.beta,
        "rows": rows,
        "findings": list(s.findings),
    }


def batch_to_json(b: BatchResult) -> dict:
    return {
        "surface": b.surface,
        "count": b.count,
        "seed": b.seed,
        "k_range": list(b.k_range),
        "verdict_mode": b.verdict_mode,
        "passes": b.passes,
        "failures": list(b.failures),
        "defect_histogram": {str(k): v for k, v in b.defect_histogram.items()},
        "chi_sigma_ok": b.chi_sigma_ok,
        "cover_checked": b.cover_checked,
        "omega_agreements": b.omega_agreements,
        "max_nonorientable": b.max_nonorientable,
    }


def dumps(obj: dict) -> str:
    """Canonical JSON text: sorted keys, no trailing whitespace."""
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"
