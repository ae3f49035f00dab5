"""Command-line interface.

Exit codes: 0 all verdicts pass or are report-only, 1 a hard assertion or
verdict failed, 2 usage error, 3 numerical instability.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

from . import jsonio
from .complexes import build_complex
from .cover import cover_bookkeeping, double_cover
from .errors import (
    CutError,
    EulerPartError,
    InstabilityError,
    InvariantViolation,
    NormalizationError,
    ResolutionError,
    SymmetryError,
)
from .explore import batch_verify, bisect_transition, sweep
from .nodal import FAMILIES, NodalConfig, stable_invariants
from .partition import (
    classify_circle_complement,
    cut,
    domain_reports,
    invariants,
    normalize,
    plan_cut,
    verify_euler,
)
from .render import RenderStyle, render

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_UNSTABLE = 3


def _emit(obj: dict, out: str | None, schema: str | None = None) -> None:
    if schema:
        jsonio.validate(schema, obj)
    text = jsonio.dumps(obj)
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _load_json(path: str) -> dict:
    return json.loads(Path(path).read_text(encoding="utf-8"))


def _load_partition(path: str):
    return jsonio.partition_from_json(_load_json(path))


def _nodal_config(args) -> NodalConfig:
    kwargs = {}
    if getattr(args, "n", None):
        kwargs["n"] = args.n
    if getattr(args, "max_refine", None) is not None:
        kwargs["max_refine"] = args.max_refine
    return NodalConfig(**kwargs)


def _family_function(args):
    if args.family == "phi":
        if args.beta is None or args.theta is None:
            raise EulerPartError("the phi family needs --beta and --theta")
        return FAMILIES["phi"](args.beta, args.theta)
    if args.family == "bands":
        if args.m is None:
            raise EulerPartError("the bands family needs --m")
        return FAMILIES["bands"](args.m)
    if args.theta is None:
        raise EulerPartError("the ex3b family needs --theta")
    return FAMILIES["ex3b"](args.theta)


def cmd_invariants(args) -> int:
    p = _load_partition(args.partition)
    rep = invariants(p)
    doms = domain_reports(p)
    _emit(jsonio.invariants_to_json(rep, doms), args.out, schema="invariants")
    return EXIT_OK


def cmd_verify(args) -> int:
    p = _load_partition(args.partition)
    v = verify_euler(p)
    _emit(jsonio.verdict_to_json(v), args.out, schema="verdict")
    return EXIT_OK if v.ok else EXIT_FAIL


def cmd_nodal(args) -> int:
    f = _family_function(args)
    sr = stable_invariants(f, args.surface, _nodal_config(args))
    p = sr.partition
    v = verify_euler(p)
    out = {
        "function": f.name,
        "surface": args.surface,
        "stable_n": sr.n,
        "levels": [list(lv) for lv in sr.levels],
        "verdict": jsonio.verdict_to_json(v),
        "invariants": jsonio.invariants_to_json(sr.report, domain_reports(p)),
    }
    _emit(out, args.out, schema="nodal_result")
    return EXIT_OK if v.ok else EXIT_FAIL


def cmd_sweep(args) -> int:
    thetas = [
        args.theta_min + i * (args.theta_max - args.theta_min) / (args.count - 1)
        for i in range(args.count)
    ]
    res = sweep(args.family, thetas, beta=args.beta, config=_nodal_config(args))
    _emit(jsonio.sweep_to_json(res), args.out, schema="sweep")
    return EXIT_OK


def cmd_bisect(args) -> int:
    est = bisect_transition(args.beta, tol=args.tol, config=_nodal_config(args))
    _emit(jsonio.transition_to_json(est), args.out, schema="transition")
    return EXIT_OK


def cmd_random_check(args) -> int:
    res = batch_verify(
        args.surface, args.count, args.seed,
        k_range=(args.k_min, args.k_max), size=args.size,
    )
    _emit(jsonio.batch_to_json(res), args.out, schema="batch")
    return EXIT_OK if res.all_passed else EXIT_FAIL


def cmd_cover_check(args) -> int:
    if args.partition:
        p = _load_partition(args.partition)
        cs = double_cover(p.complex)
        rep = cover_bookkeeping(cs, p)
        _emit(jsonio.cover_report_to_json(rep), args.out, schema="cover_report")
        return EXIT_OK
    res = batch_verify(
        args.surface, args.count, args.seed,
        k_range=(args.k_min, args.k_max), size=args.size, with_cover=True,
    )
    _emit(jsonio.batch_to_json(res), args.out, schema="batch")
    return EXIT_OK if res.all_passed else EXIT_FAIL


def cmd_circle(args) -> int:
    doc = _load_json(args.cycle)
    spec = jsonio.surface_from_json(doc["surface"])
    c = build_complex(spec)
    cycle = doc["cycle"]
    if isinstance(cycle, dict):
        cycle = _cycle_from_description(c, cycle)
    res = classify_circle_complement(c, cycle)
    _emit(jsonio.complement_to_json(res), args.out, schema="complement")
    return EXIT_OK


def _cycle_from_description(c, desc: dict) -> list[int]:
    """Convenience cycle constructors: grid block boundaries and midlines."""
    W, H = c.spec.width, c.spec.height
    if "midline" in desc:
        if desc["midline"] == "horizontal":
            return [c.horizontal_edge(i, H // 2) for i in range(W)]
        return [c.vertical_edge(W // 2, j) for j in range(H)]
    if "block" in desc:
        i0, j0, i1, j1 = desc["block"]
        edges = [c.horizontal_edge(i, j0) for i in range(i0, i1)]
        edges += [c.vertical_edge(i1, j) for j in range(j0, j1)]
        edges += [c.horizontal_edge(i, j1) for i in range(i1 - 1, i0 - 1, -1)]
        edges += [c.vertical_edge(i0, j) for j in range(j1 - 1, j0 - 1, -1)]
        return edges
    raise EulerPartError("cycle description needs 'midline' or 'block'")


def cmd_normalize(args) -> int:
    p = _load_partition(args.partition)
    before = invariants(p)
    q = normalize(p, refine_factor=args.refine_factor)
    out = {
        "operation": "normalize",
        "partition": jsonio.partition_to_json(q),
        "before": jsonio.invariants_to_json(before),
        "after": jsonio.invariants_to_json(invariants(q)),
        "refine_factor": args.refine_factor,
    }
    _emit(out, args.out, schema="surgery")
    return EXIT_OK


def cmd_cut(args) -> int:
    p = _load_partition(args.partition)
    path_doc = _load_json(args.path)
    edges = path_doc["edges"] if isinstance(path_doc, dict) else path_doc
    before = invariants(p)
    planned = plan_cut(p, edges)
    q = cut(p, planned)
    out = {
        "operation": "cut",
        "partition": jsonio.partition_to_json(q),
        "before": jsonio.invariants_to_json(before),
        "after": jsonio.invariants_to_json(invariants(q)),
        "n_crossings": planned.n_crossings,
    }
    _emit(out, args.out, schema="surgery")
    return EXIT_OK


def cmd_render(args) -> int:
    p = _load_partition(args.partition)
    fmt = "svg" if args.out.endswith(".svg") else "ppm"
    style = RenderStyle(cell_px=args.cell_px)
    Path(args.out).write_bytes(render(p, style, fmt=fmt))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="eulerpart",
        description="Partition invariants and Euler-type formulas on flat quotient surfaces",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    def add_out(sp):
        sp.add_argument("--out", help="write JSON here instead of stdout")

    sp = sub.add_parser("invariants", help="invariant report for a partition file")
    sp.add_argument("partition")
    add_out(sp)
    sp.set_defaults(func=cmd_invariants)

    sp = sub.add_parser("verify", help="Euler-formula verdict for a partition file")
    sp.add_argument("partition")
    add_out(sp)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("nodal", help="stabilized invariants of a named eigenfunction")
    sp.add_argument("--family", choices=sorted(FAMILIES), required=True)
    sp.add_argument("--beta", type=float)
    sp.add_argument("--theta", type=float)
    sp.add_argument("--m", type=int)
    sp.add_argument("--surface", choices=["moebius", "rectangle"], default="moebius")
    sp.add_argument("--n", type=int, help="base resolution")
    sp.add_argument("--max-refine", type=int, dest="max_refine")
    add_out(sp)
    sp.set_defaults(func=cmd_nodal)

    sp = sub.add_parser("sweep", help="stabilized invariants over a parameter range")
    sp.add_argument("--family", choices=sorted(FAMILIES), default="phi")
    sp.add_argument("--beta", type=float, default=math.pi / 6)
    sp.add_argument("--theta-min", type=float, default=0.02)
    sp.add_argument("--theta-max", type=float, default=math.pi / 2 - 0.02)
    sp.add_argument("--count", type=int, default=25)
    sp.add_argument("--n", type=int)
    sp.add_argument("--max-refine", type=int, dest="max_refine")
    add_out(sp)
    sp.set_defaults(func=cmd_sweep)

    sp = sub.add_parser("bisect", help="bracket the orientability transition in theta")
    sp.add_argument("--beta", type=float, required=True)
    sp.add_argument("--tol", type=float, default=1e-3)
    sp.add_argument("--n", type=int)
    sp.add_argument("--max-refine", type=int, dest="max_refine")
    add_out(sp)
    sp.set_defaults(func=cmd_bisect)

    sp = sub.add_parser("random-check", help="seeded random partitions through all checks")
    sp.add_argument("--surface", required=True,
                    choices=["rectangle", "cylinder", "moebius", "torus", "klein", "projective"])
    sp.add_argument("--count", type=int, default=100)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--k-min", type=int, default=1)
    sp.add_argument("--k-max", type=int, default=10)
    sp.add_argument("--size", type=int, default=32)
    add_out(sp)
    sp.set_defaults(func=cmd_random_check)

    sp = sub.add_parser("cover-check", help="double-cover bookkeeping and orientability")
    sp.add_argument("partition", nargs="?", help="partition file (otherwise random batch)")
    sp.add_argument("--surface", choices=["moebius", "klein"], default="moebius")
    sp.add_argument("--count", type=int, default=100)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--k-min", type=int, default=1)
    sp.add_argument("--k-max", type=int, default=10)
    sp.add_argument("--size", type=int, default=32)
    add_out(sp)
    sp.set_defaults(func=cmd_cover_check)

    sp = sub.add_parser("circle", help="classify a circle complement in the projective plane")
    sp.add_argument("cycle", help="JSON file with surface and cycle")
    add_out(sp)
    sp.set_defaults(func=cmd_circle)

    sp = sub.add_parser("normalize", help="normalize a partition file")
    sp.add_argument("partition")
    sp.add_argument("--refine-factor", type=int, default=3, dest="refine_factor")
    add_out(sp)
    sp.set_defaults(func=cmd_normalize)

    sp = sub.add_parser("cut", help="apply a cut path to a partition file")
    sp.add_argument("partition")
    sp.add_argument("--path", required=True, help="JSON file with the edge list")
    add_out(sp)
    sp.set_defaults(func=cmd_cut)

    sp = sub.add_parser("render", help="draw a partition to PPM or SVG")
    sp.add_argument("partition")
    sp.add_argument("--out", required=True, help="output image (.ppm or .svg)")
    sp.add_argument("--cell-px", type=int, default=12, dest="cell_px")
    sp.set_defaults(func=cmd_render)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code not in (0, None) else 0
    try:
        return args.func(args)
    except (InstabilityError, ResolutionError) as e:
        print(f"unstable: {e}", file=sys.stderr)
        return EXIT_UNSTABLE
    except (InvariantViolation, AssertionError) as e:
        print(f"invariant violation: {e}", file=sys.stderr)
        return EXIT_FAIL
    except (CutError, NormalizationError, SymmetryError, EulerPartError,
            ValueError, KeyError, OSError, json.JSONDecodeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
