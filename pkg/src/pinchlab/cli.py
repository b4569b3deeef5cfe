"""Command-line interface for pinchlab."""

import argparse
import json
import logging
import sys
from collections import Counter
from collections.abc import Callable, Sequence
from pathlib import Path
from typing import Any

import numpy as np
from pydantic import ValidationError

from .config import CONFIG
from .descent import obstruction_replay, run_descent
from .errors import CapacityError, InvalidArgumentError, PinchlabError
from .family import (
    ParamPoint,
    classify,
    critical_curve_probe,
    genus_map,
    sample_a2,
    sweep,
    write_sweep_csv,
)
from .gf2 import enumerate_subspaces
from .grassmann import GrPair, build_gr, build_gr_range
from .homology import betti_numbers, cycle_representatives
from .linkhom import HandleDiagram, diagram_from_label, order_compatibility_check, twelve_cycle
from .poset import max_chain_length, order_complex
from .reporting import ConsoleReporter, build_manifest, canonical_json, emit
from .schemas import (
    ErrorResponse,
    FamilyScheduleAdapter,
    RegionProfile,
    load_profile,
    load_schedule,
)
from .simplicial import SimplicialComplex
from .symprod import enumerate_faces, face_complex
from .trigpoly import (
    TrigPoly,
    conjugate_pair_check,
    genus_of,
    n_odd,
    retract,
    root_sum_check,
    roots,
)
from .verification import AcceptanceSuite, SuiteSettings

logger = logging.getLogger(__name__)

Result = tuple[dict[str, Any], int]


def _floats(text: str) -> list[float]:
    """Parse ``"0,0,1"``; the empty string is the empty list."""
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError as e:
        raise InvalidArgumentError(f"not a comma-separated list of numbers: {text!r}") from e


def _coeffs(text: str) -> TrigPoly:
    try:
        values = json.loads(text)
    except json.JSONDecodeError as e:
        raise InvalidArgumentError(f"--coeffs must be a JSON array: {e}") from e
    if not isinstance(values, list) or not all(isinstance(v, int | float) for v in values):
        raise InvalidArgumentError("--coeffs must be a JSON array of numbers")
    return TrigPoly.from_coeffs(values)


def _tol(args: argparse.Namespace) -> float:
    return float(args.tol) if getattr(args, "tol", None) is not None else CONFIG["root_tol"]


def _profile(args: argparse.Namespace) -> RegionProfile:
    return load_profile(args.profile or CONFIG["profile_path"])


def cmd_gr_enum(args: argparse.Namespace) -> Result:
    poset = build_gr(args.n)
    return {
        "n": args.n,
        "count": len(poset),
        "max_chain": max_chain_length(poset),
        "subspaces": [s.label() for s in enumerate_subspaces(args.n)],
    }, 0


def _vertex_label(v: object) -> str:
    return v.label() if isinstance(v, GrPair) else str(v)


def _topology(complex_: SimplicialComplex, args: argparse.Namespace) -> dict[str, Any]:
    """Homology, cycle representatives and the face-list export, as requested."""
    document: dict[str, Any] = {}
    if args.homology or args.cycles:
        document["betti"] = betti_numbers(complex_)
    if args.cycles:
        document["cycles"] = {
            str(k): [
                [[_vertex_label(v) for v in simplex] for simplex in z.simplices(complex_)]
                for z in cycle_representatives(complex_, k)
            ]
            for k, b in enumerate(document["betti"])
            if b
        }
    if args.face_list:
        Path(args.face_list).write_text(complex_.face_list_text())
        document["face_list"] = args.face_list
    return document


def _wants_complex(args: argparse.Namespace) -> bool:
    return bool(args.homology or args.cycles or args.face_list)


def cmd_gr_range(args: argparse.Namespace) -> Result:
    gr = build_gr_range(args.n, args.lo, args.hi)
    document: dict[str, Any] = {"count": len(gr.poset)}
    if _wants_complex(args):
        document.update(_topology(order_complex(gr.poset, budget=args.budget), args))
    if args.hasse:
        hasse = gr.poset.hasse_json(label=_vertex_label)
        Path(args.hasse).write_text(canonical_json(hasse))
        document["hasse"] = args.hasse
    return document, 0


def cmd_sym_faces(args: argparse.Namespace) -> Result:
    tol = _tol(args)
    faces = enumerate_faces(2 * args.g + 2, lambda r: r.genus >= args.min_genus, tol)
    document: dict[str, Any] = {
        "n": 2 * args.g + 2,
        "count": len(faces),
        "faces": [f.to_json() for f in faces],
    }
    if _wants_complex(args):
        complex_ = face_complex(args.g, args.min_genus, args.budget, tol)
        document.update(_topology(complex_, args))
    return document, 0


def cmd_trig(args: argparse.Namespace) -> Result:
    f = _coeffs(args.coeffs)
    tol = _tol(args)
    if args.action == "genus":
        return {"genus": genus_of(f, tol)}, 0
    cfg = roots(f, tol)
    if args.action == "roots":
        return {
            "roots": cfg.to_json(),
            "n_odd": n_odd(cfg, tol),
            "conjugate_pairs": conjugate_pair_check(cfg, tol),
            "root_sum": root_sum_check(cfg, tol),
        }, 0
    moved = retract(cfg, args.t, tol)
    return {"t": args.t, "roots": moved.to_json(), "n_odd": n_odd(moved, tol)}, 0


def cmd_family_genus(args: argparse.Namespace) -> Result:
    profile = _profile(args)
    p = ParamPoint.create(_floats(args.a), _floats(args.b), args.g)
    return {"genus": genus_map(p, profile, _tol(args)), "region": classify(p, profile).kind}, 0


def cmd_family_sweep(args: argparse.Namespace) -> Result:
    rows = sweep(args.g, args.grid, _profile(args), _tol(args))
    write_sweep_csv(rows, args.g, args.out)
    counts = Counter(row.genus for row in rows)
    return {
        "rows": len(rows),
        "out": args.out,
        "genus_counts": {str(k): v for k, v in sorted(counts.items())},
    }, 0


def cmd_probe(args: argparse.Namespace) -> Result:
    profile = _profile(args)
    rng = np.random.default_rng(args.seed)
    failures: list[str] = []
    worst, c_fit = 0, 0.0
    for k in range(args.samples):
        try:
            result = critical_curve_probe(sample_a2(rng, profile), profile)
        except PinchlabError as e:
            failures.append(f"sample {k}: {e}")
            continue
        worst = max(worst, result.sign_changes)
        c_fit = max(c_fit, result.c_fit)
        if not result.passed:
            failures.append(f"sample {k}: {result.sign_changes} sign changes")
    document = {
        "samples": args.samples,
        "max_sign_changes": worst,
        "fitted_c": c_fit,
        "failures": failures,
    }
    return document, 1 if failures else 0


def cmd_fmap(args: argparse.Namespace) -> Result:
    if args.action == "cycle12":
        certificate = twelve_cycle().certificate()
        failed = args.check and not certificate["passed"]
        return certificate, 1 if failed else 0
    report = order_compatibility_check(args.g)
    document = {
        "g": args.g,
        "passed": report.passed,
        "pairs_checked": report.pairs_checked,
        "counterexamples": report.counterexamples,
    }
    return document, 0 if report.passed else 1


def cmd_descent(args: argparse.Namespace) -> Result:
    if args.action == "replay":
        family = FamilyScheduleAdapter.validate_json(Path(args.schedule).read_text())
        result = obstruction_replay(family)
        return result.to_json(), 0
    initial = diagram_from_label(args.g, args.initial) if args.initial else HandleDiagram(args.g)
    trace = run_descent(initial, load_schedule(args.schedule))
    return trace.to_json(), 0


def cmd_verify(args: argparse.Namespace) -> Result:
    settings = SuiteSettings(
        g=args.g,
        seed=args.seed,
        samples=args.samples,
        profile=_profile(args),
        tol=CONFIG["root_tol"],
    )
    results = AcceptanceSuite(settings).run(args.only)
    ConsoleReporter().print_failures(results)
    passed = all(r.passed for r in results)
    return {"passed": passed, "checks": [r.model_dump() for r in results]}, 0 if passed else 1


def _add_topology_options(cmd: argparse.ArgumentParser) -> None:
    cmd.add_argument("--homology", action="store_true", help="Include Z2 Betti numbers")
    cmd.add_argument("--cycles", action="store_true", help="Include cycle representatives")
    cmd.add_argument(
        "--face-list", default=None, help="Write the order complex as a plain-text face list"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pinchlab",
        description="Combinatorial and numeric checks for pinch-off families of surfaces",
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("--profile", default=None, help="Region profile JSON file")
    parser.add_argument(
        "--budget",
        type=int,
        default=None,
        help="Simplex budget for order complexes (default: PINCHLAB_BUDGET)",
    )
    parser.add_argument(
        "--precise", action="store_true", help="Write floats with 17 significant digits"
    )
    subparsers = parser.add_subparsers(dest="command", help="Available commands")

    # gr
    gr = subparsers.add_parser("gr", help="Grassmannian posets over GF(2)")
    gr_sub = gr.add_subparsers(dest="action", required=True)
    enum = gr_sub.add_parser("enum", help="All subspaces of Z2^n")
    enum.add_argument("--n", type=int, required=True)
    enum.set_defaults(handler=cmd_gr_enum)
    pairs = gr_sub.add_parser("range", help="Rank-filtered pairs Gr^n[lo, hi]")
    pairs.add_argument("--n", type=int, required=True)
    pairs.add_argument("--lo", type=int, required=True)
    pairs.add_argument("--hi", type=int, required=True)
    pairs.add_argument("--hasse", default=None, help="Write the Hasse diagram to this JSON file")
    _add_topology_options(pairs)
    pairs.set_defaults(handler=cmd_gr_range)

    # sym
    sym = subparsers.add_parser("sym", help="Faces of the configuration simplex")
    sym_sub = sym.add_subparsers(dest="action", required=True)
    faces = sym_sub.add_parser("faces", help="Faces of the 2g+2 point configuration space")
    faces.add_argument("--g", type=int, required=True)
    faces.add_argument("--min-genus", type=int, default=0)
    _add_topology_options(faces)
    faces.add_argument("--tol", type=float, default=None)
    faces.set_defaults(handler=cmd_sym_faces)

    # trig
    trig = subparsers.add_parser("trig", help="Trigonometric polynomial roots")
    trig_sub = trig.add_subparsers(dest="action", required=True)
    for action in ("roots", "genus", "retract"):
        cmd = trig_sub.add_parser(action)
        cmd.add_argument("--coeffs", required=True, help="JSON array [s0, s1, s1', ...]")
        cmd.add_argument("--tol", type=float, default=None)
        if action == "retract":
            cmd.add_argument("--t", type=float, required=True)
        cmd.set_defaults(handler=cmd_trig)

    # family
    family = subparsers.add_parser("family", help="The parameter family and its genus")
    family_sub = family.add_subparsers(dest="action", required=True)
    genus = family_sub.add_parser("genus", help="Genus of one family member")
    genus.add_argument("--a", required=True, help="Six comma-separated coordinates")
    genus.add_argument("--b", default="", help="2g-2 comma-separated coordinates")
    genus.add_argument("--g", type=int, required=True)
    genus.add_argument("--tol", type=float, default=None)
    genus.set_defaults(handler=cmd_family_genus)
    sweep_cmd = family_sub.add_parser("sweep", help="Genus over a b-grid at O1")
    sweep_cmd.add_argument("--g", type=int, required=True)
    sweep_cmd.add_argument("--grid", type=int, required=True, help="Points per axis")
    sweep_cmd.add_argument("--out", required=True, help="CSV output file")
    sweep_cmd.add_argument("--tol", type=float, default=None)
    sweep_cmd.set_defaults(handler=cmd_family_sweep)

    # probe
    probe = subparsers.add_parser("probe", help="Critical-curve probe on A2")
    probe_sub = probe.add_subparsers(dest="action", required=True)
    curve = probe_sub.add_parser(
        "appendix-b", aliases=["critical-curve"], help="Seeded sign-change survey"
    )
    curve.add_argument("--samples", type=int, default=100)
    curve.add_argument("--seed", type=int, default=CONFIG["seed"])
    curve.set_defaults(handler=cmd_probe)

    # fmap
    fmap = subparsers.add_parser("fmap", help="Embedding of complement homology")
    fmap_sub = fmap.add_subparsers(dest="action", required=True)
    cycle = fmap_sub.add_parser("cycle12", help="The genus-2 twelve-cycle certificate")
    cycle.add_argument("--check", action="store_true", help="Exit 1 if the certificate fails")
    cycle.set_defaults(handler=cmd_fmap)
    compat = fmap_sub.add_parser("compat", help="Order compatibility over all diagrams")
    compat.add_argument("--g", type=int, required=True)
    compat.set_defaults(handler=cmd_fmap)

    # descent
    descent = subparsers.add_parser("descent", help="Homology descent along pinch schedules")
    descent_sub = descent.add_subparsers(dest="action", required=True)
    run = descent_sub.add_parser("run", help="Run one schedule from a diagram")
    run.add_argument("--schedule", required=True, help="JSON list of events")
    run.add_argument("--g", type=int, default=2)
    run.add_argument("--initial", default=None, help='Collapsed arcs, e.g. "H1G1"')
    run.set_defaults(handler=cmd_descent)
    replay = descent_sub.add_parser("replay", help="Replay a deformation of the twelve-cycle")
    replay.add_argument("--schedule", required=True, help="JSON map from stratum to events")
    replay.set_defaults(handler=cmd_descent)

    # verify
    verify = subparsers.add_parser("verify", help="Acceptance suite")
    verify_sub = verify.add_subparsers(dest="action", required=True)
    everything = verify_sub.add_parser("all", help="Run every acceptance check")
    everything.add_argument("--g", type=int, default=2)
    everything.add_argument("--only", action="append", default=None, help="Run one check")
    everything.add_argument("--seed", type=int, default=CONFIG["seed"])
    everything.add_argument("--samples", type=int, default=1000)
    everything.set_defaults(handler=cmd_verify)

    return parser


def dispatch(argv: Sequence[str]) -> int:
    """Run one command, print its JSON document to stdout and return the exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv))
    except SystemExit as e:
        return int(e.code or 0)
    handler: Callable[[argparse.Namespace], Result] | None = getattr(args, "handler", None)
    if handler is None:
        parser.print_help(sys.stderr)
        return 2
    try:
        profile = _profile(args)
        document, code = handler(args)
    except PinchlabError as e:
        partial = e.partial if isinstance(e, CapacityError) else None
        if partial is not None:
            logger.warning(f"Capacity exceeded: {e}")
        response = ErrorResponse(error=e.kind, detail=str(e), partial=partial)
        sys.stdout.write(canonical_json(response, args.precise))
        return e.exit_code
    except (OSError, ValidationError) as e:
        response = ErrorResponse(error="invalid_input", detail=str(e))
        sys.stdout.write(canonical_json(response, args.precise))
        return 2
    manifest = build_manifest(
        ["pinchlab", *argv],
        profile,
        {"root_tol": _tol(args)},
        getattr(args, "seed", None),
    )
    emit(document, manifest, sys.stdout, args.precise)
    return code


def main() -> None:
    """Main CLI entry point."""
    logging.basicConfig(
        level=CONFIG["log_level"],
        format="%(asctime)s - %(levelname)s - %(message)s",
        stream=sys.stderr,
    )
    sys.exit(dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()
