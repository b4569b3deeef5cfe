"""The acceptance suite run by ``pinchlab verify all``.

Each check is a plain function of the suite settings returning a
``CheckResult``; the suite runs them concurrently in worker threads and
returns the results sorted by name.
"""

import asyncio
import logging
import math
from collections.abc import Callable
from dataclasses import dataclass, field

import numpy as np

from .config import CONFIG
from .descent import Verdict, check_trace, obstruction_replay, random_schedule, run_descent
from .errors import PinchlabError, PreconditionError
from .family import ParamPoint, b_grid, critical_curve_probe, genus_map, sample_a2, sample_outside
from .gf2 import brute_force_subspaces, enumerate_subspaces, galois_number
from .grassmann import MAX_GR_DIM, build_gr, build_gr_range
from .homology import betti_numbers, naive_betti_numbers, reduced_betti
from .linkhom import (
    HandleDiagram,
    arc_names,
    homology_comparison,
    order_compatibility_check,
    rank_genus_violations,
    twelve_cycle,
)
from .poset import is_cone_with_apex, max_chain_length, order_complex
from .schemas import CheckResult, RegionProfile
from .simplicial import SimplicialComplex
from .trigpoly import (
    TrigPoly,
    conjugate_pair_check,
    n_odd,
    retract,
    root_sum_check,
    roots,
)

logger = logging.getLogger(__name__)

ROOT_SUM_TOL = 1e-8
T_GRID = 21
GRID_RESOLUTION = 41


@dataclass
class SuiteSettings:
    g: int = 2
    seed: int = 0
    samples: int = 1000
    profile: RegionProfile = field(default_factory=RegionProfile)
    tol: float = 1e-6

    def rng(self, salt: int) -> np.random.Generator:
        return np.random.default_rng([self.seed, salt])


def check_gr2_circle(s: SuiteSettings) -> CheckResult:
    gr = build_gr_range(2, 1, 1)
    complex_ = order_complex(gr.poset)
    details = {
        "count": len(gr.poset),
        "f_vector": complex_.f_vector(),
        "degrees": sorted(set(complex_.vertex_degrees())),
        "connected": complex_.is_connected(),
        "betti": betti_numbers(complex_),
    }
    passed = (
        details["count"] == 12
        and details["f_vector"] == [12, 12]
        and details["degrees"] == [2]
        and details["connected"] is True
        and details["betti"] == [1, 1]
    )
    return CheckResult(name="gr2_circle", passed=passed, details=details)


def check_gr_contractible(s: SuiteSettings) -> CheckResult:
    details: dict[str, object] = {}
    passed = True
    for n in (1, 2, 3):
        poset = build_gr(n)
        complex_ = order_complex(poset)
        reduced = reduced_betti(complex_)
        cone = is_cone_with_apex(complex_, poset.labels[0])
        details[f"n{n}"] = {"reduced_betti": reduced, "cone_at_zero": cone}
        passed = passed and not any(reduced) and cone
    return CheckResult(name="gr_contractible", passed=passed, details=details)


def _levels(g: int) -> list[int]:
    """g = 2 and 3 always, plus any larger requested g within the Grassmannian cap."""
    return [2, 3, *range(4, min(g, MAX_GR_DIM) + 1)]


def check_chain_length(s: SuiteSettings) -> CheckResult:
    details: dict[str, object] = {}
    passed = True
    for g in _levels(s.g):
        gr = build_gr_range(g, 1, g - 1)
        length = max_chain_length(gr.poset)
        top_dim = order_complex(gr.poset).dim
        details[f"g{g}"] = {"max_chain": length, "top_dim": top_dim}
        passed = passed and length == 2 * g - 2 and top_dim <= 2 * g - 3
    return CheckResult(name="chain_length", passed=passed, details=details)


def check_nontrivial_homology(s: SuiteSettings) -> CheckResult:
    details: dict[str, object] = {}
    passed = True
    for g in _levels(s.g):
        betti = betti_numbers(order_complex(build_gr_range(g, 1, g - 1).poset))
        degree = 2 * g - 3
        details[f"g{g}"] = betti
        passed = passed and len(betti) > degree and betti[degree] >= 1
    return CheckResult(name="nontrivial_homology", passed=passed, details=details)


def check_twelve_cycle(s: SuiteSettings) -> CheckResult:
    certificate = twelve_cycle().certificate()
    details = {k: v for k, v in certificate.items() if k != "strata"}
    return CheckResult(name="twelve_cycle", passed=bool(certificate["passed"]), details=details)


def check_genus_stratification(s: SuiteSettings) -> CheckResult:
    inner_bad: list[tuple[float, ...]] = []
    boundary_bad: list[tuple[float, ...]] = []
    above_bad: list[tuple[float, ...]] = []
    points = 0
    for b in b_grid(2, GRID_RESOLUTION):
        points += 1
        genus = genus_map(ParamPoint.origin(2, b), s.profile, s.tol)
        norm = math.hypot(*b)
        if genus > 2:
            above_bad.append(b)
        if norm < 0.5 and genus != 2:
            inner_bad.append(b)
        if norm >= 1.0 - 1e-12 and genus > 1:
            boundary_bad.append(b)
    rng = s.rng(6)
    outside_bad = 0
    for _ in range(100):
        if genus_map(sample_outside(rng, 2), s.profile, s.tol) != 0:
            outside_bad += 1
    details = {
        "grid_points": points,
        "inner_failures": len(inner_bad),
        "boundary_failures": len(boundary_bad),
        "above_g_failures": len(above_bad),
        "outside_failures": outside_bad,
    }
    passed = not (inner_bad or boundary_bad or above_bad or outside_bad)
    return CheckResult(name="genus_stratification", passed=passed, details=details)


def _random_poly(rng: np.random.Generator, monic: bool) -> TrigPoly:
    deg = int(rng.integers(1, 5))
    coeffs = rng.normal(size=2 * deg - 1 if monic else 2 * deg + 1)
    return TrigPoly.monic_cosine(coeffs) if monic else TrigPoly.from_coeffs(coeffs)


def check_retraction_conservation(s: SuiteSettings) -> CheckResult:
    rng = s.rng(7)
    failures = 0
    for _ in range(s.samples):
        cfg = roots(_random_poly(rng, monic=False), s.tol)
        counts = {n_odd(retract(cfg, t, s.tol), s.tol) for t in np.linspace(0.0, 1.0, T_GRID)}
        if len(counts) != 1 or n_odd(cfg, s.tol) not in counts:
            failures += 1
    return CheckResult(
        name="retraction_conservation",
        passed=failures == 0,
        details={"samples": s.samples, "t_grid": T_GRID, "failures": failures},
    )


def check_root_lemmas(s: SuiteSettings) -> CheckResult:
    rng = s.rng(8)
    pair_failures = sum_failures = 0
    for _ in range(s.samples):
        cfg = roots(_random_poly(rng, monic=True), s.tol)
        pair_failures += not conjugate_pair_check(cfg, s.tol)
        sum_failures += not root_sum_check(cfg, ROOT_SUM_TOL)
    return CheckResult(
        name="root_lemmas",
        passed=pair_failures == 0 and sum_failures == 0,
        details={
            "samples": s.samples,
            "conjugate_failures": pair_failures,
            "root_sum_failures": sum_failures,
        },
    )


def check_critical_curve(s: SuiteSettings) -> CheckResult:
    rng = s.rng(9)
    failures: list[str] = []
    worst_changes = 0
    c_fit = 0.0
    for k in range(s.samples):
        point = sample_a2(rng, s.profile)
        try:
            result = critical_curve_probe(point, s.profile)
        except PinchlabError as e:
            failures.append(f"sample {k}: {e}")
            continue
        worst_changes = max(worst_changes, result.sign_changes)
        c_fit = max(c_fit, result.c_fit)
        if not result.passed:
            failures.append(f"sample {k}: {result.sign_changes} sign changes")
    return CheckResult(
        name="critical_curve",
        passed=not failures,
        details={
            "samples": s.samples,
            "max_sign_changes": worst_changes,
            "fitted_c": c_fit,
            "failures": failures[:10],
        },
    )


def check_weak_homotopy(s: SuiteSettings) -> CheckResult:
    comparison = homology_comparison(2)
    compat = {g: order_compatibility_check(g) for g in (2, 3)}
    rank_failures = {g: len(rank_genus_violations(g)) for g in (1, 2, 3)}
    passed = (
        comparison.equal
        and comparison.face_betti == [1, 1]
        and all(report.passed for report in compat.values())
        and not any(rank_failures.values())
    )
    details = {
        "comparison": comparison.to_json(),
        "compat_counterexamples": {f"g{g}": len(r.counterexamples) for g, r in compat.items()},
        "rank_genus_failures": {f"g{g}": n for g, n in rank_failures.items()},
    }
    return CheckResult(name="weak_homotopy", passed=passed, details=details)


def _random_diagram(rng: np.random.Generator, g: int) -> HandleDiagram:
    names = arc_names(g)
    while True:
        picked = frozenset(a for a in names if rng.uniform() < 0.3)
        if len(picked) < len(names):
            return HandleDiagram(g, picked)


def check_descent_invariants(s: SuiteSettings) -> CheckResult:
    rng = s.rng(11)
    violations: list[str] = []
    for k in range(s.samples):
        g = int(rng.integers(1, 4))
        d0 = _random_diagram(rng, g)
        schedule = random_schedule(rng, d0, int(rng.integers(0, 9)))
        for problem in check_trace(run_descent(d0, schedule)):
            violations.append(f"trace {k}: {problem}")
    replay = obstruction_replay({})
    passed = not violations and replay.verdict is Verdict.NO_FILLING
    return CheckResult(
        name="descent_invariants",
        passed=passed,
        details={"traces": s.samples, "violations": violations[:10], "replay": replay.verdict},
    )


def _random_complex(rng: np.random.Generator) -> SimplicialComplex:
    n_vertices = int(rng.integers(3, 11))
    facets = [
        rng.choice(n_vertices, size=int(rng.integers(1, min(n_vertices, 4) + 1)), replace=False)
        .tolist()
        for _ in range(int(rng.integers(1, 25)))
    ]
    return SimplicialComplex.from_facets(facets, labels=list(range(n_vertices)))


def check_oracles(s: SuiteSettings) -> CheckResult:
    subspace_mismatch = [
        n
        for n in range(1, 5)
        if enumerate_subspaces(n) != brute_force_subspaces(n)
        or len(enumerate_subspaces(n)) != galois_number(n)
    ]
    rng = s.rng(12)
    betti_mismatch = 0
    for _ in range(100):
        complex_ = _random_complex(rng)
        if betti_numbers(complex_) != naive_betti_numbers(complex_):
            betti_mismatch += 1
    return CheckResult(
        name="oracles",
        passed=not subspace_mismatch and betti_mismatch == 0,
        details={"subspace_mismatch": subspace_mismatch, "betti_mismatch": betti_mismatch},
    )


CHECKS: dict[str, Callable[[SuiteSettings], CheckResult]] = {
    "gr2_circle": check_gr2_circle,
    "gr_contractible": check_gr_contractible,
    "chain_length": check_chain_length,
    "nontrivial_homology": check_nontrivial_homology,
    "twelve_cycle": check_twelve_cycle,
    "genus_stratification": check_genus_stratification,
    "retraction_conservation": check_retraction_conservation,
    "root_lemmas": check_root_lemmas,
    "critical_curve": check_critical_curve,
    "weak_homotopy": check_weak_homotopy,
    "descent_invariants": check_descent_invariants,
    "oracles": check_oracles,
}


class AcceptanceSuite:
    """Runs the acceptance checks concurrently, bounded by ``CONFIG["workers"]``."""

    def __init__(self, settings: SuiteSettings, workers: int | None = None) -> None:
        self.settings = settings
        self.workers = max(1, workers if workers is not None else CONFIG["workers"])

    def _run_one(self, name: str) -> CheckResult:
        logger.info(f"Running check {name}")
        try:
            return CHECKS[name](self.settings)
        except PinchlabError as e:
            logger.warning(f"Check {name} raised {type(e).__name__}: {e}")
            return CheckResult(name=name, passed=False, details={"error": e.kind, "detail": str(e)})

    async def _run_all(self, names: list[str]) -> list[CheckResult]:
        semaphore = asyncio.Semaphore(self.workers)

        async def bounded(name: str) -> CheckResult:
            async with semaphore:
                return await asyncio.to_thread(self._run_one, name)

        return list(await asyncio.gather(*(bounded(name) for name in names)))

    def run(self, only: list[str] | None = None) -> list[CheckResult]:
        names = list(CHECKS) if not only else only
        unknown = [n for n in names if n not in CHECKS]
        if unknown:
            raise PreconditionError(f"unknown checks {unknown}; choose from {sorted(CHECKS)}")
        results = asyncio.run(self._run_all(names))
        return sorted(results, key=lambda r: r.name)
