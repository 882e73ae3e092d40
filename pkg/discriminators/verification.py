"""Grid verification suites.

Each target expands a VerificationGrid into independent points, runs every
point (optionally in a process pool) and folds the results into a
VerificationReport. Points are consumed in submission order, so a report is
identical whatever the worker count.
"""
from __future__ import annotations

import logging
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from typing import Any, Callable, Dict, Iterable, List, NamedTuple, Tuple

from pydantic import BaseModel, Field
from tqdm import tqdm

from discriminators.engine import discriminator_profile
from discriminators.exact import (
    closed_form_discriminator,
    collision_witness,
    order_of_t_squared,
    partition_factorization,
    recombine_components,
    scaled_discriminator_transfer,
    verify_lemma1,
    verify_lemma2,
    verify_lemma4,
    witness_components,
)
from discriminators.families import make_exp_sequence, make_reference_sequence, scale_sequence
from utils.errors import DomainError, UsageError, WitnessInvariantError
from utils.numtheory import lemma5_bound_holds
from utils.ranges import describe_grid

logger = logging.getLogger(__name__)

DEFAULT_MAX_CHECKS = 10 ** 7
LEMMA5_CHUNK = 10_000


class VerificationGrid(BaseModel):
    t: List[int] = Field(default_factory=lambda: [3, 5, 7, 9, 11, 15, 17])
    a: List[int] = Field(default_factory=lambda: [1, 3, 5, -3])
    c: List[int] = Field(default_factory=lambda: list(range(9)))
    n_max: int = Field(default=256, ge=1)
    k_max: int = Field(default=12, ge=0)
    start_max: int = Field(default=32, ge=0)
    m_limit: int = Field(default=10 ** 5, ge=1)
    scales: List[int] = Field(default_factory=lambda: [-3, 3, -5, 5, 7])
    linear_a: List[int] = Field(default_factory=lambda: [1, 5])
    linear_b: List[int] = Field(default_factory=lambda: [0, 7])


# Acceptance-level defaults per target; explicit flags override them.
DEFAULT_GRIDS: Dict[str, Dict[str, Any]] = {
    "theorem": {},
    "lemma1": {},
    "lemma2": {"k_max": 12},
    "corollary3": {"k_max": 10},
    "lemma4": {"t": [3, 7, 9], "k_max": 6, "start_max": 32},
    "lemma5": {},
    "lemma6": {"t": [3, 5, 7, 9, 15], "k_max": 8},
    "lemma7": {"n_max": 64},
}


class VerificationFailure(BaseModel):
    parameters: Dict[str, Any]
    expected: Any
    actual: Any


class VerificationReport(BaseModel):
    target: str
    grid: Dict[str, str]
    checks_run: int
    failures: List[VerificationFailure] = Field(default_factory=list)
    elapsed: float

    @property
    def ok(self) -> bool:
        return not self.failures


class Check(NamedTuple):
    parameters: Dict[str, Any]
    expected: Any
    actual: Any
    passed: bool


def _check(parameters: Dict[str, Any], expected: Any, actual: Any) -> Check:
    return Check(parameters, expected, actual, expected == actual)


# --- per-target points and runners -----------------------------------------------
def _theorem_points(g: VerificationGrid) -> List[dict]:
    return [{"t": t, "a": a, "c": c} for t in g.t for a in g.a for c in g.c]


def _theorem_run(g: VerificationGrid, p: dict) -> List[Check]:
    handle = make_exp_sequence(p["a"], p["t"], p["c"])
    return [
        _check({**p, "n": r.n}, closed_form_discriminator(r.n), r.d)
        for r in discriminator_profile(handle, g.n_max)
    ]


def _lemma1_run(g: VerificationGrid, p: dict) -> List[Check]:
    return [_check(p, True, verify_lemma1(p["t"]))]


def _tk_points(k_min: int) -> Callable[[VerificationGrid], List[dict]]:
    def points(g: VerificationGrid) -> List[dict]:
        return [{"t": t, "k": k} for t in g.t for k in range(k_min, g.k_max + 1)]
    return points


def _lemma2_run(g: VerificationGrid, p: dict) -> List[Check]:
    return [_check(p, True, verify_lemma2(p["t"], p["k"]))]


def _corollary3_run(g: VerificationGrid, p: dict) -> List[Check]:
    return [_check(p, 1 << p["k"], order_of_t_squared(p["t"], p["k"]))]


def _lemma4_points(g: VerificationGrid) -> List[dict]:
    return [
        {"t": t, "start": s, "k": k}
        for t in g.t
        for s in range(g.start_max + 1)
        for k in range(g.k_max + 1)
    ]


def _lemma4_run(g: VerificationGrid, p: dict) -> List[Check]:
    return [_check(p, True, verify_lemma4(p["t"], p["start"], p["k"]))]


def _lemma5_points(g: VerificationGrid) -> List[dict]:
    return [
        {"lo": lo, "hi": min(lo + LEMMA5_CHUNK - 1, g.m_limit)}
        for lo in range(1, g.m_limit + 1, LEMMA5_CHUNK)
    ]


def _lemma5_run(g: VerificationGrid, p: dict) -> List[Check]:
    return [_check({"m": m}, True, lemma5_bound_holds(m)) for m in range(p["lo"], p["hi"] + 1)]


def _lemma6_run(g: VerificationGrid, p: dict) -> List[Check]:
    t, k = p["t"], p["k"]
    checks = []
    for m in range(1, 1 << (k + 1)):
        params = {"t": t, "k": k, "m": m}
        try:
            w = collision_witness(t, k, m)
            # the per-prime-power congruences must hold and recombine to the full one
            parts = witness_components(w, partition_factorization(m, t))
            recombined, modulus = recombine_components(parts)
            sound = (
                all(lhs == rhs for _, lhs, rhs in parts)
                and modulus == w.modulus_full
                and recombined == pow(t * t, w.i, w.modulus_full)
            )
            checks.append(Check(params, "valid witness", f"i={w.i}, j={w.j}", sound))
        except (DomainError, WitnessInvariantError) as e:
            checks.append(Check(params, "valid witness", str(e), False))

    # m = 2^(k+1): the order of t^2 rules out every pair, and the builder must refuse
    top = 1 << (k + 1)
    params = {"t": t, "k": k, "m": top}
    try:
        collision_witness(t, k, top)
        refused = False
    except DomainError:
        refused = True
    order = order_of_t_squared(t, k + 1)
    checks.append(Check(params, f"order {top}, refused", f"order {order}, refused={refused}", order == top and refused))
    return checks


def _lemma7_points(g: VerificationGrid) -> List[dict]:
    points = [{"family": "exp", "t": t, "scale": f} for t in g.t for f in g.scales]
    points += [
        {"family": "linear", "a": a, "b": b, "scale": f}
        for a in g.linear_a
        for b in g.linear_b
        for f in g.scales
    ]
    return points


def _lemma7_run(g: VerificationGrid, p: dict) -> List[Check]:
    if p["family"] == "exp":
        base = make_exp_sequence(1, p["t"], 0)
    else:
        base = make_reference_sequence("linear", 0, a=p["a"], b=p["b"])
    scaled = scale_sequence(base, p["scale"])
    checks = []
    for r, rs in zip(discriminator_profile(base, g.n_max), discriminator_profile(scaled, g.n_max)):
        params = {**p, "n": r.n}
        if scaled_discriminator_transfer(r.d, p["scale"]):
            checks.append(_check(params, r.d, rs.d))
        else:
            # hypothesis fails: nothing is claimed, only D' >= D must hold
            checks.append(Check(params, f">= {r.d}", rs.d, rs.d >= r.d))
    return checks


class Suite(NamedTuple):
    points: Callable[[VerificationGrid], List[dict]]
    size: Callable[[VerificationGrid, dict], int]
    run: Callable[[VerificationGrid, dict], List[Check]]
    axes: Tuple[str, ...]


def _one(g: VerificationGrid, p: dict) -> int:
    return 1


SUITES: Dict[str, Suite] = {
    "theorem": Suite(_theorem_points, lambda g, p: g.n_max, _theorem_run, ("t", "a", "c", "n_max")),
    "lemma1": Suite(lambda g: [{"t": t} for t in g.t], _one, _lemma1_run, ("t",)),
    "lemma2": Suite(_tk_points(1), _one, _lemma2_run, ("t", "k_max")),
    "corollary3": Suite(_tk_points(1), _one, _corollary3_run, ("t", "k_max")),
    "lemma4": Suite(_lemma4_points, _one, _lemma4_run, ("t", "start_max", "k_max")),
    "lemma5": Suite(_lemma5_points, lambda g, p: p["hi"] - p["lo"] + 1, _lemma5_run, ("m_limit",)),
    "lemma6": Suite(_tk_points(0), lambda g, p: 1 << (p["k"] + 1), _lemma6_run, ("t", "k_max")),
    "lemma7": Suite(
        _lemma7_points, lambda g, p: g.n_max, _lemma7_run, ("t", "linear_a", "linear_b", "scales", "n_max")
    ),
}

TARGETS = tuple(SUITES)


def build_grid(target: str, overrides: Dict[str, Any] | None = None) -> VerificationGrid:
    if target not in SUITES:
        raise UsageError(f"unknown target {target!r}; expected one of {', '.join(TARGETS)}")
    values = dict(DEFAULT_GRIDS[target])
    values.update({k: v for k, v in (overrides or {}).items() if v is not None})
    return VerificationGrid(**values)


def grid_size(target: str, grid: VerificationGrid) -> int:
    suite = SUITES[target]
    return sum(suite.size(grid, p) for p in suite.points(grid))


def _run_job(job: Tuple[str, VerificationGrid, dict]) -> List[Check]:
    target, grid, point = job
    return SUITES[target].run(grid, point)


def _describe(grid: VerificationGrid, axes: Iterable[str]) -> Dict[str, str]:
    out = {}
    for name in axes:
        value = getattr(grid, name)
        out[name] = describe_grid(value) if isinstance(value, list) else str(value)
    return out


def run_suite(
    target: str,
    grid: VerificationGrid | None = None,
    *,
    max_checks: int = DEFAULT_MAX_CHECKS,
    workers: int = 1,
    progress: bool = False,
) -> VerificationReport:
    """Run one target over its grid; refuses grids larger than ``max_checks``."""
    if target not in SUITES:
        raise UsageError(f"unknown target {target!r}; expected one of {', '.join(TARGETS)}")
    grid = grid or build_grid(target)
    suite = SUITES[target]
    points = suite.points(grid)
    planned = sum(suite.size(grid, p) for p in points)
    if planned > max_checks:
        raise UsageError(f"grid has {planned} checks, above the cap of {max_checks} (raise --max-checks)")

    logger.info("[verify] target=%s points=%s checks=%s workers=%s", target, len(points), planned, workers)
    jobs = [(target, grid, p) for p in points]
    started = time.perf_counter()
    checks_run = 0
    failures: List[VerificationFailure] = []

    def consume(results: Iterable[List[Check]]) -> None:
        nonlocal checks_run
        for checks in tqdm(results, total=len(jobs), desc=target, file=sys.stderr, disable=not progress):
            checks_run += len(checks)
            for c in checks:
                if not c.passed:
                    failures.append(
                        VerificationFailure(parameters=c.parameters, expected=c.expected, actual=c.actual)
                    )

    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            consume(pool.map(_run_job, jobs, chunksize=max(1, len(jobs) // (workers * 4))))
    else:
        consume(map(_run_job, jobs))

    elapsed = time.perf_counter() - started
    if checks_run != planned:
        logger.error("[verify] ran %s checks but the grid has %s", checks_run, planned)
    if failures:
        logger.warning("[verify] target=%s failures=%s", target, len(failures))
    return VerificationReport(
        target=target,
        grid=_describe(grid, suite.axes),
        checks_run=checks_run,
        failures=failures,
        elapsed=round(elapsed, 6),
    )


__all__ = [
    "VerificationGrid",
    "VerificationFailure",
    "VerificationReport",
    "DEFAULT_GRIDS",
    "DEFAULT_MAX_CHECKS",
    "TARGETS",
    "build_grid",
    "grid_size",
    "run_suite",
]
