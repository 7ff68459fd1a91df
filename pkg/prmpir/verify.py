# Copyright (C) 2024 Vrije Universiteit Brussel. All rights reserved.
# SPDX-License-Identifier: MIT
"""
Acceptance suite behind ``prmpir verify``.

Each check returns a ``CheckResult``; ``run_checks`` runs them all in a fixed
order. A check fails when its property does not hold or when any prmpir
error escapes it, including a distance instance that no search can decide.

    tables           SPRM(2, 4, gamma) table and the k x tau block-length table.
    optimality       best_code meets the lower bound for k <= 100, tau in {3, 4}.
    rho_uniqueness   Every gamma has exactly one rho vector (m <= 7).
    shortening       gamma' enumeration, nesting and monotonicity (m <= max_m + 2).
    recovery         Disjoint recovery sets of every SPRM code and the PRM
                     recovery-set size census (m <= max_m).
    distance         d_1 and d_2 (m <= 6), increasing d_i (m <= 4), d_{k-gamma} (m <= 5).
    arbitrary        Random shortenings keep tau recovery sets.
    pir_correctness  1000 retrievals on three codes.
    pir_privacy      Honest client passes the audit, plaintext client fails.
"""

import logging
import time
from dataclasses import dataclass
from typing import Callable, List, Tuple

import numpy as np

from prmpir import bounds, pirsim
from prmpir.errors import BruteForceTooLarge, InvariantViolation, ParameterError, PirCodeError
from prmpir.gf2core import ghw, ghw_at_most, min_distance
from prmpir.prm import (
    build_prm,
    covered_coordinates,
    locality_profile,
    prm_params,
    prm_recovery_set_size,
)
from prmpir.shorten import (
    arbitrary_shorten,
    build_sprm,
    enumerate_rho_vectors,
    rho_decompose,
    shortening_plan,
    sprm_is_prm_chain,
)
from prmpir.subsets import binom

logger = logging.getLogger(__name__)

PIR_TRIALS = 1000
PIR_B = 3
AUDIT_B = 2
AUDIT_TRIALS = 20000
ARBITRARY_PAIRS = 200
DISTANCE_MAX_M = 6
GHW_SWEEP_MAX_M = 5
GHW_PROFILE_MAX_M = 4
RHO_MAX_M = 7


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str
    seconds: float = 0.0

    def to_dict(self):
        return {
            "name": self.name,
            "passed": self.passed,
            "detail": self.detail,
        }


def _mr_pairs(max_m: int, min_m: int = 2) -> List[Tuple[int, int]]:
    return [(m, r) for m in range(min_m, max_m + 1) for r in range(1, m)]


def check_tables(max_m: int, rng: np.random.Generator) -> CheckResult:
    problems = bounds.table1_diff() + bounds.table2_diff()
    if problems:
        return CheckResult("tables", False, "; ".join(problems[:5]))
    return CheckResult("tables", True, "10 SPRM rows and 124 block-length cells match")


def check_optimality(max_m: int, rng: np.random.Generator) -> CheckResult:
    misses = []
    for k in range(1, 101):
        for tau in bounds.OPTIMAL_TAUS:
            try:
                report, code = bounds.best_code(k, tau)
            except InvariantViolation as exc:
                misses.append(f"k={k}, tau={tau}: {exc}")
                continue
            if code.n != bounds.lb_systematic(k, tau) or report.achieved != code.n:
                misses.append(f"k={k}, tau={tau}: n={code.n}")
    for k in range(1, 101):
        for tau in (8, 16):
            bounds.best_length(k, tau)
    if misses:
        return CheckResult("optimality", False, ", ".join(misses[:5]))
    return CheckResult("optimality", True, "k in [1, 100], tau in {3, 4} meet the bound")


def check_rho_uniqueness(max_m: int, rng: np.random.Generator) -> CheckResult:
    cases = 0
    for m, r in _mr_pairs(RHO_MAX_M):
        ell = m - r
        seen = {}
        for vector in enumerate_rho_vectors(r, ell):
            seen.setdefault(vector.gamma, []).append(vector.rho)
        for gamma in range(binom(m, ell)):
            if len(seen.get(gamma, [])) != 1:
                return CheckResult(
                    "rho_uniqueness", False, f"m={m}, r={r}, gamma={gamma}: {seen.get(gamma)}"
                )
            if rho_decompose(gamma, r, ell).rho != seen[gamma][0]:
                return CheckResult("rho_uniqueness", False, f"m={m}, r={r}, gamma={gamma}")
            cases += 1
        if len(seen) != binom(m, ell):
            return CheckResult("rho_uniqueness", False, f"m={m}, r={r}: values out of range")
    return CheckResult("rho_uniqueness", True, f"{cases} values represented exactly once")


def check_shortening(max_m: int, rng: np.random.Generator) -> CheckResult:
    plans = 0
    for m, r in _mr_pairs(max_m + 2):
        previous = -1
        for gamma in range(binom(m, m - r)):
            plan = shortening_plan(m, r, gamma)
            family = plan.decomposition.family
            for a in family:
                for b in family:
                    if a != b and a.issubset(b):
                        return CheckResult("shortening", False, f"{a} inside {b} (m={m}, r={r})")
            if plan.gamma_prime <= previous:
                return CheckResult("shortening", False, f"gamma' not increasing at m={m}, r={r}")
            previous = plan.gamma_prime
            plans += 1
        if r >= 2 and not sprm_is_prm_chain(m, r):
            return CheckResult("shortening", False, f"SPRM/PRM chain fails at m={m}, r={r}")
    return CheckResult("shortening", True, f"{plans} plans consistent")


def _census(m: int, r: int) -> List[int]:
    ell = m - r
    sizes = []
    for weight in range(ell + 1):
        sizes += [prm_recovery_set_size(m, r, weight)] * binom(ell, weight)
    return sorted(sizes)


def check_recovery(max_m: int, rng: np.random.Generator) -> CheckResult:
    codes = 0
    for m, r in _mr_pairs(max_m):
        census = _census(m, r)
        for gamma in range(binom(m, m - r)):
            code = build_sprm(m, r, gamma)
            if code.tau != 1 << (m - r):
                return CheckResult("recovery", False, f"tau={code.tau} at m={m}, r={r}")
            if gamma == 0:
                for i in range(code.k):
                    if covered_coordinates(code, i) != code.n:
                        return CheckResult(
                            "recovery", False, f"PRM({r}, {m - 1}) misses coordinates"
                        )
                    if locality_profile(code, i) != census:
                        return CheckResult(
                            "recovery", False, f"recovery set sizes of symbol {i}, m={m}, r={r}"
                        )
            codes += 1
    return CheckResult("recovery", True, f"{codes} codes checked up to m={max_m}")


def _ghw_within(matrix, i: int, bound: int) -> bool:
    try:
        return ghw(matrix, i) <= bound
    except BruteForceTooLarge:
        return ghw_at_most(matrix, i, bound)


def check_distance(max_m: int, rng: np.random.Generator) -> CheckResult:
    checked = 0
    for m, r in _mr_pairs(min(max_m, DISTANCE_MAX_M)):
        code = build_prm(m, r)
        d1, d2_bound = bounds.ghw_d1_d2(m, r)
        value = min_distance(code.generator)
        if value != d1:
            return CheckResult("distance", False, f"d_1={value} for m={m}, r={r}")
        checked += 1
        if code.k >= 2:
            if not _ghw_within(code.generator, 2, d2_bound):
                return CheckResult("distance", False, f"d_2 > {d2_bound} for m={m}, r={r}")
            checked += 1
    for m, r in _mr_pairs(min(max_m, GHW_PROFILE_MAX_M)):
        generator = build_prm(m, r).generator
        profile = [ghw(generator, i) for i in range(1, generator.rows + 1)]
        if any(a >= b for a, b in zip(profile, profile[1:])):
            return CheckResult("distance", False, f"d_i not increasing for m={m}, r={r}: {profile}")
        checked += len(profile)
    for m, r in _mr_pairs(min(max_m, GHW_SWEEP_MAX_M)):
        code = build_prm(m, r)
        for gamma in range(code.k):
            i, bound = bounds.ghw_upper(m, r, gamma)
            if not _ghw_within(code.generator, i, bound):
                return CheckResult("distance", False, f"d_{i} > {bound} (m={m}, r={r})")
            checked += 1
    return CheckResult("distance", True, f"{checked} weights checked")


def check_arbitrary(max_m: int, rng: np.random.Generator) -> CheckResult:
    pairs = _mr_pairs(min(max_m, DISTANCE_MAX_M))
    cache = {}
    for _ in range(ARBITRARY_PAIRS):
        m, r = pairs[int(rng.integers(len(pairs)))]
        if (m, r) not in cache:
            cache[(m, r)] = build_prm(m, r)
        code = cache[(m, r)]
        size = int(rng.integers(code.k))
        msgs = rng.choice(code.k, size=size, replace=False)
        shortened = arbitrary_shorten(code, [int(i) for i in msgs])
        if shortened.tau != code.tau or shortened.k != code.k - size:
            return CheckResult("arbitrary", False, f"m={m}, r={r}, msgs={sorted(msgs)}")
    return CheckResult("arbitrary", True, f"{ARBITRARY_PAIRS} random shortenings")


def pir_codes():
    """The three codes the retrieval harness runs on."""
    return [
        ("(5,4) two-server", build_prm(4, 3)),
        ("PRM(2,3)", build_prm(4, 2)),
        ("SPRM(2,4,4)", build_sprm(5, 2, 4)),
    ]


def check_pir_correctness(max_m: int, rng: np.random.Generator) -> CheckResult:
    for name, code in pir_codes():
        pirsim.correctness_harness(code, PIR_B, PIR_TRIALS, rng)
        logger.debug("%s: %d retrievals exact", name, PIR_TRIALS)
    return CheckResult("pir_correctness", True, f"{PIR_TRIALS} retrievals on each of 3 codes")


def check_pir_privacy(max_m: int, rng: np.random.Generator) -> CheckResult:
    code = build_prm(4, 3)
    database = rng.integers(0, 2, size=(code.k, AUDIT_B), dtype=np.uint8)
    array = pirsim.setup(code, database)
    honest = pirsim.privacy_audit(array, AUDIT_TRIALS, AUDIT_B, rng, pirsim.AdditiveClient())
    broken = pirsim.privacy_audit(array, AUDIT_TRIALS, AUDIT_B, rng, pirsim.PlaintextClient())
    if not honest.passed:
        return CheckResult(
            "pir_privacy", False, f"honest client flagged at servers {honest.failing_servers()}"
        )
    if broken.passed:
        return CheckResult("pir_privacy", False, "plaintext client was not detected")
    return CheckResult(
        "pir_privacy",
        True,
        f"honest client passes, plaintext client fails at servers {broken.failing_servers()}",
    )


CHECKS: Tuple[Callable[[int, np.random.Generator], CheckResult], ...] = (
    check_tables,
    check_optimality,
    check_rho_uniqueness,
    check_shortening,
    check_recovery,
    check_distance,
    check_arbitrary,
    check_pir_correctness,
    check_pir_privacy,
)


def run_checks(max_m: int, seed: int, only: Tuple[str, ...] = ()) -> List[CheckResult]:
    """
    Run the acceptance checks.

    Args:
        max_m: Largest m for the recovery sweep (shortening goes to max_m + 2).
        seed: Seed of the generator shared by the randomized checks.
        only: Restrict to checks whose name is listed.
    """
    if max_m < 2:
        raise ParameterError(f"--max-m must be at least 2, got {max_m}")
    n, _, _ = prm_params(max_m, 1)
    logger.debug("verify up to m=%d (largest PRM length %d)", max_m, n)
    rng = np.random.default_rng(seed)
    results = []
    for check in CHECKS:
        name = check.__name__.removeprefix("check_")
        if only and name not in only:
            continue
        start = time.perf_counter()
        try:
            result = check(max_m, rng)
        except PirCodeError as exc:
            result = CheckResult(name, False, f"{type(exc).__name__}: {exc}")
        result = CheckResult(
            result.name, result.passed, result.detail, time.perf_counter() - start
        )
        logger.info(
            "%s: %s in %.2fs", name, "ok" if result.passed else "FAILED", result.seconds
        )
        results.append(result)
    return results
