# Copyright (C) 2024 Vrije Universiteit Brussel. All rights reserved.
# SPDX-License-Identifier: MIT
"""
Block-length bounds, best constructions and the two reference tables.

Reference:
    ``prmpir bounds`` and ``prmpir table``; the reference values live in
    ``prmpir.golden``.

Lower bound for systematic PIR codes:

    n(k, 3) >= k + ceil((sqrt(8k + 1) + 1) / 2)
    n(k, tau) >= n(k, tau - 1) + 1

so n(k, tau) >= k + ceil((sqrt(8k + 1) + 1) / 2) + (tau - 3) for tau >= 3,
and n(k, 2) = k + 1 (the single parity-check code).

Constructions (``best_code``):

    tau = 2          parity-check code PRM(k-1, k-1) (k >= 2).
    tau = 2^l        smallest m >= l + 1 with binom(m, l) >= k, then
                     SPRM(m-l, m-1, binom(m, l) - k).
    tau = 2^l - 1    the same code punctured once.

For tau in {3, 4} the constructions meet the lower bound for every k.

Generalized Hamming weights: shortening by gamma symbols deletes gamma'
coordinates, which bounds d_{k-gamma} <= n - gamma'. With gamma = k - 1 this
gives d_1 = 2^l and with gamma = k - 2 it gives d_2 <= 3 * 2^(l-1).

Key functions:
    lb_systematic()   The lower bound above, in exact integer arithmetic.
    best_code()       Construction for (k, tau) with its BoundReport.
    ghw_upper()       (k - gamma, n - gamma').
    table1(), table2() The reference tables as pandas DataFrames.
"""

import logging
import math
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Tuple

import pandas as pd

from prmpir import golden
from prmpir.errors import InvariantViolation, ParameterError
from prmpir.prm import CodeSpec, PirCode, prm_params
from prmpir.shorten import build_sprm, puncture, rho_decompose, sprm_params, table_row
from prmpir.subsets import binom

logger = logging.getLogger(__name__)

# tau values whose constructions are certified optimal
OPTIMAL_TAUS = (3, 4)


@dataclass(frozen=True)
class BoundReport:
    """
    Lower bound against achieved block length for one (k, tau).

    Attributes:
        k: Number of message symbols.
        tau: Number of disjoint recovery sets.
        lower: ``lb_systematic(k, tau)``.
        achieved: Block length of the construction.
        construction: (m, r, gamma, punctured) of the construction.
        optimal: ``lower == achieved``.
    """

    k: int
    tau: int
    lower: int
    achieved: int
    construction: CodeSpec
    optimal: bool

    def to_dict(self) -> Dict[str, object]:
        return {
            "k": self.k,
            "tau": self.tau,
            "lower": self.lower,
            "achieved": self.achieved,
            "construction": {
                "m": self.construction.m,
                "r": self.construction.r,
                "gamma": self.construction.gamma,
                "punctured": self.construction.punctured,
            },
            "optimal": self.optimal,
        }


def lb_systematic(k: int, tau: int) -> int:
    """
    Smallest block length a systematic (n, k) tau-server PIR code can have.

    Raises:
        ParameterError: if k < 1 or tau < 2.
    """
    if k < 1:
        raise ParameterError(f"k must be positive, got {k}")
    if tau < 2:
        raise ParameterError(f"tau must be at least 2, got {tau}")
    if tau == 2:
        return k + 1
    disc = 8 * k + 1
    root = math.isqrt(disc)
    if root * root == disc:
        extra = (root + 1) // 2
    else:
        # sqrt(disc) lies strictly between root and root + 1
        extra = (root + 3) // 2
    return k + extra + (tau - 3)


def tau_level(tau: int) -> Tuple[int, int]:
    """
    (l, punctured) such that tau = 2^l - punctured.

    Raises:
        ParameterError: if tau is not 2, 2^l or 2^l - 1 with l >= 2.
    """
    if tau == 2:
        return 1, 0
    if tau >= 4 and tau & (tau - 1) == 0:
        return tau.bit_length() - 1, 0
    if tau >= 3 and (tau + 1) & tau == 0:
        return (tau + 1).bit_length() - 1, 1
    raise ParameterError(f"unsupported tau={tau}: expected 2, 2^l or 2^l - 1 with l >= 2")


def construction_for(k: int, tau: int) -> CodeSpec:
    """The (m, r, gamma, punctured) that ``best_code`` builds for (k, tau)."""
    if k < 1:
        raise ParameterError(f"k must be positive, got {k}")
    ell, punctured = tau_level(tau)
    if ell == 1:
        m = max(k, 2)
        return CodeSpec(m=m, r=m - 1, gamma=m - k)
    m = ell + 1
    while binom(m, ell) < k:
        m += 1
    return CodeSpec(m=m, r=m - ell, gamma=binom(m, ell) - k, punctured=punctured)


def _report(k: int, tau: int, spec: CodeSpec, achieved: int) -> BoundReport:
    lower = lb_systematic(k, tau)
    report = BoundReport(
        k=k,
        tau=tau,
        lower=lower,
        achieved=achieved,
        construction=spec,
        optimal=lower == achieved,
    )
    if lower > achieved:
        raise InvariantViolation(f"(k={k}, tau={tau}) achieves n={achieved} below bound {lower}")
    if tau in OPTIMAL_TAUS and not report.optimal:
        raise InvariantViolation(
            f"(k={k}, tau={tau}) achieves n={achieved}, optimal value is {lower}"
        )
    return report


def best_length(k: int, tau: int) -> BoundReport:
    """``best_code`` from the closed forms only, without building the code."""
    spec = construction_for(k, tau)
    n, _, _ = sprm_params(spec.m, spec.r, spec.gamma)
    return _report(k, tau, spec, n - spec.punctured)


def best_code(k: int, tau: int) -> Tuple[BoundReport, PirCode]:
    """
    Build the best available systematic PIR code for (k, tau).

    Returns:
        The report and the code itself (with ``code.tau == tau``).

    Raises:
        ParameterError: if tau is not supported.
        InvariantViolation: if the code misses the bound where it is known to be optimal.
    """
    spec = construction_for(k, tau)
    code = build_sprm(spec.m, spec.r, spec.gamma)
    for _ in range(spec.punctured):
        code = puncture(code)
    if code.k != k or code.tau != tau:
        raise InvariantViolation(
            f"construction for (k={k}, tau={tau}) gave k={code.k}, tau={code.tau}"
        )
    logger.debug("best code for k=%d tau=%d: %s n=%d", k, tau, spec, code.n)
    return _report(k, tau, code.spec, code.n), code


def ghw_upper(m: int, r: int, gamma: int) -> Tuple[int, int]:
    """
    (i, bound) with d_i <= bound for i = k - gamma.

    Raises:
        ParameterError: if gamma is not in [0, binom(m, r)).
    """
    n, k, _ = prm_params(m, r)
    if not 0 <= gamma < k:
        raise ParameterError(f"gamma={gamma} outside [0, {k}) for m={m}, r={r}")
    return k - gamma, n - rho_decompose(gamma, r, m - r).gamma_prime()


def ghw_d1_d2(m: int, r: int) -> Tuple[int, int]:
    """(d_1, upper bound on d_2) of PRM(r, m-1): (2^l, 3 * 2^(l-1))."""
    if not 1 <= r < m:
        raise ParameterError(f"need 1 <= r < m, got m={m}, r={r}")
    ell = m - r
    return 1 << ell, 3 << (ell - 1)


def batch_code_params(k: int, tau: int) -> Tuple[int, int, int]:
    """(n, k, tau) of the primitive multiset batch code given by the optimal PIR code."""
    if tau not in OPTIMAL_TAUS:
        raise ParameterError(f"batch code equivalence only holds for tau in {OPTIMAL_TAUS}")
    return best_length(k, tau).achieved, k, tau


def storage_overhead(k: int, tau: int) -> Tuple[float, float]:
    """(n / k of the best construction, tau of plain replication)."""
    return best_length(k, tau).achieved / k, float(tau)


def _format_rho(rho: Iterable[int]) -> str:
    return "(" + "".join(str(x) for x in rho) + ")"


def _format_family(family) -> str:
    return ",".join("{" + "".join(str(e) for e in member) + "}" for member in family) or "-"


def table1() -> pd.DataFrame:
    """Parameters of SPRM(2, 4, gamma) for gamma in [0, 10)."""
    m, r = golden.SPRM_TABLE_M, golden.SPRM_TABLE_R
    rows = []
    for gamma in range(binom(m, m - r)):
        row = table_row(m, r, gamma)
        rows.append(
            {
                "gamma": gamma,
                "rho": _format_rho(row["rho"]),
                "family": _format_family(s.elements() for s in row["family"]),
                "gamma_prime": row["gamma_prime"],
                "k": row["k"],
                "n": row["n"],
            }
        )
    return pd.DataFrame(rows)


def table1_diff() -> List[str]:
    """Mismatches between the computed SPRM table and the reference copy."""
    m, r = golden.SPRM_TABLE_M, golden.SPRM_TABLE_R
    problems = []
    for gamma, (rho, family, gamma_prime, k, n) in golden.SPRM_TABLE.items():
        row = table_row(m, r, gamma)
        got_family = {s.elements() for s in row["family"]}
        if tuple(row["rho"]) != rho:
            problems.append(f"gamma={gamma}: rho {row['rho']} != {rho}")
        if got_family != set(family):
            problems.append(f"gamma={gamma}: family {sorted(got_family)} != {sorted(family)}")
        for name, got, want in (
            ("gamma'", row["gamma_prime"], gamma_prime),
            ("k", row["k"], k),
            ("n", row["n"], n),
        ):
            if got != want:
                problems.append(f"gamma={gamma}: {name}={got} != {want}")
    return problems


def table2(build: bool = True) -> pd.DataFrame:
    """
    Block lengths n1 (computed) and n2 (reference) for k in [2, 32] and tau in {3, 4, 8, 16}.

    Args:
        build: Construct every code and check it, instead of using the closed forms.
    """
    rows = []
    for k in sorted(golden.BLOCKLENGTH_TABLE):
        for tau in golden.BLOCKLENGTH_TAUS:
            report = best_code(k, tau)[0] if build else best_length(k, tau)
            rows.append(
                {
                    "k": k,
                    "tau": tau,
                    "lower": report.lower,
                    "n1": report.achieved,
                    "n2": golden.n2(k, tau),
                }
            )
    return pd.DataFrame(rows)


def table2_diff(table: Optional[pd.DataFrame] = None) -> List[str]:
    """Mismatches of n1 against the reference and cells where n1 > n2."""
    table = table2() if table is None else table
    problems = []
    for row in table.itertuples(index=False):
        want = golden.n1(row.k, row.tau)
        if row.n1 != want:
            problems.append(f"k={row.k}, tau={row.tau}: n1={row.n1} != {want}")
        if row.n1 > row.n2:
            problems.append(f"k={row.k}, tau={row.tau}: n1={row.n1} exceeds n2={row.n2}")
    return problems


def table2_wide(table: pd.DataFrame) -> pd.DataFrame:
    """One row per k with an "n1/n2" column per tau, the published layout."""
    cells = table.assign(cell=table["n1"].astype(str) + "/" + table["n2"].astype(str))
    wide = cells.pivot(index="k", columns="tau", values="cell")
    wide.columns = [f"tau={tau}" for tau in wide.columns]
    return wide.reset_index()


def to_markdown(table: pd.DataFrame) -> str:
    """Pipe-table rendering of a DataFrame."""
    header = [str(c) for c in table.columns]
    lines = [
        "| " + " | ".join(header) + " |",
        "|" + "|".join("---" for _ in header) + "|",
    ]
    for row in table.itertuples(index=False):
        lines.append("| " + " | ".join(str(v) for v in row) + " |")
    return "\n".join(lines) + "\n"


def render(table: pd.DataFrame, fmt: str) -> str:
    """Serialize a table as json, csv or md."""
    if fmt == "csv":
        return table.to_csv(index=False)
    if fmt == "json":
        return table.to_json(orient="records") + "\n"
    if fmt == "md":
        return to_markdown(table)
    raise ParameterError(f"Unsupported format: {fmt}")
