# Copyright (C) 2024 Vrije Universiteit Brussel. All rights reserved.
# SPDX-License-Identifier: MIT
"""
Shortened projective Reed-Muller codes SPRM(r, m-1, gamma) for any k.

Reference:
    ``prmpir shorten`` and the shortening and recovery checks of ``prmpir verify``.

Zeroing a message symbol a_R of PRM(r, m-1) forces f(R) = 0, and zeroing every
r-subset of a larger set P forces f(S) = 0 for every S ⊆ P with |S| >= r. Those
coordinates can then be deleted. Choosing the zeroed symbols as the r-subsets
of a well-nested family of sets deletes gamma' >= gamma coordinates while all
tau = 2^(m-r) disjoint recovery sets survive.

Construction for a target reduction gamma in [0, binom(m, m-r)):

1. **Decomposition** - write gamma uniquely as sum_t h(rho_t, r_t, t) with
   rho = (rho_{l-1}, ..., rho_0), sum rho_t <= r and r_t = r - sum_{q>t} rho_q.
   Each rho_t is the index p of the interval [h(p, r_t, t), h(p+1, r_t, t))
   holding what is left of gamma once the higher levels are taken out.

2. **Set family** - start from [m] and, level by level, drop one element at a
   time to obtain (r+t)-element sets; keep rho_t of them at level t and
   descend from the next one. Sets of one level share all but one element and
   no set is contained in a larger one.

3. **Plan** - zero the r-subsets of the family members (gamma of them) and
   delete all their subsets of size >= r (gamma' of them, with
   gamma' = sum_t h1(rho_t, r_t, t)).

Two generic code transformations live here as well: ``arbitrary_shorten``
(zero any set of message symbols, delete whatever columns become zero) and
``puncture`` (drop the last parity coordinate, tau decreases by one).
"""

import logging
from dataclasses import dataclass, replace
from typing import Dict, Iterable, List, Tuple

from prmpir.config import PRM_MAX_LENGTH
from prmpir.errors import InvariantViolation, ParameterError
from prmpir.prm import CodeSpec, PirCode, assemble_code, prm_params
from prmpir.subsets import SubsetMask, all_of_size, binom, colex_key, k_subsets, subsets_of

logger = logging.getLogger(__name__)


def _c(n: int, k: int) -> int:
    """binom that is 0 outside the triangle instead of raising."""
    if n < 0 or k < 0:
        return 0
    return binom(n, k)


def h(p: int, r: int, t: int) -> int:
    """h(p, r, t) = sum_{i=0}^{p-1} binom(r+t-i, r-i), and 0 for p = 0."""
    return sum(_c(r + t - i, r - i) for i in range(p))


def h1(rho_t: int, r: int, t: int) -> int:
    """Coordinates deleted by level t: sum_{j=0}^{t} sum_{i=0}^{rho_t-1} binom(r+t-i, r+j-i)."""
    return sum(_c(r + t - i, r + j - i) for j in range(t + 1) for i in range(rho_t))


@dataclass(frozen=True)
class RhoDecomposition:
    """
    The unique representation of gamma by level counts.

    Attributes:
        r: Degree of the parent PRM code.
        ell: m - r.
        gamma: The represented value.
        rho: (rho_{l-1}, ..., rho_0), highest level first.
        r_t: (r_{l-1}, ..., r_0) with r_t = r - sum_{q>t} rho_q.
        family: The set family, filled in by ``set_family``.
    """

    r: int
    ell: int
    gamma: int
    rho: Tuple[int, ...]
    r_t: Tuple[int, ...]
    family: Tuple[SubsetMask, ...] = ()

    def rho_at(self, t: int) -> int:
        """rho_t, with rho_l = 0 by convention."""
        if t >= self.ell:
            return 0
        return self.rho[self.ell - 1 - t]

    def r_at(self, t: int) -> int:
        return self.r - sum(self.rho_at(q) for q in range(t + 1, self.ell))

    def represented(self) -> int:
        return sum(h(self.rho_at(t), self.r_at(t), t) for t in range(self.ell))

    def gamma_prime(self) -> int:
        return sum(h1(self.rho_at(t), self.r_at(t), t) for t in range(self.ell))


def _check_gamma(m: int, r: int, gamma: int) -> None:
    if not 1 <= r <= m:
        raise ParameterError(f"need 1 <= r <= m, got m={m}, r={r}")
    limit = binom(m, m - r)
    if not 0 <= gamma < limit:
        raise ParameterError(f"gamma={gamma} outside [0, {limit}) for m={m}, r={r}")


def rho_decompose(gamma: int, r: int, ell: int) -> RhoDecomposition:
    """
    Decompose gamma into level counts (the family is left empty).

    Raises:
        ParameterError: if gamma is not in [0, binom(r+ell, ell)).
        InvariantViolation: if a nonzero remainder is left after level 0.
    """
    if r < 0 or ell < 0:
        raise ParameterError(f"r and ell must be nonnegative, got r={r}, ell={ell}")
    limit = binom(r + ell, ell)
    if not 0 <= gamma < limit:
        raise ParameterError(f"gamma={gamma} outside [0, {limit}) for r={r}, ell={ell}")

    rho: List[int] = []
    r_t: List[int] = []
    remaining = gamma
    budget = r
    for t in range(ell - 1, -1, -1):
        p = 0
        while p < budget and h(p + 1, budget, t) <= remaining:
            p += 1
        rho.append(p)
        r_t.append(budget)
        remaining -= h(p, budget, t)
        budget -= p
    if remaining != 0:
        raise InvariantViolation(f"gamma={gamma} leaves remainder {remaining} (r={r}, ell={ell})")
    return RhoDecomposition(r=r, ell=ell, gamma=gamma, rho=tuple(rho), r_t=tuple(r_t))


def enumerate_rho_vectors(r: int, ell: int) -> List[RhoDecomposition]:
    """Every vector (rho_{l-1}, ..., rho_0) with sum <= r, with the value it represents."""
    out: List[RhoDecomposition] = []

    def extend(prefix: Tuple[int, ...], budgets: Tuple[int, ...], budget: int) -> None:
        if len(prefix) == ell:
            partial = RhoDecomposition(r=r, ell=ell, gamma=0, rho=prefix, r_t=budgets)
            out.append(replace(partial, gamma=partial.represented()))
            return
        for p in range(budget + 1):
            extend(prefix + (p,), budgets + (budget,), budget - p)

    extend((), (), r)
    return out


def set_family(rho: RhoDecomposition, m: int) -> List[SubsetMask]:
    """
    The nested set family of a decomposition, largest sets first.

    Starting from S = [m], level t (sets of size r+t-1, t = l..1) consists of
    S \\ {r_{t-1} + t - i} for i in [0, r_{t-1} + t - 1]; the first rho_{t-1}
    of them join the family and the next one seeds the level below.
    """
    if rho.r + rho.ell != m:
        raise ParameterError(f"decomposition is for m={rho.r + rho.ell}, not m={m}")
    family: List[SubsetMask] = []
    seed = SubsetMask.full(m)
    for t in range(rho.ell, 0, -1):
        r_below = rho.r_at(t - 1)
        level = [seed.without(r_below + t - i) for i in range(r_below + t)]
        kept = rho.rho_at(t - 1)
        family.extend(level[:kept])
        seed = level[kept]
    return family


def level_family(m: int, r: int, t: int, rho_t: int) -> List[SubsetMask]:
    """
    Single-level family: rho_t sets [1, r+t+1] \\ {r+t+1-i}, i < rho_t.

    With rho_t = 1 this is one (r+t)-set whose r-subsets give gamma =
    binom(r+t, r); in general gamma = h(rho_t, r, t), gamma' = h1(rho_t, r, t).
    """
    if not 0 <= t < m - r:
        raise ParameterError(f"level t={t} outside [0, {m - r})")
    if not 1 <= rho_t <= r:
        raise ParameterError(f"rho_t={rho_t} outside [1, {r}]")
    base = SubsetMask.of(range(1, r + t + 2), m)
    return [base.without(r + t + 1 - i) for i in range(rho_t)]


@dataclass(frozen=True)
class ShorteningPlan:
    """
    Which message symbols to zero and which coordinates disappear with them.

    Attributes:
        m, r, gamma: Target code parameters.
        decomposition: The decomposition of gamma, family included.
        zeroed_messages: Distinct r-subsets of family members, canonical order.
        deleted_coordinates: Distinct subsets of family members of size >= r.
        gamma_prime: Number of deleted coordinates.
    """

    m: int
    r: int
    gamma: int
    decomposition: RhoDecomposition
    zeroed_messages: Tuple[SubsetMask, ...]
    deleted_coordinates: Tuple[SubsetMask, ...]
    gamma_prime: int


def family_footprint(
    family: Iterable[SubsetMask], r: int
) -> Tuple[List[SubsetMask], List[SubsetMask]]:
    """(zeroed r-subsets, deleted subsets of size >= r) of a set family."""
    zeroed: Dict[int, SubsetMask] = {}
    deleted: Dict[int, SubsetMask] = {}
    for member in family:
        for s in k_subsets(member, r):
            zeroed[s.bits] = s
        for s in subsets_of(member, r):
            deleted[s.bits] = s
    return (
        sorted(zeroed.values(), key=colex_key),
        sorted(deleted.values(), key=colex_key),
    )


def shortening_plan(m: int, r: int, gamma: int) -> ShorteningPlan:
    """
    Plan the shortening of PRM(r, m-1) by gamma message symbols.

    Raises:
        ParameterError: if gamma is not in [0, binom(m, m-r)).
        InvariantViolation: if the enumerated counts disagree with the closed forms.
    """
    _check_gamma(m, r, gamma)
    decomposition = rho_decompose(gamma, r, m - r)
    family = set_family(decomposition, m)
    decomposition = replace(decomposition, family=tuple(family))
    zeroed, deleted = family_footprint(family, r)

    if len(zeroed) != gamma:
        raise InvariantViolation(
            f"family of gamma={gamma} zeroes {len(zeroed)} symbols (m={m}, r={r})"
        )
    expected = decomposition.gamma_prime()
    if len(deleted) != expected:
        raise InvariantViolation(
            f"family of gamma={gamma} deletes {len(deleted)} coordinates, formula gives {expected}"
        )
    return ShorteningPlan(
        m=m,
        r=r,
        gamma=gamma,
        decomposition=decomposition,
        zeroed_messages=tuple(zeroed),
        deleted_coordinates=tuple(deleted),
        gamma_prime=len(deleted),
    )


def sprm_params(m: int, r: int, gamma: int) -> Tuple[int, int, int]:
    """(n, k, tau) of SPRM(r, m-1, gamma) from the closed forms alone."""
    _check_gamma(m, r, gamma)
    n, k, tau = prm_params(m, r)
    return n - rho_decompose(gamma, r, m - r).gamma_prime(), k - gamma, tau


def build_sprm(m: int, r: int, gamma: int) -> PirCode:
    """
    Construct SPRM(r, m-1, gamma) following its shortening plan.

    Raises:
        ParameterError: if gamma is out of range or n exceeds ``PRM_MAX_LENGTH``.
    """
    n, _, _ = prm_params(m, r)
    if n > PRM_MAX_LENGTH:
        raise ParameterError(f"PRM({r}, {m - 1}) has n={n} > {PRM_MAX_LENGTH}")
    plan = shortening_plan(m, r, gamma)
    zeroed = {s.bits for s in plan.zeroed_messages}
    deleted = {s.bits for s in plan.deleted_coordinates}
    messages = [s for s in all_of_size(m, r) if s.bits not in zeroed]
    coordinates = [s for s in subsets_of(SubsetMask.full(m), r) if s.bits not in deleted]
    logger.debug(
        "SPRM(%d, %d, %d): rho=%s gamma'=%d",
        r,
        m - 1,
        gamma,
        plan.decomposition.rho,
        plan.gamma_prime,
    )
    return assemble_code(CodeSpec(m=m, r=r, gamma=gamma), messages, coordinates)


def sprm_is_prm_chain(m: int, r: int) -> bool:
    """
    Whether SPRM(r, m-1, binom(m-1, r)) has the (n, k) of PRM(r-1, m-2).

    The family for this gamma is the single set [m-1], so every symbol that
    survives involves element m, and fixing x_m = 1 maps the code onto the
    smaller PRM code.
    """
    if not 2 <= r < m:
        raise ParameterError(f"need 2 <= r < m, got m={m}, r={r}")
    n, k, _ = sprm_params(m, r, binom(m - 1, r))
    n_prm, k_prm, _ = prm_params(m - 1, r - 1)
    return (n, k) == (n_prm, k_prm)


def table_row(m: int, r: int, gamma: int) -> Dict[str, object]:
    """One row (gamma, rho, family, gamma', k, n) in the layout of the SPRM parameter table."""
    plan = shortening_plan(m, r, gamma)
    n, k, _ = prm_params(m, r)
    return {
        "gamma": gamma,
        "rho": plan.decomposition.rho,
        "family": tuple(plan.decomposition.family),
        "gamma_prime": plan.gamma_prime,
        "k": k - gamma,
        "n": n - plan.gamma_prime,
    }


def arbitrary_shorten(code: PirCode, msgs: Iterable[int]) -> PirCode:
    """
    Zero any set of message symbols and delete the columns that become zero.

    Recovery sets are kept, minus the deleted coordinates; they stay disjoint
    and keep summing to the right unit vector on the surviving rows.

    Raises:
        ParameterError: on an out-of-range index or if every symbol is zeroed.
    """
    drop = set(msgs)
    bad = [i for i in drop if not 0 <= i < code.k]
    if bad:
        raise ParameterError(f"message indices {sorted(bad)} outside [0, {code.k})")
    if len(drop) == code.k:
        raise ParameterError("shortening by every message symbol leaves an empty code")
    if not drop:
        return code

    keep_rows = [i for i in range(code.k) if i not in drop]
    row_mask = sum(1 << i for i in keep_rows)
    keep_cols = [j for j in range(code.n) if code.column(j) & row_mask]
    new_index = {j: idx for idx, j in enumerate(keep_cols)}

    generator = code.generator.delete_rows(drop).select_columns(keep_cols)
    recovery = tuple(
        tuple(
            tuple(new_index[j] for j in members if j in new_index) for members in code.recovery[i]
        )
        for i in keep_rows
    )
    shortened = PirCode(
        spec=replace(code.spec, gamma=code.spec.gamma + len(drop)),
        messages=tuple(code.messages[i] for i in keep_rows),
        coordinates=tuple(code.coordinates[j] for j in keep_cols),
        generator=generator,
        recovery=recovery,
        tau=code.tau,
    )
    shortened.check_invariants()
    return shortened


def puncture(code: PirCode) -> PirCode:
    """
    Delete the last coordinate (a parity symbol) and reduce tau by one.

    Every recovery set containing the deleted coordinate is dropped; symbols
    that did not use it keep their first tau - 1 sets.

    Raises:
        ParameterError: if there is no parity coordinate or tau < 2.
    """
    if code.n <= code.k:
        raise ParameterError("code has no parity coordinate to puncture")
    if code.tau < 2:
        raise ParameterError(f"cannot puncture a code with tau={code.tau}")
    last = code.n - 1
    recovery = tuple(
        tuple(members for members in family if last not in members)[: code.tau - 1]
        for family in code.recovery
    )
    punctured = PirCode(
        spec=replace(code.spec, punctured=code.spec.punctured + 1),
        messages=code.messages,
        coordinates=code.coordinates[:-1],
        generator=code.generator.delete_columns([last]),
        recovery=recovery,
        tau=code.tau - 1,
    )
    punctured.check_invariants()
    return punctured
