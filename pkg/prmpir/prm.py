# Copyright (C) 2024 Vrije Universiteit Brussel. All rights reserved.
# SPDX-License-Identifier: MIT
"""
Binary projective Reed-Muller codes PRM(r, m-1) as PIR codes.

A codeword of PRM(r, m-1) lists the evaluations of a homogeneous degree-r
polynomial

    f(x) = sum over r-subsets R of [m] of a_R * prod_{e in R} x_e

at every point x of F_2^m whose weight is at least r (points of smaller weight
always evaluate to 0 and are dropped). Identifying a point with its support S,
the evaluation is

    f(S) = sum of a_R over all r-subsets R ⊆ S,

so the generator matrix has a 1 in row R and column S exactly when R ⊆ S.

Parameters:
    n   = sum_{i=r}^{m} binom(m, i)
    k   = binom(m, r)
    tau = 2^(m-r)

Recovery sets come from the Reed decoding rule. For a message symbol a_R and
each of the 2^(m-r) subsets S of [m] \\ R,

    a_R = sum over T ⊆ R with |T| + |S| >= r of f(T ∪ S),

and the sets {T ∪ S} for different S are disjoint. S = ∅ gives the singleton
{R}, which makes the code systematic.

Key functions:
    prm_params()      (n, k, tau) for given (m, r).
    build_prm()       Full PirCode with generator and recovery sets.
    recovery_sets()   The tau recovery sets of one message symbol.
    encode()          Message bits -> codeword bits.
    retrieve()        Read one message bit back through a recovery set.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Sequence, Tuple

import numpy as np

from prmpir.config import PRM_MAX_LENGTH
from prmpir.errors import InvariantViolation, ParameterError
from prmpir.gf2core import Gf2Matrix
from prmpir.subsets import SubsetMask, all_of_size, binom, colex_key, subsets_of

logger = logging.getLogger(__name__)

RecoverySet = Tuple[int, ...]


@dataclass(frozen=True)
class CodeSpec:
    """
    Parameters a code was built from.

    Attributes:
        m: Number of variables.
        r: Homogeneous degree.
        gamma: Number of message symbols zeroed by shortening (0 for PRM).
        punctured: Number of parity coordinates removed by puncturing.
    """

    m: int
    r: int
    gamma: int = 0
    punctured: int = 0

    def __post_init__(self) -> None:
        _check_mr(self.m, self.r)
        if self.gamma < 0 or self.punctured < 0:
            raise ParameterError(f"gamma and punctured must be nonnegative: {self}")

    @property
    def ell(self) -> int:
        return self.m - self.r


@dataclass(frozen=True)
class PirCode:
    """
    A systematic binary PIR code together with its recovery sets.

    Attributes:
        spec: The construction parameters.
        messages: The r-subset naming each message symbol, in row order.
        coordinates: The support set of each coordinate, in canonical order.
        generator: k x n generator matrix of the form [I | P].
        recovery: ``recovery[i]`` lists ``tau`` disjoint coordinate-index sets
            whose XOR recovers message symbol i.
        tau: Number of disjoint recovery sets per message symbol.
    """

    spec: CodeSpec
    messages: Tuple[SubsetMask, ...]
    coordinates: Tuple[SubsetMask, ...]
    generator: Gf2Matrix
    recovery: Tuple[Tuple[RecoverySet, ...], ...]
    tau: int
    _columns: Tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "_columns", tuple(self.generator.columns()))

    @property
    def n(self) -> int:
        return len(self.coordinates)

    @property
    def k(self) -> int:
        return len(self.messages)

    def column(self, j: int) -> int:
        """Generator column j packed as an integer over the k rows."""
        return self._columns[j]

    def message_index(self, subset: SubsetMask) -> int:
        for i, message in enumerate(self.messages):
            if message == subset:
                return i
        raise ParameterError(f"{subset} is not a message symbol of this code")

    def coordinate_index(self, subset: SubsetMask) -> int:
        for j, coordinate in enumerate(self.coordinates):
            if coordinate == subset:
                return j
        raise ParameterError(f"{subset} is not a coordinate of this code")

    def check_invariants(self) -> None:
        """
        Verify systematic form, recovery identities and disjointness.

        Raises:
            InvariantViolation: naming the first property that fails.
        """
        k, n, r = self.k, self.n, self.spec.r
        if self.generator.rows != k or self.generator.cols != n:
            raise InvariantViolation(
                f"generator is {self.generator.rows}x{self.generator.cols}, expected {k}x{n}"
            )
        keys = [colex_key(c) for c in self.coordinates]
        if any(a >= b for a, b in zip(keys, keys[1:])):
            raise InvariantViolation("coordinates are not strictly increasing")
        if any(c.weight < r for c in self.coordinates):
            raise InvariantViolation(f"a coordinate has weight below r={r}")
        for i in range(k):
            if self.column(i) != 1 << i:
                raise InvariantViolation(f"column {i} is not the unit vector e_{i}")
        if len(self.recovery) != k:
            raise InvariantViolation(f"{len(self.recovery)} recovery families for k={k}")
        for i, family in enumerate(self.recovery):
            if len(family) != self.tau:
                raise InvariantViolation(
                    f"symbol {i} has {len(family)} recovery sets, expected tau={self.tau}"
                )
            seen: set = set()
            for t, members in enumerate(family):
                if not members:
                    raise InvariantViolation(f"recovery set {t} of symbol {i} is empty")
                if seen.intersection(members):
                    raise InvariantViolation(f"recovery sets of symbol {i} overlap at set {t}")
                seen.update(members)
                acc = 0
                for j in members:
                    acc ^= self.column(j)
                if acc != 1 << i:
                    raise InvariantViolation(
                        f"recovery set {t} of symbol {i} sums to {acc:#x}, not e_{i}"
                    )

    def to_dict(self) -> Dict[str, object]:
        """JSON code descriptor."""
        return {
            "m": self.spec.m,
            "r": self.spec.r,
            "gamma": self.spec.gamma,
            "punctured": self.spec.punctured,
            "n": self.n,
            "k": self.k,
            "tau": self.tau,
            "messages": [s.bits for s in self.messages],
            "coordinates": [s.bits for s in self.coordinates],
            "generator": self.generator.to_dict(),
            "recovery": [[list(members) for members in family] for family in self.recovery],
        }


def _check_mr(m: int, r: int) -> None:
    if not 1 <= r <= m:
        raise ParameterError(f"need 1 <= r <= m, got m={m}, r={r}")


def prm_params(m: int, r: int) -> Tuple[int, int, int]:
    """
    Block length, dimension and server count of PRM(r, m-1).

    Returns:
        (n, k, tau) with n = sum_{i=r}^{m} binom(m, i), k = binom(m, r), tau = 2^(m-r).
    """
    _check_mr(m, r)
    n = sum(binom(m, i) for i in range(r, m + 1))
    return n, binom(m, r), 1 << (m - r)


def monomial_name(subset: SubsetMask) -> str:
    """Name of the message symbol indexed by ``subset``, e.g. ``a{1,2}``."""
    return f"a{subset}"


def generator_matrix(
    messages: Sequence[SubsetMask],
    coordinates: Sequence[SubsetMask],
) -> Gf2Matrix:
    """Entry (R, S) is 1 iff R ⊆ S."""
    data = []
    for message in messages:
        word = 0
        for j, coordinate in enumerate(coordinates):
            if message.issubset(coordinate):
                word |= 1 << j
        data.append(word)
    return Gf2Matrix(rows=len(messages), cols=len(coordinates), data=tuple(data))


def recovery_sets(
    m: int,
    r: int,
    R: SubsetMask,
    coords: Sequence[SubsetMask],
) -> List[RecoverySet]:
    """
    The 2^(m-r) disjoint recovery sets of message symbol a_R.

    The set for S ⊆ [m] \\ R is {T ∪ S : T ⊆ R, |T| + |S| >= r}, as indices into
    ``coords``. Sets are ordered by S in (weight, colex) order, so the first
    one (S = ∅) is the systematic singleton. Points missing from ``coords``
    (deleted by shortening) are left out.

    Raises:
        ParameterError: if |R| != r.
        InvariantViolation: if a set ends up empty.
    """
    _check_mr(m, r)
    if R.weight != r:
        raise ParameterError(f"{R} has weight {R.weight}, expected r={r}")
    index = {c.bits: j for j, c in enumerate(coords)}
    # parts of R with at least r - w elements, for each complement weight w
    parts_of_r: Dict[int, List[SubsetMask]] = {}
    out: List[RecoverySet] = []
    for S in subsets_of(R.complement(), 0):
        if S.weight not in parts_of_r:
            parts_of_r[S.weight] = subsets_of(R, r - S.weight)
        members = sorted(
            index[T.bits | S.bits] for T in parts_of_r[S.weight] if (T.bits | S.bits) in index
        )
        if not members:
            raise InvariantViolation(f"recovery set of {R} for S={S} is empty")
        out.append(tuple(members))
    return out


def prm_recovery_set_size(m: int, r: int, weight: int) -> int:
    """
    Size of the PRM(r, m-1) recovery set whose complement part S has |S| = weight.

    There are binom(m-r, weight) such sets.
    """
    if weight >= r:
        return 1 << r
    return sum(binom(r, r - weight + i) for i in range(weight + 1))


def locality_profile(code: PirCode, i: int) -> List[int]:
    """Sorted sizes of the recovery sets of message symbol i."""
    if not 0 <= i < code.k:
        raise ParameterError(f"message index {i} outside [0, {code.k})")
    return sorted(len(members) for members in code.recovery[i])


def covered_coordinates(code: PirCode, i: int) -> int:
    """Number of coordinates taking part in some recovery set of symbol i."""
    return len({j for members in code.recovery[i] for j in members})


def assemble_code(
    spec: CodeSpec,
    messages: Sequence[SubsetMask],
    coordinates: Sequence[SubsetMask],
) -> PirCode:
    """Build generator and recovery sets for the given surviving symbols and points."""
    generator = generator_matrix(messages, coordinates)
    recovery = tuple(tuple(recovery_sets(spec.m, spec.r, R, coordinates)) for R in messages)
    code = PirCode(
        spec=spec,
        messages=tuple(messages),
        coordinates=tuple(coordinates),
        generator=generator,
        recovery=recovery,
        tau=1 << spec.ell,
    )
    code.check_invariants()
    logger.debug(
        "built code m=%d r=%d gamma=%d: n=%d k=%d", spec.m, spec.r, spec.gamma, code.n, code.k
    )
    return code


def build_prm(m: int, r: int) -> PirCode:
    """
    Construct PRM(r, m-1) with all of its recovery sets.

    Raises:
        ParameterError: if r is not in [1, m] or n exceeds ``PRM_MAX_LENGTH``.
    """
    n, _, _ = prm_params(m, r)
    if n > PRM_MAX_LENGTH:
        raise ParameterError(f"PRM({r}, {m - 1}) has n={n} > {PRM_MAX_LENGTH}")
    messages = all_of_size(m, r)
    coordinates = subsets_of(SubsetMask.full(m), r)
    return assemble_code(CodeSpec(m=m, r=r), messages, coordinates)


def encode(code: PirCode, msg: Sequence[int]) -> np.ndarray:
    """
    Encode k message bits into n code bits (msg · G over GF(2)).

    Raises:
        ParameterError: if ``msg`` is not a vector of k bits.
    """
    msg = np.asarray(msg)
    if msg.shape != (code.k,):
        raise ParameterError(f"message has shape {msg.shape}, expected ({code.k},)")
    if not np.isin(msg, (0, 1)).all():
        raise ParameterError("message entries must be bits")
    return (msg.astype(np.int64) @ code.generator.to_array().astype(np.int64) % 2).astype(
        np.uint8
    )


def retrieve(code: PirCode, codeword: Sequence[int], i: int, t: int) -> int:
    """
    Recover message bit i as the XOR of the codeword over recovery set t.

    Raises:
        ParameterError: on a bad index or codeword length.
    """
    if len(codeword) != code.n:
        raise ParameterError(f"codeword has length {len(codeword)}, expected {code.n}")
    if not 0 <= i < code.k:
        raise ParameterError(f"message index {i} outside [0, {code.k})")
    if not 0 <= t < code.tau:
        raise ParameterError(f"recovery set index {t} outside [0, {code.tau})")
    bit = 0
    for j in code.recovery[i][t]:
        bit ^= int(codeword[j])
    return bit
