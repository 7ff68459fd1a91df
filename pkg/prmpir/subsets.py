# Copyright (C) 2024 Vrije Universiteit Brussel. All rights reserved.
# SPDX-License-Identifier: MIT
"""
Subsets of [m] as bitmasks, binomial coefficients and colex ranking.

Every code symbol of a binary projective Reed-Muller code is the evaluation at
a point of F_2^m, and a point is identified with its support set S ⊆ [m]. The
same holds for message symbols, which are the coefficients of the degree-r
monomials and are therefore indexed by r-subsets.

This module fixes the one ordering used by the whole package:

    message symbols   r-subsets of [m] in colexicographic order
    coordinates       all subsets of weight >= r, by (weight, colex)

so the weight-r (systematic) coordinates come first and generator matrices
take the form [I | P].

Elements are 1-based in all printed and serialized forms and 0-based bit
positions internally: element e is present iff bit e-1 is set.
"""

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, List, Tuple

from prmpir.errors import CountOverflowError, ParameterError

# Largest count representable in a signed 64-bit word
MAX_COUNT = (1 << 63) - 1


def binom(n: int, k: int) -> int:
    """
    Exact binomial coefficient, 0 when k > n.

    Raises:
        ParameterError: on negative arguments.
        CountOverflowError: if the value does not fit in a signed 64-bit word.
    """
    if n < 0 or k < 0:
        raise ParameterError(f"binom needs nonnegative arguments, got ({n}, {k})")
    if k > n:
        return 0
    value = math.comb(n, k)
    if value > MAX_COUNT:
        raise CountOverflowError(f"binom({n}, {k}) exceeds the 64-bit count word")
    return value


@dataclass(frozen=True)
class SubsetMask:
    """
    A subset of [m] stored as the support of a length-m binary word.

    Attributes:
        bits: bit e-1 is set iff element e belongs to the subset.
        m: size of the universe.
    """

    bits: int
    m: int

    def __post_init__(self) -> None:
        if self.m < 0:
            raise ParameterError(f"universe size must be nonnegative, got {self.m}")
        if self.bits < 0 or self.bits >> self.m:
            raise ParameterError(f"mask {self.bits:#x} has elements outside [1, {self.m}]")

    @classmethod
    def of(cls, elements: Iterable[int], m: int) -> "SubsetMask":
        """Build a mask from 1-based elements."""
        bits = 0
        for e in elements:
            if not 1 <= e <= m:
                raise ParameterError(f"element {e} is outside [1, {m}]")
            bits |= 1 << (e - 1)
        return cls(bits=bits, m=m)

    @classmethod
    def full(cls, m: int) -> "SubsetMask":
        return cls(bits=(1 << m) - 1, m=m)

    @property
    def weight(self) -> int:
        return self.bits.bit_count()

    def elements(self) -> Tuple[int, ...]:
        """Sorted 1-based elements."""
        return tuple(e + 1 for e in range(self.m) if (self.bits >> e) & 1)

    def issubset(self, other: "SubsetMask") -> bool:
        return self.bits & ~other.bits == 0

    def complement(self) -> "SubsetMask":
        return SubsetMask(bits=((1 << self.m) - 1) & ~self.bits, m=self.m)

    def union(self, other: "SubsetMask") -> "SubsetMask":
        return SubsetMask(bits=self.bits | other.bits, m=self.m)

    def without(self, element: int) -> "SubsetMask":
        """Copy with one 1-based element removed; the element must be present."""
        if not (self.bits >> (element - 1)) & 1:
            raise ParameterError(f"element {element} is not in {self}")
        return SubsetMask(bits=self.bits & ~(1 << (element - 1)), m=self.m)

    def binary_word(self) -> str:
        """Length-m word, leftmost character = element 1."""
        return "".join("1" if (self.bits >> e) & 1 else "0" for e in range(self.m))

    def __contains__(self, element: int) -> bool:
        return 1 <= element <= self.m and bool((self.bits >> (element - 1)) & 1)

    def __len__(self) -> int:
        return self.weight

    def __str__(self) -> str:
        return "{" + ",".join(str(e) for e in self.elements()) + "}"


def colex_key(s: SubsetMask) -> Tuple[int, int]:
    """Sort key for the canonical (weight, colex) order."""
    # Within one weight class, colex order on sets coincides with the integer
    # order of their masks: the largest differing element is the highest bit.
    return (s.weight, s.bits)


def colex_rank(s: SubsetMask) -> int:
    """Rank of ``s`` among all subsets of [m] of the same size, in colex order."""
    return sum(binom(e - 1, i) for i, e in enumerate(s.elements(), start=1))


def colex_unrank(idx: int, size: int, m: int) -> SubsetMask:
    """
    Inverse of ``colex_rank``: the ``idx``-th ``size``-subset of [m] in colex order.

    Raises:
        ParameterError: if ``idx`` is not in [0, binom(m, size)).
    """
    total = binom(m, size)
    if not 0 <= idx < total:
        raise ParameterError(f"colex index {idx} out of range [0, {total}) for size {size}, m={m}")
    elements = []
    c = m - 1
    for i in range(size, 0, -1):
        while binom(c, i) > idx:
            c -= 1
        elements.append(c + 1)
        idx -= binom(c, i)
        c -= 1
    return SubsetMask.of(elements, m)


def k_subsets(s: SubsetMask, size: int) -> Iterator[SubsetMask]:
    """All ``size``-subsets of ``s`` in colex order."""
    combos = sorted(combinations(s.elements(), size), key=lambda c: c[::-1])
    for combo in combos:
        yield SubsetMask.of(combo, s.m)


def subsets_of(s: SubsetMask, min_size: int) -> List[SubsetMask]:
    """
    All subsets T ⊆ s with |T| >= min_size, in (weight, colex) order.

    For example, the subsets of {1,2,3} with at least two elements are
    {1,2}, {1,3}, {2,3}, {1,2,3}.
    """
    out: List[SubsetMask] = []
    for w in range(max(min_size, 0), s.weight + 1):
        out.extend(k_subsets(s, w))
    return out


def all_of_size(m: int, size: int) -> List[SubsetMask]:
    """The ``size``-subsets of [m] in colex order, i.e. indexed by colex rank."""
    return list(k_subsets(SubsetMask.full(m), size))
