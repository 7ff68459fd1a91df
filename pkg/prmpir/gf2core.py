# Copyright (C) 2024 Vrije Universiteit Brussel. All rights reserved.
# SPDX-License-Identifier: MIT
"""
Binary matrices over GF(2) and brute-force code parameters.

A ``Gf2Matrix`` stores each row as one Python integer whose bit j is the entry
in column j, so row additions are single XORs and a row never carries bits
beyond ``cols``.

The brute-force routines (``min_distance``, ``ghw``) enumerate the code
exhaustively and serve as oracles for the closed-form distance results:

    min_distance    Gray-code walk over all 2^k - 1 nonzero codewords.
    ghw             Generalized Hamming weight d_i, the smallest support of an
                    i-dimensional subcode, by whichever of two exhaustive
                    searches is cheaper:

                    * primal: every i-dimensional message subspace, visited once
                      through its reduced echelon basis; the support of the
                      subcode is the OR of the basis codewords.
                    * dual: every subspace W of F_2^k spanned by at most k - i
                      columns of G; d_i = n - max |{j : g_j in W}|, since a
                      subcode misses exactly the columns orthogonal to it.

    ghw_at_most     d_i <= bound as a yes/no question: the dual search run
                    lowest column first, stopping at the first witness.

The exhaustive searches refuse to start when their estimated size exceeds the
guards in ``prmpir.config``; ``ghw_at_most`` gives up after ``GHW_SPAN_LIMIT``
subspaces.
"""

import logging
import math
from dataclasses import dataclass
from itertools import combinations
from typing import Dict, Iterator, List, Sequence, Tuple

import numpy as np

from prmpir.config import GHW_MAX_ROWS, GHW_SPAN_LIMIT, GHW_WORK_LIMIT, MIN_DISTANCE_MAX_ROWS
from prmpir.errors import BruteForceTooLarge, ParameterError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Gf2Matrix:
    """
    Dense binary matrix with rows packed into integers.

    Attributes:
        rows: Number of rows (>= 1).
        cols: Number of columns (>= 1).
        data: One integer per row; bit j holds the entry in column j.
    """

    rows: int
    cols: int
    data: Tuple[int, ...]

    def __post_init__(self) -> None:
        if self.rows < 1 or self.cols < 1:
            raise ParameterError(f"matrix must be at least 1x1, got {self.rows}x{self.cols}")
        if len(self.data) != self.rows:
            raise ParameterError(f"expected {self.rows} rows, got {len(self.data)}")
        for i, row in enumerate(self.data):
            if row < 0 or row >> self.cols:
                raise ParameterError(f"row {i} has bits beyond column {self.cols - 1}")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "Gf2Matrix":
        """Build from a list of 0/1 lists."""
        if not rows or not rows[0]:
            raise ParameterError("matrix must have at least one row and one column")
        cols = len(rows[0])
        data = []
        for i, row in enumerate(rows):
            if len(row) != cols:
                raise ParameterError(f"row {i} has length {len(row)}, expected {cols}")
            word = 0
            for j, bit in enumerate(row):
                if bit not in (0, 1):
                    raise ParameterError(f"entry ({i}, {j}) is {bit}, expected 0 or 1")
                word |= bit << j
            data.append(word)
        return cls(rows=len(rows), cols=cols, data=tuple(data))

    @classmethod
    def from_array(cls, array: np.ndarray) -> "Gf2Matrix":
        return cls.from_rows([[int(x) & 1 for x in row] for row in np.asarray(array)])

    @classmethod
    def identity(cls, size: int) -> "Gf2Matrix":
        return cls(rows=size, cols=size, data=tuple(1 << i for i in range(size)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Gf2Matrix":
        return cls(rows=rows, cols=cols, data=(0,) * rows)

    def get(self, i: int, j: int) -> int:
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise ParameterError(f"index ({i}, {j}) outside {self.rows}x{self.cols}")
        return (self.data[i] >> j) & 1

    def row(self, i: int) -> int:
        return self.data[i]

    def column(self, j: int) -> int:
        """Column j packed as an integer whose bit i is the entry in row i."""
        if not 0 <= j < self.cols:
            raise ParameterError(f"column {j} outside [0, {self.cols})")
        word = 0
        for i, row in enumerate(self.data):
            word |= ((row >> j) & 1) << i
        return word

    def columns(self) -> List[int]:
        return [self.column(j) for j in range(self.cols)]

    def xor_row_into(self, src: int, dst: int) -> "Gf2Matrix":
        """Copy with row ``dst`` replaced by row ``dst`` + row ``src``."""
        data = list(self.data)
        data[dst] ^= data[src]
        return Gf2Matrix(rows=self.rows, cols=self.cols, data=tuple(data))

    def delete_rows(self, indices) -> "Gf2Matrix":
        drop = set(indices)
        data = tuple(row for i, row in enumerate(self.data) if i not in drop)
        return Gf2Matrix(rows=len(data), cols=self.cols, data=data)

    def select_columns(self, indices: Sequence[int]) -> "Gf2Matrix":
        """Copy keeping the given columns, in the given order."""
        data = []
        for row in self.data:
            word = 0
            for new_j, j in enumerate(indices):
                word |= ((row >> j) & 1) << new_j
            data.append(word)
        return Gf2Matrix(rows=self.rows, cols=len(indices), data=tuple(data))

    def delete_columns(self, indices) -> "Gf2Matrix":
        drop = set(indices)
        return self.select_columns([j for j in range(self.cols) if j not in drop])

    def permute_columns(self, permutation: Sequence[int]) -> "Gf2Matrix":
        """Column j of the result is column ``permutation[j]`` of self."""
        if sorted(permutation) != list(range(self.cols)):
            raise ParameterError("not a permutation of the columns")
        return self.select_columns(permutation)

    def to_array(self) -> np.ndarray:
        """Dense ``uint8`` copy with shape (rows, cols)."""
        out = np.zeros((self.rows, self.cols), dtype=np.uint8)
        for i, row in enumerate(self.data):
            for j in range(self.cols):
                out[i, j] = (row >> j) & 1
        return out

    def to_dict(self) -> Dict[str, object]:
        """JSON form: one binary string per row, leftmost character = column 0."""
        return {
            "rows": self.rows,
            "cols": self.cols,
            "data": ["".join(str((row >> j) & 1) for j in range(self.cols)) for row in self.data],
        }

    @classmethod
    def from_dict(cls, payload: Dict[str, object]) -> "Gf2Matrix":
        rows = [[int(c) for c in line] for line in payload["data"]]
        matrix = cls.from_rows(rows)
        if (matrix.rows, matrix.cols) != (payload["rows"], payload["cols"]):
            raise ParameterError("matrix header does not match its data")
        return matrix

    def __str__(self) -> str:
        return "\n".join(self.to_dict()["data"])


def rank(matrix: Gf2Matrix) -> int:
    """Row rank over GF(2) by Gaussian elimination."""
    return len(_reduced_basis(matrix.data))


def _reduced_basis(vectors) -> List[int]:
    """
    Basis of the span of ``vectors`` with distinct leading bits, sorted decreasing.

    The decreasing order is what lets ``_in_span`` reduce in a single pass.
    """
    basis: List[int] = []
    for v in vectors:
        for b in basis:
            v = min(v, v ^ b)
        if v:
            basis.append(v)
            basis.sort(reverse=True)
    return basis


def _in_span(v: int, basis: Sequence[int]) -> bool:
    for b in basis:
        v = min(v, v ^ b)
    return v == 0


def codewords(matrix: Gf2Matrix) -> Iterator[int]:
    """All 2^rows codewords (row-space vectors) in Gray-code order, zero first."""
    word = 0
    yield word
    for t in range(1, 1 << matrix.rows):
        # The Gray code flips the lowest set bit of t
        word ^= matrix.data[(t & -t).bit_length() - 1]
        yield word


def _check_full_rank(matrix: Gf2Matrix) -> None:
    if rank(matrix) != matrix.rows:
        raise ParameterError("generator matrix must have full row rank")


def min_distance(matrix: Gf2Matrix) -> int:
    """
    Minimum weight over the nonzero codewords of the row space.

    Raises:
        BruteForceTooLarge: if the matrix has more than ``MIN_DISTANCE_MAX_ROWS`` rows.
        ParameterError: if the matrix is not of full row rank.
    """
    if matrix.rows > MIN_DISTANCE_MAX_ROWS:
        raise BruteForceTooLarge(
            f"{matrix.rows} rows is too large for brute force (limit {MIN_DISTANCE_MAX_ROWS})"
        )
    _check_full_rank(matrix)
    words = codewords(matrix)
    next(words)
    return min(w.bit_count() for w in words)


def gaussian_binomial(n: int, k: int) -> int:
    """Number of k-dimensional subspaces of F_2^n."""
    if not 0 <= k <= n:
        return 0
    num, den = 1, 1
    for i in range(k):
        num *= (1 << (n - i)) - 1
        den *= (1 << (i + 1)) - 1
    return num // den


def _primal_cost(k: int, i: int) -> int:
    return gaussian_binomial(k, i)


def _dual_cost(nb_columns: int, k: int, i: int) -> int:
    # each visited span scans every column once
    return nb_columns * sum(math.comb(nb_columns, j) for j in range(k - i + 1))


def _echelon_bases(k: int, i: int) -> Iterator[Tuple[int, ...]]:
    """
    Reduced echelon bases of all i-dimensional subspaces of F_2^k.

    Each basis vector owns one pivot bit; the other pivot bits are zero in it
    and its free bits lie below the pivot.
    """
    for pivots in combinations(range(k), i):
        pivot_mask = sum(1 << p for p in pivots)
        free_per_row = [[b for b in range(p) if not (pivot_mask >> b) & 1] for p in pivots]
        total_free = sum(len(f) for f in free_per_row)
        for assignment in range(1 << total_free):
            basis = []
            shift = 0
            for p, free in zip(pivots, free_per_row):
                v = 1 << p
                for idx, b in enumerate(free):
                    if (assignment >> (shift + idx)) & 1:
                        v |= 1 << b
                shift += len(free)
                basis.append(v)
            yield tuple(basis)


def _encode_word(matrix: Gf2Matrix, message: int) -> int:
    word = 0
    i = 0
    while message:
        if message & 1:
            word ^= matrix.data[i]
        message >>= 1
        i += 1
    return word


def _ghw_primal(matrix: Gf2Matrix, i: int) -> int:
    best = matrix.cols
    for basis in _echelon_bases(matrix.rows, i):
        support = 0
        for v in basis:
            support |= _encode_word(matrix, v)
        best = min(best, support.bit_count())
    return best


def _column_spans(nonzero: Sequence[int], max_dim: int) -> Iterator[frozenset]:
    """
    Column indices inside each subspace spanned by at most ``max_dim`` columns.

    Depth-first, lowest column first. Each subspace is reached once, through
    its greedy basis: the j-th chosen column is the lowest-index column of the
    subspace outside the span of the previous choices.
    """

    def members(basis: Sequence[int]) -> List[int]:
        return [j for j, c in enumerate(nonzero) if _in_span(c, basis)]

    stack: List[Tuple[Tuple[int, ...], int, frozenset]] = [((), -1, frozenset())]
    while stack:
        basis, last, inside = stack.pop()
        yield inside
        if len(basis) == max_dim:
            continue
        children = []
        for j in range(last + 1, len(nonzero)):
            if j in inside:
                continue
            new_basis = tuple(_reduced_basis(basis + (nonzero[j],)))
            new_inside = frozenset(members(new_basis))
            if any(jj < j and jj not in inside for jj in new_inside):
                continue
            children.append((new_basis, j, new_inside))
        stack.extend(reversed(children))


def _ghw_dual(matrix: Gf2Matrix, i: int) -> int:
    columns = matrix.columns()
    nb_zero = sum(1 for c in columns if c == 0)
    nonzero = [c for c in columns if c]
    best_count = max(len(inside) for inside in _column_spans(nonzero, matrix.rows - i))
    return matrix.cols - nb_zero - best_count


def ghw(matrix: Gf2Matrix, i: int) -> int:
    """
    Generalized Hamming weight d_i of the code generated by ``matrix``.

    Args:
        matrix: Full-rank generator matrix.
        i: Subcode dimension, 1 <= i <= rank.

    Raises:
        ParameterError: if i is out of range or the matrix is rank deficient.
        BruteForceTooLarge: if both exhaustive searches exceed ``GHW_WORK_LIMIT``.
    """
    k = matrix.rows
    if k > GHW_MAX_ROWS:
        raise BruteForceTooLarge(f"{k} rows is too large for brute force (limit {GHW_MAX_ROWS})")
    _check_full_rank(matrix)
    if not 1 <= i <= k:
        raise ParameterError(f"subcode dimension {i} outside [1, {k}]")

    nb_nonzero_cols = sum(1 for c in matrix.columns() if c)
    primal = _primal_cost(k, i)
    dual = _dual_cost(nb_nonzero_cols, k, i)
    if min(primal, dual) > GHW_WORK_LIMIT:
        raise BruteForceTooLarge(
            f"d_{i} of a [{matrix.cols}, {k}] code is too large for brute force "
            f"(primal {primal}, dual {dual} > {GHW_WORK_LIMIT})"
        )
    if primal <= dual:
        logger.debug("d_%d by primal search over %d subspaces", i, primal)
        return _ghw_primal(matrix, i)
    logger.debug("d_%d by dual search, at most %d column spans", i, dual)
    return _ghw_dual(matrix, i)


def ghw_at_most(matrix: Gf2Matrix, i: int, bound: int) -> bool:
    """
    Whether d_i <= ``bound``, without computing d_i itself.

    Walks the column-spanned subspaces of dimension at most k - i and stops at
    the first one holding n - bound columns (zero columns count as held). The
    subcode orthogonal to such a subspace has dimension at least i and support
    at most ``bound``.

    Raises:
        ParameterError: if i is out of range or the matrix is rank deficient.
        BruteForceTooLarge: if no answer is reached within ``GHW_SPAN_LIMIT`` subspaces.
    """
    k = matrix.rows
    if k > GHW_MAX_ROWS:
        raise BruteForceTooLarge(f"{k} rows is too large for brute force (limit {GHW_MAX_ROWS})")
    _check_full_rank(matrix)
    if not 1 <= i <= k:
        raise ParameterError(f"subcode dimension {i} outside [1, {k}]")

    columns = matrix.columns()
    nonzero = [c for c in columns if c]
    needed = len(nonzero) - bound
    if needed <= 0:
        return True
    for visited, inside in enumerate(_column_spans(nonzero, k - i)):
        if len(inside) >= needed:
            logger.debug("d_%d <= %d after %d column spans", i, bound, visited + 1)
            return True
        if visited >= GHW_SPAN_LIMIT:
            raise BruteForceTooLarge(
                f"d_{i} <= {bound} undecided after {GHW_SPAN_LIMIT} column spans "
                f"of a [{matrix.cols}, {k}] code"
            )
    return False
