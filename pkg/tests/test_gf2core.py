# Copyright (C) 2024 Vrije Universiteit Brussel. All rights reserved.
# SPDX-License-Identifier: MIT

import numpy as np
import pytest

from prmpir.bounds import ghw_d1_d2, ghw_upper
from prmpir.errors import BruteForceTooLarge, ParameterError
from prmpir.gf2core import (
    Gf2Matrix,
    _ghw_dual,
    _ghw_primal,
    codewords,
    gaussian_binomial,
    ghw,
    ghw_at_most,
    min_distance,
    rank,
)
from prmpir.prm import build_prm


def test_from_rows_packs_bits():
    matrix = Gf2Matrix.from_rows([[1, 0, 1], [0, 1, 1]])
    assert matrix.data == (0b101, 0b110)
    assert matrix.get(0, 2) == 1 and matrix.get(1, 0) == 0
    assert matrix.column(2) == 0b11
    assert str(matrix) == "101\n011"


def test_from_rows_rejects_bad_input():
    with pytest.raises(ParameterError):
        Gf2Matrix.from_rows([[1, 2]])
    with pytest.raises(ParameterError):
        Gf2Matrix.from_rows([[1, 0], [1]])
    with pytest.raises(ParameterError):
        Gf2Matrix(rows=1, cols=2, data=(0b100,))


def test_row_and_column_edits():
    matrix = Gf2Matrix.from_rows([[1, 0, 1, 1], [0, 1, 1, 0], [1, 1, 0, 0]])
    assert matrix.xor_row_into(0, 2).row(2) == 0b1110
    assert matrix.delete_rows([1]).data == (0b1101, 0b0011)
    assert matrix.delete_columns([0, 3]).to_array().tolist() == [[0, 1], [1, 1], [1, 0]]
    permuted = matrix.permute_columns([3, 2, 1, 0])
    assert permuted.to_array().tolist() == [row[::-1] for row in matrix.to_array().tolist()]
    with pytest.raises(ParameterError):
        matrix.permute_columns([0, 0, 1, 2])


def test_dict_and_array_forms():
    matrix = Gf2Matrix.from_rows([[1, 1, 0], [0, 0, 1]])
    assert Gf2Matrix.from_dict(matrix.to_dict()) == matrix
    array = matrix.to_array()
    assert array.dtype == np.uint8
    assert Gf2Matrix.from_array(array) == matrix


def test_rank():
    assert rank(Gf2Matrix.identity(4)) == 4
    assert rank(Gf2Matrix.from_rows([[1, 1, 0], [0, 1, 1], [1, 0, 1]])) == 2
    assert rank(Gf2Matrix.zeros(2, 3)) == 0


def test_codewords_gray_walk_covers_row_space():
    matrix = Gf2Matrix.from_rows([[1, 0, 0, 1], [0, 1, 0, 1], [0, 0, 1, 1]])
    words = list(codewords(matrix))
    assert words[0] == 0
    assert len(set(words)) == 8
    assert all(bin(w).count("1") % 2 == 0 for w in words)


def test_min_distance(parity_code, prm_2_3):
    assert min_distance(parity_code.generator) == 2
    assert min_distance(prm_2_3.generator) == 4
    assert min_distance(Gf2Matrix.identity(3)) == 1


def test_min_distance_guards():
    with pytest.raises(BruteForceTooLarge):
        min_distance(Gf2Matrix.identity(25))
    with pytest.raises(ParameterError):
        min_distance(Gf2Matrix.from_rows([[1, 0], [1, 0]]))


def test_gaussian_binomial():
    assert gaussian_binomial(4, 2) == 35
    assert gaussian_binomial(6, 1) == 63
    assert gaussian_binomial(3, 4) == 0


def test_ghw_small_code(prm_2_3):
    assert ghw(prm_2_3.generator, 1) == 4
    assert 5 <= ghw(prm_2_3.generator, 2) <= 6
    assert ghw(prm_2_3.generator, 6) == 11


def test_ghw_primal_and_dual_agree(prm_2_3, parity_code):
    for code in (prm_2_3, parity_code):
        for i in range(1, code.k + 1):
            assert _ghw_primal(code.generator, i) == _ghw_dual(code.generator, i)


def test_ghw_counts_zero_columns():
    matrix = Gf2Matrix.from_rows([[1, 0, 1, 0], [0, 1, 1, 0]])
    assert ghw(matrix, 1) == 2
    assert ghw(matrix, 2) == 3
    assert _ghw_dual(matrix, 1) == 2
    assert _ghw_dual(matrix, 2) == 3


def test_ghw_argument_checks(prm_2_3):
    with pytest.raises(ParameterError):
        ghw(prm_2_3.generator, 0)
    with pytest.raises(ParameterError):
        ghw(prm_2_3.generator, 7)
    with pytest.raises(ParameterError):
        ghw(Gf2Matrix.from_rows([[1, 1], [1, 1]]), 1)


@pytest.mark.parametrize("fixture", ["parity_code", "prm_2_3"])
def test_ghw_strictly_increasing(fixture, request):
    generator = request.getfixturevalue(fixture).generator
    profile = [ghw(generator, i) for i in range(1, generator.rows + 1)]
    assert all(a < b for a, b in zip(profile, profile[1:]))
    assert profile[-1] == generator.cols


def test_min_distance_ignores_column_order(prm_2_3, rng):
    generator = prm_2_3.generator
    for _ in range(10):
        permuted = generator.permute_columns([int(j) for j in rng.permutation(generator.cols)])
        assert min_distance(permuted) == 4


def test_rank_survives_row_operations(rng):
    matrix = Gf2Matrix.from_array(rng.integers(0, 2, size=(6, 9)))
    expected = rank(matrix)
    for _ in range(50):
        src, dst = (int(x) for x in rng.choice(matrix.rows, size=2, replace=False))
        matrix = matrix.xor_row_into(src, dst)
        assert rank(matrix) == expected


@pytest.mark.parametrize("m, r", [(m, r) for m in range(2, 7) for r in range(1, m)])
def test_prm_minimum_distance(m, r):
    assert min_distance(build_prm(m, r).generator) == 1 << (m - r)


def test_ghw_at_most_matches_exact(prm_2_3):
    generator = prm_2_3.generator
    for i in range(1, generator.rows + 1):
        value = ghw(generator, i)
        assert ghw_at_most(generator, i, value)
        assert not ghw_at_most(generator, i, value - 1)


@pytest.mark.parametrize("gamma", range(4, 8))
def test_ghw_at_most_beyond_exhaustive_guard(gamma):
    generator = build_prm(5, 2).generator
    i, bound = ghw_upper(5, 2, gamma)
    with pytest.raises(BruteForceTooLarge):
        ghw(generator, i)
    assert ghw_at_most(generator, i, bound)


@pytest.mark.parametrize("r", [2, 3, 4])
def test_second_weight_of_larger_codes(r):
    generator = build_prm(6, r).generator
    _, d2 = ghw_d1_d2(6, r)
    assert ghw_at_most(generator, 2, d2)
