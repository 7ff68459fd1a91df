# Copyright (C) 2024 Vrije Universiteit Brussel. All rights reserved.
# SPDX-License-Identifier: MIT

from dataclasses import replace

import numpy as np
import pytest

from prmpir.errors import InvariantViolation, ParameterError
from prmpir.prm import (
    CodeSpec,
    build_prm,
    covered_coordinates,
    encode,
    generator_matrix,
    locality_profile,
    monomial_name,
    prm_params,
    prm_recovery_set_size,
    recovery_sets,
    retrieve,
)
from prmpir.subsets import SubsetMask, subsets_of


@pytest.mark.parametrize(
    "m, r, expected",
    [(4, 3, (5, 4, 2)), (4, 2, (11, 6, 4)), (5, 2, (26, 10, 8)), (3, 1, (7, 3, 4))],
)
def test_prm_params(m, r, expected):
    assert prm_params(m, r) == expected
    code = build_prm(m, r)
    assert (code.n, code.k, code.tau) == expected


def test_bad_degree():
    with pytest.raises(ParameterError):
        prm_params(4, 0)
    with pytest.raises(ParameterError):
        build_prm(3, 4)
    with pytest.raises(ParameterError):
        CodeSpec(m=4, r=2, gamma=-1)


def test_parity_code_recovery_sets(parity_code):
    assert [str(s) for s in parity_code.messages] == ["{1,2,3}", "{1,2,4}", "{1,3,4}", "{2,3,4}"]
    assert parity_code.recovery[0] == ((0,), (1, 2, 3, 4))
    assert parity_code.recovery[3] == ((3,), (0, 1, 2, 4))


def test_prm_2_3_recovery_sets(prm_2_3):
    assert prm_2_3.recovery[0] == ((0,), (1, 2, 6), (3, 4, 7), (5, 8, 9, 10))
    assert locality_profile(prm_2_3, 0) == [1, 3, 3, 4]


@pytest.mark.parametrize("m, r", [(m, r) for m in range(2, 9) for r in range(1, m)])
def test_recovery_set_sizes_follow_closed_form(m, r):
    code = build_prm(m, r)
    for i in range(code.k):
        expected = sorted(
            prm_recovery_set_size(m, r, S.weight)
            for S in subsets_of(code.messages[i].complement(), 0)
        )
        assert locality_profile(code, i) == expected


def test_recovery_sets_reject_wrong_weight():
    coords = subsets_of(SubsetMask.full(4), 2)
    with pytest.raises(ParameterError):
        recovery_sets(4, 2, SubsetMask.of([1, 2, 3], 4), coords)


def test_systematic_and_fully_covered(prm_2_3):
    array = prm_2_3.generator.to_array()
    assert np.array_equal(array[:, : prm_2_3.k], np.eye(prm_2_3.k, dtype=np.uint8))
    assert all(covered_coordinates(prm_2_3, i) == prm_2_3.n for i in range(prm_2_3.k))


def test_generator_entry_is_subset_relation():
    messages = [SubsetMask.of([1, 2], 3), SubsetMask.of([2, 3], 3)]
    coordinates = [SubsetMask.of([1, 2], 3), SubsetMask.full(3)]
    assert generator_matrix(messages, coordinates).to_array().tolist() == [[1, 1], [0, 1]]


def test_check_invariants_catches_broken_recovery(prm_2_3):
    broken = list(prm_2_3.recovery)
    broken[0] = ((0,), (1, 2), (3, 4, 7), (5, 8, 9, 10))
    with pytest.raises(InvariantViolation):
        replace(prm_2_3, recovery=tuple(broken)).check_invariants()

    overlapping = list(prm_2_3.recovery)
    overlapping[0] = ((0,), (0,), (3, 4, 7), (5, 8, 9, 10))
    with pytest.raises(InvariantViolation):
        replace(prm_2_3, recovery=tuple(overlapping)).check_invariants()


def test_encode_parity_code(parity_code):
    assert encode(parity_code, [1, 1, 1, 1]).tolist() == [1, 1, 1, 1, 0]
    assert encode(parity_code, [1, 0, 0, 0]).tolist() == [1, 0, 0, 0, 1]
    with pytest.raises(ParameterError):
        encode(parity_code, [1, 0, 1])


@pytest.mark.parametrize("msg", [[2, 0, 0, 0], [1, 0, -1, 0], [0.5, 0, 0, 0]])
def test_encode_rejects_non_bits(parity_code, msg):
    with pytest.raises(ParameterError):
        encode(parity_code, msg)


def test_retrieve_through_every_recovery_set(sprm_2_4_4, rng):
    code = sprm_2_4_4
    for _ in range(20):
        msg = rng.integers(0, 2, size=code.k)
        codeword = encode(code, msg)
        for i in range(code.k):
            for t in range(code.tau):
                assert retrieve(code, codeword, i, t) == msg[i]


def test_retrieve_argument_checks(parity_code):
    codeword = encode(parity_code, [0, 1, 0, 1])
    with pytest.raises(ParameterError):
        retrieve(parity_code, codeword[:-1], 0, 0)
    with pytest.raises(ParameterError):
        retrieve(parity_code, codeword, 4, 0)
    with pytest.raises(ParameterError):
        retrieve(parity_code, codeword, 0, 2)


def test_monomial_name():
    assert monomial_name(SubsetMask.of([1, 2], 4)) == "a{1,2}"


def test_code_descriptor(prm_2_3):
    payload = prm_2_3.to_dict()
    assert (payload["n"], payload["k"], payload["tau"]) == (11, 6, 4)
    assert payload["messages"][0] == 0b11
    assert payload["coordinates"][-1] == 0b1111
    assert payload["generator"]["data"][0] == "10000011001"
    assert payload["recovery"][0] == [[0], [1, 2, 6], [3, 4, 7], [5, 8, 9, 10]]


def test_index_lookups(prm_2_3):
    assert prm_2_3.message_index(SubsetMask.of([1, 3], 4)) == 1
    assert prm_2_3.coordinate_index(SubsetMask.full(4)) == 10
    with pytest.raises(ParameterError):
        prm_2_3.message_index(SubsetMask.of([1, 2, 3], 4))
