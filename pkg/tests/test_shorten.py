# Copyright (C) 2024 Vrije Universiteit Brussel. All rights reserved.
# SPDX-License-Identifier: MIT

import pytest

from prmpir import golden
from prmpir.bounds import best_code
from prmpir.errors import ParameterError
from prmpir.prm import build_prm, prm_params
from prmpir.shorten import (
    arbitrary_shorten,
    build_sprm,
    enumerate_rho_vectors,
    family_footprint,
    h,
    h1,
    puncture,
    rho_decompose,
    set_family,
    shortening_plan,
    sprm_is_prm_chain,
    sprm_params,
    level_family,
)
from prmpir.subsets import SubsetMask, binom


def test_h_values():
    assert h(1, 2, 1) == 3
    assert h(0, 2, 1) == 0
    assert h(3, 2, 2) == binom(5, 2)
    assert h1(0, 2, 1) == 0
    assert h1(2, 2, 1) == 7


@pytest.mark.parametrize(
    "gamma, rho",
    [(0, (0, 0, 0)), (4, (0, 1, 1)), (6, (1, 0, 0)), (9, (2, 0, 0))],
)
def test_rho_decompose(gamma, rho):
    decomposition = rho_decompose(gamma, 2, 3)
    assert decomposition.rho == rho
    assert decomposition.represented() == gamma


def test_rho_decompose_range():
    with pytest.raises(ParameterError):
        rho_decompose(10, 2, 3)
    with pytest.raises(ParameterError):
        rho_decompose(-1, 2, 3)


def test_rho_vectors_represent_each_gamma_once():
    for m in range(2, 8):
        for r in range(1, m):
            values = sorted(v.gamma for v in enumerate_rho_vectors(r, m - r))
            assert values == list(range(binom(m, m - r)))


@pytest.mark.parametrize("gamma", sorted(golden.SPRM_TABLE))
def test_sprm_table_rows(gamma):
    rho, family, gamma_prime, k, n = golden.SPRM_TABLE[gamma]
    plan = shortening_plan(5, 2, gamma)
    assert plan.decomposition.rho == rho
    assert {s.elements() for s in plan.decomposition.family} == set(family)
    assert plan.gamma_prime == gamma_prime
    assert len(plan.zeroed_messages) == gamma

    code = build_sprm(5, 2, gamma)
    assert (code.n, code.k, code.tau) == (n, k, 8)
    assert sprm_params(5, 2, gamma) == (n, k, 8)


def test_set_family_order():
    decomposition = rho_decompose(8, 2, 3)
    assert [str(s) for s in set_family(decomposition, 5)] == ["{1,2,3,4}", "{1,2,5}"]


def test_zeroed_messages_are_deleted_coordinates():
    for gamma in range(10):
        plan = shortening_plan(5, 2, gamma)
        deleted = {s.bits for s in plan.deleted_coordinates}
        assert {s.bits for s in plan.zeroed_messages} <= deleted
        assert all(s.bits not in deleted for s in build_sprm(5, 2, gamma).coordinates)


def test_gamma_prime_grows_with_gamma():
    for m in range(2, 8):
        for r in range(1, m):
            primes = [shortening_plan(m, r, g).gamma_prime for g in range(binom(m, m - r))]
            assert all(a < b for a, b in zip(primes, primes[1:]))


def test_family_members_are_not_nested():
    for gamma in range(binom(7, 4)):
        family = shortening_plan(7, 3, gamma).decomposition.family
        for a in family:
            for b in family:
                assert a == b or not a.issubset(b)


def test_shortening_plan_range():
    with pytest.raises(ParameterError):
        shortening_plan(5, 2, 10)


def test_level_family():
    family = level_family(5, 2, 1, 2)
    assert [str(s) for s in family] == ["{1,2,3}", "{1,2,4}"]
    zeroed, deleted = family_footprint(family, 2)
    assert len(zeroed) == h(2, 2, 1)
    assert len(deleted) == h1(2, 2, 1)
    with pytest.raises(ParameterError):
        level_family(5, 2, 3, 1)


def test_unshortened_sprm_is_prm():
    sprm, prm = build_sprm(5, 2, 0), build_prm(5, 2)
    assert sprm.coordinates == prm.coordinates
    assert sprm.generator == prm.generator
    assert sprm.recovery == prm.recovery


@pytest.mark.parametrize("m, r", [(4, 2), (5, 2), (5, 3), (6, 2), (6, 4)])
def test_sprm_chain_to_smaller_prm(m, r):
    assert sprm_is_prm_chain(m, r)
    code = build_sprm(m, r, binom(m - 1, r))
    n, k, _ = prm_params(m - 1, r - 1)
    assert (code.n, code.k) == (n, k)


def test_arbitrary_shorten_single_symbol(prm_2_3):
    shortened = arbitrary_shorten(prm_2_3, {0})
    assert (shortened.n, shortened.k, shortened.tau) == (10, 5, 4)
    assert SubsetMask.of([1, 2], 4) not in shortened.coordinates
    assert shortened.spec.gamma == 1


def test_arbitrary_shorten_edge_cases(prm_2_3):
    assert arbitrary_shorten(prm_2_3, set()) is prm_2_3
    with pytest.raises(ParameterError):
        arbitrary_shorten(prm_2_3, range(6))
    with pytest.raises(ParameterError):
        arbitrary_shorten(prm_2_3, {6})


def test_arbitrary_shorten_keeps_tau(rng):
    code = build_prm(5, 2)
    for _ in range(50):
        size = int(rng.integers(code.k))
        msgs = [int(i) for i in rng.choice(code.k, size=size, replace=False)]
        shortened = arbitrary_shorten(code, msgs)
        assert shortened.tau == 8
        assert shortened.k == code.k - size
        assert all(len(family) == 8 for family in shortened.recovery)


def test_puncture_prm(prm_2_3):
    punctured = puncture(prm_2_3)
    assert (punctured.n, punctured.k, punctured.tau) == (10, 6, 3)
    assert punctured.spec.punctured == 1
    assert SubsetMask.full(4) not in punctured.coordinates


def test_puncture_parity_code(parity_code):
    identity = puncture(parity_code)
    assert (identity.n, identity.k, identity.tau) == (4, 4, 1)
    assert identity.recovery == (((0,),), ((1,),), ((2,),), ((3,),))
    with pytest.raises(ParameterError):
        puncture(identity)


def test_puncture_gives_three_servers():
    _, code = best_code(5, 4)
    assert code.n == code.k + 4 + 1
    punctured = puncture(code)
    assert (punctured.n, punctured.tau) == (9, 3)
