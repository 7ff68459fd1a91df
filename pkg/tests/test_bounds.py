# Copyright (C) 2024 Vrije Universiteit Brussel. All rights reserved.
# SPDX-License-Identifier: MIT

import pytest

from prmpir import golden
from prmpir.bounds import (
    batch_code_params,
    best_code,
    construction_for,
    ghw_d1_d2,
    ghw_upper,
    lb_systematic,
    render,
    storage_overhead,
    table1,
    table1_diff,
    table2,
    table2_diff,
    table2_wide,
    tau_level,
)
from prmpir.errors import ParameterError
from prmpir.gf2core import ghw
from prmpir.prm import build_prm, prm_params
from prmpir.shorten import shortening_plan


@pytest.fixture(scope="module")
def blocklengths():
    return table2()


@pytest.mark.parametrize(
    "k, tau, expected",
    [(6, 3, 10), (6, 4, 11), (1, 3, 3), (5, 3, 9), (10, 3, 15), (32, 4, 42), (7, 2, 8)],
)
def test_lb_systematic(k, tau, expected):
    assert lb_systematic(k, tau) == expected


def test_lb_systematic_arguments():
    with pytest.raises(ParameterError):
        lb_systematic(0, 3)
    with pytest.raises(ParameterError):
        lb_systematic(4, 1)


@pytest.mark.parametrize("tau, level", [(2, (1, 0)), (3, (2, 1)), (4, (2, 0)), (15, (4, 1))])
def test_tau_level(tau, level):
    assert tau_level(tau) == level


@pytest.mark.parametrize("tau", [5, 6, 12])
def test_unsupported_tau(tau):
    with pytest.raises(ParameterError):
        best_code(4, tau)


@pytest.mark.parametrize("k, tau, n", [(2, 8, 12), (2, 16, 24), (32, 4, 42), (5, 3, 9)])
def test_best_code_lengths(k, tau, n):
    report, code = best_code(k, tau)
    assert (code.n, code.k, code.tau) == (n, k, tau)
    assert report.achieved == n
    code.check_invariants()


def test_two_server_code_is_parity_check():
    report, code = best_code(6, 2)
    assert (code.n, code.k) == (7, 6)
    assert report.optimal
    assert construction_for(1, 2).m == 2


def test_three_and_four_servers_are_optimal_up_to_100():
    for k in range(1, 101):
        for tau in (3, 4):
            report, code = best_code(k, tau)
            assert report.optimal
            assert (code.n, code.k, code.tau) == (lb_systematic(k, tau), k, tau)


def test_ghw_upper():
    assert ghw_upper(5, 2, 9) == (1, 8)
    assert ghw_upper(5, 2, 8) == (2, 12)
    assert ghw_upper(5, 2, 0) == (10, 26)
    assert ghw_d1_d2(5, 2) == (8, 12)
    with pytest.raises(ParameterError):
        ghw_upper(5, 2, 10)


@pytest.mark.parametrize("r", [1, 2, 3])
def test_ghw_bounds_hold_by_brute_force(r):
    m = 4
    code = build_prm(m, r)
    d1, d2 = ghw_d1_d2(m, r)
    assert ghw(code.generator, 1) == d1
    if code.k >= 2:
        assert ghw(code.generator, 2) <= d2
    for gamma in range(code.k):
        i, bound = ghw_upper(m, r, gamma)
        assert ghw(code.generator, i) <= bound


def test_table1_layout():
    table = table1()
    assert list(table.columns) == ["gamma", "rho", "family", "gamma_prime", "k", "n"]
    row = table.set_index("gamma").loc[7]
    assert (row["rho"], row["family"], row["gamma_prime"]) == ("(101)", "{1234},{15}", 12)
    assert table.set_index("gamma").loc[0, "family"] == "-"
    assert table1_diff() == []


def test_table2_matches_reference(blocklengths):
    assert len(blocklengths) == 31 * 4
    assert table2_diff(blocklengths) == []
    cells = blocklengths.set_index(["k", "tau"])
    assert cells.loc[(10, 8), "n1"] == 26
    assert (cells.loc[(31, 8), "n1"], cells.loc[(31, 8), "n2"]) == (60, 60)


def test_table2_without_building_agrees(blocklengths):
    assert table2(build=False).equals(blocklengths)


def test_table2_wide(blocklengths):
    wide = table2_wide(blocklengths)
    assert list(wide.columns) == ["k", "tau=3", "tau=4", "tau=8", "tau=16"]
    assert wide.set_index("k").loc[32, "tau=16"] == "96/122"


def test_render_formats():
    table = table1()
    assert render(table, "csv").splitlines()[0] == "gamma,rho,family,gamma_prime,k,n"
    markdown = render(table, "md")
    assert markdown.startswith("| gamma | rho |")
    assert "{1234},{15}" in markdown
    assert render(table, "json").startswith('[{"gamma":0')
    with pytest.raises(ParameterError):
        render(table, "xml")


def test_batch_codes_and_overhead():
    assert batch_code_params(6, 3) == (10, 6, 3)
    with pytest.raises(ParameterError):
        batch_code_params(6, 8)
    assert storage_overhead(2, 8) == (6.0, 8.0)


def test_gamma_prime_at_least_gamma():
    for gamma in range(prm_params(5, 2)[1]):
        assert shortening_plan(5, 2, gamma).gamma_prime >= gamma
    assert golden.n1(2, 8) == 12
