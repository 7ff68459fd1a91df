# Copyright (C) 2024 Vrije Universiteit Brussel. All rights reserved.
# SPDX-License-Identifier: MIT

import io
import json

import numpy as np
import pytest

from prmpir.errors import AuditError, ParameterError
from prmpir.pirsim import (
    DUMMY,
    AdditiveClient,
    Client,
    PlaintextClient,
    correctness_harness,
    dump_transcript,
    execute,
    make_query_batch,
    make_query_plan,
    privacy_audit,
    retrieve_record,
    run_retrievals,
    setup,
)
from prmpir.prm import build_prm
from prmpir.shorten import puncture


def random_database(code, B, rng):
    return rng.integers(0, 2, size=(code.k, B), dtype=np.uint8)


def test_parity_server_stores_xor(parity_code, rng):
    database = random_database(parity_code, 6, rng)
    array = setup(parity_code, database)
    assert array.shares.shape == (5, 6)
    assert np.array_equal(array.shares[:4], database)
    assert np.array_equal(array.shares[4], np.bitwise_xor.reduce(database, axis=0))
    assert array.is_consistent_with(database)
    assert not array.is_consistent_with(1 - database)


def test_zero_database_gives_zero_shares(prm_2_3):
    array = setup(prm_2_3, np.zeros((6, 3), dtype=np.uint8))
    assert not array.shares.any()


def test_setup_rejects_bad_database(parity_code):
    with pytest.raises(ParameterError):
        setup(parity_code, np.zeros((3, 2)))
    with pytest.raises(ParameterError):
        setup(parity_code, np.zeros((4, 0)))
    with pytest.raises(ParameterError):
        setup(parity_code, np.full((4, 2), 2))


@pytest.mark.parametrize("client", [AdditiveClient(), PlaintextClient()])
def test_shares_sum_to_unit_vector(client, rng):
    shares = client.sample_shares(2, 4, 8, rng, size=50)
    assert shares.shape == (50, 8, 4)
    expected = np.zeros(4, dtype=np.uint8)
    expected[2] = 1
    assert all(np.array_equal(np.bitwise_xor.reduce(s, axis=0), expected) for s in shares)


def test_query_plan(parity_code, rng):
    plan = make_query_plan(parity_code, 0, 1, 3, rng)
    assert plan.target == (0, 1)
    assert plan.assignment == (0, 1, 1, 1, 1)
    assert np.bitwise_xor.reduce(plan.queries, axis=0).tolist() == [0, 1, 0]
    for s, t in enumerate(plan.assignment):
        assert np.array_equal(plan.server_queries[s], plan.queries[t])


def test_smallest_code_single_record(rng):
    code = build_prm(2, 1)
    assert (code.n, code.k, code.tau) == (3, 2, 2)
    database = np.array([[1], [0]], dtype=np.uint8)
    array = setup(code, database)
    assert retrieve_record(array, 0, 0, rng) == 1
    assert retrieve_record(array, 1, 0, rng) == 0


def test_query_plan_argument_checks(parity_code, rng):
    with pytest.raises(ParameterError):
        make_query_plan(parity_code, 4, 0, 3, rng)
    with pytest.raises(ParameterError):
        make_query_plan(parity_code, 0, 3, 3, rng)


def test_execute_rejects_foreign_plan(parity_code, prm_2_3, rng):
    array = setup(parity_code, random_database(parity_code, 3, rng))
    plan = make_query_plan(prm_2_3, 0, 0, 3, rng)
    with pytest.raises(ParameterError):
        execute(array, plan)


@pytest.mark.parametrize("fixture", ["parity_code", "prm_2_3", "sprm_2_4_4"])
def test_every_retrieval_is_correct(fixture, request, rng):
    code = request.getfixturevalue(fixture)
    report = correctness_harness(code, 3, 200, rng)
    assert report.correct == report.trials == 200
    assert report.transcript_entries == 200 * code.n


def test_plaintext_client_is_still_correct(prm_2_3, rng):
    database = random_database(prm_2_3, 4, rng)
    array = setup(prm_2_3, database)
    report = run_retrievals(array, database, 100, rng, PlaintextClient())
    assert report.correct == 100


def test_transcript_has_one_entry_per_server(prm_2_3, rng):
    database = random_database(prm_2_3, 3, rng)
    array = setup(prm_2_3, database)
    run_retrievals(array, database, 10, rng)
    assert len(array.transcript) == 10 * prm_2_3.n
    assert [e.server for e in array.transcript[: prm_2_3.n]] == list(range(prm_2_3.n))

    stream = io.StringIO()
    assert dump_transcript(array, stream) == 10 * prm_2_3.n
    first = json.loads(stream.getvalue().splitlines()[0])
    assert set(first) == {"server", "query", "answer"}
    assert len(first["query"]) == 3


def test_same_seed_same_transcript(sprm_2_4_4):
    transcripts = []
    for _ in range(2):
        rng = np.random.default_rng(99)
        database = random_database(sprm_2_4_4, 3, rng)
        array = setup(sprm_2_4_4, database)
        run_retrievals(array, database, 20, rng)
        transcripts.append(array.transcript)
    assert transcripts[0] == transcripts[1]


def test_plaintext_views_leak_the_target(parity_code, rng):
    batch = make_query_batch(parity_code, 0, 1, 2, rng, 30, PlaintextClient())
    assert len(batch) == 30
    assert batch.server_queries.shape == (30, 5, 2)
    assert (batch.server_queries[:, 0, :] == [0, 1]).all()
    plan = batch.plan(3)
    assert np.array_equal(plan.server_queries, batch.server_queries[3])


def test_honest_client_passes_audit(parity_code, rng):
    array = setup(parity_code, random_database(parity_code, 2, rng))
    report = privacy_audit(array, 4000, rng=rng)
    assert report.passed
    assert report.failing_servers() == []
    assert len(report.cells) == 4 * 2 * 5
    assert report.threshold == pytest.approx(0.001 / 40)
    assert array.transcript == []


def test_plaintext_client_fails_audit(parity_code, rng):
    array = setup(parity_code, random_database(parity_code, 2, rng))
    report = privacy_audit(array, 4000, rng=rng, client=PlaintextClient())
    assert not report.passed
    assert 0 in report.failing_servers()
    payload = report.to_dict()
    assert payload["client"] == "plaintext"
    assert not payload["servers"][0]["passed"]


def test_audit_preconditions(parity_code, rng):
    wide = setup(parity_code, random_database(parity_code, 5, rng))
    with pytest.raises(AuditError):
        privacy_audit(wide, 100_000, rng=rng)
    narrow = setup(parity_code, random_database(parity_code, 2, rng))
    with pytest.raises(AuditError):
        privacy_audit(narrow, 3999, rng=rng)
    with pytest.raises(AuditError):
        privacy_audit(narrow, 4000, B=3, rng=rng)


class ZeroDummyClient(AdditiveClient):
    """Honest shares, but idle servers always get the all-zero query."""

    name = "zero-dummy"

    def dummy_queries(self, B, servers, rng, size=1):
        return np.zeros((size, servers, B), dtype=np.uint8)


@pytest.fixture(scope="module")
def punctured_array():
    code = puncture(build_prm(4, 2))
    database = np.random.default_rng(7).integers(0, 2, size=(code.k, 2), dtype=np.uint8)
    return setup(code, database)


def test_punctured_code_has_idle_servers(punctured_array, rng):
    code = punctured_array.code
    assert (code.n, code.k, code.tau) == (10, 6, 3)
    idle = [
        plan.assignment.count(DUMMY)
        for plan in (make_query_plan(code, i, 0, 2, rng) for i in range(code.k))
    ]
    assert any(idle)


def test_batch_follows_client_dummy_policy(punctured_array, rng):
    code = punctured_array.code
    for i in range(code.k):
        batch = make_query_batch(code, i, 1, 2, rng, 50, ZeroDummyClient())
        idle = [s for s, t in enumerate(batch.assignment) if t == DUMMY]
        assert not batch.server_queries[:, idle, :].any()
        for t, members in enumerate(code.recovery[i]):
            assert (batch.server_queries[:, list(members), :] == batch.queries[:, t, None, :]).all()


def test_honest_client_passes_audit_with_idle_servers(punctured_array, rng):
    report = privacy_audit(punctured_array, 4000, rng=rng)
    assert report.passed
    assert len(report.cells) == 6 * 2 * 10


def test_audit_catches_leaky_dummy_queries(punctured_array, rng):
    code = punctured_array.code
    report = privacy_audit(punctured_array, 4000, rng=rng, client=ZeroDummyClient())
    assert not report.passed
    failing = {(c.server, c.target) for c in report.cells if not c.passed}
    idle = {
        (s, (i, j))
        for i in range(code.k)
        for j in range(2)
        for s, t in enumerate(make_query_plan(code, i, j, 2, rng).assignment)
        if t == DUMMY
    }
    assert idle
    assert failing == idle


def test_audit_default_generator_is_seeded(punctured_array):
    first = privacy_audit(punctured_array, 4000)
    second = privacy_audit(punctured_array, 4000)
    assert [c.statistic for c in first.cells] == [c.statistic for c in second.cells]


def test_client_base_needs_shares(rng):
    with pytest.raises(NotImplementedError):
        Client().sample_shares(0, 2, 2, rng)
