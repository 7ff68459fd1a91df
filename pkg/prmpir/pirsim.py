# Copyright (C) 2024 Vrije Universiteit Brussel. All rights reserved.
# SPDX-License-Identifier: MIT
"""
Private retrieval over n simulated servers storing a PIR-coded database.

The database is a k x B bit matrix: part i is the row x_i of B records.
Server s stores the coded column c_s = sum_i G[i][s] * x_i (componentwise
XOR over the B records), so a server holds one coded copy of every record
index.

To read record j of part i, the client picks tau queries q_1..q_tau in F_2^B
with q_1 + ... + q_tau = e_j and sends q_t to every server of the t-th
recovery set of symbol i. Servers outside all recovery sets of i get an
independent uniform dummy query, so every server receives exactly one query
per retrieval. Server s answers <q, c_s> mod 2, and

    sum_t sum_{s in R_it} <q_t, c_s> = sum_t <q_t, x_i> = <e_j, x_i> = x_i[j].

``AdditiveClient`` draws q_1..q_{tau-1} uniformly and fixes q_tau, so every
single query is marginally uniform whatever (i, j) is. ``PlaintextClient``
sends q_1 = e_j in the clear and serves as a negative control for
``privacy_audit``, which compares each server's view per target against the
uniform distribution with chi-square tests.
"""

import json
import logging
from dataclasses import dataclass, field
from typing import IO, List, Optional, Tuple

import numpy as np
from scipy.stats import chisquare

from prmpir.config import AUDIT_MAX_B, AUDIT_TRIALS_PER_CELL, DEFAULT_ALPHA, DEFAULT_SEED
from prmpir.errors import AuditError, InvariantViolation, ParameterError
from prmpir.prm import PirCode

logger = logging.getLogger(__name__)

# Marks a server that sits in no recovery set of the requested symbol
DUMMY = -1


class Client:
    """
    How a client splits e_j into tau queries and what it sends to idle servers.

    Subclasses implement ``sample_shares``. Servers outside every recovery set
    of the requested symbol get ``dummy_queries``, uniform by default.
    """

    name = "client"

    def sample_shares(
        self, j: int, B: int, tau: int, rng: np.random.Generator, size: int = 1
    ) -> np.ndarray:
        """``size`` independent share tuples, shape (size, tau, B)."""
        raise NotImplementedError

    def dummy_queries(
        self, B: int, servers: int, rng: np.random.Generator, size: int = 1
    ) -> np.ndarray:
        """Queries for ``servers`` idle servers, shape (size, servers, B)."""
        return rng.integers(0, 2, size=(size, servers, B), dtype=np.uint8)


class AdditiveClient(Client):
    """Honest client: tau additive shares of e_j, each marginally uniform."""

    name = "additive"

    def sample_shares(
        self, j: int, B: int, tau: int, rng: np.random.Generator, size: int = 1
    ) -> np.ndarray:
        shares = rng.integers(0, 2, size=(size, tau, B), dtype=np.uint8)
        last = np.bitwise_xor.reduce(shares[:, :-1, :], axis=1)
        last[:, j] ^= 1
        shares[:, -1, :] = last
        return shares


class PlaintextClient(Client):
    """Broken client: the first recovery set receives e_j unmasked."""

    name = "plaintext"

    def sample_shares(
        self, j: int, B: int, tau: int, rng: np.random.Generator, size: int = 1
    ) -> np.ndarray:
        shares = np.zeros((size, tau, B), dtype=np.uint8)
        shares[:, 0, j] = 1
        if tau > 2:
            shares[:, 1:-1, :] = rng.integers(0, 2, size=(size, tau - 2, B), dtype=np.uint8)
            shares[:, -1, :] = np.bitwise_xor.reduce(shares[:, 1:-1, :], axis=1)
        return shares


@dataclass(frozen=True)
class TranscriptEntry:
    """What one server saw and answered during one retrieval."""

    server: int
    query: str
    answer: int

    def to_json(self) -> str:
        return json.dumps({"server": self.server, "query": self.query, "answer": self.answer})


@dataclass
class ServerArray:
    """
    n servers each holding one coded column of a k x B database.

    Attributes:
        code: The PIR code the database is stored with.
        B: Records per part.
        shares: (n, B) array, row s is the content of server s.
        transcript: Every (server, query, answer) seen so far, one entry per
            server per retrieval.
    """

    code: PirCode
    B: int
    shares: np.ndarray
    transcript: List[TranscriptEntry] = field(default_factory=list)

    @property
    def n(self) -> int:
        return self.code.n

    def answer(self, server: int, query: np.ndarray) -> int:
        """A(q, c_s): inner product over F_2."""
        return int(np.bitwise_and(query, self.shares[server]).sum() % 2)

    def is_consistent_with(self, database: np.ndarray) -> bool:
        """Re-encode ``database`` and compare with the stored shares."""
        return bool(np.array_equal(_encode_database(self.code, database), self.shares))


@dataclass(frozen=True)
class QueryPlan:
    """
    The queries of one retrieval.

    Attributes:
        target: (part index i, record index j).
        queries: (tau, B) array, XOR of the rows is e_j.
        assignment: Per server, the recovery set index it serves or ``DUMMY``.
        server_queries: (n, B) array, the query each server receives.
    """

    target: Tuple[int, int]
    queries: np.ndarray
    assignment: Tuple[int, ...]
    server_queries: np.ndarray


@dataclass(frozen=True)
class QueryBatch:
    """
    ``size`` independent plans for the same target, stacked along axis 0.

    Attributes:
        target: (part index i, record index j).
        queries: (size, tau, B) array.
        assignment: Shared by every plan of the batch.
        server_queries: (size, n, B) array, what the servers receive.
    """

    target: Tuple[int, int]
    queries: np.ndarray
    assignment: Tuple[int, ...]
    server_queries: np.ndarray

    def __len__(self) -> int:
        return self.server_queries.shape[0]

    def plan(self, index: int) -> QueryPlan:
        return QueryPlan(
            target=self.target,
            queries=self.queries[index],
            assignment=self.assignment,
            server_queries=self.server_queries[index],
        )


def _encode_database(code: PirCode, database: np.ndarray) -> np.ndarray:
    generator = code.generator.to_array().astype(np.int64)
    return (generator.T @ database.astype(np.int64) % 2).astype(np.uint8)


def setup(code: PirCode, database) -> ServerArray:
    """
    Provision the n servers with coded columns of ``database``.

    Raises:
        ParameterError: if ``database`` is not a k x B bit matrix with B >= 1.
    """
    database = np.asarray(database, dtype=np.uint8)
    if database.ndim != 2 or database.shape[0] != code.k or database.shape[1] < 1:
        raise ParameterError(f"database has shape {database.shape}, expected ({code.k}, B>=1)")
    if np.any(database > 1):
        raise ParameterError("database entries must be bits")
    return ServerArray(code=code, B=database.shape[1], shares=_encode_database(code, database))


def _assignment(code: PirCode, i: int) -> Tuple[int, ...]:
    assignment = [DUMMY] * code.n
    for t, members in enumerate(code.recovery[i]):
        for s in members:
            assignment[s] = t
    return tuple(assignment)


def make_query_batch(
    code: PirCode,
    i: int,
    j: int,
    B: int,
    rng: np.random.Generator,
    size: int,
    client: Optional[Client] = None,
) -> QueryBatch:
    """
    Draw ``size`` independent plans for reading record j of part i.

    Single retrievals and ``privacy_audit`` both draw their queries here.

    Raises:
        ParameterError: if i or j is out of range or size < 1.
    """
    if not 0 <= i < code.k:
        raise ParameterError(f"part index {i} outside [0, {code.k})")
    if not 0 <= j < B:
        raise ParameterError(f"record index {j} outside [0, {B})")
    if size < 1:
        raise ParameterError(f"batch size must be positive, got {size}")
    client = AdditiveClient() if client is None else client
    queries = client.sample_shares(j, B, code.tau, rng, size)
    assignment = _assignment(code, i)
    server_queries = np.zeros((size, code.n, B), dtype=np.uint8)
    idle = [s for s, t in enumerate(assignment) if t == DUMMY]
    if idle:
        server_queries[:, idle, :] = client.dummy_queries(B, len(idle), rng, size)
    for t, members in enumerate(code.recovery[i]):
        server_queries[:, list(members), :] = queries[:, t, None, :]
    return QueryBatch(
        target=(i, j),
        queries=queries,
        assignment=assignment,
        server_queries=server_queries,
    )


def make_query_plan(
    code: PirCode,
    i: int,
    j: int,
    B: int,
    rng: np.random.Generator,
    client: Optional[Client] = None,
) -> QueryPlan:
    """
    Draw the queries for reading record j of part i.

    Raises:
        ParameterError: if i or j is out of range.
    """
    return make_query_batch(code, i, j, B, rng, 1, client).plan(0)


def _bits(vector: np.ndarray) -> str:
    return "".join(str(int(b)) for b in vector)


def execute(array: ServerArray, plan: QueryPlan) -> int:
    """
    Send the plan's queries, record the transcript and combine the answers.

    Returns:
        The requested record bit.
    """
    if plan.server_queries.shape != (array.n, array.B):
        raise ParameterError(
            f"plan is for {plan.server_queries.shape}, array is ({array.n}, {array.B})"
        )
    answers = []
    for s in range(array.n):
        query = plan.server_queries[s]
        answers.append(array.answer(s, query))
        array.transcript.append(TranscriptEntry(server=s, query=_bits(query), answer=answers[s]))
    bit = 0
    for s, t in enumerate(plan.assignment):
        if t != DUMMY:
            bit ^= answers[s]
    return bit


def retrieve_record(
    array: ServerArray,
    i: int,
    j: int,
    rng: np.random.Generator,
    client: Optional[Client] = None,
) -> int:
    """Plan and execute one retrieval of record j of part i."""
    return execute(array, make_query_plan(array.code, i, j, array.B, rng, client))


@dataclass(frozen=True)
class SimulationReport:
    """Outcome of a batch of retrievals; ``correct`` always equals ``trials``."""

    trials: int
    correct: int
    servers: int
    transcript_entries: int

    def to_dict(self):
        return {
            "trials": self.trials,
            "correct": self.correct,
            "servers": self.servers,
            "transcript_entries": self.transcript_entries,
        }


def run_retrievals(
    array: ServerArray,
    database: np.ndarray,
    trials: int,
    rng: np.random.Generator,
    client: Optional[Client] = None,
) -> SimulationReport:
    """
    Retrieve ``trials`` uniformly drawn (i, j) from one provisioned array.

    Raises:
        InvariantViolation: on the first retrieved bit that differs from the database.
    """
    before = len(array.transcript)
    for _ in range(trials):
        i = int(rng.integers(array.code.k))
        j = int(rng.integers(array.B))
        bit = retrieve_record(array, i, j, rng, client)
        if bit != database[i, j]:
            raise InvariantViolation(f"retrieved {bit} for part {i}, record {j}")
    return SimulationReport(
        trials=trials,
        correct=trials,
        servers=array.n,
        transcript_entries=len(array.transcript) - before,
    )


def correctness_harness(
    code: PirCode,
    B: int,
    trials: int,
    rng: np.random.Generator,
    client: Optional[Client] = None,
) -> SimulationReport:
    """Each trial stores a fresh random database and retrieves one random record."""
    entries = 0
    for _ in range(trials):
        database = rng.integers(0, 2, size=(code.k, B), dtype=np.uint8)
        array = setup(code, database)
        entries += run_retrievals(array, database, 1, rng, client).transcript_entries
    return SimulationReport(
        trials=trials, correct=trials, servers=code.n, transcript_entries=entries
    )


def dump_transcript(array: ServerArray, stream: IO[str]) -> int:
    """Write the transcript as JSON lines; returns the number of lines."""
    for entry in array.transcript:
        stream.write(entry.to_json() + "\n")
    return len(array.transcript)


@dataclass(frozen=True)
class AuditCell:
    """Chi-square test of one server's view for one target."""

    server: int
    target: Tuple[int, int]
    statistic: float
    p_value: float
    passed: bool


@dataclass(frozen=True)
class AuditReport:
    """
    Result of a privacy audit.

    Attributes:
        alpha: Family-wise significance level.
        threshold: Per-cell p-value threshold (alpha over the number of cells).
        trials: Samples per target.
        B: Query length.
        client: Name of the audited client.
        cells: One test per (server, target).
    """

    alpha: float
    threshold: float
    trials: int
    B: int
    client: str
    cells: Tuple[AuditCell, ...]

    @property
    def passed(self) -> bool:
        return all(cell.passed for cell in self.cells)

    def failing_servers(self) -> List[int]:
        return sorted({cell.server for cell in self.cells if not cell.passed})

    def per_server(self) -> List[dict]:
        """Worst statistic and smallest p-value of each server."""
        out = []
        for s in sorted({cell.server for cell in self.cells}):
            mine = [cell for cell in self.cells if cell.server == s]
            out.append(
                {
                    "server": s,
                    "max_statistic": max(c.statistic for c in mine),
                    "min_p_value": min(c.p_value for c in mine),
                    "passed": all(c.passed for c in mine),
                }
            )
        return out

    def to_dict(self):
        return {
            "alpha": self.alpha,
            "threshold": self.threshold,
            "trials": self.trials,
            "B": self.B,
            "client": self.client,
            "passed": self.passed,
            "servers": self.per_server(),
        }


def privacy_audit(
    array: ServerArray,
    trials: int,
    B: Optional[int] = None,
    rng: Optional[np.random.Generator] = None,
    client: Optional[Client] = None,
    alpha: float = DEFAULT_ALPHA,
) -> AuditReport:
    """
    Test every server's received query against uniform, separately for each target.

    For each target (i, j), ``trials`` retrievals are sampled and each server's
    2^B query counts go through a chi-square goodness-of-fit test. A cell
    passes when its p-value is at least alpha divided by the number of cells.
    The array's transcript is not touched.

    Raises:
        AuditError: if B > ``AUDIT_MAX_B`` or trials < 1000 * 2^B.
    """
    B = array.B if B is None else B
    if B != array.B:
        raise AuditError(f"audit for B={B} on an array with B={array.B}")
    if B > AUDIT_MAX_B:
        raise AuditError(f"B={B} is too large for an exhaustive audit (limit {AUDIT_MAX_B})")
    needed = AUDIT_TRIALS_PER_CELL * (1 << B)
    if trials < needed:
        raise AuditError(f"audit needs at least {needed} trials for B={B}, got {trials}")
    rng = np.random.default_rng(DEFAULT_SEED) if rng is None else rng
    client = AdditiveClient() if client is None else client

    code = array.code
    bins = 1 << B
    weights = 1 << np.arange(B)
    targets = [(i, j) for i in range(code.k) for j in range(B)]
    threshold = alpha / (len(targets) * code.n)
    cells = []
    for i, j in targets:
        views = make_query_batch(code, i, j, B, rng, trials, client).server_queries
        index = views.astype(np.int64) @ weights
        flat = index + (np.arange(code.n) * bins)[None, :]
        counts = np.bincount(flat.ravel(), minlength=code.n * bins).reshape(code.n, bins)
        statistics, p_values = chisquare(counts, axis=1)
        for s in range(code.n):
            cells.append(
                AuditCell(
                    server=s,
                    target=(i, j),
                    statistic=float(statistics[s]),
                    p_value=float(p_values[s]),
                    passed=bool(p_values[s] >= threshold),
                )
            )
    report = AuditReport(
        alpha=alpha,
        threshold=threshold,
        trials=trials,
        B=B,
        client=client.name,
        cells=tuple(cells),
    )
    logger.info("audit of %s client: passed=%s", report.client, report.passed)
    return report
