# Copyright (C) 2024 Vrije Universiteit Brussel. All rights reserved.
# SPDX-License-Identifier: MIT
"""prmpir - projective Reed-Muller PIR codes.

Usage:
  prmpir construct --m=<m> --r=<r> [--gamma=<g>] [--json] [--output=<path>] [--verbose]
  prmpir shorten --m=<m> --r=<r> --gamma=<g> [--json | --table] [--verbose]
  prmpir recovery --m=<m> --r=<r> [--gamma=<g>] [--symbol=<i>] [--json] [--verbose]
  prmpir encode --m=<m> --r=<r> [--gamma=<g>] --message=<bits> [--json] [--verbose]
  prmpir bounds --k=<k> --tau=<tau> [--json] [--verbose]
  prmpir table --which=<w> [--format=<f>] [--output=<path>] [--verbose]
  prmpir simulate --m=<m> --r=<r> [--gamma=<g>] --B=<b> --trials=<t> [--seed=<s>]
                  [--audit] [--transcript=<path>] [--json] [--verbose]
  prmpir verify [--max-m=<m>] [--seed=<s>] [--json] [--verbose]
  prmpir -h | --help

Options:
  -h --help             Show this screen.
  --m=<m>               Number of variables; the code is PRM(r, m-1).
  --r=<r>               Homogeneous degree.
  --gamma=<g>           Number of message symbols removed by shortening [default: 0].
  --symbol=<i>          Only show the recovery sets of message symbol i (0-based).
  --message=<bits>      k message bits, e.g. 010011.
  --k=<k>               Number of message symbols.
  --tau=<tau>           Number of disjoint recovery sets (2, 2^l or 2^l - 1).
  --which=<w>           1 for the SPRM(2, 4, gamma) table, 2 for block lengths.
  --format=<f>          json, csv or md.
  --B=<b>               Records per database part.
  --trials=<t>          Number of retrievals (and audit samples per target).
  --seed=<s>            Random seed; PIR_SEED in the environment wins.
  --audit               Run the chi-square privacy audit after the retrievals.
  --transcript=<path>   Write the server transcript as JSON lines.
  --max-m=<m>           Largest m for the recovery sweep of verify.
  --output=<path>       Write the result to a file instead of stdout.
  --json                Machine-readable output.
  --table               Print a markdown table row.
  --verbose             Debug logging on stderr.

Exit codes: 0 on success, 1 on a failed check or computation, 2 on bad usage.
"""

import json
import logging
import sys
from typing import List, Optional, Sequence

import numpy as np
import pandas as pd
from docopt import DocoptExit, docopt
from rich.console import Console
from rich.table import Table

from prmpir import bounds, pirsim
from prmpir.config import RunConfig
from prmpir.errors import PirCodeError, UsageError
from prmpir.logs import configure_logging
from prmpir.prm import PirCode, build_prm, encode, monomial_name
from prmpir.shorten import build_sprm, table_row
from prmpir.verify import run_checks

logger = logging.getLogger(__name__)

CONSOLE_WIDTH = 100


def _console() -> Console:
    return Console(width=CONSOLE_WIDTH, color_system=None, highlight=False, soft_wrap=True)


def _emit(text: str, output: Optional[str] = None) -> None:
    if output:
        with open(output, "w") as f:
            f.write(text)
        logger.info("wrote %s", output)
    else:
        sys.stdout.write(text)


def _dump(payload) -> str:
    return json.dumps(payload, indent=2) + "\n"


def _code(config: RunConfig) -> PirCode:
    if not config.gamma:
        return build_prm(config.m, config.r)
    return build_sprm(config.m, config.r, config.gamma)


def _show_rows(title: str, rows: Sequence[Sequence[object]], columns: Sequence[str]) -> None:
    table = Table(title=title)
    for column in columns:
        table.add_column(column)
    for row in rows:
        table.add_row(*(str(v) for v in row))
    _console().print(table)


def cmd_construct(config: RunConfig) -> int:
    code = _code(config)
    payload = code.to_dict()
    if config.output:
        _emit(_dump(payload), config.output)
    if config.json:
        _emit(_dump(payload))
        return 0
    _show_rows(
        f"PRM({code.spec.r}, {code.spec.m - 1}) shortened by {code.spec.gamma}",
        [(code.n, code.k, code.tau, code.spec.gamma)],
        ["n", "k", "tau", "gamma"],
    )
    print("generator [I | P]:")
    print(code.generator)
    return 0


def _row_payload(row) -> dict:
    return {
        "gamma": row["gamma"],
        "rho": list(row["rho"]),
        "family": [list(s.elements()) for s in row["family"]],
        "gamma_prime": row["gamma_prime"],
        "k": row["k"],
        "n": row["n"],
    }


def cmd_shorten(config: RunConfig, as_table: bool) -> int:
    payload = _row_payload(table_row(config.m, config.r, config.gamma))
    if config.json:
        _emit(_dump(payload))
        return 0
    family = ",".join("{" + "".join(str(e) for e in s) + "}" for s in payload["family"])
    cells = {
        "gamma": payload["gamma"],
        "rho": "(" + "".join(str(x) for x in payload["rho"]) + ")",
        "family": family or "-",
        "gamma'": payload["gamma_prime"],
        "k": payload["k"],
        "n": payload["n"],
    }
    if as_table:
        _emit(bounds.to_markdown(pd.DataFrame([cells])))
        return 0
    _show_rows(f"SPRM({config.r}, {config.m - 1}, {config.gamma})", [cells.values()], cells)
    return 0


def cmd_recovery(config: RunConfig) -> int:
    code = _code(config)
    if config.symbol is not None and not 0 <= config.symbol < code.k:
        raise UsageError(f"--symbol must be in [0, {code.k}), got {config.symbol}")
    symbols = range(code.k) if config.symbol is None else [config.symbol]
    payload = []
    for i in symbols:
        payload.append(
            {
                "symbol": i,
                "message": list(code.messages[i].elements()),
                "sets": [
                    [list(code.coordinates[j].elements()) for j in members]
                    for members in code.recovery[i]
                ],
            }
        )
    if config.json:
        _emit(_dump(payload))
        return 0
    for i in symbols:
        sets = [
            " ".join(str(code.coordinates[j]) for j in members) for members in code.recovery[i]
        ]
        print(f"{monomial_name(code.messages[i])}: " + " | ".join(sets))
    return 0


def cmd_encode(config: RunConfig) -> int:
    code = _code(config)
    if len(config.message) != code.k:
        raise UsageError(f"--message needs {code.k} bits, got {len(config.message)}")
    word = encode(code, [int(c) for c in config.message])
    codeword = "".join(str(int(b)) for b in word)
    if config.json:
        _emit(_dump({"n": code.n, "k": code.k, "message": config.message, "codeword": codeword}))
    else:
        print(codeword)
    return 0


def cmd_bounds(config: RunConfig) -> int:
    report, _ = bounds.best_code(config.k, config.tau)
    coded, replicated = bounds.storage_overhead(config.k, config.tau)
    payload = report.to_dict()
    payload["overhead"] = {"coded": coded, "replication": replicated}
    if config.tau in bounds.OPTIMAL_TAUS:
        n, k, tau = bounds.batch_code_params(config.k, config.tau)
        payload["batch_code"] = {"n": n, "k": k, "t": tau}
    if config.json:
        _emit(_dump(payload))
        return 0
    spec = report.construction
    _show_rows(
        f"n(k={report.k}, tau={report.tau})",
        [
            (
                report.lower,
                report.achieved,
                spec.m,
                spec.r,
                spec.gamma,
                spec.punctured,
                report.optimal,
                f"{coded:.3f}",
            )
        ],
        ["lower", "achieved", "m", "r", "gamma", "punctured", "optimal", "n/k"],
    )
    if "batch_code" in payload:
        batch = payload["batch_code"]
        print(f"also a ({batch['n']}, {batch['k']}, {batch['t']}) primitive multiset batch code")
    return 0


def cmd_table(config: RunConfig) -> int:
    if config.which == 1:
        table = bounds.table1()
        problems = bounds.table1_diff()
        shown = table
    else:
        table = bounds.table2()
        problems = bounds.table2_diff(table)
        shown = bounds.table2_wide(table) if config.format == "md" else table
    _emit(bounds.render(shown, config.format), config.output)
    for problem in problems:
        logger.error("reference mismatch: %s", problem)
    return 1 if problems else 0


def cmd_simulate(config: RunConfig) -> int:
    code = _code(config)
    rng = np.random.default_rng(config.seed)
    database = rng.integers(0, 2, size=(code.k, config.B), dtype=np.uint8)
    array = pirsim.setup(code, database)
    report = pirsim.run_retrievals(array, database, config.trials, rng)
    payload = {
        "code": {"n": code.n, "k": code.k, "tau": code.tau},
        "seed": config.seed,
        "retrievals": report.to_dict(),
    }
    if config.transcript:
        with open(config.transcript, "w") as f:
            pirsim.dump_transcript(array, f)
    if config.audit:
        audit = pirsim.privacy_audit(array, config.trials, config.B, rng)
        payload["audit"] = audit.to_dict()
    if config.json:
        _emit(_dump(payload))
    else:
        print(
            f"{report.correct}/{report.trials} retrievals correct over {code.n} servers "
            f"(n={code.n}, k={code.k}, tau={code.tau})"
        )
        if config.audit:
            _show_rows(
                f"privacy audit, alpha={audit.alpha}",
                [
                    (
                        s["server"],
                        f"{s['max_statistic']:.3f}",
                        f"{s['min_p_value']:.4g}",
                        s["passed"],
                    )
                    for s in audit.per_server()
                ],
                ["server", "max chi2", "min p", "passed"],
            )
    if config.audit and not audit.passed:
        return 1
    return 0


def cmd_verify(config: RunConfig) -> int:
    results = run_checks(config.max_m, config.seed)
    if config.json:
        _emit(_dump([r.to_dict() for r in results]))
    else:
        _show_rows(
            f"verify --max-m {config.max_m}",
            [(r.name, "ok" if r.passed else "FAILED", r.detail) for r in results],
            ["check", "status", "detail"],
        )
    return 0 if all(r.passed for r in results) else 1


def main(argv: Optional[List[str]] = None) -> int:
    """
    Run one prmpir command.

    Returns:
        0 on success, 1 on a failed check or computation, 2 on a usage error.
    """
    argv = sys.argv[1:] if argv is None else argv
    try:
        args = docopt(__doc__, argv=argv)
    except DocoptExit as exc:
        print(str(exc), file=sys.stderr)
        return 2
    except SystemExit:
        # --help
        return 0

    try:
        config = RunConfig.from_args(args)
    except UsageError as exc:
        print(f"Error: {exc}", file=sys.stderr)
        return 2

    configure_logging(config.verbose)
    handlers = {
        "construct": cmd_construct,
        "recovery": cmd_recovery,
        "encode": cmd_encode,
        "bounds": cmd_bounds,
        "table": cmd_table,
        "simulate": cmd_simulate,
        "verify": cmd_verify,
    }
    try:
        if config.subcommand == "shorten":
            return cmd_shorten(config, bool(args.get("--table")))
        return handlers[config.subcommand](config)
    except UsageError as exc:
        print(f"Error: {exc}", file=sys.stderr)
        return 2
    except PirCodeError as exc:
        print(f"Error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
