# Copyright (C) 2024 Vrije Universiteit Brussel. All rights reserved.
# SPDX-License-Identifier: MIT
"""
Defaults, guards and the per-invocation run configuration.

The constants below are the user-tunable knobs of the package. The
``RunConfig`` dataclass is what the command line parses into; it validates
which flags each subcommand needs before anything is computed.
"""

import os
from dataclasses import dataclass
from typing import Any, Mapping

from prmpir.errors import UsageError

# ---- User-tunable defaults -------------------------------------------------

DEFAULT_SEED = 0
DEFAULT_ALPHA = 0.001
DEFAULT_MAX_M = 6
SEED_ENV_VAR = "PIR_SEED"

# Brute-force guards
MIN_DISTANCE_MAX_ROWS = 24
GHW_MAX_ROWS = 24
GHW_WORK_LIMIT = 200_000
GHW_SPAN_LIMIT = 500_000

# Largest PRM block length we agree to materialize
PRM_MAX_LENGTH = 1 << 20

# Privacy audit: the query space 2^B must stay exhaustively testable
AUDIT_MAX_B = 4
AUDIT_TRIALS_PER_CELL = 1000

SUBCOMMANDS = (
    "construct",
    "shorten",
    "recovery",
    "encode",
    "bounds",
    "table",
    "simulate",
    "verify",
)

FORMATS = ("json", "csv", "md")

# Flags each subcommand cannot run without
_REQUIRED = {
    "construct": ("m", "r"),
    "shorten": ("m", "r", "gamma"),
    "recovery": ("m", "r"),
    "encode": ("m", "r", "message"),
    "bounds": ("k", "tau"),
    "table": ("which",),
    "simulate": ("m", "r", "B", "trials"),
    "verify": (),
}


@dataclass(frozen=True)
class RunConfig:
    """
    One validated command-line invocation.

    Attributes:
        subcommand: One of ``SUBCOMMANDS``.
        m, r, gamma, k, tau, B, trials, seed, symbol: Optional counts.
        message: Message bits for ``encode`` (string of 0/1).
        which: Table selector for ``table`` (1 or 2).
        format: Output format (json, csv or md).
        json: Machine-readable output requested.
        audit: Run the privacy audit in ``simulate``.
        max_m: Largest m exercised by ``verify``.
        output: Optional output path.
        transcript: Optional JSON-lines transcript path for ``simulate``.
        verbose: Enable debug logging.
    """

    subcommand: str
    m: int | None = None
    r: int | None = None
    gamma: int | None = None
    k: int | None = None
    tau: int | None = None
    B: int | None = None
    trials: int | None = None
    seed: int = DEFAULT_SEED
    symbol: int | None = None
    message: str | None = None
    which: int | None = None
    format: str = "md"
    json: bool = False
    audit: bool = False
    max_m: int = DEFAULT_MAX_M
    output: str | None = None
    transcript: str | None = None
    verbose: bool = False

    def __post_init__(self) -> None:
        if self.subcommand not in SUBCOMMANDS:
            raise UsageError(f"Unknown subcommand: {self.subcommand}")
        missing = [name for name in _REQUIRED[self.subcommand] if getattr(self, name) is None]
        if missing:
            flags = ", ".join(f"--{name.replace('_', '-')}" for name in missing)
            raise UsageError(f"{self.subcommand} requires {flags}")
        if self.format not in FORMATS:
            raise UsageError(f"Unsupported format: {self.format}")
        if self.which is not None and self.which not in (1, 2):
            raise UsageError(f"--which must be 1 or 2, got {self.which}")
        if self.message is not None and set(self.message) - {"0", "1"}:
            raise UsageError(f"--message must be a binary string, got {self.message!r}")
        for name in ("m", "r", "gamma", "k", "tau", "B", "trials", "symbol", "max_m"):
            value = getattr(self, name)
            if value is not None and value < 0:
                raise UsageError(f"--{name.replace('_', '-')} must be nonnegative, got {value}")

    @classmethod
    def from_args(
        cls,
        args: Mapping[str, Any],
        environ: Mapping[str, str] | None = None,
    ) -> "RunConfig":
        """
        Build a configuration from a docopt result dictionary.

        Args:
            args: The dictionary returned by ``docopt``.
            environ: Environment used for overrides (``PIR_SEED``). Defaults
                to ``os.environ``.
        """
        environ = os.environ if environ is None else environ

        subcommand = next((name for name in SUBCOMMANDS if args.get(name)), None)
        if subcommand is None:
            raise UsageError("No subcommand given")

        seed = _as_int(args, "--seed")
        if environ.get(SEED_ENV_VAR):
            seed = _parse_int(environ[SEED_ENV_VAR], SEED_ENV_VAR)

        fmt = args.get("--format") or ("json" if args.get("--json") else "md")
        max_m = _as_int(args, "--max-m")

        return cls(
            subcommand=subcommand,
            m=_as_int(args, "--m"),
            r=_as_int(args, "--r"),
            gamma=_as_int(args, "--gamma"),
            k=_as_int(args, "--k"),
            tau=_as_int(args, "--tau"),
            B=_as_int(args, "--B"),
            trials=_as_int(args, "--trials"),
            seed=DEFAULT_SEED if seed is None else seed,
            symbol=_as_int(args, "--symbol"),
            message=args.get("--message"),
            which=_as_int(args, "--which"),
            format=fmt,
            json=bool(args.get("--json")),
            audit=bool(args.get("--audit")),
            max_m=DEFAULT_MAX_M if max_m is None else max_m,
            output=args.get("--output"),
            transcript=args.get("--transcript"),
            verbose=bool(args.get("--verbose")),
        )


def _parse_int(raw: str, flag: str) -> int:
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{flag} expects an integer, got {raw!r}") from None


def _as_int(args: Mapping[str, Any], flag: str) -> int | None:
    raw = args.get(flag)
    if raw is None:
        return None
    return _parse_int(raw, flag)
