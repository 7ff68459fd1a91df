# Copyright (C) 2024 Vrije Universiteit Brussel. All rights reserved.
# SPDX-License-Identifier: MIT
"""
Exception hierarchy shared by all prmpir modules.

Every error raised on purpose by the package derives from ``PirCodeError``,
so the command-line front end can tell expected failures (bad parameters,
oversized brute-force requests) from genuine bugs.
"""


class PirCodeError(Exception):
    """Root of all prmpir errors."""


class ParameterError(PirCodeError, ValueError):
    """A precondition on code parameters, indices or lengths does not hold."""


class CountOverflowError(PirCodeError, OverflowError):
    """An exact count does not fit in the 64-bit word used for counts."""


class BruteForceTooLarge(PirCodeError):
    """An exhaustive search was refused because it exceeds its guard."""


class InvariantViolation(PirCodeError, AssertionError):
    """A constructed object does not satisfy its own invariants."""


class AuditError(PirCodeError, ValueError):
    """The privacy audit cannot be run with the requested parameters."""


class UsageError(PirCodeError, ValueError):
    """Command-line flags are missing or conflicting."""
