# Copyright (C) 2024 Vrije Universiteit Brussel. All rights reserved.
# SPDX-License-Identifier: MIT
"""
Binary projective Reed-Muller codes as PIR codes, shortened to any dimension.

A (n, k) PIR code with tau disjoint recovery sets per message symbol lets a
client emulate any tau-server PIR protocol over n servers that each store one
coded column, at storage overhead n/k instead of tau. This package builds such
codes from projective Reed-Muller codes, shortens them to every k, compares
their block lengths with the systematic lower bound and simulates private
retrieval over the resulting server arrays.

Modules:
    subsets     Subsets of [m] as bitmasks, binomials, colex ranking and the
                canonical symbol/coordinate order.
    gf2core     Binary matrices with packed rows, rank, brute-force minimum
                distance and generalized Hamming weights.
    prm         PRM(r, m-1): parameters, generator matrix, recovery sets,
                encoding and single-bit retrieval.
    shorten     rho decomposition, nested set families, SPRM codes, arbitrary
                shortening and puncturing.
    bounds      Systematic lower bound, best constructions for (k, tau), GHW
                bounds and the two reference tables.
    golden      Reference values for the tables.
    pirsim      Simulated servers, additive query sharing, retrieval and the
                chi-square privacy audit.
    verify      The acceptance suite run by ``prmpir verify``.
    cli         The ``prmpir`` command line.
    config      Defaults, guards and ``RunConfig``.
    errors      Exception hierarchy.
    logs        Logging setup.

Exported symbols (for ``from prmpir import ...``):
    SubsetMask, Gf2Matrix, CodeSpec, PirCode, build_prm, build_sprm,
    arbitrary_shorten, puncture, best_code, lb_systematic, setup,
    make_query_plan, execute, privacy_audit, PirCodeError.
"""

from .bounds import best_code, lb_systematic
from .errors import PirCodeError
from .gf2core import Gf2Matrix
from .pirsim import execute, make_query_plan, privacy_audit, setup
from .prm import CodeSpec, PirCode, build_prm
from .shorten import arbitrary_shorten, build_sprm, puncture
from .subsets import SubsetMask

__all__ = [
    "arbitrary_shorten",
    "best_code",
    "build_prm",
    "build_sprm",
    "CodeSpec",
    "execute",
    "Gf2Matrix",
    "lb_systematic",
    "make_query_plan",
    "PirCode",
    "PirCodeError",
    "privacy_audit",
    "puncture",
    "setup",
    "SubsetMask",
]
