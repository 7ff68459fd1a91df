# Copyright (C) 2024 Vrije Universiteit Brussel. All rights reserved.
# SPDX-License-Identifier: MIT
"""
Reference values the constructions are checked against.

``SPRM_TABLE`` holds the parameter list of SPRM(2, 4, gamma) for every gamma
in [0, 10): the rho vector, the set family (1-based elements), gamma', k and n.

``BLOCKLENGTH_TABLE`` maps k in [2, 32] to the block lengths (n1, n2) for
tau = 3, 4, 8, 16, where n1 is achieved by the shortened PRM constructions
and n2 is the best previously published value. The n2 column is reference
data only and is never recomputed.
"""

from typing import Dict, Tuple

SPRM_TABLE_M = 5
SPRM_TABLE_R = 2

# gamma -> (rho, family, gamma', k, n)
SPRM_TABLE: Dict[int, Tuple[Tuple[int, ...], Tuple[Tuple[int, ...], ...], int, int, int]] = {
    0: ((0, 0, 0), (), 0, 10, 26),
    1: ((0, 0, 1), ((1, 2),), 1, 9, 25),
    2: ((0, 0, 2), ((1, 2), (1, 3)), 2, 8, 24),
    3: ((0, 1, 0), ((1, 2, 3),), 4, 7, 22),
    4: ((0, 1, 1), ((1, 2, 3), (1, 4)), 5, 6, 21),
    5: ((0, 2, 0), ((1, 2, 3), (1, 2, 4)), 7, 5, 19),
    6: ((1, 0, 0), ((1, 2, 3, 4),), 11, 4, 15),
    7: ((1, 0, 1), ((1, 2, 3, 4), (1, 5)), 12, 3, 14),
    8: ((1, 1, 0), ((1, 2, 3, 4), (1, 2, 5)), 14, 2, 12),
    9: ((2, 0, 0), ((1, 2, 3, 4), (1, 2, 3, 5)), 18, 1, 8),
}

BLOCKLENGTH_TAUS = (3, 4, 8, 16)

# k -> ((n1, n2) for tau = 3, 4, 8, 16)
BLOCKLENGTH_TABLE: Dict[int, Tuple[Tuple[int, int], ...]] = {
    2: ((5, 5), (6, 6), (12, 12), (24, 24)),
    3: ((6, 6), (7, 7), (14, 14), (28, 28)),
    4: ((8, 8), (9, 9), (15, 15), (30, 30)),
    5: ((9, 10), (10, 11), (19, 19), (31, 31)),
    6: ((10, 11), (11, 12), (21, 21), (39, 40)),
    7: ((12, 12), (13, 13), (22, 23), (43, 43)),
    8: ((13, 13), (14, 14), (24, 28), (45, 54)),
    9: ((14, 14), (15, 15), (25, 30), (46, 60)),
    10: ((15, 17), (16, 18), (26, 35), (50, 61)),
    11: ((17, 19), (18, 20), (30, 37), (52, 67)),
    12: ((18, 20), (19, 21), (32, 39), (53, 69)),
    13: ((19, 21), (20, 22), (33, 41), (55, 71)),
    14: ((20, 22), (21, 23), (35, 43), (56, 74)),
    15: ((21, 23), (22, 24), (36, 44), (57, 80)),
    16: ((23, 24), (24, 25), (37, 45), (65, 84)),
    17: ((24, 27), (25, 28), (39, 46), (69, 86)),
    18: ((25, 28), (26, 29), (40, 47), (71, 88)),
    19: ((26, 29), (27, 30), (41, 48), (72, 90)),
    20: ((27, 30), (28, 31), (42, 49), (76, 92)),
    21: ((28, 31), (29, 32), (46, 50), (78, 94)),
    22: ((30, 32), (31, 33), (48, 51), (79, 100)),
    23: ((31, 33), (32, 34), (49, 52), (81, 104)),
    24: ((32, 34), (33, 35), (51, 53), (82, 106)),
    25: ((33, 35), (34, 36), (52, 54), (83, 108)),
    26: ((34, 38), (35, 39), (53, 55), (87, 110)),
    27: ((35, 39), (36, 40), (55, 56), (89, 112)),
    28: ((36, 40), (37, 41), (56, 57), (90, 114)),
    29: ((38, 41), (39, 42), (57, 58), (92, 116)),
    30: ((39, 42), (40, 43), (58, 59), (93, 118)),
    31: ((40, 43), (41, 44), (60, 60), (94, 120)),
    32: ((41, 44), (42, 45), (61, 61), (96, 122)),
}


def n1(k: int, tau: int) -> int:
    return BLOCKLENGTH_TABLE[k][BLOCKLENGTH_TAUS.index(tau)][0]


def n2(k: int, tau: int) -> int:
    return BLOCKLENGTH_TABLE[k][BLOCKLENGTH_TAUS.index(tau)][1]
