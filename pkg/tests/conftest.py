# Copyright (C) 2024 Vrije Universiteit Brussel. All rights reserved.
# SPDX-License-Identifier: MIT

import numpy as np
import pytest

from prmpir.prm import build_prm
from prmpir.shorten import build_sprm


@pytest.fixture(scope="session")
def parity_code():
    """The (5, 4) two-server code: four data servers and one parity server."""
    return build_prm(4, 3)


@pytest.fixture(scope="session")
def prm_2_3():
    """PRM(2, 3), an (11, 6) code with tau = 4."""
    return build_prm(4, 2)


@pytest.fixture(scope="session")
def sprm_2_4_4():
    """SPRM(2, 4, 4), a (21, 6) code with tau = 8."""
    return build_sprm(5, 2, 4)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
