import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from fkc import catalog


@pytest.fixture(scope="session")
def atoms():
    """Named small complexes used across the suites."""
    return {
        "unknot": catalog.unknot(),
        "t2_3": catalog.torus_staircase(1, mirror=False),
        "t2_3m": catalog.torus_staircase(1, mirror=True),
        "t2_5": catalog.torus_staircase(2, mirror=False),
        "t2_5m": catalog.torus_staircase(2, mirror=True),
        "t2_7": catalog.torus_staircase(3, mirror=False),
        "t2_7m": catalog.torus_staircase(3, mirror=True),
        "c2": catalog.cn(2),
        "c3": catalog.cn(3),
        "c4": catalog.cn(4),
        "fig8": catalog.figure_eight_model(),
    }
