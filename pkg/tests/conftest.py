import sys
from pathlib import Path

import pytest

# Add the project root to Python path so cli.py and json_schema_generator.py import
project_root = Path(__file__).parent.parent
sys.path.append(str(project_root))

from sparsecut.config import Config
from sparsecut.graph import cluster_graph, complete, cycle, disjoint_union
from sparsecut.sdp import embed_integral_cut

HALF = frozenset(range(4))


@pytest.fixture
def c8():
    """The 8-cycle: phi = 1/4 on any arc of four vertices."""
    return cycle(8)


@pytest.fixture
def k5():
    return complete(5)


@pytest.fixture
def two_k4():
    """Two disjoint copies of K4 (3-regular, disconnected)."""
    return disjoint_union(complete(4), complete(4))


@pytest.fixture
def clusters():
    """Two K4 blocks joined by two rewired edges; each block has expansion 1/6."""
    return cluster_graph(2, 4, 1)


@pytest.fixture
def half_cut(c8):
    """Integral solution of the arc {0, 1, 2, 3} on C8 (objective exactly 1/4)."""
    return embed_integral_cut(c8, HALF)


@pytest.fixture
def config():
    """Defaults with the expensive estimates turned down for unit tests."""
    return Config(LIPSCHITZ_ESTIMATE_TRIALS=5, MAX_WORKERS=2)
