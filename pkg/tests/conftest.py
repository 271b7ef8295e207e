import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from tournaplex.digraph import bundled_digraph


@pytest.fixture(scope="session")
def g1():
    return bundled_digraph("g1")


@pytest.fixture(scope="session")
def g2():
    return bundled_digraph("g2")
