import os
import sys

import pytest

# keep catalog caches local to the workspace so test runs are self-contained
os.environ.setdefault("LPTLAB_CACHE_DIR", os.path.join(os.path.dirname(__file__), "_catalog_cache"))

from lptlab.graphs import enumerate_connected_graphs  # noqa: E402


@pytest.fixture(scope="session")
def connected_catalog():
    """Connected catalog up to n = 6, shared across test modules."""
    return {n: list(enumerate_connected_graphs(n)) for n in range(1, 7)}


@pytest.fixture(scope="session")
def jobs():
    return min(8, os.cpu_count() or 1)


def pytest_addoption(parser):
    parser.addoption(
        "--acceptance-jobs",
        type=int,
        default=min(8, os.cpu_count() or 1),
        help="worker count for the acceptance sweeps",
    )
