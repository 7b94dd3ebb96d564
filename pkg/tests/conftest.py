"""
Fixtures compartilhadas pelos testes.
"""

import logging
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent.parent))

from src.config import DATA_DIR
from src.utils.samples import chain_grid, grid20, six_bus_grid, two_bus_grid


@pytest.fixture(autouse=True)
def _reset_logging():
    """Remove handlers instalados por ``configure_logging`` durante o teste."""
    yield
    logger = logging.getLogger("src")
    for handler in list(logger.handlers):
        logger.removeHandler(handler)


@pytest.fixture
def data_dir():
    return DATA_DIR


@pytest.fixture
def two_bus():
    return two_bus_grid()


@pytest.fixture
def six_bus():
    return six_bus_grid()


@pytest.fixture
def chain12():
    return chain_grid()


@pytest.fixture
def grid_20():
    return grid20()

