import importlib.resources as resources
from pathlib import Path

import pytest

from lfunlab.coefficients import generate_delta


@pytest.fixture(scope="session")
def delta_1k():
    return generate_delta(1000)


@pytest.fixture(scope="session")
def delta_10k():
    return generate_delta(10_000)


@pytest.fixture(scope="session")
def delta_100k():
    return generate_delta(100_000)


@pytest.fixture(scope="session")
def zeros_path() -> Path:
    return Path(resources.files("lfunlab") / "data" / "zeta_zeros_100.txt")
