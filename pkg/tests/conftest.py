import numpy as np
import pytest

from qdcss.config.settings import settings
from qdcss.services.catalog import get_code_spec
from qdcss.services.code_service import build_code


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="run tests marked slow")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture(autouse=True)
def isolated_paths(tmp_path, monkeypatch):
    """Keep cache and output files inside the test's temporary directory."""
    monkeypatch.setattr(settings, "CACHE_DIR", tmp_path / "cache")
    monkeypatch.setattr(settings, "OUTPUT_DIR", tmp_path / "output")
    return tmp_path


@pytest.fixture
def catalog_code():
    def _build(name: str):
        return build_code(get_code_spec(name), use_cache=False)

    return _build


@pytest.fixture
def cb3_small(catalog_code):
    """[[128, 64]] Construction B code with v = 3."""
    return catalog_code("CB3_128_64")
