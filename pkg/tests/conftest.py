from __future__ import annotations

import pytest

from cli.cache import clear_cache
from cli.config import reset_config
from core.generators import gen_balanced, gen_path, gen_wings
from core.tree import build_tree


@pytest.fixture(autouse=True)
def isolated_config(monkeypatch, tmp_path):
    """Each test sees default settings with outputs under tmp_path."""
    for name in ("EVOTRACK_JOBS", "EVOTRACK_LOG_LEVEL", "EVOTRACK_AUDIT_INTERVAL", "EVOTRACK_BFS_BUDGET"):
        monkeypatch.delenv(name, raising=False)
    monkeypatch.setenv("EVOTRACK_OUTPUT_DIR", str(tmp_path / "runs"))
    reset_config()
    yield
    reset_config()
    clear_cache()


@pytest.fixture
def path4():
    return gen_path(4)


@pytest.fixture
def path8():
    return gen_path(8)


@pytest.fixture
def binary15():
    return gen_balanced(15, 2)


@pytest.fixture
def wings23():
    return gen_wings(2, 3)


@pytest.fixture
def spider():
    """Center 0 with legs 0-1-2, 0-3-4 and 0-5."""
    return build_tree([(0, 1), (1, 2), (0, 3), (3, 4), (0, 5)])
