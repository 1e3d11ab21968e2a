import functools

import pytest

from saxl.catalog import build_entry, compute_entry


@functools.lru_cache(maxsize=None)
def action(name):
    return build_entry(name)


@functools.lru_cache(maxsize=None)
def report(name, method="all"):
    return compute_entry(action(name), method)


@pytest.fixture(scope="session")
def get_action():
    return action


@pytest.fixture(scope="session")
def get_report():
    return report


@pytest.fixture(autouse=True)
def _isolated_cache(tmp_path, monkeypatch):
    monkeypatch.setenv("SAXL_CACHE_DIR", str(tmp_path / "cache"))
