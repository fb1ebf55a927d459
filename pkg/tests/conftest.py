import shutil
from pathlib import Path

import pytest

from baltic_dst.model.bundle import load_bundle
from baltic_dst.service import default_model_dir


@pytest.fixture(scope="session")
def default_bundle():
    return load_bundle(default_model_dir())


@pytest.fixture(scope="session")
def default_network(default_bundle):
    return default_bundle.network


@pytest.fixture()
def bundle_copy(tmp_path):
    """Writable copy of the shipped bundle."""
    dst = tmp_path / "bundle"
    shutil.copytree(default_model_dir(), dst)
    store = dst / "scenarios.json"
    if store.exists():
        store.unlink()
    return dst
