import os

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture
def home(tmp_path, monkeypatch):
    monkeypatch.setenv("QAFFINE_HOME", str(tmp_path / "ws"))
    return tmp_path / "ws"
