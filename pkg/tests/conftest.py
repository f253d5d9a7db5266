import random

import orjson
import pytest

from app.config import clear_settings_cache
from app.logging_config import setup_logging
from app.models.schemas import Caps
from app.services.positivity import PositivityService


@pytest.fixture(autouse=True)
def _reset_logging():
    """CLI runs bind the log handler to the runner's stderr; rebind afterwards."""
    yield
    setup_logging(level="WARNING")


@pytest.fixture(autouse=True)
def _fresh_settings(monkeypatch):
    for key in ("MAX_TERMS", "MAX_DEPTH", "MAX_HANKEL_ORDER", "MAX_MINOR_ORDER", "MAX_QTP_MATRIX_SIZE"):
        monkeypatch.delenv(key, raising=False)
    clear_settings_cache()
    yield
    clear_settings_cache()


@pytest.fixture
def caps() -> Caps:
    return Caps.from_settings()


@pytest.fixture
def positivity(caps) -> PositivityService:
    return PositivityService(caps)


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20240611)


@pytest.fixture
def write_json(tmp_path):
    """Write a JSON document to a temp file and return its path."""
    def _write(name: str, data) -> str:
        path = tmp_path / name
        path.write_bytes(orjson.dumps(data))
        return str(path)
    return _write
