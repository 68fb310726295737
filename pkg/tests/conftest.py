"""
Pytest configuration and shared fixtures for Cone Metric Toolkit tests.
"""

import pytest
import json
import tempfile
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent.parent))

from src.models import SignatureParam


# ============================================================================
# SIGNATURE FIXTURES
# ============================================================================

@pytest.fixture
def sig_half():
    """a = 1/2, the cusp case alpha = 0."""
    return SignatureParam(0.5)


@pytest.fixture
def sig_quarter():
    """a = 1/4, cone angle alpha = 1/2."""
    return SignatureParam(0.25)


@pytest.fixture(params=[0.1, 0.25, 0.5, 0.75, 0.9])
def sig(request):
    """Signature parameters spread over (0, 1)."""
    return SignatureParam(request.param)


@pytest.fixture(params=[0.0, 0.25, 0.5, 0.75])
def cone_sig(request):
    """Representatives a = (1 - alpha)/2 for several cone angles."""
    return SignatureParam.from_alpha(request.param)


# ============================================================================
# TEMPORARY FILE FIXTURES
# ============================================================================

@pytest.fixture
def temp_dir():
    """Create a temporary directory for test files."""
    with tempfile.TemporaryDirectory() as tmpdir:
        yield Path(tmpdir)


@pytest.fixture
def temp_config_file(temp_dir):
    """Create a temporary config.json file."""
    config_path = temp_dir / "config.json"
    config_data = {
        "OUTPUT_DIGITS": 10,
        "GRID_FORMAT": "json",
        "GRID_WORKERS": 2,
        "VERIFY_LEVEL": "quick",
        "VERIFY_SEED": 7,
        "LOG_FILE": str(temp_dir / "test.log"),
        "VERBOSE": False
    }
    with open(config_path, 'w') as f:
        json.dump(config_data, f, indent=4)
    return config_path


@pytest.fixture
def isolated_config(temp_dir, monkeypatch):
    """Point src.config at a config.json inside the temporary directory."""
    from src import config
    config_path = temp_dir / "config.json"
    monkeypatch.setattr(config, 'CONFIG_FILE', str(config_path))
    return config_path


# ============================================================================
# UTILITY FIXTURES
# ============================================================================

@pytest.fixture
def capture_logs(caplog):
    """Capture log output for testing."""
    import logging
    caplog.set_level(logging.DEBUG)
    return caplog


@pytest.fixture
def mock_status_fn():
    """Mock status function that collects status messages."""
    messages = []

    def status_fn(msg):
        messages.append(msg)

    status_fn.messages = messages
    return status_fn
