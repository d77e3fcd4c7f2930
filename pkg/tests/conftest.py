"""
Pytest configuration and fixtures for the Wigner function tests
"""
import pytest
from pathlib import Path
from hypothesis import settings, Verbosity

from models.parameters import QuadConfig
from services.config_manager import ConfigManager
from services.wigner_service import WignerService

REPO_ROOT = Path(__file__).resolve().parent.parent
PRESET_DIR = REPO_ROOT / 'config' / 'presets'

ENV_KEYS = (
    'CSWIGNER_THREADS', 'CSWIGNER_RESIDUE_TOL', 'CSWIGNER_QUAD_REL_TOL', 'CSWIGNER_QUAD_ABS_TOL',
    'CSWIGNER_QUAD_MAX_DEPTH', 'CSWIGNER_WINDOW_SIGMAS', 'CSWIGNER_PRESET_DIR',
    'LOG_LEVEL', 'LOG_JSON', 'LOG_FILE_PATH',
)

# Exact polynomial evaluation is cheap but quadrature is not; keep examples bounded
settings.register_profile("dev", max_examples=25, deadline=None, verbosity=Verbosity.normal)
settings.load_profile("dev")


@pytest.fixture
def clean_env(monkeypatch):
    """Remove every setting ConfigManager reads from the environment"""
    for key in ENV_KEYS:
        monkeypatch.delenv(key, raising=False)
    return monkeypatch


@pytest.fixture
def config_manager(clean_env):
    """ConfigManager on defaults, reading the shipped figure presets"""
    clean_env.setenv('CSWIGNER_PRESET_DIR', str(PRESET_DIR))
    clean_env.setenv('CSWIGNER_THREADS', '2')
    return ConfigManager()


@pytest.fixture
def quad_config():
    return QuadConfig()


@pytest.fixture
def wigner_service(quad_config):
    return WignerService(quad_config)
