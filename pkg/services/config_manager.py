"""Configuration Manager for numerical settings and figure presets"""
import json
import logging
import os
from pathlib import Path
from typing import Any, Dict, List, Optional

from pydantic import ValidationError

from models.parameters import QuadConfig
from models.phase_space import GridPreset
from utils.error_handler import ConfigurationNotFoundError, ConfigurationValidationError

logger = logging.getLogger(__name__)

TOOL_VERSION = "1.0.0"

DEFAULT_PRESET_DIR = Path(__file__).resolve().parent.parent / 'config' / 'presets'


def _parse_int(value: Optional[str], default: int, minimum: int = 1, maximum: int = 256) -> int:
    """Parse int from env with bounds."""
    if value is None or value == "":
        return default
    try:
        parsed = int(value)
    except ValueError:
        logger.warning(f"Ignoring non-integer setting '{value}', using {default}")
        return default
    return min(max(parsed, minimum), maximum)


def _parse_float(value: Optional[str], default: float) -> float:
    """Parse a positive float from env."""
    if value is None or value == "":
        return default
    try:
        parsed = float(value)
    except ValueError:
        logger.warning(f"Ignoring non-numeric setting '{value}', using {default}")
        return default
    if not parsed > 0.0:
        logger.warning(f"Ignoring non-positive setting '{value}', using {default}")
        return default
    return parsed


class ConfigManager:
    """Manages numerical configuration from environment variables and preset files"""

    def __init__(self):
        """Initialize configuration manager"""
        self._preset_cache: Dict[str, GridPreset] = {}

        self.config = {
            'threads': _parse_int(os.getenv('CSWIGNER_THREADS'), default=os.cpu_count() or 1),
            'residue_tol': _parse_float(os.getenv('CSWIGNER_RESIDUE_TOL'), 1e-9),
            'quad_rel_tol': _parse_float(os.getenv('CSWIGNER_QUAD_REL_TOL'), 1e-10),
            'quad_abs_tol': _parse_float(os.getenv('CSWIGNER_QUAD_ABS_TOL'), 1e-12),
            'quad_max_depth': _parse_int(os.getenv('CSWIGNER_QUAD_MAX_DEPTH'), default=50, maximum=200),
            'window_sigmas': _parse_float(os.getenv('CSWIGNER_WINDOW_SIGMAS'), 12.0),
            'preset_dir': Path(os.getenv('CSWIGNER_PRESET_DIR') or DEFAULT_PRESET_DIR),
            'log_level': os.getenv('LOG_LEVEL', 'WARNING'),
            'log_json': os.getenv('LOG_JSON', 'true').lower() in ('1', 'true', 'yes'),
            'log_file_path': os.getenv('LOG_FILE_PATH') or None,
        }

        logger.debug("Configuration loaded from environment variables")

    def get(self, key: str, default: Any = None) -> Any:
        """Get configuration value by key"""
        return self.config.get(key, default)

    def quad_config(self) -> QuadConfig:
        """Quadrature settings assembled from the environment"""
        return QuadConfig(
            rel_tol=self.config['quad_rel_tol'],
            abs_tol=self.config['quad_abs_tol'],
            max_depth=self.config['quad_max_depth'],
            window_halfwidth_sigmas=self.config['window_sigmas'],
        )

    def list_presets(self) -> List[str]:
        """Names of the preset files in the preset directory"""
        preset_dir = Path(self.config['preset_dir'])
        if not preset_dir.is_dir():
            return []
        return sorted(path.stem for path in preset_dir.glob('*.json'))

    def get_preset(self, name: str) -> GridPreset:
        """
        Load and validate a figure preset from JSON file

        Args:
            name: Preset identifier, the file stem

        Returns:
            Validated GridPreset object

        Raises:
            ConfigurationNotFoundError: If the preset file doesn't exist
            ConfigurationValidationError: If the preset is invalid
        """
        if name in self._preset_cache:
            logger.debug(f"Retrieved preset '{name}' from cache")
            return self._preset_cache[name]

        preset_file = Path(self.config['preset_dir']) / f"{name}.json"
        if not preset_file.exists():
            logger.warning(f"Preset file not found: {preset_file}")
            raise ConfigurationNotFoundError(f"Preset not found: {name}")

        try:
            with open(preset_file, 'r', encoding='utf-8') as f:
                preset_data = json.load(f)
        except json.JSONDecodeError as e:
            logger.error(f"Invalid JSON in preset file {preset_file}: {e}")
            raise ConfigurationValidationError(f"Invalid JSON in preset {name}: {str(e)}") from e

        preset = self.validate_preset(preset_data)
        self._preset_cache[name] = preset
        logger.info(f"Loaded and validated preset '{name}'")
        return preset

    def validate_preset(self, preset_dict: dict) -> GridPreset:
        """
        Validate preset structure using Pydantic

        Raises:
            ConfigurationValidationError: If the preset is invalid
        """
        try:
            return GridPreset(**preset_dict)
        except ValidationError as e:
            logger.error(f"Preset validation failed: {e}")
            raise ConfigurationValidationError(f"Invalid preset: {str(e)}") from e

    def invalidate_preset_cache(self, name: Optional[str] = None):
        """
        Invalidate preset cache for hot-reload

        Args:
            name: Specific preset to invalidate, or None to clear all
        """
        if name:
            if self._preset_cache.pop(name, None) is not None:
                logger.info(f"Invalidated cache for preset '{name}'")
        else:
            self._preset_cache.clear()
            logger.info("Cleared all preset cache")
