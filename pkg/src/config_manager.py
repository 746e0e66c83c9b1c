"""
Configuration manager for the engine.

Resolves values from config.py, settings.py and the environment with a clear
precedence, and locates the bundled example inputs under saves/examples.
"""

import os

import config as config_module
from settings import SETTINGS as settings_module_settings
from src.errors import InputError


ENVIRONMENT_KEYS = {
    config_module.SIZE_GUARD_ENV: 'SIZE_GUARD',
    config_module.RANDOM_SUITE_SIZE_ENV: 'RANDOM_SUITE_SIZE',
}


class ConfigManager:
    """
    Manages configuration with clear precedence: config defaults, then
    settings, then environment variables. Explicit CLI flags are applied by
    the caller through update_settings.
    """

    def __init__(self, environ=None):
        self._environ = os.environ if environ is None else environ

        # Start with config defaults
        self._config_values = self._get_config_defaults()

        # Override with settings values, then the environment
        self._apply_settings_overrides()
        self._apply_environment_overrides()

    def _get_config_defaults(self):
        """Extract all config values from the config module."""
        config_values = {}
        for attr_name in dir(config_module):
            if not attr_name.startswith('_') and attr_name.isupper():
                config_values[attr_name] = getattr(config_module, attr_name)
        return config_values

    def _apply_settings_overrides(self):
        for key, value in settings_module_settings.items():
            self._config_values[key.upper()] = value

    def _apply_environment_overrides(self):
        for env_key, config_key in ENVIRONMENT_KEYS.items():
            raw = self._environ.get(env_key)
            if raw is None or raw == '':
                continue
            try:
                value = int(raw)
            except ValueError:
                raise InputError(f"{env_key} must be a positive integer, got {raw!r}")
            if value < 1:
                raise InputError(f"{env_key} must be a positive integer, got {raw!r}")
            self._config_values[config_key] = value

    def get(self, key, default=None):
        """Get a configuration value with optional default."""
        return self._config_values.get(key.upper(), default)

    def update_settings(self, settings_dict):
        """Apply explicit overrides (CLI flags); None values are ignored."""
        for key, value in settings_dict.items():
            if value is not None:
                self._config_values[key.upper()] = value

    def examples_dir(self):
        root = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
        return os.path.join(root, 'saves', 'examples')

    def get_available_examples(self):
        """Names of the bundled example files, without the .json extension."""
        examples_dir = self.examples_dir()
        if not os.path.exists(examples_dir):
            return []
        return sorted(name[:-5] for name in os.listdir(examples_dir) if name.endswith('.json'))

    def example_path(self, name):
        return os.path.join(self.examples_dir(), f"{name}.json")


# Global configuration manager instance, built on first use so that the
# environment is read at call time rather than at import time.
_config_manager = None


def _manager():
    global _config_manager
    if _config_manager is None:
        _config_manager = ConfigManager()
    return _config_manager


def get_config(key, default=None):
    return _manager().get(key, default)


def update_config_with_settings(settings_dict):
    _manager().update_settings(settings_dict)


def reload_config(environ=None):
    """Rebuild the global manager (tests and the CLI call this)."""
    global _config_manager
    _config_manager = ConfigManager(environ)
    return _config_manager


def size_guard():
    return int(get_config('SIZE_GUARD'))
