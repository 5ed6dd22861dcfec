"""Configuration management for sparsecut.

This module provides the Config class that holds solver tolerances,
instance caps, retry budgets and the measured-constant knobs used by the
structure and rounding pipelines.
"""

import json
import logging
import os
from typing import Any, Dict, List, Type, Union, get_args, get_origin

from ..errors import InvalidArgumentError
from .variables.base import BaseConfig
from .variables.default import DEFAULT_CONFIG

logger = logging.getLogger(__name__)

# Only the log level may come from the environment.
ENV_PREFIX = "SPARSECUT_"
ENV_OVERRIDABLE = ("LOG_LEVEL",)

PARTITION_SCHEMES = ("grid", "ckr")
LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")
# Keys that must be strictly positive.
POSITIVE_KEYS = (
    "EIGEN_TOL", "SDP_TOL", "SDP_SOLVER_EPS", "SDP_MAX_ITERS", "DIM_REDUCE_RETRIES",
    "SA_RETRIES", "SA_SUCCESS_TARGET", "SA_RESOLVE_ROUNDS", "BEST_OF_N", "MAX_WORKERS",
)


class Config:
    """Configuration manager for sparsecut.

    Handles loading a JSON configuration file, merging it over the defaults
    and exposing each key as a lowercase attribute.

    Attributes:
        CONFIG_DIR: Directory containing bundled configuration files.
        config_path: Path to the configuration file, if any.
    """

    CONFIG_DIR = os.path.join(os.path.dirname(__file__), "variables")

    def __init__(self, config_path: str | None = None, **overrides: Any):
        """Initialize the config class.

        Args:
            config_path: Optional path to a JSON configuration file.
            **overrides: UPPER_CASE keys that replace file or default values.
        """
        self.config_path = config_path
        config_to_use = dict(self.load_config(config_path))
        for key, value in overrides.items():
            if key not in BaseConfig.__annotations__:
                raise InvalidArgumentError(f"Unknown configuration key: {key}")
            config_to_use[key] = value
        self._set_attributes(config_to_use)
        self.partition_scheme = self.parse_partition_scheme(self.partition_scheme)
        self.log_level = self.parse_log_level(self.log_level)
        for key in POSITIVE_KEYS:
            self.parse_positive(key, getattr(self, key.lower()))

    def _set_attributes(self, config: Dict[str, Any]) -> None:
        """Set configuration attributes from config dictionary.

        Args:
            config: Dictionary of configuration key-value pairs.
        """
        for key, value in config.items():
            if key in ENV_OVERRIDABLE:
                env_value = os.getenv(ENV_PREFIX + key)
                if env_value is not None:
                    value = self.convert_env_value(key, env_value, BaseConfig.__annotations__[key])
            setattr(self, key.lower(), value)

    @classmethod
    def load_config(cls, config_path: str | None) -> Dict[str, Any]:
        """Load a configuration file merged over the defaults."""
        if config_path is None:
            return DEFAULT_CONFIG

        if not os.path.exists(config_path):
            if config_path != "default":
                logger.warning(f"Configuration not found at '{config_path}'. Using default configuration.")
                if not config_path.endswith(".json"):
                    logger.warning(f"Do you mean '{config_path}.json'?")
            return DEFAULT_CONFIG

        with open(config_path, "r") as f:
            custom_config = json.load(f)

        unknown = sorted(set(custom_config) - set(BaseConfig.__annotations__))
        if unknown:
            raise InvalidArgumentError(f"Unknown configuration key(s): {', '.join(unknown)}")

        # Merge with default config to ensure all keys are present
        merged_config = DEFAULT_CONFIG.copy()
        merged_config.update(custom_config)
        return merged_config

    @classmethod
    def list_available_configs(cls) -> List[str]:
        """List all available configuration names."""
        configs = ["default"]
        for file in os.listdir(cls.CONFIG_DIR):
            if file.endswith(".json"):
                configs.append(file[:-5])
        return configs

    @staticmethod
    def parse_partition_scheme(scheme: str) -> str:
        """Validate the padded partition scheme name."""
        if scheme not in PARTITION_SCHEMES:
            raise InvalidArgumentError(
                f"Invalid partition scheme: {scheme}. Valid options are: {', '.join(PARTITION_SCHEMES)}"
            )
        return scheme

    @staticmethod
    def parse_positive(key: str, value: Any) -> None:
        if not isinstance(value, (int, float)) or isinstance(value, bool) or value <= 0:
            raise InvalidArgumentError(f"{key} must be positive, got {value!r}")

    @staticmethod
    def parse_log_level(level: str) -> str:
        """Validate and normalise a log level name."""
        level = str(level).upper()
        if level not in LOG_LEVELS:
            raise InvalidArgumentError(f"Invalid log level: {level}. Valid options are: {', '.join(LOG_LEVELS)}")
        return level

    @staticmethod
    def convert_env_value(key: str, env_value: str, type_hint: Type) -> Any:
        """Convert environment variable to the appropriate type based on the type hint."""
        origin = get_origin(type_hint)
        args = get_args(type_hint)

        if origin is Union:
            for arg in args:
                if arg is type(None):
                    if env_value.lower() in ("none", "null", ""):
                        return None
                else:
                    try:
                        return Config.convert_env_value(key, env_value, arg)
                    except ValueError:
                        continue
            raise InvalidArgumentError(f"Cannot convert {env_value} to any of {args}")

        if type_hint is bool:
            return env_value.lower() in ("true", "1", "yes", "on")
        elif type_hint is int:
            return int(env_value)
        elif type_hint is float:
            return float(env_value)
        elif type_hint in (str, Any):
            return env_value
        else:
            raise InvalidArgumentError(f"Unsupported type {type_hint} for key {key}")

    def to_dict(self) -> Dict[str, Any]:
        """Return the effective configuration with UPPER_CASE keys."""
        return {key: getattr(self, key.lower()) for key in BaseConfig.__annotations__}
