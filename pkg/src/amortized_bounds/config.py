"""Configuration management for amortized-bounds."""

import os
import yaml
from pathlib import Path
from typing import Dict, Any, Optional
from pydantic import BaseModel, Field, ValidationError

from .utils.errors import ConfigurationError


class HarnessConfig(BaseModel):
    """Default generator settings for the verification harness."""

    seed: int = 42
    max_size: int = Field(default=64, ge=0)
    trials: int = Field(default=1000, ge=0)
    trace_len: int = Field(default=50, ge=0)


class PerformanceConfig(BaseModel):
    """Configuration for performance settings."""

    cache_size: int = Field(default=32, ge=1)
    max_workers: int = Field(default=4, ge=1)


class LoggingConfig(BaseModel):
    """Configuration for logging."""

    level: str = "INFO"
    format: str = "text"
    file: Optional[str] = None


class AmortizedBoundsConfig(BaseModel):
    """Main configuration class for amortized-bounds."""

    harness: HarnessConfig = Field(default_factory=HarnessConfig)
    performance: PerformanceConfig = Field(default_factory=PerformanceConfig)
    logging: LoggingConfig = Field(default_factory=LoggingConfig)


def get_default_config_path() -> Path:
    """Get the default configuration file path."""
    current_dir = Path.cwd()
    config_files = [
        current_dir / "amortized-bounds.yaml",
        current_dir / "amortized-bounds.yml",
        current_dir / "config" / "amortized-bounds.yaml",
    ]

    for config_file in config_files:
        if config_file.exists():
            return config_file

    return current_dir / "config" / "amortized-bounds.yaml"


def load_config(config_path: Optional[str] = None) -> AmortizedBoundsConfig:
    """Load configuration from file or environment variables."""
    path: Path
    if config_path is None:
        path = get_default_config_path()
    else:
        path = Path(config_path)
        if not path.exists():
            raise ConfigurationError(f"Config file not found: {path}")

    config_dict: Dict[str, Any] = {}

    if path.exists():
        try:
            with open(path, "r") as f:
                file_config = yaml.safe_load(f)
                if file_config:
                    if not isinstance(file_config, dict):
                        raise ConfigurationError(f"Config file {path} must contain a mapping")
                    config_dict.update(file_config)
        except yaml.YAMLError as e:
            raise ConfigurationError(f"Failed to load config from {path}: {e}")

    env_overrides = _get_env_overrides()
    _deep_update(config_dict, env_overrides)

    try:
        return AmortizedBoundsConfig(**config_dict)
    except ValidationError as e:
        raise ConfigurationError(f"Invalid configuration: {e}")


_INT_OVERRIDES = {
    "AMORTIZED_SEED": ("harness", "seed"),
    "AMORTIZED_MAX_SIZE": ("harness", "max_size"),
    "AMORTIZED_TRIALS": ("harness", "trials"),
    "AMORTIZED_TRACE_LEN": ("harness", "trace_len"),
    "MAX_WORKERS": ("performance", "max_workers"),
    "CACHE_SIZE": ("performance", "cache_size"),
}


def _get_env_overrides() -> Dict[str, Any]:
    """Get configuration overrides from environment variables."""
    overrides: Dict[str, Any] = {}

    for env_name, (section, key) in _INT_OVERRIDES.items():
        raw = os.getenv(env_name)
        if raw:
            try:
                overrides.setdefault(section, {})[key] = int(raw)
            except ValueError:
                pass

    # Logging configuration
    if os.getenv("LOG_LEVEL"):
        overrides.setdefault("logging", {})["level"] = os.getenv("LOG_LEVEL")

    if os.getenv("LOG_FILE"):
        overrides.setdefault("logging", {})["file"] = os.getenv("LOG_FILE")

    if os.getenv("LOG_FORMAT"):
        overrides.setdefault("logging", {})["format"] = os.getenv("LOG_FORMAT")

    return overrides


def _deep_update(base_dict: Dict[str, Any], update_dict: Dict[str, Any]) -> None:
    """Deep update a dictionary with another dictionary."""
    for key, value in update_dict.items():
        if key in base_dict and isinstance(base_dict[key], dict) and isinstance(value, dict):
            _deep_update(base_dict[key], value)
        else:
            base_dict[key] = value
