from .base_loader import BaseConfigLoader
from .config_error import ConfigError
from .config_from_path import ConfigFromPath, InvalidPathError
from .config_from_profile import ConfigFromProfile
from .experiment_config import ExperimentConfig, load_reference_profile
from .grids import LinearGrid, StepGrid
from .profiles import InvalidProfileError, Profiles


__all__ = [
    "BaseConfigLoader",
    "ConfigError",
    "ConfigFromPath",
    "ConfigFromProfile",
    "ExperimentConfig",
    "InvalidPathError",
    "InvalidProfileError",
    "LinearGrid",
    "Profiles",
    "StepGrid",
    "load_reference_profile",
]
