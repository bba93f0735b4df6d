import logging

from abc import ABC, abstractmethod
from typing import Any, Dict, Optional

from .config_error import ConfigError
from .experiment_config import ExperimentConfig, load_reference_profile, merge_onto

logger = logging.getLogger(__name__)


class BaseConfigLoader(ABC):
    """
    Abstract base class for loading experiment configurations.

    Attributes:
    -----------
    raw : Dict[str, Any]
        Merged configuration document in lab units.
    config : ExperimentConfig
        Validated configuration in SI units.
    """

    def __init__(self, overrides: Optional[Dict[str, Any]] = None) -> None:
        """
        Initialize the loader.

        Parameters:
        -----------
        overrides : Dict[str, Any], optional
            Entries applied on top of the loaded document (e.g. from the command line).
        """
        self.overrides: Dict[str, Any] = overrides or {}
        self.raw: Dict[str, Any] = {}
        self.config: Optional[ExperimentConfig] = None

    @abstractmethod
    def load_raw(self, source: str) -> Dict[str, Any]:
        """
        Abstract method to read a configuration document from a source.

        Args:
            source (str):
                The source to read from, either a path or a profile name.
        """
        pass

    def load_and_validate(self, source: str) -> ExperimentConfig:
        """
        Merge the document onto the reference profile, apply overrides and validate.
        """
        document = self.load_raw(source)
        if not isinstance(document, dict):
            raise ConfigError("<root>", f"expected a JSON object in {source}")
        reference = load_reference_profile()
        self.raw = merge_onto(merge_onto(reference, document), self.overrides)
        self.config = ExperimentConfig.from_dict(self.raw)
        logger.info(f"Loaded configuration {source} (hash {self.config.config_hash()[:12]})")
        return self.config

    def get_config(self) -> ExperimentConfig:
        """
        Get the loaded configuration.

        Returns:
            ExperimentConfig
                The validated configuration.
        """
        return self.config
