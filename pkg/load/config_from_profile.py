from typing import Any, Dict, Optional

from .config_from_path import ConfigFromPath
from .profiles import Profiles


class ConfigFromProfile(ConfigFromPath):
    """
    Class to load an experiment configuration by the name of a shipped profile.

    Attributes:
    -----------
    profile : str
        Name of the loaded profile.
    """

    def __init__(self, profile: str = "table-i", overrides: Optional[Dict[str, Any]] = None) -> None:
        """
        Initialize ConfigFromProfile.

        Parameters:
        -----------
        profile : str, optional
            Profile name (default is "table-i").
        overrides : Dict[str, Any], optional
            Entries applied on top of the profile.

        Returns:
        --------
        None
        """
        self.profile = profile
        super().__init__(path=Profiles().get_path_by_name(profile), overrides=overrides)
