import json
import os

from typing import Any, Dict, Optional

from .base_loader import BaseConfigLoader


class InvalidPathError(Exception):
    """
    Exception raised for configuration paths that do not point to a file.

    Attributes:
    ----------
    message : str
        Explanation of the error.
    """


class ConfigFromPath(BaseConfigLoader):
    """
    Class to load an experiment configuration from a JSON file.
    """

    def __init__(self, path: str, overrides: Optional[Dict[str, Any]] = None) -> None:
        """
        Initialize ConfigFromPath.

        Parameters:
        -----------
        path : str
            Path of the JSON configuration file.
        overrides : Dict[str, Any], optional
            Entries applied on top of the file.

        Returns:
        --------
        None
        """
        super().__init__(overrides)
        self.load_and_validate(path)

    def load_raw(self, path: str) -> Dict[str, Any]:
        """
        Read the JSON document at path.

        Raises:
        -------
        InvalidPathError
            If the path is not a file.
        json.JSONDecodeError
            If the file is not valid JSON.
        """
        if not os.path.isfile(path):
            raise InvalidPathError(f"The specified path '{path}' is not a file.")
        try:
            with open(path, "r") as json_file:
                return json.load(json_file)
        except json.JSONDecodeError as e:
            raise json.JSONDecodeError(
                f"Error decoding JSON file '{path}': {e.msg}", e.doc, e.pos
            ) from e
