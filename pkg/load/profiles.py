import os

from typing import List

PROFILE_DIRECTORY = os.path.join(
    os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "data", "profiles"
)


class InvalidProfileError(Exception):
    """
    Exception raised for unknown profile names in Profiles.

    Attributes:
    ----------
    message : str
        Explanation of the error.
    """


class Profiles:
    """
    Class containing the shipped configuration profiles and methods to retrieve their paths.

    Attributes:
    -----------
    names : List[str]
        List of profile names.
    descriptions : List[str]
        List of profile descriptions.
    paths : List[str]
        List of profile paths.
    """

    def __init__(self) -> None:
        self.names: List[str] = [
            "table-i",
            "measured",
        ]

        self.descriptions: List[str] = [
            "Reference device table, noise temperature from the amplifier chain",
            "Reference device table with the measured 460 mK noise temperature",
        ]

        self.paths: List[str] = [
            os.path.join(PROFILE_DIRECTORY, "table_i.json"),
            os.path.join(PROFILE_DIRECTORY, "measured.json"),
        ]

    def get_path_by_name(self, name: str) -> str:
        """
        Get the profile path based on the profile name.

        Parameters:
        -----------
        name : str
            The profile name.

        Returns:
        --------
        str
            The profile path.

        Raises:
        -------
        InvalidProfileError
            If the provided name is not in the list of all names.
        """
        if name not in self.names:
            raise InvalidProfileError(
                f"The selected profile {name} is not in the list of all profiles {self.names}."
            )
        return self.paths[self.names.index(name)]
