class ConfigError(Exception):
    """
    Exception raised for invalid configuration documents.

    Attributes:
    ----------
    field : str
        Dotted path of the offending entry (e.g. "sweep.power_dbm.step").
    message : str
        Explanation of the error.
    """

    def __init__(self, field: str, message: str) -> None:
        self.field = field
        self.message = message
        super().__init__(f"{field}: {message}")
