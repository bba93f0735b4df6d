import numpy as np

from dataclasses import dataclass
from typing import Any, Dict

from .config_error import ConfigError


def number(section: Dict[str, Any], key: str, path: str) -> float:
    """
    Read a numeric entry, raising a ConfigError that names the field.
    """
    field = f"{path}.{key}"
    if key not in section or section[key] is None:
        raise ConfigError(field, "missing value")
    value = section[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(field, f"expected a number, got {value!r}")
    if not np.isfinite(value):
        raise ConfigError(field, f"expected a finite number, got {value!r}")
    return float(value)


@dataclass(frozen=True)
class LinearGrid:
    """
    Grid of a fixed number of points between start and stop (inclusive).

    Attributes:
    -----------
    start : float
        First value.
    stop : float
        Last value; must exceed start unless points is 1.
    points : int
        Number of grid points.
    log : bool
        Space the points logarithmically (start must then be positive).
    """

    start: float
    stop: float
    points: int
    log: bool = False

    @classmethod
    def from_dict(cls, raw: Dict[str, Any], path: str) -> "LinearGrid":
        if not isinstance(raw, dict):
            raise ConfigError(path, f"expected a grid section, got {raw!r}")
        start, stop = number(raw, "start", path), number(raw, "stop", path)
        points = number(raw, "points", path)
        log = bool(raw.get("log", False))
        if points < 1 or points != int(points):
            raise ConfigError(f"{path}.points", f"expected a positive integer, got {points}")
        if points > 1 and not stop > start:
            raise ConfigError(path, f"empty or descending grid from {start} to {stop}")
        if log and not start > 0:
            raise ConfigError(f"{path}.start", "logarithmic grids need a positive start")
        return cls(start=start, stop=stop, points=int(points), log=log)

    def values(self) -> np.ndarray:
        if self.log:
            return np.geomspace(self.start, self.stop, self.points)
        return np.linspace(self.start, self.stop, self.points)

    def to_dict(self) -> Dict[str, Any]:
        return {"start": self.start, "stop": self.stop, "points": self.points, "log": self.log}


@dataclass(frozen=True)
class StepGrid:
    """
    Grid from start to stop (inclusive when reached) in steps of step.
    """

    start: float
    stop: float
    step: float

    @classmethod
    def from_dict(cls, raw: Dict[str, Any], path: str) -> "StepGrid":
        if not isinstance(raw, dict):
            raise ConfigError(path, f"expected a grid section, got {raw!r}")
        start, stop = number(raw, "start", path), number(raw, "stop", path)
        step = number(raw, "step", path)
        if not step > 0:
            raise ConfigError(f"{path}.step", f"step must be positive, got {step}")
        if stop < start:
            raise ConfigError(path, f"empty grid from {start} to {stop}")
        return cls(start=start, stop=stop, step=step)

    @classmethod
    def from_text(cls, text: str, path: str) -> "StepGrid":
        """
        Parse the command line form "start:stop:step".
        """
        try:
            start, stop, step = (float(part) for part in text.split(":"))
        except ValueError as e:
            raise ConfigError(path, f"expected 'start:stop:step', got {text!r}") from e
        return cls.from_dict({"start": start, "stop": stop, "step": step}, path)

    def values(self) -> np.ndarray:
        count = int(np.floor((self.stop - self.start) / self.step + 1e-9)) + 1
        return self.start + self.step * np.arange(count)

    def to_dict(self) -> Dict[str, Any]:
        return {"start": self.start, "stop": self.stop, "step": self.step}
