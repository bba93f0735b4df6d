import logging
import numpy as np

from typing import NamedTuple

logger = logging.getLogger(__name__)


class Peak(NamedTuple):
    """
    Location of a sampled maximum.

    Attributes:
    -----------
    position : float
        Interpolated abscissa of the maximum.
    value : float
        Interpolated ordinate at the maximum.
    at_edge : bool
        True if the grid maximum sits on the first or last sample; no
        interpolation is done then.
    """

    position: float
    value: float
    at_edge: bool


def interpolate_peak(x: np.ndarray, y: np.ndarray) -> Peak:
    """
    Locate the maximum of sampled data with three-point quadratic interpolation.

    Parameters:
    -----------
    x : np.ndarray
        Uniformly spaced, ascending abscissa.
    y : np.ndarray
        Samples, same length as x.

    Returns:
    --------
    Peak
        The vertex of the parabola through the grid maximum and its neighbours.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape or x.size == 0:
        raise ValueError(
            f"Cannot search a peak in data of shapes {x.shape} and {y.shape}."
        )

    index = int(np.argmax(y))
    if index == 0 or index == x.size - 1:
        logger.warning(
            f"Peak at grid edge (x = {x[index]:.6g}); widen the grid to resolve it."
        )
        return Peak(float(x[index]), float(y[index]), True)

    y_left, y_mid, y_right = y[index - 1], y[index], y[index + 1]
    curvature = y_left - 2.0 * y_mid + y_right
    if curvature == 0.0:
        return Peak(float(x[index]), float(y_mid), False)

    # Offset of the vertex in units of the grid step, within [-0.5, 0.5]
    offset = 0.5 * (y_left - y_right) / curvature
    step = x[index + 1] - x[index]
    value = y_mid - 0.25 * (y_left - y_right) * offset
    return Peak(float(x[index] + offset * step), float(value), False)
