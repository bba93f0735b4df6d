"""
ABCD (chain) matrices of linear two-ports.

Every element accepts scalars or arrays; an array evaluates the element on a
whole frequency grid at once and the entries then carry that grid's shape.
"""

import numpy as np

from dataclasses import dataclass
from functools import reduce
from typing import Sequence, Union

ComplexLike = Union[complex, np.ndarray]


class NetworkError(Exception):
    """
    Exception raised for degenerate or inconsistent two-port networks.

    Attributes:
    ----------
    message : str
        Explanation of the error.
    """


@dataclass(frozen=True)
class TwoPortAbcd:
    """
    Chain parameters [[a, b], [c, d]] relating (V1, I1) to (V2, I2).

    Attributes:
    -----------
    a : complex or np.ndarray
        Voltage ratio, dimensionless.
    b : complex or np.ndarray
        Transfer impedance in Ohm.
    c : complex or np.ndarray
        Transfer admittance in S.
    d : complex or np.ndarray
        Current ratio, dimensionless.
    """

    a: ComplexLike
    b: ComplexLike
    c: ComplexLike
    d: ComplexLike

    @classmethod
    def identity(cls) -> "TwoPortAbcd":
        return cls(1.0 + 0j, 0j, 0j, 1.0 + 0j)

    @property
    def shape(self) -> tuple:
        return np.broadcast_shapes(*(np.shape(x) for x in (self.a, self.b, self.c, self.d)))

    @property
    def determinant(self) -> ComplexLike:
        return self.a * self.d - self.b * self.c

    def __matmul__(self, other: "TwoPortAbcd") -> "TwoPortAbcd":
        return TwoPortAbcd(
            a=self.a * other.a + self.b * other.c,
            b=self.a * other.b + self.b * other.d,
            c=self.c * other.a + self.d * other.c,
            d=self.c * other.b + self.d * other.d,
        )

    def input_impedance(self, z_load: ComplexLike) -> ComplexLike:
        """
        Impedance seen at port-1 with port-2 terminated in z_load.
        """
        return (self.a * z_load + self.b) / (self.c * z_load + self.d)

    def as_array(self) -> np.ndarray:
        """
        Stack the entries into an array of shape (..., 2, 2).
        """
        a, b, c, d = np.broadcast_arrays(
            *(np.asarray(x, dtype=complex) for x in (self.a, self.b, self.c, self.d))
        )
        return np.stack([np.stack([a, b], axis=-1), np.stack([c, d], axis=-1)], axis=-2)


def element_series_impedance(z: ComplexLike) -> TwoPortAbcd:
    """
    Series impedance z in Ohm: [[1, z], [0, 1]].
    """
    z = np.asarray(z, dtype=complex)
    return TwoPortAbcd(np.ones_like(z), z, np.zeros_like(z), np.ones_like(z))


def element_shunt_admittance(y: ComplexLike) -> TwoPortAbcd:
    """
    Shunt admittance y in S: [[1, 0], [y, 1]].
    """
    y = np.asarray(y, dtype=complex)
    return TwoPortAbcd(np.ones_like(y), np.zeros_like(y), y, np.ones_like(y))


def element_tline(
    z_tl: float, loss_resistance: float, electrical_length: Union[float, np.ndarray]
) -> TwoPortAbcd:
    """
    Uniform transmission line with optional distributed series loss.

    Parameters:
    -----------
    z_tl : float
        Characteristic impedance in Ohm.
    loss_resistance : float
        Total series resistance of the line in Ohm; zero gives a lossless line.
    electrical_length : float or np.ndarray
        Phase length gamma * l in rad.

    Returns:
    --------
    TwoPortAbcd
        [[cosh(g), Z sinh(g)], [sinh(g) / Z, cosh(g)]] with g = alpha l + j beta l
        and the low-loss attenuation alpha l = R / (2 Z).
    """
    if not z_tl > 0:
        raise ValueError(f"Line impedance must be positive, got {z_tl} Ohm.")
    if loss_resistance < 0:
        raise ValueError(f"Line loss must be non-negative, got {loss_resistance} Ohm.")
    gamma_l = loss_resistance / (2.0 * z_tl) + 1j * np.asarray(electrical_length, dtype=float)
    cosh, sinh = np.cosh(gamma_l), np.sinh(gamma_l)
    return TwoPortAbcd(cosh, z_tl * sinh, sinh / z_tl, cosh)


def cascade(elements: Sequence[TwoPortAbcd]) -> TwoPortAbcd:
    """
    Chain two-ports in port-1 to port-2 order.

    Raises:
    -------
    NetworkError
        If the list is empty or the elements are evaluated on different grids.
    """
    if len(elements) == 0:
        raise NetworkError("Cannot cascade an empty list of two-ports.")
    try:
        np.broadcast_shapes(*(element.shape for element in elements))
    except ValueError as e:
        raise NetworkError(
            "Two-ports in a cascade must share the same frequency grid."
        ) from e
    return reduce(lambda left, right: left @ right, elements)
