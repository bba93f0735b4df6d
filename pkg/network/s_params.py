import numpy as np

from dataclasses import dataclass

from .two_port import ComplexLike, NetworkError, TwoPortAbcd


@dataclass(frozen=True)
class SParams:
    """
    Scattering parameters referenced to a real port impedance.
    """

    s11: ComplexLike
    s21: ComplexLike
    s12: ComplexLike
    s22: ComplexLike

    def at(self, index) -> "SParams":
        """
        Select one grid point (or a slice) of gridded S-parameters.
        """
        return SParams(*(np.asarray(s)[index] for s in (self.s11, self.s21, self.s12, self.s22)))


def s_params(net: TwoPortAbcd, z0: float) -> SParams:
    """
    Convert chain parameters into S-parameters at reference impedance z0.

    Parameters:
    -----------
    net : TwoPortAbcd
        Network, scalar or gridded.
    z0 : float
        Real reference impedance of both ports in Ohm.

    Returns:
    --------
    SParams

    Raises:
    -------
    NetworkError
        If the conversion denominator vanishes or is not finite.
    """
    a, b, c, d = net.a, net.b, net.c, net.d
    denominator = a + b / z0 + c * z0 + d
    if np.any(~np.isfinite(denominator)) or np.any(np.abs(denominator) == 0.0):
        raise NetworkError(
            "Singular ABCD to S conversion; the network is degenerate at z0 = "
            f"{z0} Ohm."
        )
    return SParams(
        s11=(a + b / z0 - c * z0 - d) / denominator,
        s21=2.0 / denominator,
        s12=2.0 * (a * d - b * c) / denominator,
        s22=(-a + b / z0 - c * z0 + d) / denominator,
    )
