from dataclasses import dataclass


class SolverError(ValueError):
    """
    Exception raised for invalid solver inputs (negative power, unordered power lists).

    Attributes:
    ----------
    message : str
        Explanation of the error.
    """


@dataclass(frozen=True)
class SolverConfig:
    """
    Settings of the damped fixed-point iteration.

    Attributes:
    -----------
    relaxation : float
        Initial damping lambda in (0, 1].
    rel_tol : float
        Convergence threshold on |residual| relative to beta^2 / (4 t_c).
    max_iter : int
        Iteration cap per solve.
    continuation : bool
        Warm-start each power from the previous one in power sweeps.
    """

    relaxation: float = 0.5
    rel_tol: float = 1e-6
    max_iter: int = 200
    continuation: bool = True

    def __post_init__(self) -> None:
        if not 0.0 < self.relaxation <= 1.0:
            raise ValueError(f"Relaxation must lie in (0, 1], got {self.relaxation}.")
        if not self.rel_tol > 0:
            raise ValueError(f"Relative tolerance must be positive, got {self.rel_tol}.")
        if self.max_iter < 1:
            raise ValueError(f"Need at least one iteration, got {self.max_iter}.")
