"""
Physical constants, CODATA 2018 values as shipped by scipy.constants.

PLANCK             h    = 6.62607015e-34 J s    (exact)
BOLTZMANN          k_B  = 1.380649e-23 J/K      (exact)
ELEMENTARY_CHARGE  |e|  = 1.602176634e-19 C     (exact)
BOHR_MAGNETON      mu_B = 9.2740100783e-24 J/T
"""

from scipy import constants

PLANCK: float = constants.h
BOLTZMANN: float = constants.k
ELEMENTARY_CHARGE: float = constants.e
BOHR_MAGNETON: float = constants.physical_constants["Bohr magneton"][0]
