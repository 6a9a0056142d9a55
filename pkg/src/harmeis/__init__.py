"""Weight-one Eisenstein series for the split lattice N Z^2 and their harmonic
Maass preimages: exact coefficients, theta kernels and numerical checks."""
from ._accel import BACKEND
from .eisenstein import (CertificationError, HarmonicExpansion, QExpansion, c, c0, c_tilde,
                         c_tilde0, eval_vartheta, eval_vartheta_tilde, harmonic_expansion,
                         q_expansion, xi_expansion)
from .lattice import CosetIndex, LatticeContext, LatticeVector
from .theta import theta_h, theta_tilde_h

__version__ = "0.1.0"
