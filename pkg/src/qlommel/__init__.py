"""Hahn-Exton q-Bessel functions, Laurent q-Lommel polynomials and their orthogonality."""
from .bessel import BesselParams, J, J_reg, dJ, dj, j, j_reg, wronskian_residual
from .errors import (
    ConfigError,
    ConvergenceError,
    DomainError,
    QLommelError,
    RangeError,
    ScanError,
    TruncationWarning,
)
from .lommel import (
    LaurentCoeffs,
    MonicPoly,
    P1_eval,
    P_eval,
    V_poly,
    h_coeffs,
    h_eval,
    h_minimal,
    p1_eval,
    p_eval,
)
from .moments import (
    FunctionalReport,
    GramResult,
    MomentTable,
    L_apply,
    L_residue,
    c_moments,
    d_moments,
    gram_laurent,
    gram_P,
    gram_p,
)
from .qseries import QContext, basic_phi, phi11_entire, qpoch
from .spectral import ZeroTable, hessenberg, laurent_zeros, zeros_J, zeros_j
from .verify import IdentityCase, check_identity, run_suite

__version__ = "0.1.0"

__all__ = [
    "BesselParams", "ConfigError", "ConvergenceError", "DomainError", "FunctionalReport",
    "GramResult", "IdentityCase", "J", "J_reg", "L_apply", "L_residue", "LaurentCoeffs",
    "MomentTable", "MonicPoly", "P1_eval", "P_eval", "QContext", "QLommelError", "RangeError",
    "ScanError", "TruncationWarning", "V_poly", "ZeroTable", "basic_phi", "c_moments",
    "check_identity", "d_moments", "dJ", "dj", "gram_P", "gram_laurent", "gram_p",
    "h_coeffs", "h_eval", "h_minimal", "hessenberg", "j", "j_reg", "laurent_zeros",
    "p1_eval", "p_eval", "phi11_entire", "qpoch", "run_suite", "wronskian_residual",
    "zeros_J", "zeros_j",
]
