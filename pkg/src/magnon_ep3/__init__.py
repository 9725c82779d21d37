"""Third-order exceptional point of a cavity coupled to two magnon modes,
and its use as an amplifier for a small Kerr frequency shift."""

from .errors import (
    DipCountMismatch,
    InsufficientSamples,
    InvalidWindow,
    ModelError,
    NoRootInBracket,
    ValidationError,
)
from .params import (
    PhysicalParams,
    PseudoHermitianConfig,
    derive_pseudo_hermitian,
    ep3_params,
    g_ep3,
    g_min,
    omega_ep3,
)
from .spectral import SpectrumClass, build_heff, eigenvalues, find_ep3
from .puiseux import eigenvalues_near_ep3, puiseux_coefficients, splitting_exponent_fit
from .kerr_drive import DriveConfig, steady_state
from .scattering import enhancement_curve, find_dips, s_parameter, scan

__all__ = [
    "DipCountMismatch",
    "DriveConfig",
    "InsufficientSamples",
    "InvalidWindow",
    "ModelError",
    "NoRootInBracket",
    "PhysicalParams",
    "PseudoHermitianConfig",
    "SpectrumClass",
    "ValidationError",
    "build_heff",
    "derive_pseudo_hermitian",
    "eigenvalues",
    "eigenvalues_near_ep3",
    "enhancement_curve",
    "ep3_params",
    "find_dips",
    "find_ep3",
    "g_ep3",
    "g_min",
    "omega_ep3",
    "puiseux_coefficients",
    "s_parameter",
    "scan",
    "splitting_exponent_fit",
    "steady_state",
]
