"""Parameter model for the two-magnon cavity and its pseudo-Hermitian manifold.

All rates, couplings and detunings are dimensionless multiples of the
magnon-2 decay rate gamma2.  ``gamma2_mhz`` in the text config only rescales
what gets displayed.
"""

from dataclasses import dataclass, field, replace
import math

import numpy as np

from .errors import ValidationError

#: Relative tolerance used when checking that a parameter set lies on the
#: pseudo-Hermitian manifold.
MANIFOLD_RTOL = 1e-9

#: Multiplier applied to ``delta_k`` on the magnon-1 line of the probe
#: (fluctuation) equations.  Linearising K1 (b+b)^2 around a coherent
#: amplitude B1 shifts the fluctuation by 4 K1 |B1|^2 = 2 * delta_k, where
#: delta_k = 2 K1 |B1|^2 is the mean-field shift of the drive equations.
#: Set to 1.0 for the bare "delta_1p + delta_k" form.
DEFAULT_PROBE_SHIFT_FACTOR = 2.0


def _err(msg, op):
    return ValidationError(msg, module="params", operation=op)


@dataclass(frozen=True)
class PhysicalParams:
    gamma1: float
    kappa_int: float
    kappa1: float
    kappa2: float
    g1: float
    g2: float
    delta1: float
    delta2: float
    delta_k: float = 0.0
    gamma2: float = 1.0
    probe_shift_factor: float = DEFAULT_PROBE_SHIFT_FACTOR

    def __post_init__(self):
        for name in ("gamma1", "gamma2", "kappa_int", "kappa1", "kappa2"):
            v = getattr(self, name)
            if not (np.isfinite(v) and v > 0):
                raise _err(f"{name} must be a positive finite rate, got {v!r}", "PhysicalParams")
        for name in ("g1", "g2"):
            v = getattr(self, name)
            if not (np.isfinite(v) and v >= 0):
                raise _err(f"{name} must be non-negative, got {v!r}", "PhysicalParams")
        for name in ("delta1", "delta2", "delta_k", "probe_shift_factor"):
            if not np.isfinite(getattr(self, name)):
                raise _err(f"{name} must be finite", "PhysicalParams")

    @property
    def kappa_c(self):
        """Total cavity damping."""
        return self.kappa_int + self.kappa1 + self.kappa2

    @property
    def kappa_g(self):
        """Effective cavity gain once the two inputs are perfectly absorbed."""
        return self.kappa1 + self.kappa2 - self.kappa_int

    @property
    def eta(self):
        return self.gamma1 / self.gamma2

    @property
    def k_ratio(self):
        return self.g2 / self.g1 if self.g1 > 0 else math.inf

    @property
    def probe_shift(self):
        """Magnon-1 frequency shift seen by the probe fields."""
        return self.probe_shift_factor * self.delta_k

    def with_shift(self, delta_k):
        return replace(self, delta_k=float(delta_k))


@dataclass(frozen=True)
class PseudoHermitianConfig:
    eta: float
    g1: float
    delta1_sign: int = 1
    k_ratio: float = field(init=False)

    def __post_init__(self):
        if not (np.isfinite(self.eta) and self.eta > 0):
            raise _err(f"eta must be positive, got {self.eta!r}", "PseudoHermitianConfig")
        if self.delta1_sign not in (1, -1):
            raise _err(f"delta1_sign must be +1 or -1, got {self.delta1_sign!r}", "PseudoHermitianConfig")
        if not (np.isfinite(self.g1) and self.g1 >= 0):
            raise _err(f"g1 must be non-negative, got {self.g1!r}", "PseudoHermitianConfig")
        object.__setattr__(self, "k_ratio", k_ratio(self.eta))

    @property
    def g_min(self):
        return g_min(self.eta)


def k_ratio(eta):
    """Coupling ratio g2/g1 that the manifold requires for a given eta."""
    return ((1 + 2 * eta) / (2 * eta + eta**2)) ** 1.5


def g_min(eta):
    """Smallest g1 for which delta1 is real."""
    k = k_ratio(eta)
    return math.sqrt((1 + eta) * eta / (1 + eta * k * k))


def g_ep3(eta):
    """Coupling g1 at the third-order exceptional point."""
    if eta <= 0:
        raise _err("eta must be positive", "g_ep3")
    return 2 * eta * math.sqrt(eta**2 + 2 * eta) / (1 + 2 * eta)


def omega_ep3(eta, delta_cp=0.0):
    """Coalesced eigenvalue at the EP3 for the +1 delta1 branch.

    The -1 branch mirrors the spectrum, so its coalesced value is
    ``delta_cp`` plus (instead of minus) the offset.
    """
    if eta <= 0:
        raise _err("eta must be positive", "omega_ep3")
    return delta_cp - math.sqrt(3) * (eta - 1) * eta / (2 * eta**2 + 5 * eta + 2)


def ep3_eigenvector(eta):
    """Normalised coalesced eigenvector at the EP3 (+1 branch)."""
    if eta <= 0:
        raise _err("eta must be positive", "ep3_eigenvector")
    s3 = math.sqrt(3)
    v = np.array(
        [
            1.0,
            -2 * math.sqrt(eta**2 + 2 * eta) / (s3 - 1j * (1 + 2 * eta)),
            2 * math.sqrt(2 * eta + 1) / (s3 * eta + 1j * (2 + eta)),
        ],
        dtype=complex,
    )
    norm = (2 * eta**2 + 5 * eta + 2) / (eta**2 + eta + 1)
    return v / math.sqrt(norm)


def derive_pseudo_hermitian(
    config,
    kappa_int=1.0,
    port_split=0.5,
    delta_k=0.0,
    probe_shift_factor=DEFAULT_PROBE_SHIFT_FACTOR,
):
    """Build a PhysicalParams that sits on the pseudo-Hermitian manifold.

    ``port_split`` is the fraction of kappa1 + kappa2 assigned to port 1.
    """
    op = "derive_pseudo_hermitian"
    if not (np.isfinite(kappa_int) and kappa_int > 0):
        raise _err(f"kappa_int must be positive, got {kappa_int!r}", op)
    if not 0 < port_split < 1:
        raise _err(f"port_split must lie in (0, 1), got {port_split!r}", op)
    eta, g1, k = config.eta, config.g1, config.k_ratio
    gmin = g_min(eta)
    radicand = (1 + eta * k * k) / ((1 + eta) * eta) * g1**2 - 1.0
    if radicand < 0:
        # g1 == g_min up to rounding lands a hair below zero
        if g1 >= gmin * (1 - 1e-12):
            radicand = 0.0
        else:
            raise _err(f"g1={g1:.6g} is below g_min={gmin:.6g} for eta={eta:g}", op)
    delta1 = config.delta1_sign * math.sqrt(radicand)
    kappa_ports = (1 + eta) + kappa_int
    return PhysicalParams(
        gamma1=eta,
        gamma2=1.0,
        kappa_int=float(kappa_int),
        kappa1=port_split * kappa_ports,
        kappa2=(1 - port_split) * kappa_ports,
        g1=float(g1),
        g2=k * g1,
        delta1=delta1,
        delta2=-eta * delta1,
        delta_k=float(delta_k),
        probe_shift_factor=float(probe_shift_factor),
    )


def ep3_params(eta, kappa_int=1.0, port_split=0.5, delta_k=0.0, delta1_sign=1,
               probe_shift_factor=DEFAULT_PROBE_SHIFT_FACTOR):
    """Parameters tuned to the EP3; with the defaults this is the figure set
    (kappa_int = 1, kappa1 = kappa2 = 1 + eta/2)."""
    cfg = PseudoHermitianConfig(eta=eta, g1=g_ep3(eta), delta1_sign=delta1_sign)
    return derive_pseudo_hermitian(cfg, kappa_int, port_split, delta_k, probe_shift_factor)


def manifold_residuals(params):
    """Relative residuals of the four manifold conditions.

    Order: gain, detuning ratio, delta1 squared, coupling ratio.
    """
    eta = params.eta
    g2u = params.gamma2
    k_req = k_ratio(eta)

    def rel(a, b):
        scale = max(abs(a), abs(b), 1e-300)
        return abs(a - b) / scale if scale > 1e-300 else 0.0

    d1_sq = (1 + eta * k_req**2) / ((1 + eta) * eta) * params.g1**2 - g2u**2
    return np.array(
        [
            rel(params.kappa_g, (1 + eta) * g2u),
            # compare on the scale of delta1 so delta1 == 0 is not ill-posed
            abs(params.delta2 + eta * params.delta1) / max(abs(params.delta1), g2u),
            abs(params.delta1**2 - d1_sq) / max(params.g1**2, g2u**2),
            rel(params.k_ratio, k_req),
        ]
    )


def on_manifold(params, rtol=MANIFOLD_RTOL):
    return bool(np.all(manifold_residuals(params) <= rtol))
