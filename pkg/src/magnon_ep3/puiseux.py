"""Cube-root (Newton-Puiseux) expansion of the eigenvalues around the EP3.

Omega_l = Omega_EP3 + lam1_l xi^(1/3) + lam2_l xi^(2/3),  xi = delta_k / gamma2,

with one coefficient pair per branch l in (minus, zero, plus).  The
coefficients below assume the probe sees a magnon-1 shift of
``probe_shift_factor * delta_k``; for the default factor of 2 they are the
familiar closed forms.
"""

from dataclasses import dataclass
import math
import warnings

import numpy as np
from scipy import stats

from . import spectral
from .errors import InsufficientSamples, ValidationError
from .params import DEFAULT_PROBE_SHIFT_FACTOR, ep3_params, omega_ep3

#: Branch phases of lam1, ordered (minus, zero, plus).
PHASES = (11 * math.pi / 9, 5 * math.pi / 9, 17 * math.pi / 9)
BRANCHES = ("-", "0", "+")
TRUNCATION_WARN_XI = 0.3


@dataclass(frozen=True)
class PuiseuxSolution:
    eta: float
    lam1: tuple
    lam2: tuple
    phases: tuple = PHASES
    probe_shift_factor: float = DEFAULT_PROBE_SHIFT_FACTOR

    def branch(self, label):
        i = BRANCHES.index(label)
        return self.lam1[i], self.lam2[i]


def _leading_constants(eta, probe_shift_factor):
    # scale relative to the factor-2 closed forms: xi -> (factor / 2) xi
    r = probe_shift_factor / 2.0
    c1 = r * 4 * eta**2 * (1 - math.sqrt(3) * 1j) / (1 + 2 * eta)
    c43 = r * 2 * eta * (math.sqrt(3) - 1j * (1 + 2 * eta)) / (1 + 2 * eta)
    return c1, c43


def residuals(eta, lam1, lam2, probe_shift_factor=DEFAULT_PROBE_SHIFT_FACTOR):
    """Coefficients of xi and xi^(4/3) in the expanded characteristic equation."""
    c1, c43 = _leading_constants(eta, probe_shift_factor)
    f1 = lam1**3 - c1
    f43 = 3 * lam1**2 * lam2 - c43 * lam1
    return f1, f43


def puiseux_coefficients(eta, probe_shift_factor=DEFAULT_PROBE_SHIFT_FACTOR):
    if not eta > 0:
        raise ValidationError("eta must be positive", module="puiseux", operation="puiseux_coefficients")
    if not probe_shift_factor > 0:
        raise ValidationError("probe_shift_factor must be positive", module="puiseux",
                              operation="puiseux_coefficients")
    r = probe_shift_factor / 2.0
    # real cube root for the modulus, explicit phase per branch
    modulus = (r * 8 * eta**2 / (1 + 2 * eta)) ** (1 / 3)
    _, c43 = _leading_constants(eta, probe_shift_factor)
    lam1 = tuple(modulus * complex(math.cos(t), math.sin(t)) for t in PHASES)
    lam2 = tuple(c43 / (3 * l1) for l1 in lam1)
    return PuiseuxSolution(eta, lam1, lam2, PHASES, probe_shift_factor)


def series(eta, delta_cp, xi, solution=None):
    """Series eigenvalues as an array ordered (minus, zero, plus)."""
    sol = solution or puiseux_coefficients(eta)
    x13 = xi ** (1 / 3)
    base = omega_ep3(eta, delta_cp)
    return np.array([base + l1 * x13 + l2 * x13 * x13 for l1, l2 in zip(sol.lam1, sol.lam2)])


def eigenvalues_near_ep3(eta, delta_cp, xi, probe_shift_factor=DEFAULT_PROBE_SHIFT_FACTOR,
                         tol=spectral.COALESCE_TOL):
    if not xi > 0:
        raise ValidationError(
            f"xi must be positive, got {xi!r}", module="puiseux", operation="eigenvalues_near_ep3"
        )
    if xi > TRUNCATION_WARN_XI:
        warnings.warn(f"xi={xi:g} is beyond the range where two terms are adequate", stacklevel=2)
    vals = series(eta, delta_cp, xi, puiseux_coefficients(eta, probe_shift_factor))
    return spectral.SpectrumTriple(*vals, spectral.classify_spectrum(vals, tol), "series branch")


def exact_branches(eta, xi_values, delta_cp=0.0, probe_shift_factor=DEFAULT_PROBE_SHIFT_FACTOR):
    """Exact eigenvalues at the EP3 parameter set, labelled like the series.

    Labels are fixed by nearest-match to the series at the smallest xi and
    carried to the other values by continuity.  Returns an array of shape
    (len(xi_values), 3) in the caller's xi order, columns (minus, zero, plus).
    """
    xi_values = np.asarray(xi_values, dtype=float)
    order = np.argsort(xi_values)
    sol = puiseux_coefficients(eta, probe_shift_factor)
    base = ep3_params(eta, probe_shift_factor=probe_shift_factor)
    exact = [
        spectral.roots(spectral.build_heff(base.with_shift(x), delta_cp)) for x in xi_values[order]
    ]
    seed = series(eta, delta_cp, xi_values[order[0]], sol)
    tracked = spectral.track_branches([seed] + exact)[1:]
    out = np.empty_like(tracked)
    out[order] = tracked
    return out


@dataclass(frozen=True)
class ExponentFit:
    slope: float
    intercept: float
    slope_stderr: float
    n: int


def splitting_exponent_fit(eta, xi_samples, probe_shift_factor=DEFAULT_PROBE_SHIFT_FACTOR):
    """Fit log|Re(Omega_plus) - Omega_EP3| against log xi using exact eigenvalues."""
    xi = np.asarray(xi_samples, dtype=float)
    op = "splitting_exponent_fit"
    if xi.size < 5:
        raise InsufficientSamples(f"need at least 5 samples, got {xi.size}", module="puiseux", operation=op)
    if np.any(xi <= 0) or np.any(xi > 1e-2):
        raise ValidationError("samples must lie in (0, 1e-2]", module="puiseux", operation=op)
    if np.log10(xi.max() / xi.min()) < 2:
        raise InsufficientSamples("samples must span at least two decades", module="puiseux", operation=op)
    plus = exact_branches(eta, xi, probe_shift_factor=probe_shift_factor)[:, 2]
    y = np.log(np.abs(plus.real - omega_ep3(eta)))
    res = stats.linregress(np.log(xi), y)
    return ExponentFit(res.slope, res.intercept, res.stderr, int(xi.size))
