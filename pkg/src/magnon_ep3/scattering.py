"""Probe response of the cavity: self-energy, output spectrum, dips, enhancement.

Two frequency coordinates appear here.  Spectra are sampled in the probe
detuning ``delta_cp = omega_c - omega_p``.  Dips are reported as probe
frequencies measured from the cavity, ``omega_p - omega_c = -delta_cp``,
which is the axis on which a real eigenvalue Omega of H_eff(delta_cp = 0)
is a perfect-absorption point.
"""

from dataclasses import dataclass
import math

import numpy as np

from .errors import DipCountMismatch, InvalidWindow, ValidationError
from .params import DEFAULT_PROBE_SHIFT_FACTOR, ep3_params, omega_ep3

DEFAULT_HALF_WIDTH = 3.0
DEFAULT_POINTS = 20001
#: A local minimum counts as a dip when it sits at least this fraction below
#: the lower of its two flanking maxima.
MIN_REL_PROMINENCE = 1e-3
REFINE_TOL = 1e-8
_INVPHI = (math.sqrt(5) - 1) / 2


def to_delta_cp(probe_frequency):
    """Probe detuning at which the probe sits at ``probe_frequency`` (from omega_c)."""
    return -np.asarray(probe_frequency)


def _shift(params, delta_k):
    return params.probe_shift_factor * (params.delta_k if delta_k is None else delta_k)


def self_energy(params, delta_1p, delta_2p, delta_k=None):
    """Self-energy of the cavity from both magnons.

    ``delta_k`` defaults to ``params.delta_k``; the magnon-1 line moves by
    ``probe_shift_factor * delta_k``.
    """
    d1 = np.asarray(delta_1p) + _shift(params, delta_k)
    return params.g1**2 / (params.gamma1 + 1j * d1) + params.g2**2 / (params.gamma2 + 1j * np.asarray(delta_2p))


def _denominator(params, delta_cp, delta_k):
    delta_cp = np.asarray(delta_cp, dtype=float)
    sigma = self_energy(params, delta_cp + params.delta1, delta_cp + params.delta2, delta_k)
    return params.kappa_c + 1j * delta_cp + sigma


def s_parameter(params, delta_cp, delta_k=None):
    """Output amplitude per unit input when the inputs have the CPA ratio."""
    return 2 * (params.kappa1 + params.kappa2) / _denominator(params, delta_cp, delta_k) - 1


def cpa_input_ratio(params):
    """Ratio a2_in / a1_in under which both ports see the same S."""
    return math.sqrt(params.kappa2 / params.kappa1)


def output_fields(params, delta_cp, a1_in, a2_in, delta_k=None):
    """Output amplitudes at both ports for arbitrary input amplitudes."""
    den = _denominator(params, delta_cp, delta_k)
    k1, k2 = params.kappa1, params.kappa2
    cross = 2 * math.sqrt(k1 * k2)
    a1_out = (2 * k1 * a1_in + cross * a2_in) / den - a1_in
    a2_out = (cross * a1_in + 2 * k2 * a2_in) / den - a2_in
    return a1_out, a2_out


@dataclass(frozen=True)
class SpectrumTrace:
    delta_cp: np.ndarray
    s_abs2: np.ndarray
    params: object
    delta_k: float
    window: tuple
    n_points: int

    @property
    def probe_frequency(self):
        return -self.delta_cp


def default_center(params):
    """delta_cp of the EP3 absorption point for this parameter branch."""
    w = omega_ep3(params.eta)
    return -w if params.delta1 >= 0 else w


def scan(params, delta_k=None, window=None, n_points=DEFAULT_POINTS):
    """|S|^2 on a uniform delta_cp grid; centred on the EP3 point by default."""
    if window is None:
        c = default_center(params)
        window = (c - DEFAULT_HALF_WIDTH, c + DEFAULT_HALF_WIDTH)
    lo, hi = map(float, window)
    if not (np.isfinite(lo) and np.isfinite(hi) and hi > lo):
        raise InvalidWindow(f"degenerate window ({lo}, {hi})", module="scattering", operation="scan")
    if n_points < 2:
        raise InvalidWindow("n_points must be >= 2", module="scattering", operation="scan")
    dk = params.delta_k if delta_k is None else float(delta_k)
    x = np.linspace(lo, hi, int(n_points))
    y = np.abs(s_parameter(params, x, dk)) ** 2
    return SpectrumTrace(x, y, params, dk, (lo, hi), int(n_points))


def golden_section_min(f, a, b, tol=REFINE_TOL):
    """Minimiser of a unimodal ``f`` on [a, b] to absolute tolerance ``tol``."""
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = f(d)
    return 0.5 * (a + b)


@dataclass(frozen=True)
class DipReport:
    probe_frequencies: tuple
    delta_cp: tuple
    depths: tuple
    delta_omega: float
    enhancement: float
    count: int
    delta_k: float

    def as_record(self):
        return {
            "dip1_probe_frequency": self.probe_frequencies[0],
            "dip2_probe_frequency": self.probe_frequencies[1],
            "dip1_delta_cp": self.delta_cp[0],
            "dip2_delta_cp": self.delta_cp[1],
            "dip1_depth": self.depths[0],
            "dip2_depth": self.depths[1],
            "delta_omega": self.delta_omega,
            "enhancement": self.enhancement,
            "delta_k": self.delta_k,
            "count": self.count,
        }


def local_minima(y, min_rel_prominence=MIN_REL_PROMINENCE):
    """Indices of strict interior minima that clear the prominence rule."""
    y = np.asarray(y)
    inner = (y[1:-1] < y[:-2]) & (y[1:-1] < y[2:])
    idx = np.flatnonzero(inner) + 1
    keep = []
    for j, i in enumerate(idx):
        lo = idx[j - 1] if j > 0 else 0
        hi = idx[j + 1] if j + 1 < len(idx) else len(y) - 1
        flank = min(y[lo : i + 1].max(), y[i : hi + 1].max())
        if y[i] <= (1 - min_rel_prominence) * flank:
            keep.append(int(i))
    return keep


def find_dips(trace, min_rel_prominence=MIN_REL_PROMINENCE, tol=REFINE_TOL):
    idx = local_minima(trace.s_abs2, min_rel_prominence)
    if len(idx) != 2:
        raise DipCountMismatch(
            f"expected 2 dips, found {len(idx)}",
            count=len(idx),
            context={"delta_k": trace.delta_k},
        )
    x = trace.delta_cp
    params, dk = trace.params, trace.delta_k

    def f(d):
        return abs(s_parameter(params, d, dk)) ** 2

    refined = [golden_section_min(f, x[i - 1], x[i + 1], tol) for i in idx]
    # order by probe frequency, i.e. descending delta_cp
    refined.sort(reverse=True)
    freqs = tuple(-d for d in refined)
    depths = tuple(float(f(d)) for d in refined)
    spread = freqs[1] - freqs[0]
    enh = spread / dk if dk > 0 else math.nan
    return DipReport(freqs, tuple(refined), depths, spread, enh, 2, dk)


@dataclass(frozen=True)
class EnhancementRow:
    eta: float
    xi: float
    delta_omega: float
    enhancement: float


def enhancement_curve(eta_list, xi_list, kappa_int=1.0, port_split=0.5,
                      probe_shift_factor=DEFAULT_PROBE_SHIFT_FACTOR, n_points=DEFAULT_POINTS,
                      half_width=DEFAULT_HALF_WIDTH):
    """Dip spacing and enhancement on an (eta, xi) grid at the EP3 parameter sets."""
    rows = []
    for eta in eta_list:
        base = ep3_params(eta, kappa_int=kappa_int, port_split=port_split, probe_shift_factor=probe_shift_factor)
        c = default_center(base)
        for xi in xi_list:
            if not xi > 0:
                raise ValidationError("xi must be positive", module="scattering", operation="enhancement_curve")
            trace = scan(base, xi, (c - half_width, c + half_width), n_points)
            try:
                rep = find_dips(trace)
            except DipCountMismatch as exc:
                raise DipCountMismatch(
                    f"{exc} at eta={eta:g}, xi={xi:g}",
                    count=exc.count,
                    operation="enhancement_curve",
                    context={"eta": eta, "xi": xi},
                ) from exc
            rows.append(EnhancementRow(float(eta), float(xi), rep.delta_omega, rep.enhancement))
    return rows
