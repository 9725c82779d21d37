"""Driven steady state of the cavity + two magnons with a Kerr shift on magnon 1.

Eliminating the cavity and magnon-2 amplitudes leaves

    B1 = -omega_d / chi(m),   chi(m) = delta_1d + 2 K1 m - i gamma1 - g1^2 / D,
    D  = delta_cd - i kappa_c - g2^2 / (delta_2d - i gamma2),

and the occupation m = |B1|^2 solves the real cubic m |chi(m)|^2 = omega_d^2.
The drive equations carry the full cavity loss kappa_c (no CPA gain).
"""

from dataclasses import dataclass, replace

import numpy as np

from . import cubic
from .errors import ValidationError

#: Below this rescaled drive the smallest root is refined by Newton from the
#: linear response instead of taken from the closed form.
WEAK_EPS = 1e-6


@dataclass(frozen=True)
class DriveConfig:
    delta_cd: float
    delta_1d: float
    delta_2d: float
    omega_d: float
    kerr_k1: float

    def __post_init__(self):
        if not self.kerr_k1 >= 0:
            raise ValidationError("kerr_k1 must be >= 0", module="kerr_drive", operation="DriveConfig")
        if not self.omega_d >= 0:
            raise ValidationError("omega_d must be >= 0", module="kerr_drive", operation="DriveConfig")


@dataclass(frozen=True)
class SteadyStateBranch:
    cavity: complex
    magnon1: complex
    magnon2: complex
    m: float
    delta_k: float


@dataclass(frozen=True)
class SteadyStates:
    branches: tuple

    @property
    def multistable(self):
        return len(self.branches) > 1

    def __len__(self):
        return len(self.branches)

    def __iter__(self):
        return iter(self.branches)

    def __getitem__(self, i):
        return self.branches[i]


def _linear_parts(params, drive):
    d = drive.delta_cd - 1j * params.kappa_c - params.g2**2 / (drive.delta_2d - 1j * params.gamma2)
    a = drive.delta_1d - 1j * params.gamma1 - params.g1**2 / d
    return d, a


def occupation_cubic(params, drive):
    """Real coefficients (c3, c2, c1, c0) of m |chi(m)|^2 - omega_d^2."""
    _, a = _linear_parts(params, drive)
    k2 = 2 * drive.kerr_k1
    return (k2 * k2, 2 * k2 * a.real, abs(a) ** 2, -drive.omega_d**2)


def _scaled_cubic(params, drive):
    """(rho, eps, scale) for the rescaled occupation cubic.

    With z = 2 K1 m / |a| the equation m |chi(m)|^2 = omega_d^2 becomes
    z^3 + 2 rho z^2 + z - eps = 0, rho = Re(a)/|a|, eps = 2 K1 omega_d^2 / |a|^3,
    whose coefficients stay O(1) however small K1 is.  ``scale`` = |a| / (2 K1)
    converts z back to m.
    """
    _, a = _linear_parts(params, drive)
    k2 = 2 * drive.kerr_k1
    absa = abs(a)
    return a.real / absa, k2 * drive.omega_d**2 / absa**3, absa / k2


def occupation_discriminant(params, drive):
    """Discriminant of the rescaled cubic; positive means three real roots.

    The rescaling is a positive change of variable, so the sign (and hence
    the branch count) is that of the cubic in m.
    """
    if drive.kerr_k1 == 0:
        return 0.0
    rho, eps, _ = _scaled_cubic(params, drive)
    _, p, q = cubic.depress(2 * rho, 1.0, -eps)
    return cubic.discriminant(p, q)


def _real_roots(rho, eps):
    """Real roots z of z^3 + 2 rho z^2 + z - eps, ascending, duplicates merged."""
    _, p, q = cubic.depress(2 * rho, 1.0, -eps)
    disc = cubic.discriminant(p, q)
    scale = 4 * abs(p) ** 3 + 27 * q * q
    if disc > 1e-12 * scale:
        n_real = 3
    elif disc < -1e-12 * scale:
        n_real = 1
    else:
        n_real = 3  # repeated root; duplicates are merged below
    roots = cubic.solve_cubic(2 * rho, 1.0, -eps)
    picked = sorted(roots, key=lambda z: abs(z.imag))[:n_real]
    out = []
    for z in picked:
        x = z.real
        if not any(abs(x - y) <= 1e-9 * max(1.0, abs(y)) for y in out):
            out.append(x)
    return sorted(out)


def _weak_root(rho, eps, steps=50):
    """Smallest root y = z / eps for tiny eps, by Newton from the linear answer y = 1."""
    y = 1.0
    for _ in range(steps):
        g = eps * eps * y**3 + 2 * eps * rho * y * y + y - 1
        dg = 3 * eps * eps * y * y + 4 * eps * rho * y + 1
        step = g / dg
        y -= step
        if abs(step) <= 1e-17 * abs(y):
            break
    return y


def _polish_occupation(a, k2, omega_d, m, steps=6):
    """Newton on m |a + k2 m|^2 - omega_d^2 in factored form.

    The expanded cubic loses digits to cancellation at large m; the factored
    residual does not.
    """
    def f(x):
        chi = a + k2 * x
        return x * abs(chi) ** 2 - omega_d**2, abs(chi) ** 2 + 2 * k2 * x * chi.real

    val, der = f(m)
    for _ in range(steps):
        if der == 0 or val == 0:
            break
        nxt = m - val / der
        nval, nder = f(nxt)
        if abs(nval) >= abs(val):
            break
        m, val, der = nxt, nval, nder
    return m


def _branch(params, drive, m):
    d, a = _linear_parts(params, drive)
    chi = a + 2 * drive.kerr_k1 * m
    b1 = -drive.omega_d / chi
    cav = -params.g1 * b1 / d
    b2 = -params.g2 * cav / (drive.delta_2d - 1j * params.gamma2)
    occ = abs(b1) ** 2
    return SteadyStateBranch(complex(cav), complex(b1), complex(b2), float(occ), float(2 * drive.kerr_k1 * occ))


def steady_state(params, drive):
    """All non-negative steady-state occupations, ascending in m."""
    if drive.omega_d == 0:
        return SteadyStates((SteadyStateBranch(0j, 0j, 0j, 0.0, 0.0),))
    _, a = _linear_parts(params, drive)
    linear_m = drive.omega_d**2 / abs(a) ** 2
    if drive.kerr_k1 == 0:
        return SteadyStates((_branch(params, drive, linear_m),))
    k2 = 2 * drive.kerr_k1
    rho, eps, scale = _scaled_cubic(params, drive)
    guesses = [z * scale for z in _real_roots(rho, eps)]
    if eps < WEAK_EPS:
        # the smallest root sits at z ~ eps, below the cubic's absolute accuracy
        guesses[0] = linear_m * _weak_root(rho, eps)
    ms = [_polish_occupation(a, k2, drive.omega_d, m) for m in guesses]
    ms = [m for m in ms if m >= -1e-14 * linear_m]
    return SteadyStates(tuple(_branch(params, drive, max(m, 0.0)) for m in ms))


def drive_for_target_shift(params, drive_template, target_delta_k):
    """Drive strength that puts a steady-state branch at ``target_delta_k``."""
    if drive_template.kerr_k1 == 0:
        raise ValidationError(
            "kerr_k1 must be positive to invert the shift", module="kerr_drive", operation="drive_for_target_shift"
        )
    if target_delta_k < 0:
        raise ValidationError(
            "target_delta_k must be >= 0", module="kerr_drive", operation="drive_for_target_shift"
        )
    if target_delta_k == 0:
        return 0.0
    m = target_delta_k / (2 * drive_template.kerr_k1)
    _, a = _linear_parts(params, drive_template)
    return float(np.sqrt(m) * abs(a + target_delta_k))


def sweep(params, drive, omega_values):
    """Rows (omega_d, branch_index, m, delta_k, multistable) over a drive sweep."""
    rows = []
    for w in omega_values:
        states = steady_state(params, replace(drive, omega_d=float(w)))
        for i, br in enumerate(states):
            rows.append((float(w), i, br.m, br.delta_k, states.multistable))
    return rows
