"""Closed-form cubic roots (Cardano) with a guarded Newton polish.

Works for complex coefficients.  Used by the eigenvalue solver and by the
Kerr steady-state solver, which feeds it a real cubic.
"""

import cmath
import math

_OMEGA = complex(-0.5, math.sqrt(3) / 2)  # primitive cube root of unity


def principal_cbrt(z):
    """Principal complex cube root: arg in (-pi/3, pi/3]."""
    z = complex(z)
    if z == 0:
        return 0j
    return abs(z) ** (1 / 3) * cmath.exp(1j * cmath.phase(z) / 3)


def depressed_roots(p, q):
    """Roots of t^3 + p t + q = 0."""
    p, q = complex(p), complex(q)
    if p == 0 and q == 0:
        return [0j, 0j, 0j]
    # t = u - p/(3u) with u^3 = -q/2 +- sqrt(q^2/4 + p^3/27); take the larger
    # |u^3| to avoid cancellation.
    s = cmath.sqrt(q * q / 4 + p**3 / 27)
    w = -q / 2 + s if abs(-q / 2 + s) >= abs(-q / 2 - s) else -q / 2 - s
    u = principal_cbrt(w)
    if u == 0:
        return [0j, 0j, 0j]
    roots = []
    for k in range(3):
        uk = u * _OMEGA**k
        roots.append(uk - p / (3 * uk))
    return roots


def depress(b, c, d):
    """Shift x = t - b/3 for x^3 + b x^2 + c x + d; returns (shift, p, q)."""
    shift = -b / 3
    p = c - b * b / 3
    q = 2 * b**3 / 27 - b * c / 3 + d
    return shift, p, q


def discriminant(p, q):
    """Discriminant of the depressed cubic t^3 + p t + q."""
    return -(4 * p**3 + 27 * q * q)


def _poly(coeffs, x):
    # coeffs highest degree first, monic or not
    val = 0j
    der = 0j
    for c in coeffs:
        der = der * x + val
        val = val * x + c
    return val, der


def newton_polish(coeffs, x):
    """One Newton step, kept only if it lowers |P(x)|."""
    val, der = _poly(coeffs, x)
    if der == 0 or val == 0:
        return x
    x_new = x - val / der
    val_new, _ = _poly(coeffs, x_new)
    return x_new if abs(val_new) < abs(val) else x


def solve_cubic(b, c, d, polish=True):
    """Roots of the monic cubic x^3 + b x^2 + c x + d."""
    shift, p, q = depress(complex(b), complex(c), complex(d))
    roots = [t + shift for t in depressed_roots(p, q)]
    if polish:
        coeffs = (1.0, b, c, d)
        roots = [newton_polish(coeffs, r) for r in roots]
    return roots
