"""Effective non-Hermitian Hamiltonian and its exact three-level spectrum.

The eigenvalues come from the closed-form cubic applied to the characteristic
polynomial of the trace-shifted matrix, which keeps the depressed
coefficients accurate near the triple root.
"""

from dataclasses import dataclass
from enum import Enum
import itertools

import numpy as np

from . import cubic
from .errors import NoRootInBracket, ValidationError
from .params import PseudoHermitianConfig, derive_pseudo_hermitian, g_min

#: Distance below which eigenvalues count as coalesced / imaginary parts as zero.
COALESCE_TOL = 1e-7


class SpectrumClass(str, Enum):
    THREE_REAL = "ThreeReal"
    REAL_PLUS_PAIR = "RealPlusConjugatePair"
    COALESCED2 = "Coalesced2"
    COALESCED3 = "Coalesced3"
    INDETERMINATE = "Indeterminate"


@dataclass(frozen=True)
class EffectiveHamiltonian:
    matrix: np.ndarray
    params: object
    delta_cp: float

    def __post_init__(self):
        self.matrix.setflags(write=False)


@dataclass(frozen=True)
class SpectrumTriple:
    omega_minus: complex
    omega_zero: complex
    omega_plus: complex
    cls: SpectrumClass
    labeling: str

    def as_array(self):
        """Eigenvalues ordered (minus, zero, plus)."""
        return np.array([self.omega_minus, self.omega_zero, self.omega_plus])

    def __iter__(self):
        return iter(self.as_array())


def build_heff(params, delta_cp=0.0):
    if params.kappa_g <= 0:
        raise ValidationError(
            f"effective gain kappa_g = {params.kappa_g:g} must be positive",
            module="spectral",
            operation="build_heff",
        )
    d1p = delta_cp + params.delta1
    d2p = delta_cp + params.delta2
    m = np.array(
        [
            [delta_cp + 1j * params.kappa_g, params.g1, params.g2],
            [params.g1, d1p + params.probe_shift - 1j * params.gamma1, 0],
            [params.g2, 0, d2p - 1j * params.gamma2],
        ],
        dtype=complex,
    )
    return EffectiveHamiltonian(m, params, float(delta_cp))


def _as_matrix(h):
    return h.matrix if isinstance(h, EffectiveHamiltonian) else np.asarray(h, dtype=complex)


def depressed_characteristic(h):
    """Return (shift, p, q) with det(H - (t + shift) I) = -(t^3 + p t + q)."""
    m = _as_matrix(h)
    shift = np.trace(m) / 3
    a = m - shift * np.eye(3)
    p = (
        a[0, 0] * a[1, 1] + a[0, 0] * a[2, 2] + a[1, 1] * a[2, 2]
        - a[0, 1] * a[1, 0] - a[0, 2] * a[2, 0] - a[1, 2] * a[2, 1]
    )
    det = (
        a[0, 0] * (a[1, 1] * a[2, 2] - a[1, 2] * a[2, 1])
        - a[0, 1] * (a[1, 0] * a[2, 2] - a[1, 2] * a[2, 0])
        + a[0, 2] * (a[1, 0] * a[2, 1] - a[1, 1] * a[2, 0])
    )
    return complex(shift), complex(p), complex(-det)


def characteristic_polynomial(h):
    """Monic coefficients (1, b, c, d) of det(Omega I - H)."""
    m = _as_matrix(h)
    tr = np.trace(m)
    c1 = (
        m[0, 0] * m[1, 1] + m[0, 0] * m[2, 2] + m[1, 1] * m[2, 2]
        - m[0, 1] * m[1, 0] - m[0, 2] * m[2, 0] - m[1, 2] * m[2, 1]
    )
    return np.array([1.0, -tr, c1, -np.linalg.det(m)], dtype=complex)


def discriminant(h):
    _, p, q = depressed_characteristic(h)
    return cubic.discriminant(p, q)


def roots(h):
    """The three eigenvalues, unordered, from the closed-form cubic."""
    shift, p, q = depressed_characteristic(h)
    ts = cubic.depressed_roots(p, q)
    ts = [cubic.newton_polish((1.0, 0.0, p, q), t) for t in ts]
    return np.array([t + shift for t in ts])


def classify_spectrum(values, tol=COALESCE_TOL):
    if tol <= 0:
        raise ValidationError("tol must be positive", module="spectral", operation="classify_spectrum")
    z = np.asarray(list(values), dtype=complex)
    close = [abs(z[i] - z[j]) < tol for i, j in ((0, 1), (0, 2), (1, 2))]
    if all(close):
        return SpectrumClass.COALESCED3
    if any(close):
        return SpectrumClass.COALESCED2
    real = np.abs(z.imag) < tol
    if real.all():
        return SpectrumClass.THREE_REAL
    if real.sum() == 1:
        a, b = z[~real]
        if abs(a - np.conj(b)) < tol:
            return SpectrumClass.REAL_PLUS_PAIR
    return SpectrumClass.INDETERMINATE


def label_roots(values, tol=COALESCE_TOL):
    """Attach (minus, zero, plus) labels and a spectrum class.

    Equal imaginary parts: ascending real part.  One real root plus a
    conjugate pair: the real root is zero, the pair is split by the sign of
    its imaginary part.  Anything else (e.g. a Kerr-shifted EP3): zero is the
    root with the largest imaginary part, the other two go by real part,
    which matches the branch phases of the cube-root expansion.
    """
    z = np.asarray(list(values), dtype=complex)
    cls = classify_spectrum(z, tol)
    if np.ptp(z.imag) < tol:
        o = z[np.argsort(z.real, kind="stable")]
        return SpectrumTriple(o[0], o[1], o[2], cls, "real-part order")
    if cls is SpectrumClass.REAL_PLUS_PAIR:
        i0 = int(np.argmin(np.abs(z.imag)))
        rest = np.delete(z, i0)
        lo, hi = sorted(rest, key=lambda w: w.imag)
        return SpectrumTriple(lo, z[i0], hi, cls, "real root as zero, pair by sign of imaginary part")
    i0 = int(np.argmax(z.imag))
    rest = sorted(np.delete(z, i0), key=lambda w: w.real)
    return SpectrumTriple(rest[0], z[i0], rest[1], cls, "largest imaginary part as zero, rest by real part")


def eigenvalues(h, tol=COALESCE_TOL):
    return label_roots(roots(h), tol)


def track_branches(sequence):
    """Reorder each step's eigenvalues to follow the previous step.

    Each step is permuted to minimise the total distance to the step before,
    so branches do not swap where labels by sorting would.
    """
    out = []
    prev = None
    for vals in sequence:
        v = np.asarray(vals, dtype=complex)
        if prev is not None:
            best = min(itertools.permutations(range(3)), key=lambda pm: np.abs(v[list(pm)] - prev).sum())
            v = v[list(best)]
        out.append(v)
        prev = v
    return np.array(out)


def manifold_invariants(eta, g1, delta_cp=0.0):
    """(p, q, discriminant) of the depressed characteristic cubic on the
    manifold (+1 branch); all three are real there up to rounding."""
    params = derive_pseudo_hermitian(PseudoHermitianConfig(eta=eta, g1=g1))
    _, p, q = depressed_characteristic(build_heff(params, delta_cp))
    return p.real, q.real, cubic.discriminant(p, q).real


def find_ep3(eta, bracket, tol=1e-12, maxiter=200):
    """Locate the coupling g1 of the EP3 inside ``bracket``.

    A triple root needs both depressed coefficients p and q to vanish.  p has
    a simple zero at the EP3 for every eta, so it is bracketed by bisection
    and finished with secant steps; q is then checked.  The discriminant
    itself only changes sign there when eta == 1 (for other eta it touches
    zero from below), so it is not used for bracketing.
    """
    op = "find_ep3"
    lo, hi = map(float, bracket)
    if not lo < hi:
        raise ValidationError("bracket must be increasing", module="spectral", operation=op)
    # the manifold only exists from g_min upward
    lo = max(lo, g_min(eta))
    if not lo < hi:
        raise NoRootInBracket(f"bracket lies below g_min={lo:.6g} for eta={eta:g}", module="spectral", operation=op)

    def f(g):
        return manifold_invariants(eta, g)[0]

    flo, fhi = f(lo), f(hi)
    if flo * fhi > 0:
        raise NoRootInBracket(
            f"no EP3 in [{lo:g}, {hi:g}] for eta={eta:g}: p does not change sign",
            module="spectral",
            operation=op,
        )
    root = None
    if flo == 0:
        root = lo
    elif fhi == 0:
        root = hi
    while root is None and hi - lo > 1e-3:
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if fm == 0:
            root = mid
        elif np.sign(fm) == np.sign(flo):
            lo, flo = mid, fm
        else:
            hi, fhi = mid, fm

    a, fa, b, fb = lo, flo, hi, fhi
    for _ in range(maxiter):
        if root is not None:
            break
        x = b - fb * (b - a) / (fb - fa) if fb != fa else 0.5 * (lo + hi)
        if not lo <= x <= hi:
            x = 0.5 * (lo + hi)
        fx = f(x)
        if fx == 0:
            root = x
            break
        if np.sign(fx) == np.sign(flo):
            lo, flo = x, fx
        else:
            hi, fhi = x, fx
        step = abs(x - b)
        a, fa, b, fb = b, fb, x, fx
        if step < tol or hi - lo < tol:
            root = x
    if root is None:
        root = b

    _, q, _ = manifold_invariants(eta, root)
    if abs(q) > 1e-8 * max(1.0, eta) ** 3:
        raise NoRootInBracket(
            f"p vanishes at g1={root:.9g} but q={q:.3g}: not a triple root",
            module="spectral",
            operation=op,
        )
    return root
