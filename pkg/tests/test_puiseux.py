import math
import warnings

import numpy as np
import pytest
from hypothesis import given, strategies as st

from magnon_ep3 import puiseux
from magnon_ep3.errors import InsufficientSamples, ValidationError
from magnon_ep3.params import omega_ep3

ETAS = [0.5, 1.0, 2.0, 3.0]


def test_symmetric_coefficients():
    sol = puiseux.puiseux_coefficients(1.0)
    assert all(abs(l) == pytest.approx((8 / 3) ** (1 / 3), abs=1e-12) for l in sol.lam1)
    assert all(abs(l) == pytest.approx(2 * math.sqrt(12) / (9 * (8 / 3) ** (1 / 3)), abs=1e-12) for l in sol.lam2)
    assert abs(sol.lam2[0]) == pytest.approx(0.555122, abs=1e-6)
    phases = [np.angle(l) % (2 * np.pi) for l in sol.lam1]
    assert np.allclose(phases, [11 * np.pi / 9, 5 * np.pi / 9, 17 * np.pi / 9], atol=1e-12)


@pytest.mark.parametrize("eta", ETAS)
def test_residuals_vanish(eta):
    sol = puiseux.puiseux_coefficients(eta)
    for l1, l2 in zip(sol.lam1, sol.lam2):
        f1, f43 = puiseux.residuals(eta, l1, l2)
        assert abs(f1) < 1e-10 and abs(f43) < 1e-10
        assert l1**3 == pytest.approx(4 * eta**2 * (1 - math.sqrt(3) * 1j) / (1 + 2 * eta), abs=1e-12)


@given(st.floats(0.01, 50))
def test_branch_sum_zero(eta):
    assert abs(sum(puiseux.puiseux_coefficients(eta).lam1)) < 1e-12 * max(1, eta)


def test_modulus_increases_with_eta():
    mods = [abs(puiseux.puiseux_coefficients(e).lam1[0]) for e in np.geomspace(0.01, 100, 200)]
    assert np.all(np.diff(mods) > 0)


def test_literal_shift_factor_halves_cube():
    l1 = puiseux.puiseux_coefficients(1.0, probe_shift_factor=1.0).lam1[0]
    l2 = puiseux.puiseux_coefficients(1.0).lam1[0]
    assert l2**3 / l1**3 == pytest.approx(2.0, abs=1e-12)


def test_series_limits():
    vals = puiseux.series(2.0, 0.0, 1e-15)
    assert np.max(np.abs(vals - omega_ep3(2.0))) < 1e-4
    with pytest.raises(ValidationError):
        puiseux.eigenvalues_near_ep3(1.0, 0.0, 0.0)


def test_series_splitting_at_one_percent():
    v = puiseux.series(1.0, 0.0, 0.01)
    # both series terms together; the leading term alone gives 0.5096
    assert (v[2] - v[0]).real == pytest.approx(0.5249, abs=1e-4)


def test_truncation_warning():
    with pytest.warns(UserWarning):
        puiseux.eigenvalues_near_ep3(1.0, 0.0, 0.5)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        puiseux.eigenvalues_near_ep3(1.0, 0.0, 0.2)


@pytest.mark.parametrize("eta", ETAS)
@pytest.mark.parametrize("factor", [1.0, 2.0])
def test_series_matches_exact(eta, factor):
    xi = 1e-3
    sol = puiseux.puiseux_coefficients(eta, factor)
    ser = puiseux.series(eta, 0.0, xi, sol)
    ex = puiseux.exact_branches(eta, [xi], probe_shift_factor=factor)[0]
    split = abs((ex[2] - ex[0]).real)
    assert np.max(np.abs(ser - ex)) / split < 0.05


@pytest.mark.parametrize("eta", [1.0, 3.0])
def test_series_error_shrinks(eta):
    xis = [1e-3, 1e-4, 1e-5]
    ex = puiseux.exact_branches(eta, xis)
    err = [np.max(np.abs(puiseux.series(eta, 0.0, x) - e)) / x ** (1 / 3) for x, e in zip(xis, ex)]
    assert err[0] > err[1] > err[2]


def test_exact_branches_keep_caller_order():
    xis = [1e-3, 1e-5, 1e-4]
    a = puiseux.exact_branches(1.0, xis)
    b = puiseux.exact_branches(1.0, sorted(xis))
    assert np.allclose(a[1], b[0]) and np.allclose(a[0], b[2])


@pytest.mark.parametrize("eta", [1.0, 3.0])
def test_cube_root_slope(eta):
    fit = puiseux.splitting_exponent_fit(eta, np.geomspace(1e-6, 1e-3, 13))
    assert fit.slope == pytest.approx(1 / 3, abs=0.02)


def test_intercept_grows_with_eta():
    xi = np.geomspace(1e-6, 1e-3, 13)
    assert puiseux.splitting_exponent_fit(3.0, xi).intercept > puiseux.splitting_exponent_fit(1.0, xi).intercept


def test_fit_preconditions():
    with pytest.raises(InsufficientSamples):
        puiseux.splitting_exponent_fit(1.0, [1e-6, 1e-5, 1e-4, 1e-3])
    with pytest.raises(InsufficientSamples):
        puiseux.splitting_exponent_fit(1.0, np.linspace(1e-4, 5e-4, 6))
    with pytest.raises(ValidationError):
        puiseux.splitting_exponent_fit(1.0, np.geomspace(1e-4, 1e-1, 6))
