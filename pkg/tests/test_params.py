from dataclasses import replace
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from magnon_ep3.errors import ValidationError
from magnon_ep3.params import (
    PhysicalParams,
    PseudoHermitianConfig,
    derive_pseudo_hermitian,
    ep3_eigenvector,
    ep3_params,
    g_ep3,
    g_min,
    k_ratio,
    manifold_residuals,
    omega_ep3,
    on_manifold,
)
from magnon_ep3.spectral import build_heff


def test_symmetric_ep3_set():
    p = derive_pseudo_hermitian(PseudoHermitianConfig(eta=1.0, g1=2 / math.sqrt(3)), kappa_int=1.0)
    assert p.kappa1 == pytest.approx(1.5) and p.kappa2 == pytest.approx(1.5)
    assert p.k_ratio == pytest.approx(1.0)
    assert p.delta1 == pytest.approx(1 / math.sqrt(3), abs=1e-12)
    assert p.delta2 == pytest.approx(-1 / math.sqrt(3), abs=1e-12)
    assert p.gamma1 == 1.0


def test_detunings_vanish_at_g_min():
    p = derive_pseudo_hermitian(PseudoHermitianConfig(eta=1.0, g1=1.0))
    assert p.delta1 == 0.0 and p.delta2 == 0.0


def test_eta3_ports_and_ratio():
    p = ep3_params(3.0)
    assert p.kappa1 == pytest.approx(2.5) and p.kappa2 == pytest.approx(2.5)
    assert k_ratio(3.0) == pytest.approx((7 / 15) ** 1.5)
    assert k_ratio(3.0) == pytest.approx(0.318794, abs=1e-6)


def test_below_g_min_rejected():
    with pytest.raises(ValidationError):
        derive_pseudo_hermitian(PseudoHermitianConfig(eta=1.0, g1=0.9))


@pytest.mark.parametrize("field", ["gamma1", "kappa_int", "kappa1", "kappa2"])
def test_rates_must_be_positive(field):
    kw = dict(gamma1=1, kappa_int=1, kappa1=1, kappa2=1, g1=1, g2=1, delta1=0, delta2=0)
    kw[field] = 0.0
    with pytest.raises(ValidationError):
        PhysicalParams(**kw)


def test_bad_split_and_sign():
    with pytest.raises(ValidationError):
        derive_pseudo_hermitian(PseudoHermitianConfig(eta=1.0, g1=1.2), port_split=1.0)
    with pytest.raises(ValidationError):
        PseudoHermitianConfig(eta=1.0, g1=1.2, delta1_sign=0)


def test_g_ep3_values():
    assert g_ep3(1.0) == pytest.approx(2 / math.sqrt(3), abs=1e-15)
    assert g_ep3(2.0) == pytest.approx(4 * math.sqrt(8) / 5, abs=1e-15)
    assert g_ep3(1e-12) < 1e-5


def test_omega_ep3_values():
    assert omega_ep3(1.0) == 0.0
    assert omega_ep3(2.0) == pytest.approx(-math.sqrt(3) / 10, abs=1e-15)
    assert omega_ep3(2.0, 5.0) == pytest.approx(5 - math.sqrt(3) / 10, abs=1e-15)


def test_eigenvector_symmetric_case():
    s3 = math.sqrt(3)
    want = np.array([1, -(1 + s3 * 1j) / 2, (1 - s3 * 1j) / 2]) / s3
    assert np.allclose(ep3_eigenvector(1.0), want, atol=1e-14)


@pytest.mark.parametrize("eta", [0.5, 1.0, 2.0, 3.0])
def test_eigenvector_is_coalesced_eigenvector(eta):
    v = ep3_eigenvector(eta)
    assert np.linalg.norm(v) == pytest.approx(1.0, abs=1e-12)
    h = build_heff(ep3_params(eta)).matrix
    assert np.max(np.abs(h @ v - omega_ep3(eta) * v)) < 1e-9


@settings(max_examples=300, deadline=None)
@given(
    eta=st.floats(0.05, 20),
    excess=st.floats(0, 5),
    kappa_int=st.floats(0.01, 10),
    split=st.floats(0.01, 0.99),
    sign=st.sampled_from([1, -1]),
)
def test_round_trip_onto_manifold(eta, excess, kappa_int, split, sign):
    g1 = g_min(eta) * (1 + excess)
    p = derive_pseudo_hermitian(PseudoHermitianConfig(eta=eta, g1=g1, delta1_sign=sign), kappa_int, split)
    assert np.all(manifold_residuals(p) < 1e-12)
    assert on_manifold(p)
    assert p.kappa_g == pytest.approx(p.kappa1 + p.kappa2 - p.kappa_int, rel=1e-15)


@given(eta=st.floats(0.1, 10), excess=st.floats(0, 3))
def test_sign_flip_mirrors_detunings_only(eta, excess):
    g1 = g_min(eta) * (1 + excess)
    a = derive_pseudo_hermitian(PseudoHermitianConfig(eta=eta, g1=g1, delta1_sign=1))
    b = derive_pseudo_hermitian(PseudoHermitianConfig(eta=eta, g1=g1, delta1_sign=-1))
    assert (b.delta1, b.delta2) == (-a.delta1, -a.delta2)
    for f in ("gamma1", "gamma2", "kappa_int", "kappa1", "kappa2", "g1", "g2", "delta_k"):
        assert getattr(a, f) == getattr(b, f)


def test_ep3_inside_allowed_region():
    for eta in np.linspace(0.1, 10, 200):
        assert g_ep3(eta) >= g_min(eta)


def test_off_manifold_detected():
    p = ep3_params(2.0)
    assert not on_manifold(replace(p, g2=p.g2 * 1.01))
