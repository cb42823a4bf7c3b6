import math

import numpy as np
import pytest

import gha


def test_vn_dims_pair3():
    g = gha.catalog("pair:3")
    assert gha.vn_dims(g) == (81, 27, 9, 9, 1)


def test_unit_indicator_bg_norm():
    g = gha.catalog("pair:2")
    chi = np.zeros(g.size(), dtype=complex)
    for u in range(g.units()):
        chi[u] = 1.0
    assert gha.is_positive_definite(g, chi)
    assert gha.bg_norm(g, chi, tol=1e-6) == pytest.approx(1.0, abs=1e-5)


def test_convolution_identity():
    g = gha.catalog("cyclic:3")
    chi = np.zeros(g.size(), dtype=complex)
    chi[: g.units()] = 1.0
    rng = np.random.default_rng(7)
    f = rng.normal(size=g.size()) + 1j * rng.normal(size=g.size())
    assert np.allclose(gha.convolve(g, chi, f), f)
    assert np.allclose(gha.convolve(g, f, chi), f)


def test_duality_counts():
    counts = {"pair:3": 6, "cyclic:3": 3, "bundle:z2z3": 6}
    for name, expect in counts.items():
        rep = gha.duality_counts(gha.catalog(name))
        assert rep["bisections"] == expect
        assert rep["mult_module_maps"] == expect
        assert rep["bijection"]


def test_schur_oracle():
    m = np.array([[1.0, 1.0], [1.0, -1.0]], dtype=complex)
    assert gha.schur_cb_norm(m, tol=1e-6) == pytest.approx(math.sqrt(2), abs=1e-5)


def test_gns_roundtrip():
    g = gha.catalog("action:swap")
    phi = gha.random_pd(g, seed=3)
    assert gha.gns_roundtrip_error(g, phi) < 1e-9
