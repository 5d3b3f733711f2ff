"""Smoke tests for the python bindings."""

import math

import numpy as np
import pytest

cavcal = pytest.importorskip("cavcal")


def test_scalar_functions():
    a = np.diag([-1.0, 1.0, 1.0])
    assert cavcal.G(a, lambda_=1.0) == pytest.approx(2.0)
    assert cavcal.G(a, lambda_=3.0) == pytest.approx(-2.0)
    assert cavcal.G_minus(a, lambda_=3.0) == pytest.approx(2.0)
    assert cavcal.N(np.diag([1.0, 2.0, 3.0]), lambda_=1.0) == pytest.approx(5.0)
    assert cavcal.m_l(a, lambda_=1.0, l=2) == pytest.approx(0.5)
    assert cavcal.H(np.diag([2.0, 3.0, 4.0]), lambda_=1.0) == pytest.approx(6.0)
    a0 = np.diag([-0.5, -0.5, 1.0 / math.sqrt(2.0)])
    assert cavcal.K_hat(a0) == pytest.approx(math.sqrt(2.0), abs=1e-12)


def test_svd_and_minors():
    a = np.array([[1.0, 2.0, 0.5], [-1.0, 0.3, 2.0], [0.0, 1.0, -0.7]])
    u, sigma, v = cavcal.svd3(a)
    recon = u @ np.diag(sigma) @ v.T
    assert np.allclose(recon, a, atol=1e-12)
    assert np.all(np.diff(sigma) >= 0)
    tr, cof, det = cavcal.minors(a)
    assert tr == pytest.approx(np.trace(a))
    assert det == pytest.approx(np.linalg.det(a))
    assert np.allclose(a @ cof.T, det * np.eye(3), atol=1e-12)


def test_profile_matches_direct():
    a = cavcal.random_matrix(seed=3, stream=1)
    profile = cavcal.rational_profile(a)
    for lam in (1.0, 1.5, 2.0):
        direct = cavcal.m_l(a, lambda_=lam, l=3)
        assert cavcal.eval_profile(profile, lambda_=lam, l=3) == pytest.approx(
            direct, rel=1e-10
        )


def test_estimate_matches_reference_value():
    est = cavcal.estimate_M(lambda_=1.5, l=3, restarts=60, seed=7)
    assert est["value"] == pytest.approx(0.30007890, abs=2e-4)
    assert est["converged"]
    assert est["c1_spread"][0] <= est["c1"] <= est["c1_spread"][1] + 1e-12


def test_algorithm_b_table():
    table = cavcal.algorithm_b(l=3, variant="abs", np=4, n=20000, seed=3)
    assert len(table["lambda"]) == 5
    assert np.all(table["values"] >= 0)
    again = cavcal.algorithm_b(l=3, variant="abs", np=4, n=20000, seed=3, workers=1)
    assert np.array_equal(table["values"], again["values"])


def test_fits_and_bound():
    lams = np.array([1.0, 1.25, 1.5, 2.0])
    fit = cavcal.fit_inverse(lams, 0.45 / lams)
    assert fit["coefficients"][0] == pytest.approx(0.45, rel=1e-12)
    affine = cavcal.fit_affine(lams, 0.1 + 1.8 * lams)
    assert affine["coefficients"][1] == pytest.approx(1.8, rel=1e-10)

    rep = cavcal.lambda_bound(q=2.5, kappa=cavcal.kappa_min(2.5), lambda_=1.5)
    assert rep["term_est1"] == pytest.approx(1.321714, abs=1e-5)
    assert rep["term_cstar"] == pytest.approx(0.443142, abs=1e-5)
    assert rep["rhs"] == pytest.approx(min(rep["term_est1"], rep["term_cstar"]))

    z, y, z_less = cavcal.zy_compare(3.0, 0.1923)
    assert z == pytest.approx(5.2002, abs=5e-5)
    assert y == pytest.approx(5.1962, abs=5e-5)
    assert not z_less

    assert cavcal.fixed_point_cstar(nu1=0.4501, lambda_=1.0) == pytest.approx(
        3.1420, abs=1e-4
    )


def test_random_rotation_is_orthogonal():
    r = cavcal.random_rotation(seed=5, stream=2)
    assert np.allclose(r.T @ r, np.eye(3), atol=1e-12)
    assert np.linalg.det(r) == pytest.approx(1.0, abs=1e-12)


def test_errors_map_to_value_error():
    with pytest.raises(ValueError):
        cavcal.m_l(np.eye(3), lambda_=1.0, l=3)
    with pytest.raises(ValueError):
        cavcal.K_hat(np.zeros((3, 3)))
    with pytest.raises(ValueError):
        cavcal.alignment_rotation(np.diag([-1.0, 1.0, 1.0]))
