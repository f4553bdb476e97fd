"""Smoke tests for the Python bindings."""

import cmath
import math

import pytest

import qha


@pytest.fixture(scope="module")
def params():
    return qha.ModelParams(n=1, nu=2.5)


@pytest.fixture(scope="module")
def table(params):
    return qha.build_spectral_table(params, 8)


def test_model_validation():
    with pytest.raises(qha.QhaError):
        qha.ModelParams(n=1, nu=1.0)


def test_phi_normalization(params):
    assert qha.phi(params, 2.0, 0.0) == 1.0
    # phi at lambda = i*rho is identically one
    v = qha.phi(params, complex(0.0, params.rho), 0.5)
    assert abs(v - 1.0) < 1e-12


def test_sft_matches_h_hat(params):
    f = qha.hpow(params.nu, params)
    for lam in (0.5, 2.0):
        got = qha.sft(f, params, lam)
        want = qha.h_hat(params.nu, params, lam)
        assert abs(got - want) < 1e-9


def test_toeplitz_identity(params):
    eigs = qha.toeplitz_eigs(qha.rpow(0), params, 6).coeffs
    assert all(abs(c - 1.0) < 1e-10 for c in eigs)


def test_conv_ground_projector(params, table):
    p0 = qha.RadialOperator([1.0])
    h = qha.conv_oo(p0, p0, table)
    for r in (0.0, 0.5, 0.8):
        assert abs(h(r) - (1.0 - r * r) ** params.nu) < 1e-8


def test_gelfand_composition(params, table):
    f = qha.hpow(params.nu, params)
    p0 = qha.RadialOperator([1.0])
    lam = table.nodes[10]
    want = qha.sft(f, params, lam) - qha.op_fourier(p0, params, lam)
    got = qha.gelfand_eval(f, p0, table, lam, j=1)
    assert abs(got - want) < 1e-10


def test_contraction(params):
    eigs = qha.t_lambda_eigs(params, 3.0, 12)
    assert qha.schatten_norm(eigs, params, math.inf) <= 1.0 + 1e-10


def test_run_checks_specfun():
    results = qha.run_checks("specfun")
    assert results and all(c["pass"] for c in results)


def test_run_checks_rejects_unknown_suite():
    with pytest.raises(qha.QhaError):
        qha.run_checks("bogus")
