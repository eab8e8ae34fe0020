"""Spinor bilinears, the stationary and Weyl Lagrangian densities, the
factorisation identity, scaling covariance and the dynamic reduction."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cosserat_weyl import (
    DegenerateDenominator,
    FACTORIZATION_SIGN,
    TorusGrid,
    VanishingSpinor,
    ZeroFrequency,
    bilinears,
    build_pauli,
    factorization_residual,
    fierz_residual,
    lagrangian_dynamic,
    lagrangian_stationary,
    lagrangian_weyl,
    scaling_covariance_residual,
    stationary_ansatz,
)
from cosserat_weyl.sampling import (
    random_bandlimited_scalar,
    random_nonvanishing_spinor,
    random_spd_metric,
)


def _constant_spinor(grid, u=(1.0, 0.0)):
    eta = np.zeros(grid.shape + (2,), dtype=complex)
    eta[..., 0] = u[0]
    eta[..., 1] = u[1]
    return eta


class TestBilinears:
    def test_constant_spin_up(self, grid8, pauli_identity):
        b = bilinears(_constant_spinor(grid8), pauli_identity, grid8)
        assert np.abs(b.s - 1.0).max() <= 1e-15
        assert np.abs(b.v - np.array([0.0, 0.0, 1.0])).max() <= 1e-15
        assert np.abs(b.A).max() == 0.0

    def test_plane_wave_axial_scalar(self, grid8, pauli_identity):
        # eta = u e^{i k x} with (k.sigma) u = p0 u gives A = -p0 s
        x3 = grid8.coords()[2]
        u = np.array([1.0, 0.0])  # sigma_3 eigenvector, eigenvalue +1
        eta = np.exp(1j * x3)[..., np.newaxis] * u  # k = (0,0,1), p0 = 1
        b = bilinears(eta, pauli_identity, grid8)
        assert np.abs(b.A + b.s).max() <= 1e-13

    def test_vanishing_guard(self, grid8, pauli_identity):
        x1 = grid8.coords()[0]
        eta = np.zeros(grid8.shape + (2,), dtype=complex)
        eta[..., 0] = np.cos(x1)  # vanishes on a plane
        with pytest.raises(VanishingSpinor):
            bilinears(eta, pauli_identity, grid8, require_nonvanishing=True)

    @settings(max_examples=25, deadline=None)
    @given(st.integers(0, 2**31 - 1))
    def test_fierz_identity(self, seed):
        grid = TorusGrid((8, 8, 8), (2 * np.pi,) * 3)
        rng = np.random.default_rng(seed)
        metric = random_spd_metric(rng)
        pauli = build_pauli(metric)
        eta = random_nonvanishing_spinor(grid, rng)
        assert fierz_residual(eta, pauli, metric, grid) <= 1e-13


class TestLagrangians:
    def test_constant_spinor_frozen_values(self, grid8, pauli_identity, identity_metric):
        # s = 1, A = 0, p0 = 1: L = -16/9, L_pm = pm 1
        eta = _constant_spinor(grid8)
        lag = lagrangian_stationary(eta, 1.0, pauli_identity, identity_metric, grid8)
        assert np.abs(lag + 16.0 / 9.0).max() <= 1e-14
        lp = lagrangian_weyl(eta, 1.0, 1, pauli_identity, identity_metric, grid8)
        lm = lagrangian_weyl(eta, 1.0, -1, pauli_identity, identity_metric, grid8)
        assert np.abs(lp - 1.0).max() <= 1e-14
        assert np.abs(lm + 1.0).max() <= 1e-14

    def test_zero_frequency_rejected(self, grid8, pauli_identity, identity_metric):
        eta = _constant_spinor(grid8)
        with pytest.raises(ZeroFrequency):
            lagrangian_stationary(eta, 0.0, pauli_identity, identity_metric, grid8)
        with pytest.raises(ZeroFrequency):
            lagrangian_weyl(eta, 0.0, 1, pauli_identity, identity_metric, grid8)

    def test_bad_weyl_sign_rejected(self, grid8, pauli_identity, identity_metric):
        with pytest.raises(ValueError):
            lagrangian_weyl(_constant_spinor(grid8), 1.0, 2,
                            pauli_identity, identity_metric, grid8)

    def test_u1_invariance(self, grid8, pauli_identity, identity_metric):
        rng = np.random.default_rng(7)
        eta = random_nonvanishing_spinor(grid8, rng)
        rotated = np.exp(1j * 0.83) * eta
        for field in (lagrangian_stationary(eta, 0.5, pauli_identity,
                                            identity_metric, grid8)
                      - lagrangian_stationary(rotated, 0.5, pauli_identity,
                                              identity_metric, grid8),):
            assert np.abs(field).max() <= 1e-13


class TestFactorization:
    def test_constant_spinor_by_hand(self, grid8, pauli_identity, identity_metric):
        # L+ L- / (L+ - L-) = -1/2 at p0 = 1, and L = -16/9,
        # so the printed constant -32/9 needs sign -1
        eta = _constant_spinor(grid8)
        res, sign = factorization_residual(eta, 1.0, pauli_identity,
                                           identity_metric, grid8)
        assert sign == -1
        assert res.max() <= 1e-14

    def test_sign_is_global_constant(self, grid16):
        rng = np.random.default_rng(11)
        for p0 in (0.5, -0.5, 1.0, 2.0):
            metric = random_spd_metric(rng)
            pauli = build_pauli(metric)
            eta = random_nonvanishing_spinor(grid16, rng)
            res, sign = factorization_residual(eta, p0, pauli, metric, grid16)
            assert sign == FACTORIZATION_SIGN
            lag = lagrangian_stationary(eta, p0, pauli, metric, grid16)
            assert res.max() / np.abs(lag).max() <= 1e-12

    def test_degenerate_denominator(self, grid8, pauli_identity, identity_metric):
        # s vanishes on the x1 = pi/2 plane, so L+ - L- does too
        x1 = grid8.coords()[0]
        eta = np.zeros(grid8.shape + (2,), dtype=complex)
        eta[..., 0] = np.cos(x1)
        with pytest.raises(DegenerateDenominator):
            factorization_residual(eta, 1.0, pauli_identity, identity_metric, grid8)

    def test_zero_frequency_rejected(self, grid8, pauli_identity, identity_metric):
        with pytest.raises(ZeroFrequency):
            factorization_residual(_constant_spinor(grid8), 0.0,
                                   pauli_identity, identity_metric, grid8)


class TestScalingCovariance:
    @settings(max_examples=15, deadline=None)
    @given(st.integers(0, 2**31 - 1))
    def test_small_band_limited_rescaling(self, seed):
        grid = TorusGrid((16, 16, 16), (2 * np.pi,) * 3)
        rng = np.random.default_rng(seed)
        metric = random_spd_metric(rng)
        pauli = build_pauli(metric)
        eta = random_nonvanishing_spinor(grid, rng, max_mode=1)
        h = random_bandlimited_scalar(grid, rng, max_mode=1, amplitude=0.2)
        for sign in (1, -1):
            res = scaling_covariance_residual(eta, h, 0.5, sign, pauli, metric, grid)
            assert res <= 1e-10

    def test_constant_rescaling_is_exact(self, grid8, pauli_identity, identity_metric):
        rng = np.random.default_rng(2)
        eta = random_nonvanishing_spinor(grid8, rng)
        h = np.full(grid8.shape, 0.7)
        res = scaling_covariance_residual(eta, h, 1.0, 1, pauli_identity,
                                          identity_metric, grid8)
        assert res <= 1e-14


class TestDynamicReduction:
    def test_stationary_ansatz_returns_time_derivative(self, grid8):
        eta = _constant_spinor(grid8)
        xi, dxi0 = stationary_ansatz(eta, 2.0)
        assert xi is eta
        assert np.abs(dxi0 + 2.0j * eta).max() == 0.0

    def test_dynamic_equals_stationary_on_ansatz(self, grid16):
        rng = np.random.default_rng(13)
        for p0 in (0.5, 1.0, -2.0):
            metric = random_spd_metric(rng)
            pauli = build_pauli(metric)
            eta = random_nonvanishing_spinor(grid16, rng)
            xi, dxi0 = stationary_ansatz(eta, p0)
            dyn = lagrangian_dynamic(xi, dxi0, pauli, metric, grid16)
            stat = lagrangian_stationary(eta, p0, pauli, metric, grid16)
            scale = np.abs(stat).max()
            assert np.abs(dyn - stat).max() / scale <= 1e-13
