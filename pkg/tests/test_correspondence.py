"""Spinor <-> coframe dictionary: frozen examples, orthonormality,
round trips, phase behaviour and the stationary frame path."""

import numpy as np
import pytest

from cosserat_weyl import (
    NonPositiveDensity,
    NotOrthonormal,
    PHASE_RATE,
    VanishingSpinor,
    build_pauli,
    frame_to_spinor,
    lagrangian_coframe,
    lagrangian_stationary,
    orthonormality_residual,
    spinor_to_frame,
    stationary_frame_path,
)
from cosserat_weyl.sampling import random_nonvanishing_spinor, random_spd_metric


def _constant_spinor(grid, u=(1.0, 0.0)):
    xi = np.zeros(grid.shape + (2,), dtype=complex)
    xi[..., 0] = u[0]
    xi[..., 1] = u[1]
    return xi


class TestSpinorToFrame:
    def test_spin_up_frozen_frame(self, grid8, pauli_identity, identity_metric):
        # xi = (1, 0): theta^1 = -dx1, theta^2 = -dx2, theta^3 = dx3, rho = 1
        packet = spinor_to_frame(_constant_spinor(grid8), pauli_identity,
                                 identity_metric, grid8)
        expected = np.zeros((3,) + grid8.shape + (3,))
        expected[0, ..., 0] = -1.0
        expected[1, ..., 1] = -1.0
        expected[2, ..., 2] = 1.0
        assert np.abs(packet.theta - expected).max() <= 1e-15
        assert np.abs(packet.rho - 1.0).max() <= 1e-15

    def test_image_is_orthonormal(self, grid8):
        rng = np.random.default_rng(17)
        for _ in range(5):
            metric = random_spd_metric(rng)
            pauli = build_pauli(metric)
            xi = random_nonvanishing_spinor(grid8, rng)
            packet = spinor_to_frame(xi, pauli, metric, grid8)
            assert orthonormality_residual(packet.theta, metric).max() <= 1e-13
            assert np.min(packet.rho) > 0.0

    def test_phase_rotates_first_two_covectors(self, grid8, pauli_identity,
                                               identity_metric):
        # xi -> e^{i phi} xi multiplies theta^1 + i theta^2 by e^{2 i phi}
        rng = np.random.default_rng(4)
        xi = random_nonvanishing_spinor(grid8, rng)
        phi = 0.37
        base = spinor_to_frame(xi, pauli_identity, identity_metric, grid8)
        rot = spinor_to_frame(np.exp(1j * phi) * xi, pauli_identity,
                              identity_metric, grid8)
        w_base = base.theta[0] + 1j * base.theta[1]
        w_rot = rot.theta[0] + 1j * rot.theta[1]
        assert np.abs(w_rot - np.exp(2j * phi) * w_base).max() <= 1e-13
        assert np.abs(rot.theta[2] - base.theta[2]).max() <= 1e-14
        assert np.abs(rot.rho - base.rho).max() <= 1e-14

    def test_vanishing_spinor_rejected(self, grid8, pauli_identity,
                                       identity_metric):
        x1 = grid8.coords()[0]
        xi = np.zeros(grid8.shape + (2,), dtype=complex)
        xi[..., 0] = np.cos(x1)
        with pytest.raises(VanishingSpinor):
            spinor_to_frame(xi, pauli_identity, identity_metric, grid8)


class TestFrameToSpinor:
    def test_round_trip_up_to_sign(self, grid8):
        rng = np.random.default_rng(23)
        for _ in range(5):
            metric = random_spd_metric(rng)
            pauli = build_pauli(metric)
            xi = random_nonvanishing_spinor(grid8, rng, amplitude=0.15, max_mode=1)
            packet = spinor_to_frame(xi, pauli, metric, grid8)
            rec = frame_to_spinor(packet.theta, packet.rho, pauli, metric, grid8)
            err = min(np.abs(rec - xi).max(), np.abs(rec + xi).max())
            assert err / np.abs(xi).max() <= 1e-11

    def test_forward_of_inverse_is_identity(self, grid8, pauli_identity,
                                            identity_metric):
        # the frame image is sign-blind, so this direction has no ambiguity
        rng = np.random.default_rng(29)
        xi = random_nonvanishing_spinor(grid8, rng, amplitude=0.15, max_mode=1)
        packet = spinor_to_frame(xi, pauli_identity, identity_metric, grid8)
        rec = frame_to_spinor(packet.theta, packet.rho, pauli_identity,
                              identity_metric, grid8)
        packet2 = spinor_to_frame(rec, pauli_identity, identity_metric, grid8)
        assert np.abs(packet2.theta - packet.theta).max() <= 1e-12
        assert np.abs(packet2.rho - packet.rho).max() <= 1e-12

    def test_rejects_non_orthonormal_frame(self, grid8, pauli_identity,
                                           identity_metric):
        theta = np.zeros((3,) + grid8.shape + (3,))
        for j in range(3):
            theta[j, ..., j] = 2.0
        with pytest.raises(NotOrthonormal):
            frame_to_spinor(theta, np.ones(grid8.shape), pauli_identity,
                            identity_metric, grid8)

    def test_rejects_nonpositive_density(self, grid8, pauli_identity,
                                         identity_metric):
        theta = np.zeros((3,) + grid8.shape + (3,))
        theta[0, ..., 0] = -1.0
        theta[1, ..., 1] = -1.0
        theta[2, ..., 2] = 1.0
        rho = np.ones(grid8.shape)
        rho[0, 0, 0] = -1.0
        with pytest.raises(NonPositiveDensity):
            frame_to_spinor(theta, rho, pauli_identity, identity_metric, grid8)


class TestStationaryFramePath:
    def test_constant_spinor_velocity(self, grid8, pauli_identity,
                                      identity_metric):
        # theta^1 + i theta^2 carries e^{PHASE_RATE i p0 x0}:
        # d0 theta^1 = -rate theta^2, d0 theta^2 = rate theta^1
        p0 = 1.5
        rate = PHASE_RATE * p0
        theta, dtheta0, rho = stationary_frame_path(
            _constant_spinor(grid8), p0, pauli_identity, identity_metric, grid8)
        assert np.abs(dtheta0[0] + rate * theta[1]).max() <= 1e-14
        assert np.abs(dtheta0[1] - rate * theta[0]).max() <= 1e-14
        assert np.abs(dtheta0[2]).max() == 0.0
        assert np.abs(rho - 1.0).max() <= 1e-15

    def test_coframe_lagrangian_matches_spinor_lagrangian(self):
        from cosserat_weyl import TorusGrid

        grid = TorusGrid((32, 32, 32), (2 * np.pi,) * 3)
        rng = np.random.default_rng(31)
        metric = random_spd_metric(rng)
        pauli = build_pauli(metric)
        eta = random_nonvanishing_spinor(grid, rng, amplitude=0.1, max_mode=1)
        p0 = 0.5
        theta, dtheta0, rho = stationary_frame_path(eta, p0, pauli, metric, grid)
        lag_frame = lagrangian_coframe(theta, dtheta0, rho, metric, grid)
        lag_spinor = lagrangian_stationary(eta, p0, pauli, metric, grid)
        scale = np.abs(lag_spinor).max()
        assert np.abs(lag_frame - lag_spinor).max() / scale <= 1e-10
