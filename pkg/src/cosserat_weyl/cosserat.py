"""Coframe kinematics and rotational-elasticity energetics.

A coframe is stored as an array of shape ``(3,) + dims + (3,)``:
``theta[j]`` is the j-th covector field. A coframe velocity (the time
derivatives of the three covectors) has the same shape. Density is a
positive scalar field of shape ``dims``.
"""

from __future__ import annotations

import numpy as np

from .errors import NonPositiveDensity
from .geometry import (
    Metric3,
    TorusGrid,
    exterior_derivative,
    integrate,
    wedge_1_1,
    wedge_1_2,
)


def check_density(rho: np.ndarray) -> None:
    if np.min(rho) <= 0.0:
        raise NonPositiveDensity(f"density must be positive, min = {np.min(rho)}")


def induced_metric(theta: np.ndarray):
    """Pointwise metric induced by the coframe, delta_jk theta^j theta^k,
    with its inverse and determinant.

    For an admissible coframe this equals the prescribed metric. The
    energetics below measure form norms against the induced metric:
    the two agree on admissible coframes, and only the induced one
    makes the potential energy exactly conformally invariant under
    theta -> e^h theta, rho -> e^{2h} rho (the rescaled coframe is
    orthonormal for e^{2h} g, not for g).
    """
    g_ind = np.einsum("j...a,j...b->...ab", theta, theta)
    return g_ind, np.linalg.inv(g_ind), np.linalg.det(g_ind)


def _norm2_3form_induced(f: np.ndarray, det_ind: np.ndarray) -> np.ndarray:
    return f * f / det_ind


def _norm2_2form_induced(omega: np.ndarray, g_ind_upper: np.ndarray) -> np.ndarray:
    w23, w31, w12 = omega[..., 0], omega[..., 1], omega[..., 2]
    full = np.zeros(omega.shape[:-1] + (3, 3), dtype=omega.dtype)
    full[..., 1, 2] = w23
    full[..., 2, 1] = -w23
    full[..., 2, 0] = w31
    full[..., 0, 2] = -w31
    full[..., 0, 1] = w12
    full[..., 1, 0] = -w12
    return 0.5 * np.einsum("...ab,...cd,...ac,...bd->...",
                           full, full, g_ind_upper, g_ind_upper)


def orthonormality_residual(theta: np.ndarray, metric: Metric3) -> np.ndarray:
    """Pointwise max entry of |g_ab - delta_jk theta^j_a theta^k_b|.

    Zero iff the coframe satisfies the orthonormality constraint at
    that point.
    """
    gram = np.einsum("j...a,j...b->...ab", theta, theta)
    residual = np.abs(gram - metric.g_lower)
    return residual.max(axis=(-2, -1))


def axial_torsion(theta: np.ndarray, grid: TorusGrid) -> np.ndarray:
    """Coefficient f of the axial torsion 3-form
    (1/3) delta_jk theta^j ^ d theta^k = f dx1^dx2^dx3."""
    f = np.zeros(grid.shape)
    for j in range(3):
        f += wedge_1_2(theta[j], exterior_derivative(theta[j], grid))
    return f / 3.0


def potential_energy(theta: np.ndarray, rho: np.ndarray, metric: Metric3,
                     grid: TorusGrid) -> float:
    """P = integral of |T_ax|^2 rho over the torus.

    The norm uses the coframe's induced metric (equal to ``metric`` on
    admissible coframes), so P is exactly conformally invariant.
    """
    check_density(rho)
    f = axial_torsion(theta, grid)
    _, _, det_ind = induced_metric(theta)
    return integrate(_norm2_3form_induced(f, det_ind) * rho, grid)


def conformal_rescale(theta: np.ndarray, rho: np.ndarray, h: np.ndarray):
    """Rescale theta^j -> e^h theta^j and rho -> e^{2h} rho."""
    eh = np.exp(h)
    return theta * eh[np.newaxis, ..., np.newaxis], rho * eh * eh


def kinetic_2form(theta: np.ndarray, dtheta0: np.ndarray) -> np.ndarray:
    """The 2-form (1/3) delta_jk theta^j ^ d0 theta^k, components
    (w_23, w_31, w_12)."""
    omega = np.zeros(theta.shape[1:])
    for j in range(3):
        omega += wedge_1_1(theta[j], dtheta0[j])
    return omega / 3.0


def kinetic_energy(theta: np.ndarray, dtheta0: np.ndarray, rho: np.ndarray,
                   metric: Metric3, grid: TorusGrid) -> float:
    """K = integral of |theta_dot|^2 rho over the torus (induced-metric
    norm, as in `potential_energy`)."""
    check_density(rho)
    omega = kinetic_2form(theta, dtheta0)
    _, g_ind_upper, _ = induced_metric(theta)
    return integrate(_norm2_2form_induced(omega, g_ind_upper) * rho, grid)


def lagrangian_coframe(theta: np.ndarray, dtheta0: np.ndarray, rho: np.ndarray,
                       metric: Metric3, grid: TorusGrid) -> np.ndarray:
    """Pointwise dynamic Lagrangian density
    (|T_ax|^2 - |theta_dot|^2) rho; its integral is P - K."""
    check_density(rho)
    _, g_ind_upper, det_ind = induced_metric(theta)
    potential = _norm2_3form_induced(axial_torsion(theta, grid), det_ind)
    kinetic = _norm2_2form_induced(kinetic_2form(theta, dtheta0), g_ind_upper)
    return (potential - kinetic) * rho
