"""Seeded generators for band-limited test fields and random metrics.

Band-limited inputs keep every identity check exact on the grid, so
residuals measure floating-point noise rather than discretisation
error.
"""

from __future__ import annotations

import numpy as np

from .errors import VanishingSpinor
from .geometry import Metric3, TorusGrid


def random_spd_metric(rng: np.random.Generator, eig_low: float = 0.5,
                      eig_high: float = 2.0) -> Metric3:
    """Random well-conditioned SPD metric: Q diag(e) Q^T with seeded
    orthogonal Q and eigenvalues in [eig_low, eig_high]."""
    q, _ = np.linalg.qr(rng.normal(size=(3, 3)))
    eigs = rng.uniform(eig_low, eig_high, size=3)
    return Metric3.from_matrix(q @ np.diag(eigs) @ q.T)


def _angular_coords(grid: TorusGrid):
    # coordinates rescaled to period 2 pi per axis
    return [2.0 * np.pi * x / length
            for x, length in zip(grid.coords(), grid.box)]


def random_bandlimited_scalar(grid: TorusGrid, rng: np.random.Generator,
                              max_mode: int = 2, n_terms: int = 6,
                              amplitude: float = 1.0) -> np.ndarray:
    """Real trigonometric polynomial with per-axis mode numbers
    bounded by ``max_mode``."""
    xt = _angular_coords(grid)
    field = np.zeros(grid.shape)
    for _ in range(n_terms):
        modes = rng.integers(-max_mode, max_mode + 1, size=3)
        phase = rng.uniform(0.0, 2.0 * np.pi)
        coeff = rng.normal()
        field += coeff * np.cos(modes[0] * xt[0] + modes[1] * xt[1]
                                + modes[2] * xt[2] + phase)
    peak = max(float(np.abs(field).max()), np.finfo(float).tiny)
    return amplitude * field / peak


def random_bandlimited_spinor(grid: TorusGrid, rng: np.random.Generator,
                              max_mode: int = 2, n_terms: int = 4,
                              amplitude: float = 1.0) -> np.ndarray:
    """Complex 2-component trigonometric polynomial."""
    xt = _angular_coords(grid)
    field = np.zeros(grid.shape + (2,), dtype=complex)
    for comp in range(2):
        for _ in range(n_terms):
            modes = rng.integers(-max_mode, max_mode + 1, size=3)
            coeff = rng.normal() + 1j * rng.normal()
            field[..., comp] += coeff * np.exp(
                1j * (modes[0] * xt[0] + modes[1] * xt[1] + modes[2] * xt[2]))
    peak = max(float(np.abs(field).max()), np.finfo(float).tiny)
    return amplitude * field / peak


def random_nonvanishing_spinor(grid: TorusGrid, rng: np.random.Generator,
                               amplitude: float = 0.25,
                               max_mode: int = 2) -> np.ndarray:
    """Constant unit spinor plus a band-limited perturbation small
    enough to keep s = etabar eta bounded away from zero."""
    u = rng.normal(size=2) + 1j * rng.normal(size=2)
    u /= np.linalg.norm(u)
    eta = np.broadcast_to(u, grid.shape + (2,)).copy()
    eta += random_bandlimited_spinor(grid, rng, max_mode=max_mode,
                                     amplitude=amplitude)
    s = np.einsum("...a,...a->...", eta.conj(), eta).real
    if float(np.min(s)) <= 0.05:
        raise VanishingSpinor("generated spinor is not safely nonvanishing")
    return eta


def random_wavevector(rng: np.random.Generator, max_mode: int = 3) -> np.ndarray:
    """Nonzero integer mode vector with entries in [-max_mode, max_mode]."""
    while True:
        k = rng.integers(-max_mode, max_mode + 1, size=3)
        if np.any(k != 0):
            return k


def rotating_coframe(grid: TorusGrid, angle: np.ndarray) -> np.ndarray:
    """Coframe rotating about the third axis by the scalar field
    ``angle``:

        theta^1 = cos(angle) dx1 + sin(angle) dx2
        theta^2 = -sin(angle) dx1 + cos(angle) dx2
        theta^3 = dx3

    Orthonormal for the identity metric.
    """
    theta = np.zeros((3,) + grid.shape + (3,))
    c, s = np.cos(angle), np.sin(angle)
    theta[0, ..., 0] = c
    theta[0, ..., 1] = s
    theta[1, ..., 0] = -s
    theta[1, ..., 1] = c
    theta[2, ..., 2] = 1.0
    return theta
