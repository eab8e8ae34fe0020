"""Stationary Weyl operators, exact plane-wave solutions, and the
discrete variational residual witnessing the equivalence between Weyl
solutions and stationary points of the spinor action.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ZeroWavevector
from .geometry import Metric3, PauliSet, TorusGrid, build_pauli, integrate, spectral_partial
from .sampling import random_bandlimited_spinor, random_wavevector
from .spinor import (
    bilinears,
    lagrangian_stationary,
    lagrangian_weyl,
    spinor_gradient,
)


@dataclass(frozen=True)
class PlaneWaveSpec:
    """An exact plane-wave solution u e^{i k.x} of a stationary Weyl
    equation.

    ``k_modes`` are integer Fourier modes (physical wavevector is
    2 pi k_modes / box), ``p0`` the signed eigenvalue of k_a sigma^a on
    ``u`` (branch selects its sign), and ``weyl_sign`` records which of
    the two Weyl operators, evaluated at this p0, annihilates the field
    (determined empirically per Pauli set).
    """

    k_modes: tuple
    branch: int
    u: np.ndarray
    p0: float
    weyl_sign: int
    dispersion_residual: float


def weyl_residual(eta: np.ndarray, p0: float, sign: int, pauli: PauliSet,
                  grid: TorusGrid) -> np.ndarray:
    """Residual spinor field of the stationary Weyl operator,
    r = sign * p0 sigma^0 eta + i sigma^a d_a eta."""
    if sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign}")
    deta = spinor_gradient(eta, grid)
    slash = np.einsum("nab,n...b->...a", pauli.sigma_upper, deta)
    return sign * p0 * eta + 1j * slash


def weyl_residual_norm(eta: np.ndarray, p0: float, sign: int, pauli: PauliSet,
                       grid: TorusGrid) -> float:
    """Max over grid points of the pointwise 2-norm of the residual."""
    r = weyl_residual(eta, p0, sign, pauli, grid)
    return float(np.sqrt(np.einsum("...a,...a->...", r.conj(), r).real).max())


def planewave_solution(k_modes, branch: int, metric: Metric3, grid: TorusGrid):
    """Exact plane-wave Weyl solution for integer mode vector
    ``k_modes``.

    Returns ``(spec, eta)`` with eta = u e^{i k.x}, where u is the unit
    eigenvector of the Hermitian matrix k_a sigma^a for the eigenvalue
    p0 = branch * sqrt(g^ab k_a k_b).
    """
    k_modes = np.asarray(k_modes, dtype=int)
    if not np.any(k_modes != 0):
        raise ZeroWavevector("plane wave requires a nonzero mode vector")
    if branch not in (1, -1):
        raise ValueError(f"branch must be +1 or -1, got {branch}")
    pauli = build_pauli(metric)
    k = 2.0 * np.pi * k_modes / np.asarray(grid.box)
    kslash = np.einsum("n,nab->ab", k, pauli.sigma_upper)
    p0 = branch * float(np.sqrt(k @ metric.g_upper @ k))
    eigvals, eigvecs = np.linalg.eigh(kslash)
    idx = int(np.argmin(np.abs(eigvals - p0)))
    u = eigvecs[:, idx]
    u = u / np.sqrt(np.vdot(u, u).real)
    x1, x2, x3 = grid.coords()
    phase = np.exp(1j * (k[0] * x1 + k[1] * x2 + k[2] * x3))
    eta = phase[..., np.newaxis] * u
    dispersion_residual = abs(p0 * p0 - float(k @ metric.g_upper @ k))
    residuals = {s: weyl_residual_norm(eta, p0, s, pauli, grid) for s in (1, -1)}
    weyl_sign = min(residuals, key=residuals.get)
    spec = PlaneWaveSpec(k_modes=tuple(int(m) for m in k_modes), branch=branch,
                         u=u, p0=p0, weyl_sign=weyl_sign,
                         dispersion_residual=dispersion_residual)
    return spec, eta


_PREFACTOR = 16.0 / 9.0


def el_gradient(eta: np.ndarray, p0: float, pauli: PauliSet, metric: Metric3,
                grid: TorusGrid) -> np.ndarray:
    """Variational derivative of the discrete stationary action with
    respect to etabar, as a spinor field w.

    The gradient of the action S = cellvol * sum(L) with respect to the
    real and imaginary parts of eta at a grid point is
    2 * cellvol * (Re w, Im w) there. Derived by differentiating
    L = c (A^2/s - p0^2 s) sqrt(det g), c = 16/9, and using that the
    spectral derivative matrix is real and antisymmetric:

        w = (i/2) [ G sigma^a d_a eta + d_a (G sigma^a eta) ] + H eta,
        G = 2 c A sqrt(det g) / s,
        H = c (-(A/s)^2 - p0^2) sqrt(det g).
    """
    b = bilinears(eta, pauli, grid, require_nonvanishing=True)
    g_coef = 2.0 * _PREFACTOR * b.A * metric.sqrt_det / b.s
    h_coef = _PREFACTOR * (-((b.A / b.s) ** 2) - p0 * p0) * metric.sqrt_det
    deta = spinor_gradient(eta, grid)
    term1 = g_coef[..., np.newaxis] * np.einsum(
        "nab,n...b->...a", pauli.sigma_upper, deta)
    inner = g_coef[..., np.newaxis] * np.einsum(
        "nab,...b->n...a", pauli.sigma_upper, eta)
    term2 = sum(spectral_partial(inner[n], n + 1, grid) for n in range(3))
    return 0.5j * (term1 + term2) + h_coef[..., np.newaxis] * eta


def _gradient_scale(eta: np.ndarray, p0: float, metric: Metric3) -> float:
    smax = float(np.einsum("...a,...a->...", eta.conj(), eta).real.max())
    return _PREFACTOR * metric.sqrt_det * (1.0 + p0 * p0) * np.sqrt(smax)


def _sample_dofs(eta: np.ndarray, probes: int, seed: int):
    rng = np.random.default_rng(seed)
    npts = eta[..., 0].size
    total = npts * 2 * 2  # point x component x (re, im)
    picks = rng.choice(total, size=min(probes, total), replace=False)
    dofs = []
    for flat in picks:
        part = flat % 2
        comp = (flat // 2) % 2
        point = np.unravel_index(flat // 4, eta.shape[:-1])
        dofs.append((point, comp, part))
    return dofs


def _fd_gradient_at_dofs(eta, p0, pauli, metric, grid, dofs):
    """Central-difference gradient of the discrete action at selected
    real degrees of freedom, rescaled to be comparable with Re/Im of
    `el_gradient`."""
    eps_cbrt = float(np.cbrt(np.finfo(float).eps))
    values = np.empty(len(dofs))
    for i, (point, comp, part) in enumerate(dofs):
        idx = point + (comp,)
        step = eps_cbrt * (1.0 + abs(eta[idx]))
        delta = step if part == 0 else 1j * step
        plus = eta.copy()
        plus[idx] += delta
        minus = eta.copy()
        minus[idx] -= delta
        diff = lagrangian_stationary(plus, p0, pauli, metric, grid) \
            - lagrangian_stationary(minus, p0, pauli, metric, grid)
        grad = integrate(diff, grid) / (2.0 * step)
        values[i] = grad / (2.0 * grid.cell_volume)
    return values


def el_residual(eta: np.ndarray, p0: float, pauli: PauliSet, metric: Metric3,
                grid: TorusGrid, mode: str = "analytic", probes: int = 64,
                seed: int = 0) -> float:
    """Scale-normalised max-norm of the gradient of the discrete
    stationary action.

    mode "analytic" evaluates the closed-form variational derivative at
    every grid point; mode "fd" probes a seeded random subsample of
    real degrees of freedom with central differences (step scaled by
    the cube root of machine epsilon).
    """
    ref = _gradient_scale(eta, p0, metric)
    if mode == "analytic":
        w = el_gradient(eta, p0, pauli, metric, grid)
        return float(max(np.abs(w.real).max(), np.abs(w.imag).max())) / ref
    if mode == "fd":
        dofs = _sample_dofs(eta, probes, seed)
        values = _fd_gradient_at_dofs(eta, p0, pauli, metric, grid, dofs)
        return float(np.abs(values).max()) / ref
    raise ValueError(f"mode must be 'analytic' or 'fd', got {mode!r}")


def el_gradient_fd_check(eta: np.ndarray, p0: float, pauli: PauliSet,
                         metric: Metric3, grid: TorusGrid, probes: int = 64,
                         seed: int = 0) -> float:
    """Relative max-norm disagreement between the analytic and the
    finite-difference gradients on a common random subsample of
    degrees of freedom."""
    dofs = _sample_dofs(eta, probes, seed)
    fd = _fd_gradient_at_dofs(eta, p0, pauli, metric, grid, dofs)
    w = el_gradient(eta, p0, pauli, metric, grid)
    analytic = np.array([
        w[point + (comp,)].real if part == 0 else w[point + (comp,)].imag
        for point, comp, part in dofs])
    scale = max(float(max(np.abs(w.real).max(), np.abs(w.imag).max())),
                np.finfo(float).tiny)
    return float(np.abs(fd - analytic).max()) / scale


def theorem_witness_suite(seed: int, grid: TorusGrid, metric: Metric3,
                          n_cases: int = 16, perturb: float = 0.1,
                          max_mode: int = 3, weyl_tol: float = 1e-12,
                          el_tol: float = 1e-8, lagrangian_tol: float = 1e-12,
                          nonsolution_floor: float = 1e-3,
                          fd_probes: int = 16) -> dict:
    """Numerical witness for the solution <-> stationary-point
    equivalence.

    Per Weyl-equation sign: ``n_cases`` exact plane-wave solutions must
    have small Weyl, variational (analytic and finite-difference) and
    Lagrangian residuals; ``n_cases`` perturbed non-solutions must have
    large Weyl and variational residuals. The converse direction is
    only falsification-style: sampling cannot certify that every
    stationary point is a Weyl solution, so non-solutions are checked
    to be non-stationary, and the two residuals' zero-sets are required
    to agree on every tested sample.
    """
    rng = np.random.default_rng(seed)
    pauli = build_pauli(metric)
    cases = []
    branch_pairing = {}
    consistent = True
    for sign in (1, -1):
        for _ in range(n_cases):
            k = random_wavevector(rng, max_mode=max_mode)
            spec, eta = planewave_solution(k, sign, metric, grid)
            p0 = abs(spec.p0)  # sign-s equation at positive frequency
            branch_pairing[f"branch{sign:+d}"] = f"weyl{sign:+d}"
            wres = weyl_residual_norm(eta, p0, sign, pauli, grid)
            eres = el_residual(eta, p0, pauli, metric, grid, mode="analytic")
            eres_fd = el_residual(eta, p0, pauli, metric, grid, mode="fd",
                                  probes=fd_probes, seed=int(rng.integers(2**31)))
            lag = lagrangian_stationary(eta, p0, pauli, metric, grid)
            lpm = lagrangian_weyl(eta, p0, sign, pauli, metric, grid)
            case = {
                "kind": "solution",
                "k": [int(m) for m in k],
                "branch": sign,
                "p0": p0,
                "weyl_residual": wres,
                "el_residual": eres,
                "el_residual_fd": eres_fd,
                "L_max": float(np.abs(lag).max()),
                "Lpm_max": float(np.abs(lpm).max()),
            }
            case["pass"] = bool(wres <= weyl_tol
                                and eres <= el_tol and eres_fd <= el_tol
                                and case["L_max"] <= lagrangian_tol
                                and case["Lpm_max"] <= lagrangian_tol)
            cases.append(case)

            noise = random_bandlimited_spinor(
                grid, np.random.default_rng(int(rng.integers(2**31))),
                max_mode=2, amplitude=perturb)
            eta_bad = eta + noise
            wres_bad = weyl_residual_norm(eta_bad, p0, sign, pauli, grid)
            eres_bad = el_residual(eta_bad, p0, pauli, metric, grid,
                                   mode="analytic")
            bad_case = {
                "kind": "perturbed",
                "k": [int(m) for m in k],
                "branch": sign,
                "p0": p0,
                "weyl_residual": wres_bad,
                "el_residual": eres_bad,
                "L_max": float(np.abs(lagrangian_stationary(
                    eta_bad, p0, pauli, metric, grid)).max()),
                "Lpm_max": float(np.abs(lagrangian_weyl(
                    eta_bad, p0, sign, pauli, metric, grid)).max()),
            }
            bad_case["pass"] = bool(eres_bad >= nonsolution_floor
                                    and wres_bad >= nonsolution_floor)
            cases.append(bad_case)
    for case in cases:
        solves_weyl = case["weyl_residual"] <= weyl_tol
        is_stationary = case["el_residual"] <= el_tol
        if solves_weyl != is_stationary:
            consistent = False
    verdict = "pass" if consistent and all(c["pass"] for c in cases) else "fail"
    return {
        "config": {
            "seed": seed,
            "grid": list(grid.dims),
            "box": list(grid.box),
            "metric": metric.g_lower.tolist(),
            "n_cases": n_cases,
            "perturb": perturb,
            "weyl_tol": weyl_tol,
            "el_tol": el_tol,
            "lagrangian_tol": lagrangian_tol,
            "nonsolution_floor": nonsolution_floor,
        },
        "branch_pairing": branch_pairing,
        "converse_check": "falsification-only (sampled non-solutions)",
        "cases": cases,
        "verdict": verdict,
    }
