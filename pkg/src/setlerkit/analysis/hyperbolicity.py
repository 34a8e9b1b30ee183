"""Jacobian and eigen-analysis of the autonomous Setler field.

The Jacobian is taken of the unforced field (β = γ = δ_f = 0), which is the
setting of the fixed-point analysis. The (3,1) entry is the true derivative
−2λ sin²δ cosα sinα; it vanishes at the origin.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..interfaces import SphericalState, VectorField


@dataclass(frozen=True, eq=False)
class JacobianReport:
    matrix: np.ndarray
    eigenvalues: np.ndarray

    def characteristic_residual(self) -> float:
        """max |p(μ)| over the eigenvalues, p(μ) = μ³ − tr μ² + m₂ μ − det."""
        m = self.matrix
        minors = (
            m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
            + m[0, 0] * m[2, 2] - m[0, 2] * m[2, 0]
            + m[1, 1] * m[2, 2] - m[1, 2] * m[2, 1]
        )
        coeffs = [1.0, -np.trace(m), minors, -np.linalg.det(m)]
        return float(np.max(np.abs(np.polyval(coeffs, self.eigenvalues))))

    def to_dict(self) -> dict:
        eig = [
            {"real": float(np.real(mu)), "imag": float(np.imag(mu))} for mu in self.eigenvalues
        ]
        return {"matrix": self.matrix.tolist(), "eigenvalues": eig}


def _is_triangular(m: np.ndarray) -> bool:
    return bool(np.array_equal(np.triu(m), m) or np.array_equal(np.tril(m), m))


def eigenvalues(matrix: np.ndarray) -> np.ndarray:
    """Spectrum of ``matrix``; triangular matrices return their diagonal exactly."""
    if _is_triangular(matrix):
        return np.diag(matrix).astype(float)
    return np.linalg.eigvals(matrix)


def jacobian_autonomous(s: SphericalState, lam: float) -> JacobianReport:
    """Analytic Jacobian of the unforced field at ``s``."""
    sin_a, cos_a = math.sin(s.alpha), math.cos(s.alpha)
    sin_d, cos_d = math.sin(s.delta), math.cos(s.delta)
    matrix = np.array(
        [
            [lam * cos_a * cos_d, -lam * sin_a * sin_d, 0.0],
            [-lam * sin_a * sin_d, lam * cos_a * cos_d, 0.0],
            [
                -2.0 * lam * sin_d**2 * cos_a * sin_a,
                2.0 * lam * sin_d * cos_d * cos_a**2,
                0.0,
            ],
        ]
    )
    return JacobianReport(matrix, eigenvalues(matrix))


def numerical_jacobian(
    field: VectorField, y: np.ndarray, tau: float = 0.0, h: float = 1e-5
) -> np.ndarray:
    """Central finite-difference Jacobian of ``field`` at ``y``."""
    y = np.asarray(y, dtype=float)
    n = y.shape[-1]
    jac = np.empty((n, n))
    for j in range(n):
        step = np.zeros(n)
        step[j] = h
        jac[:, j] = (field(tau, y + step) - field(tau, y - step)) / (2 * h)
    return jac


def numerical_divergence(
    field: VectorField, y: np.ndarray, tau: float = 0.0, h: float = 1e-5
) -> float:
    """Trace of the finite-difference Jacobian."""
    return float(np.trace(numerical_jacobian(field, y, tau, h)))
