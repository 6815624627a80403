"""Dense complex linear algebra kernel.

Thin wrappers over LAPACK (via numpy) that pin down one rank tolerance and one
pseudoinverse convention for the whole package.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .tolerances import EPS, HERMITIAN_INPUT_TOL


def as_complex_matrix(m) -> np.ndarray:
    """Coerce to a finite 2-D complex array."""
    a = np.asarray(m, dtype=np.complex128)
    if a.ndim != 2:
        raise ValueError(f"expected a matrix, got array of ndim {a.ndim}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix has non-finite entries")
    return a


@dataclass(frozen=True)
class SvdResult:
    """Economy SVD: ``left_vectors @ diag(singular_values) @ right_vectors.conj().T``."""

    left_vectors: np.ndarray
    singular_values: np.ndarray
    right_vectors: np.ndarray


def svd(m) -> SvdResult:
    a = as_complex_matrix(m)
    u, s, vh = np.linalg.svd(a, full_matrices=False)
    return SvdResult(u, s, vh.conj().T)


def rank_cutoff(rows: int, cols: int, sigma_max: float) -> float:
    """Singular values at or below this threshold count as zero."""
    return max(rows, cols) * EPS * float(sigma_max)


def numerical_rank(singular_values, rows: int, cols: int) -> int:
    s = np.asarray(singular_values, dtype=np.float64)
    if s.size == 0 or s[0] <= 0.0:
        return 0
    return int(np.count_nonzero(s > rank_cutoff(rows, cols, s[0])))


def matrix_rank(m) -> int:
    a = as_complex_matrix(m)
    return numerical_rank(svd(a).singular_values, *a.shape)


def pseudoinverse(m) -> np.ndarray:
    """Moore-Penrose pseudoinverse, singular values cut at the shared tolerance."""
    a = as_complex_matrix(m)
    res = svd(a)
    s = res.singular_values
    r = numerical_rank(s, *a.shape)
    if r == 0:
        return np.zeros((a.shape[1], a.shape[0]), dtype=np.complex128)
    inv_s = np.zeros_like(s)
    inv_s[:r] = 1.0 / s[:r]
    return (res.right_vectors * inv_s) @ res.left_vectors.conj().T


def least_squares_solve(m, y) -> np.ndarray:
    """Minimum-norm minimizer of ``||M x - y||``."""
    a = as_complex_matrix(m)
    b = np.asarray(y, dtype=np.complex128)
    if b.shape[0] != a.shape[0]:
        raise ValueError(f"rhs length {b.shape[0]} does not match {a.shape[0]} rows")
    x, *_ = np.linalg.lstsq(a, b, rcond=max(a.shape) * EPS)
    return x


def hermitian_propagator(h, t: float) -> np.ndarray:
    """Unitary ``exp(-i t H)`` for Hermitian H, via eigendecomposition."""
    a = as_complex_matrix(h)
    if a.shape[0] != a.shape[1]:
        raise ValueError(f"propagator needs a square matrix, got {a.shape}")
    dev = np.linalg.norm(a - a.conj().T)
    if dev > HERMITIAN_INPUT_TOL * max(1.0, np.linalg.norm(a)):
        raise ValueError(f"matrix is not Hermitian (deviation {dev:.3e})")
    w, v = np.linalg.eigh(a)
    phases = np.exp(-1j * float(t) * w)
    return (v * phases) @ v.conj().T
