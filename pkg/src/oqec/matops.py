"""Dense complex matrix operations underpinning the channel and code modules.

Everything here works on plain ``numpy.ndarray`` values of dtype complex;
decompositions delegate to LAPACK through numpy. Composite indices follow
the A-major convention throughout the package: the basis vector
``|k>|i>`` of a ``dim_a * dim_b`` product space sits at flat index
``k * dim_b + i``, which is exactly numpy's Kronecker ordering.

Comparisons are Frobenius-norm comparisons against an absolute base
tolerance scaled by the ambient matrix dimension.
"""

from __future__ import annotations

import numpy as np

# Base absolute tolerance; thresholds scale it by the matrix dimension.
DEFAULT_TOL = 1e-9


def as_matrix(m) -> np.ndarray:
    """Coerce input to a fresh 2-d complex array (callers' data stays untouched)."""
    out = np.array(m, dtype=complex)
    if out.ndim != 2:
        raise ValueError(f"expected a matrix, got array of ndim {out.ndim}")
    return out


def dagger(m: np.ndarray) -> np.ndarray:
    """Conjugate transpose."""
    return np.conj(np.transpose(m))


def frob(m: np.ndarray) -> float:
    """Frobenius norm."""
    return float(np.linalg.norm(m))


def identity(dim: int) -> np.ndarray:
    return np.eye(dim, dtype=complex)


def std_matrix_unit(dim: int, i: int, j: int) -> np.ndarray:
    """The matrix unit |i><j| in the standard basis of C^dim."""
    out = np.zeros((dim, dim), dtype=complex)
    out[i, j] = 1.0
    return out


def tensor(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product, with the left factor as the slow (A-major) index.

    ``tensor(a, b)[(k, i), (l, j)] == a[k, l] * b[i, j]`` under the flat
    composite index ``(k, i) -> k * dim_b + i``. Dimensions multiply.
    """
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


def partial_trace_a(m: np.ndarray, dim_a: int, dim_b: int) -> np.ndarray:
    """Trace out the left factor of an operator on C^dim_a tensor C^dim_b.

    Returns the ``dim_b x dim_b`` matrix with entries
    ``sum_k m[(k, i), (k, j)]``; linear in ``m`` and total-trace preserving.
    Raises ValueError when ``m`` is not square of dimension dim_a * dim_b.
    """
    m = np.asarray(m, dtype=complex)
    d = dim_a * dim_b
    if m.shape != (d, d):
        raise ValueError(
            f"cannot factor a matrix of shape {m.shape} as {dim_a} x {dim_b} composite"
        )
    return np.trace(m.reshape(dim_a, dim_b, dim_a, dim_b), axis1=0, axis2=2)


def polar_isometry(m: np.ndarray, cutoff: float | None = None) -> np.ndarray:
    """Isometric factor W of the polar decomposition m = W sqrt(m† m).

    W is a partial isometry whose initial space is the support of m† m and
    whose range is the column space of m. Singular directions with singular
    value at or below ``cutoff`` are dropped, so a rank-deficient input
    yields a genuine partial isometry on the support only. The default
    cutoff is numpy's rank tolerance (largest singular value times machine
    epsilon times the larger matrix dimension).
    """
    m = np.asarray(m, dtype=complex)
    u, s, vh = np.linalg.svd(m, full_matrices=False)
    if s.size == 0 or s[0] == 0.0:
        return np.zeros_like(m)
    if cutoff is None:
        cutoff = s[0] * max(m.shape) * np.finfo(float).eps
    r = int(np.sum(s > cutoff))
    return u[:, :r] @ vh[:r, :]


def herm_eig(m: np.ndarray, tol: float = DEFAULT_TOL) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a Hermitian matrix, eigenvalues in descending order.

    Returns ``(w, v)`` with real ``w``, orthonormal columns in ``v`` and
    ``m = v @ diag(w) @ v†`` up to floating error. Rejects input whose
    anti-Hermitian part exceeds ``tol`` scaled by the dimension.
    """
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    dev = frob(m - dagger(m))
    if dev > tol * max(1, m.shape[0]):
        raise ValueError(f"matrix is not Hermitian: ||m - m^dag||_F = {dev:.3e}")
    w, v = np.linalg.eigh((m + dagger(m)) / 2.0)
    return w[::-1].copy(), v[:, ::-1].copy()
