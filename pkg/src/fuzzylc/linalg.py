"""Dense complex matrix helpers shared by the rest of the package.

Matrices are plain ``numpy`` complex arrays. Rank decisions use a relative
singular-value threshold ``tol * sigma_max``.
"""
from __future__ import annotations

from typing import Sequence

import numpy as np

DEFAULT_TOL = 1e-10


class SingularSystem(np.linalg.LinAlgError):
    """Raised when a square system is numerically rank deficient."""


def as_matrix(a) -> np.ndarray:
    return np.asarray(a, dtype=complex)


def adjoint(a: np.ndarray) -> np.ndarray:
    return np.conj(np.asarray(a)).T


def commutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a @ b - b @ a


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product, ``kron(A, B)[i*p + r, j*q + s] = A[i, j] * B[r, s]``."""
    return np.kron(a, b)


def block_diag(blocks: Sequence[np.ndarray]) -> np.ndarray:
    n = sum(b.shape[0] for b in blocks)
    m = sum(b.shape[1] for b in blocks)
    out = np.zeros((n, m), dtype=complex)
    i = j = 0
    for b in blocks:
        out[i:i + b.shape[0], j:j + b.shape[1]] = b
        i += b.shape[0]
        j += b.shape[1]
    return out


def numerical_rank(m: np.ndarray, tol: float = DEFAULT_TOL) -> int:
    m = np.atleast_2d(m)
    if m.size == 0:
        return 0
    s = np.linalg.svd(m, compute_uv=False)
    if s.size == 0 or s[0] == 0.0:
        return 0
    return int(np.count_nonzero(s > tol * s[0]))


def nullspace_basis(m: np.ndarray, tol: float = DEFAULT_TOL) -> list[np.ndarray]:
    """Orthonormal basis of the numerical kernel of ``m``.

    A zero matrix has the whole space as kernel. Otherwise singular values
    below ``tol * sigma_max`` are treated as zero.
    """
    m = np.atleast_2d(np.asarray(m, dtype=complex))
    cols = m.shape[1]
    if cols == 0:
        return []
    _, s, vh = np.linalg.svd(m, full_matrices=True)
    if s.size == 0 or s[0] == 0.0:
        rank = 0
    else:
        rank = int(np.count_nonzero(s > tol * s[0]))
    return [np.conj(vh[k]) for k in range(rank, cols)]


def span_dimension(vs: Sequence[np.ndarray], tol: float = DEFAULT_TOL) -> int:
    """Numerical rank of the family ``vs`` (all of one shape), vectorized row-wise."""
    if len(vs) == 0:
        return 0
    rows = np.stack([np.asarray(v, dtype=complex).ravel() for v in vs])
    return numerical_rank(rows, tol)


def orthonormal_span(rows: np.ndarray, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Orthonormal basis (as rows) for the row space of ``rows``."""
    rows = np.atleast_2d(np.asarray(rows, dtype=complex))
    if rows.size == 0:
        return np.zeros((0, rows.shape[1]), dtype=complex)
    _, s, vh = np.linalg.svd(rows, full_matrices=False)
    if s.size == 0 or s[0] == 0.0:
        return np.zeros((0, rows.shape[1]), dtype=complex)
    r = int(np.count_nonzero(s > tol * s[0]))
    return vh[:r]


def solve_linear(a: np.ndarray, b: np.ndarray, tol: float = DEFAULT_TOL) -> np.ndarray:
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if numerical_rank(a, tol) < a.shape[0]:
        raise SingularSystem(f"rank deficient {a.shape[0]}x{a.shape[0]} system")
    return np.linalg.solve(a, b)
