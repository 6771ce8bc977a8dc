"""Dense matrix and vector core.

Matrices are plain 2-D ``float64`` numpy arrays stored in Fortran (column-major)
order so that column extraction is a view. Vectors are 1-D arrays.
"""
from __future__ import annotations

import enum

import numpy as np


class InvalidInputError(ValueError):
    """Raised for malformed or non-finite input."""


class SingularMatrixError(ArithmeticError):
    """Raised when LU elimination meets a pivot below tolerance."""

    def __init__(self, pivot_index: int, pivot_value: float):
        super().__init__(
            f"matrix is singular to working precision at pivot {pivot_index} "
            f"(|pivot| = {pivot_value:.3e})"
        )
        self.pivot_index = pivot_index
        self.pivot_value = pivot_value


class RankDeficientError(ArithmeticError):
    """Raised when a factorization requiring full column rank meets a dependent column."""


class NormKind(enum.Enum):
    L1 = "l1"
    L2 = "l2"
    LINF = "linf"

    @classmethod
    def parse(cls, text: str | "NormKind") -> "NormKind":
        if isinstance(text, NormKind):
            return text
        key = str(text).strip().lower().replace("∞", "inf")
        aliases = {"1": "l1", "2": "l2", "inf": "linf", "l_inf": "linf"}
        key = aliases.get(key, key)
        try:
            return cls(key)
        except ValueError:
            raise InvalidInputError(f"unknown norm kind {text!r}; expected l1, l2 or linf") from None

    def __str__(self) -> str:
        return self.value


def as_vector(x) -> np.ndarray:
    v = np.asarray(x, dtype=np.float64)
    if v.ndim != 1 or v.size == 0:
        raise InvalidInputError(f"expected a nonempty 1-D vector, got shape {v.shape}")
    if not np.all(np.isfinite(v)):
        raise InvalidInputError("vector has non-finite entries")
    return v


def as_matrix(M) -> np.ndarray:
    """Validate ``M`` and return it as a finite column-major float64 matrix."""
    A = np.asarray(M, dtype=np.float64)
    if A.ndim == 1:
        A = A.reshape(-1, 1)
    if A.ndim != 2 or A.shape[0] == 0 or A.shape[1] == 0:
        raise InvalidInputError(f"expected a nonempty 2-D matrix, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise InvalidInputError("matrix has non-finite entries")
    return np.asfortranarray(A)


def vector_norm(x, kind: NormKind) -> float:
    v = as_vector(x)
    kind = NormKind.parse(kind)
    if kind is NormKind.L1:
        return float(np.sum(np.abs(v)))
    if kind is NormKind.LINF:
        return float(np.max(np.abs(v)))
    # scaled to avoid overflow/underflow in the squares
    scale = np.max(np.abs(v))
    if scale == 0.0:
        return 0.0
    return float(scale * np.sqrt(np.sum((v / scale) ** 2)))


def column_norms(M: np.ndarray, kind: NormKind) -> np.ndarray:
    """Working norm of each column of ``M`` (no validation; internal hot path)."""
    kind = NormKind.parse(kind)
    if kind is NormKind.L1:
        return np.sum(np.abs(M), axis=0)
    if kind is NormKind.LINF:
        return np.max(np.abs(M), axis=0)
    return np.sqrt(np.sum(M * M, axis=0))


def spectral_norm(M: np.ndarray, rtol: float = 1e-10, max_iter: int | None = None) -> float:
    """Largest singular value by power iteration on ``M^T M``.

    Iterates until the estimate changes by less than ``rtol`` relative, or
    ``10 * max(m, n)`` iterations (whichever comes first). The start vector is
    fixed so the result is deterministic.
    """
    A = as_matrix(M)
    m, n = A.shape
    if max_iter is None:
        max_iter = 10 * max(m, n)
    if not np.any(A):
        return 0.0
    # all-ones plus a fixed irregular tilt so the start is not orthogonal to
    # structured dominant vectors
    v = 1.0 + 0.1 * np.sin(np.arange(1, n + 1, dtype=np.float64))
    v /= np.linalg.norm(v)
    sigma = 0.0
    for _ in range(max_iter):
        w = A.T @ (A @ v)
        lam = float(np.linalg.norm(w))
        if lam == 0.0:
            return 0.0
        v = w / lam
        new_sigma = float(np.linalg.norm(A @ v))
        if abs(new_sigma - sigma) <= rtol * new_sigma:
            return new_sigma
        sigma = new_sigma
    return sigma


def induced_matrix_norm(M, kind: NormKind) -> float:
    A = as_matrix(M)
    kind = NormKind.parse(kind)
    if kind is NormKind.L1:
        return float(np.max(np.sum(np.abs(A), axis=0)))
    if kind is NormKind.LINF:
        return float(np.max(np.sum(np.abs(A), axis=1)))
    return spectral_norm(A)


def lu_factor(M) -> tuple[np.ndarray, np.ndarray]:
    """Partial-pivot LU. Returns the packed ``LU`` matrix and the row permutation.

    Raises SingularMatrixError if a pivot falls below ``1e-12 * ||M||_inf``.
    """
    A = as_matrix(M)
    n, ncols = A.shape
    if n != ncols:
        raise InvalidInputError(f"LU requires a square matrix, got {A.shape}")
    LU = np.array(A, order="C", copy=True)
    perm = np.arange(n)
    threshold = 1e-12 * float(np.max(np.sum(np.abs(A), axis=1)))
    for k in range(n):
        p = k + int(np.argmax(np.abs(LU[k:, k])))
        if abs(LU[p, k]) <= threshold:
            raise SingularMatrixError(k, abs(LU[p, k]))
        if p != k:
            LU[[k, p]] = LU[[p, k]]
            perm[[k, p]] = perm[[p, k]]
        LU[k + 1:, k] /= LU[k, k]
        LU[k + 1:, k + 1:] -= np.outer(LU[k + 1:, k], LU[k, k + 1:])
    return LU, perm


def lu_solve(LU: np.ndarray, perm: np.ndarray, B: np.ndarray) -> np.ndarray:
    X = np.array(B, dtype=np.float64)[perm]
    n = LU.shape[0]
    for i in range(1, n):
        X[i] -= LU[i, :i] @ X[:i]
    for i in range(n - 1, -1, -1):
        X[i] = (X[i] - LU[i, i + 1:] @ X[i + 1:]) / LU[i, i]
    return X


def lu_invert(M) -> np.ndarray:
    LU, perm = lu_factor(M)
    n = LU.shape[0]
    return np.asfortranarray(lu_solve(LU, perm, np.eye(n)))


def condition_number(M, kind: NormKind) -> float:
    """``||M|| * ||M^-1||`` in the induced norm of ``kind``."""
    A = as_matrix(M)
    return induced_matrix_norm(A, kind) * induced_matrix_norm(lu_invert(A), kind)


def reference_householder_qr(A, *, rank_tol: float = 1e-12) -> tuple[np.ndarray, np.ndarray]:
    """Thin Householder QR with a positive diagonal on ``R``.

    Small reference implementation used as a test oracle and for the
    least-squares subproblem; it is not tuned for speed.
    """
    A = as_matrix(A)
    m, n = A.shape
    if m < n:
        raise InvalidInputError(f"Householder QR needs m >= n, got {A.shape}")
    R = np.array(A, copy=True)
    vs = []
    scale = float(np.max(np.abs(A)))
    for k in range(n):
        x = R[k:, k]
        alpha = np.linalg.norm(x)
        if alpha <= rank_tol * scale * max(m, 1):
            raise RankDeficientError(f"column {k} is numerically dependent on earlier columns")
        v = x.copy()
        v[0] += np.copysign(alpha, x[0])
        v /= np.linalg.norm(v)
        R[k:, k:] -= 2.0 * np.outer(v, v @ R[k:, k:])
        vs.append(v)
    Q = np.zeros((m, n))
    Q[:n, :n] = np.eye(n)
    for k in range(n - 1, -1, -1):
        v = vs[k]
        Q[k:, :] -= 2.0 * np.outer(v, v @ Q[k:, :])
    R = np.triu(R[:n, :])
    signs = np.where(np.diag(R) < 0.0, -1.0, 1.0)
    Q *= signs
    R *= signs[:, None]
    return np.asfortranarray(Q), np.asfortranarray(R)


def solve_upper_triangular(R: np.ndarray, y: np.ndarray) -> np.ndarray:
    n = R.shape[0]
    x = np.zeros(n)
    for i in range(n - 1, -1, -1):
        x[i] = (y[i] - R[i, i + 1:] @ x[i + 1:]) / R[i, i]
    return x
