"""Norm-generalized QR factorization.

Each column of ``A`` is fitted in the working norm by the ``Q`` columns built
so far; the normalized residual becomes the next ``Q`` column and the fit
coefficients plus the residual norm fill the matching column of ``R``. With
the Euclidean norm this is classical (Gram-Schmidt) QR. With l1 or
l-infinity ``Q`` is no longer orthogonal, but its conditioning in that norm
is bounded independently of ``A``.

Columns whose residual collapses (relative to the column's own norm) are
skipped: they are represented through ``R`` only, ``Q`` gains no column, and
the factorization becomes thin.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import InvalidInputError, NormKind, as_matrix, column_norms
from .minnorm import min_residual


class EmptyFactorizationError(ArithmeticError):
    """Every column of the input is zero."""


@dataclass(frozen=True)
class QRFactors:
    """Output of :func:`gen_qr`.

    ``Q`` is ``m x k`` and ``R`` is ``k x n`` where ``k`` is the number of kept
    columns. ``kept[i]`` is the (0-based) column of ``A`` that produced
    ``Q[:, i]``; ``R[i, kept[i]] == gammas[i]``. Skipped columns hold their fit
    coefficients in ``R`` and have no diagonal entry (zero on the diagonal in
    the padded square picture).
    """

    Q: np.ndarray
    R: np.ndarray
    kept: tuple[int, ...]
    gammas: np.ndarray
    norm_kind: NormKind

    @property
    def rank(self) -> int:
        return len(self.kept)

    @property
    def skipped(self) -> tuple[int, ...]:
        kept = set(self.kept)
        return tuple(j for j in range(self.R.shape[1]) if j not in kept)

    def square_r(self) -> np.ndarray:
        """``R`` padded to ``n x n`` with rows placed at their source column.

        Skipped columns show up as zeros on the diagonal.
        """
        n = self.R.shape[1]
        out = np.zeros((n, n))
        out[list(self.kept), :] = self.R
        return out


def gen_qr(A, kind: NormKind = NormKind.L1, breakdown_tol: float = 1e-10) -> QRFactors:
    A = as_matrix(A)
    kind = NormKind.parse(kind)
    if not breakdown_tol >= 0.0:
        raise InvalidInputError(f"breakdown_tol must be nonnegative, got {breakdown_tol}")
    m, n = A.shape
    col_norms = column_norms(A, kind)
    if not np.any(col_norms > 0.0):
        raise EmptyFactorizationError("cannot factor an all-zero matrix")

    Q = np.zeros((m, min(m, n)), order="F")
    R = np.zeros((min(m, n), n), order="F")
    kept: list[int] = []
    gammas: list[float] = []
    for j in range(n):
        a = A[:, j]
        k = len(kept)
        if k == 0:
            coef = np.zeros(0)
            resid = a.copy()
            gamma = col_norms[j]
        else:
            fit = min_residual(Q[:, :k], a, kind)
            coef, resid, gamma = fit.c, fit.residual, fit.gamma
            R[:k, j] = coef
        if gamma <= breakdown_tol * col_norms[j] or k == m:
            # breakdown: column lies in the span of the current Q (or is zero)
            continue
        Q[:, k] = resid / gamma
        R[k, j] = gamma
        kept.append(j)
        gammas.append(gamma)

    k = len(kept)
    return QRFactors(
        Q=np.asfortranarray(Q[:, :k]),
        R=np.asfortranarray(R[:k, :]),
        kept=tuple(kept),
        gammas=np.asarray(gammas),
        norm_kind=kind,
    )


def factor_rectangular(A, kind: NormKind = NormKind.L1, breakdown_tol: float = 1e-10) -> QRFactors:
    """Factor a matrix of any shape.

    Tall input gives a thin factorization; wide input keeps at most ``m``
    columns and expresses the rest through ``R``. This is the same as
    zero-padding ``A`` to a square matrix and dropping the padded parts.
    """
    return gen_qr(A, kind, breakdown_tol)


def reconstruct(f: QRFactors) -> np.ndarray:
    return np.asfortranarray(f.Q @ f.R)
