"""Minimum-norm residual fits ``argmin_c ||b - B c||`` for each norm."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import (
    InvalidInputError,
    NormKind,
    as_matrix,
    as_vector,
    reference_householder_qr,
    solve_upper_triangular,
    vector_norm,
)
from .lp import LpProblem, LpStatus, solve_lp


class LpSolverError(ArithmeticError):
    """The LP behind an l1/l-infinity fit did not reach an optimum."""

    def __init__(self, status: LpStatus):
        super().__init__(f"LP subproblem ended with status {status.value}")
        self.status = status


@dataclass(frozen=True)
class MinResidualResult:
    c: np.ndarray
    gamma: float
    residual: np.ndarray


def _check(B, b):
    B = as_matrix(B)
    b = as_vector(b)
    if B.shape[0] != b.size:
        raise InvalidInputError(f"B has {B.shape[0]} rows but b has length {b.size}")
    return B, b


def _finish(B, b, c, kind):
    r = b - B @ c
    return MinResidualResult(c=c, gamma=vector_norm(r, kind), residual=r)


def min_l1_residual(B, b, tol: float = 1e-10) -> MinResidualResult:
    """Least absolute deviations fit.

    LP variables are ``(t, c)`` with ``t >= 0`` the per-row absolute residual
    bounds: ``B c - t <= b``, ``-B c - t <= -b``, minimize ``sum(t)``.
    """
    B, b = _check(B, b)
    m, k = B.shape
    G = np.zeros((2 * m, m + k))
    G[:m, :m] = -np.eye(m)
    G[:m, m:] = B
    G[m:, :m] = -np.eye(m)
    G[m:, m:] = -B
    h = np.concatenate([b, -b])
    cost = np.concatenate([np.ones(m), np.zeros(k)])
    bounds = [(0.0, None)] * m + [(None, None)] * k
    sol = solve_lp(LpProblem(cost, G, h, bounds), tol=tol)
    if not sol.ok:
        raise LpSolverError(sol.status)
    return _finish(B, b, sol.x[m:], NormKind.L1)


def min_linf_residual(B, b, tol: float = 1e-10) -> MinResidualResult:
    """Minimax (Chebyshev) fit.

    LP variables are ``(c, z)`` with ``z >= 0``: ``B c - z <= b``,
    ``-B c - z <= -b``, minimize ``z``.
    """
    B, b = _check(B, b)
    m, k = B.shape
    G = np.zeros((2 * m, k + 1))
    G[:m, :k] = B
    G[m:, :k] = -B
    G[:, k] = -1.0
    h = np.concatenate([b, -b])
    cost = np.zeros(k + 1)
    cost[k] = 1.0
    bounds = [(None, None)] * k + [(0.0, None)]
    sol = solve_lp(LpProblem(cost, G, h, bounds), tol=tol)
    if not sol.ok:
        raise LpSolverError(sol.status)
    return _finish(B, b, sol.x[:k], NormKind.LINF)


def min_l2_residual(B, b) -> MinResidualResult:
    """Least squares through Householder triangularization."""
    B, b = _check(B, b)
    Q, R = reference_householder_qr(B)
    c = solve_upper_triangular(R, Q.T @ b)
    return _finish(B, b, c, NormKind.L2)


def min_residual(B, b, kind: NormKind) -> MinResidualResult:
    kind = NormKind.parse(kind)
    if kind is NormKind.L1:
        return min_l1_residual(B, b)
    if kind is NormKind.LINF:
        return min_linf_residual(B, b)
    return min_l2_residual(B, b)
