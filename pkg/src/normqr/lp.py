"""Dense two-phase tableau simplex with Bland's rule.

Solves::

    minimize    c^T x
    subject to  G x <= h,  lower <= x <= upper

for the small problems produced by the l1 / l-infinity residual fits. Pivoting
is fully deterministic: the entering column is the lowest-index column with a
negative reduced cost and ratio-test ties go to the lowest-index basic
variable.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .linalg import InvalidInputError


class LpStatus(enum.Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"
    ITERATION_LIMIT = "iteration_limit"


@dataclass(frozen=True)
class LpProblem:
    c: np.ndarray
    G: np.ndarray
    h: np.ndarray
    bounds: Sequence[tuple[float | None, float | None]] = field(default=())

    def __post_init__(self):
        c = np.asarray(self.c, dtype=np.float64).reshape(-1)
        G = np.asarray(self.G, dtype=np.float64)
        h = np.asarray(self.h, dtype=np.float64).reshape(-1)
        if G.size == 0:
            G = G.reshape(0, c.size)
        if G.ndim != 2 or G.shape[1] != c.size:
            raise InvalidInputError(f"G has shape {G.shape}, expected (*, {c.size})")
        if G.shape[0] != h.size:
            raise InvalidInputError(f"G has {G.shape[0]} rows but h has {h.size} entries")
        if not (np.all(np.isfinite(c)) and np.all(np.isfinite(G)) and np.all(np.isfinite(h))):
            raise InvalidInputError("LP data must be finite")
        bounds = list(self.bounds) if len(self.bounds) else [(0.0, None)] * c.size
        if len(bounds) != c.size:
            raise InvalidInputError(f"{len(bounds)} bounds given for {c.size} variables")
        norm = []
        for i, (lo, hi) in enumerate(bounds):
            lo = -math.inf if lo is None else float(lo)
            hi = math.inf if hi is None else float(hi)
            if math.isnan(lo) or math.isnan(hi) or lo > hi or lo == math.inf or hi == -math.inf:
                raise InvalidInputError(f"bad bounds ({lo}, {hi}) for variable {i}")
            norm.append((lo, hi))
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "G", G)
        object.__setattr__(self, "h", h)
        object.__setattr__(self, "bounds", tuple(norm))

    @property
    def n_vars(self) -> int:
        return self.c.size

    @property
    def n_constraints(self) -> int:
        return self.h.size


@dataclass(frozen=True)
class LpSolution:
    x: np.ndarray | None
    objective: float
    status: LpStatus
    iterations: int = 0

    @property
    def ok(self) -> bool:
        return self.status is LpStatus.OPTIMAL


def _to_standard_form(p: LpProblem):
    """Rewrite ``p`` as ``min d^T y, A y <= b, y >= 0``.

    Returns the data plus a recipe ``(kind, col, offset)`` per original
    variable for mapping ``y`` back to ``x``.
    """
    G, h = p.G, p.h.copy()
    cols, cost, recipe, extra_rows, extra_rhs = [], [], [], [], []
    for i, (lo, hi) in enumerate(p.bounds):
        g = G[:, i]
        if math.isfinite(lo):
            # x = lo + y
            h -= g * lo
            recipe.append(("shift", len(cols), lo))
            if math.isfinite(hi):
                extra_rows.append(len(cols))
                extra_rhs.append(hi - lo)
            cols.append(g)
            cost.append(p.c[i])
        elif math.isfinite(hi):
            # x = hi - y
            h -= g * hi
            recipe.append(("flip", len(cols), hi))
            cols.append(-g)
            cost.append(-p.c[i])
        else:
            # x = y+ - y-
            recipe.append(("split", len(cols), 0.0))
            cols.extend([g, -g])
            cost.extend([p.c[i], -p.c[i]])
    nstd = len(cols)
    A = np.column_stack(cols) if cols else np.zeros((G.shape[0], 0))
    if extra_rows:
        U = np.zeros((len(extra_rows), nstd))
        U[np.arange(len(extra_rows)), extra_rows] = 1.0
        A = np.vstack([A, U])
        h = np.concatenate([h, extra_rhs])
    return A, h, np.asarray(cost, dtype=np.float64), recipe


def _recover_x(y: np.ndarray, recipe) -> np.ndarray:
    x = np.empty(len(recipe))
    for i, (kind, col, off) in enumerate(recipe):
        if kind == "shift":
            x[i] = off + y[col]
        elif kind == "flip":
            x[i] = off - y[col]
        else:
            x[i] = y[col] - y[col + 1]
    return x


# Rebuild the tableau from the original data after this many pivots.
REINVERT_EVERY = 50
# Smallest pivot magnitude accepted by the ratio test.
PIVOT_TOL = 1e-9


class _Tableau:
    """Dense tableau ``T = B^-1 [T0]`` over a subset of rows and columns of ``T0``.

    ``T0`` is the initial tableau (constraint rows, rhs last). Pivots update
    ``T`` in place; every ``REINVERT_EVERY`` pivots ``T`` is recomputed from
    ``T0`` and the current basis so rounding does not accumulate.
    """

    def __init__(self, T0: np.ndarray, basis: np.ndarray, tol: float):
        self.T0 = T0
        self.T = T0.copy()
        self.basis = basis
        self.rows = np.arange(T0.shape[0])
        self.cols = np.arange(T0.shape[1])  # last entry is the rhs column
        self.tol = tol
        self.since_reinvert = 0

    def reinvert(self) -> None:
        T0 = self.T0[np.ix_(self.rows, self.cols)]
        try:
            self.T = np.linalg.solve(T0[:, self.basis], T0)
        except np.linalg.LinAlgError:
            return
        self.since_reinvert = 0

    def drop(self, rows_keep: np.ndarray, cols_drop: np.ndarray) -> None:
        keep_cols = np.setdiff1d(np.arange(self.T.shape[1]), cols_drop)
        # basis entries index columns of the current tableau; remap them
        remap = -np.ones(self.T.shape[1], dtype=int)
        remap[keep_cols] = np.arange(keep_cols.size)
        self.T = self.T[np.ix_(rows_keep, keep_cols)]
        self.basis = remap[self.basis[rows_keep]]
        self.rows = self.rows[rows_keep]
        self.cols = self.cols[keep_cols]

    def pivot(self, r: int, j: int) -> None:
        T = self.T
        T[r] /= T[r, j]
        col = T[:, j].copy()
        col[r] = 0.0
        T -= np.outer(col, T[r])
        self.basis[r] = j
        self.since_reinvert += 1
        if self.since_reinvert >= REINVERT_EVERY:
            self.reinvert()

    def reduced_costs(self, cost: np.ndarray) -> np.ndarray:
        return cost - cost[self.basis] @ self.T

    def run(
        self, cost: np.ndarray, allowed: np.ndarray, budget: int, bounded: bool = False,
        leave_first: int | None = None,
    ) -> tuple[str, int]:
        """Bland's-rule iterations minimizing ``cost`` (rhs slot must be 0).

        With ``bounded`` (phase 1, objective known to be >= 0) a column with no
        usable pivot is noise and gets skipped instead of reported unbounded.
        ``leave_first`` names a column that wins ratio-test ties when basic.
        """
        tol = self.tol
        its = 0
        obj = self.reduced_costs(cost)
        # columns whose only positive entries are below PIVOT_TOL; their
        # reduced cost is rounding noise, so they are passed over until the
        # next pivot changes the tableau
        blocked = np.zeros_like(allowed)
        while True:
            neg = np.flatnonzero((obj[:-1] < -tol) & allowed & ~blocked)
            if neg.size == 0:
                if self.since_reinvert:
                    # confirm optimality on freshly rebuilt data
                    self.reinvert()
                    obj = self.reduced_costs(cost)
                    if not np.any((obj[:-1] < -tol) & allowed & ~blocked):
                        return "optimal", its
                    continue
                return "optimal", its
            if its >= budget:
                return "limit", its
            j = int(neg[0])
            a = self.T[:, j]
            rows = np.flatnonzero(a > PIVOT_TOL)
            if rows.size == 0:
                if bounded or np.any(a > tol):
                    blocked[j] = True
                    continue
                return "unbounded", its
            rhs = np.maximum(self.T[rows, -1], 0.0)
            ratios = rhs / a[rows]
            best = ratios.min()
            tied = rows[ratios <= best + tol * max(1.0, abs(best))]
            pref = tied[self.basis[tied] == leave_first] if leave_first is not None else tied[:0]
            r = int(pref[0]) if pref.size else int(tied[np.argmin(self.basis[tied])])
            self.pivot(r, j)
            blocked[:] = False
            obj = self.reduced_costs(cost) if self.since_reinvert == 0 else obj - obj[j] * self.T[r]
            its += 1


def solve_lp(p: LpProblem, tol: float = 1e-10, max_iters: int | None = None) -> LpSolution:
    """Solve ``p``; failures are reported through ``LpSolution.status``."""
    if max_iters is None:
        max_iters = 50 * (p.n_vars + p.n_constraints)
    A, b, d, recipe = _to_standard_form(p)
    nrow, nstd = A.shape
    scale = 1.0 + (float(np.max(np.abs(b))) if b.size else 0.0)

    if nrow == 0:
        # only sign constraints on y: optimum at y = 0 unless some cost is negative
        if np.any(d < -tol):
            return LpSolution(None, -math.inf, LpStatus.UNBOUNDED)
        x = _recover_x(np.zeros(nstd), recipe)
        return LpSolution(x, float(p.c @ x), LpStatus.OPTIMAL)

    # Phase 1 uses a single auxiliary column x0 = -1 in every row: pivoting it
    # in on the most negative rhs makes the slack basis feasible at once.
    aux = nstd + nrow
    ncol = aux + 1
    T0 = np.zeros((nrow, ncol + 1))
    T0[:, :nstd] = A
    T0[np.arange(nrow), nstd + np.arange(nrow)] = 1.0
    T0[:, aux] = -1.0
    T0[:, -1] = b
    tab = _Tableau(T0, nstd + np.arange(nrow), tol)
    total_its = 0

    if np.any(b < 0.0):
        tab.pivot(int(np.argmin(b)), aux)
        cost1 = np.zeros(ncol + 1)
        cost1[aux] = 1.0
        status, its = tab.run(cost1, np.ones(ncol, dtype=bool), max_iters, bounded=True, leave_first=aux)
        total_its += its + 1
        if status == "limit":
            return LpSolution(None, math.nan, LpStatus.ITERATION_LIMIT, total_its)
        infeas = float(cost1[tab.basis] @ tab.T[:, -1])
        if infeas > tol * scale:
            return LpSolution(None, math.nan, LpStatus.INFEASIBLE, total_its)
        rows = np.flatnonzero(tab.basis == aux)
        if rows.size:
            # x0 is basic at zero level: swap it for any usable column
            r = int(rows[0])
            row = tab.T[r, :aux]
            tab.pivot(r, int(np.argmax(np.abs(row))))
    tab.drop(np.arange(nrow), np.array([aux]))
    tab.reinvert()
    ncol = aux

    cost = np.zeros(ncol + 1)
    cost[:nstd] = d
    status, its = tab.run(cost, np.ones(ncol, dtype=bool), max_iters - total_its)
    total_its += its
    if status == "limit":
        return LpSolution(None, math.nan, LpStatus.ITERATION_LIMIT, total_its)
    if status == "unbounded":
        return LpSolution(None, -math.inf, LpStatus.UNBOUNDED, total_its)

    y = np.zeros(ncol)
    y[tab.basis] = np.maximum(tab.T[:, -1], 0.0)
    x = _recover_x(y[:nstd], recipe)
    return LpSolution(x, float(p.c @ x), LpStatus.OPTIMAL, total_its)
