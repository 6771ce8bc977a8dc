"""Sampled checks of the conditioning guarantees for generalized-QR ``Q`` factors.

Three inequalities are checked on random ``x`` for a factorization with
``k`` columns in working norm ``||.||``:

* forward:   ``||Q x|| <= ||x||_1``
* prefix:    ``||sum_{j<=i} Q_j x_j|| >= |x_i|``   (every prefix ``i``)
* inverse:   ``||Q x|| >= 2**-k * ||x||_inf``

Each trial draws its own generator from ``(seed, trial)`` so trials can be
evaluated in any order or in parallel and merged by max/min/count.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .genqr import QRFactors
from .linalg import NormKind, column_norms, induced_matrix_norm, lu_invert

FORWARD_TOL = 1e-8
INVERSE_TOL = 1e-8
LEMMA_TOL = 1e-8


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    """Counter-based generator keyed by ``(seed, trial)``."""
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, trial])))


def sample_x(f: QRFactors, seed: int, trial: int) -> np.ndarray:
    """Standard normal vector scaled to unit working norm."""
    x = trial_rng(seed, trial).standard_normal(f.Q.shape[1])
    return x / column_norms(x[:, None], f.norm_kind)[0]


def _prefix_norms(Q: np.ndarray, x: np.ndarray, kind: NormKind) -> np.ndarray:
    # column i holds sum_{j<=i} Q_j x_j
    partial = np.cumsum(Q * x, axis=1)
    return column_norms(partial, kind)


def check_forward_bound(f: QRFactors, trials: int, seed: int) -> tuple[float, bool]:
    worst = 0.0
    for t in range(trials):
        x = sample_x(f, seed, t)
        qx = column_norms((f.Q @ x)[:, None], f.norm_kind)[0]
        worst = max(worst, qx / np.sum(np.abs(x)))
    return worst, worst <= 1.0 + FORWARD_TOL


def check_inverse_bound(f: QRFactors, trials: int, seed: int) -> tuple[float, bool]:
    k = f.Q.shape[1]
    floor = 2.0 ** (-k)
    worst = np.inf
    for t in range(trials):
        x = sample_x(f, seed, t)
        qx = column_norms((f.Q @ x)[:, None], f.norm_kind)[0]
        worst = min(worst, qx / (floor * np.max(np.abs(x))))
    return float(worst), worst >= 1.0 - INVERSE_TOL


def check_optimality_lemma(f: QRFactors, trials: int, seed: int) -> int:
    """Count prefix-inequality violations over ``trials`` samples and every prefix."""
    violations = 0
    for t in range(trials):
        x = sample_x(f, seed, t)
        norms = _prefix_norms(f.Q, x, f.norm_kind)
        active = x != 0.0
        violations += int(np.count_nonzero(norms[active] < np.abs(x[active]) - LEMMA_TOL))
    return violations


@dataclass(frozen=True)
class BoundReport:
    forward_norm: float
    inverse_norm: float
    cond_q: float
    worst_forward_sample: float
    worst_inverse_sample: float
    lemma_violations: int

    @property
    def passed(self) -> bool:
        return (
            self.lemma_violations == 0
            and self.worst_forward_sample <= 1.0 + FORWARD_TOL
            and self.worst_inverse_sample >= 1.0 - INVERSE_TOL
        )


def bound_report(f: QRFactors, trials: int, seed: int) -> BoundReport:
    """Induced norms of ``Q`` and ``Q^-1`` plus the sampled checks.

    ``Q`` must be square; a singular ``Q`` raises SingularMatrixError.
    """
    kind = f.norm_kind
    forward = induced_matrix_norm(f.Q, kind)
    inverse = induced_matrix_norm(lu_invert(f.Q), kind)
    worst_fwd, _ = check_forward_bound(f, trials, seed)
    worst_inv, _ = check_inverse_bound(f, trials, seed)
    return BoundReport(
        forward_norm=forward,
        inverse_norm=inverse,
        cond_q=forward * inverse,
        worst_forward_sample=worst_fwd,
        worst_inverse_sample=worst_inv,
        lemma_violations=check_optimality_lemma(f, trials, seed),
    )
