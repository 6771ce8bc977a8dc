"""Experiment drivers: conditioning sweeps and the Vandermonde basis study."""
from __future__ import annotations

import csv
import dataclasses
import logging
import math
import os
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .diagnostics import bound_report
from .genqr import QRFactors, gen_qr
from .linalg import (
    InvalidInputError,
    NormKind,
    SingularMatrixError,
    condition_number,
    reference_householder_qr,
)
from .minnorm import LpSolverError

log = logging.getLogger(__name__)

DEFAULT_M_LIST = (4, 8, 16, 32, 64)
DEFAULT_KAPPA_LIST = (1e1, 1e4, 1e8, 1e12)
DEFAULT_TRIALS = 10
# number of random x per factorization for the sampled inequality checks
SAMPLES_PER_FACTORIZATION = 200
# sweeps factor full-rank matrices whose smallest relative residual is
# about 1/kappa(A); the default 1e-10 would trip at kappa ~ 1e10
SWEEP_BREAKDOWN_TOL = 1e-14

SWEEP_HEADER = (
    "norm", "m", "kappa_target", "kappa_actual", "trial",
    "forward_norm", "inverse_norm", "cond_q",
)


@dataclass(frozen=True)
class SweepRecord:
    norm: NormKind
    m: int
    kappa_target: float
    kappa_actual: float
    trial: int
    forward_norm: float
    inverse_norm: float
    cond_q: float

    @property
    def failed(self) -> bool:
        return math.isnan(self.cond_q)

    def as_row(self) -> list[str]:
        return [
            str(self.norm), str(self.m), repr(self.kappa_target), repr(self.kappa_actual),
            str(self.trial), repr(self.forward_norm), repr(self.inverse_norm), repr(self.cond_q),
        ]


@dataclass(frozen=True)
class ExperimentConfig:
    norm_kind: NormKind
    m_list: Sequence[int] = DEFAULT_M_LIST
    kappa_list: Sequence[float] = DEFAULT_KAPPA_LIST
    trials: int = DEFAULT_TRIALS
    seed: int = 0
    output_path: str | None = None
    breakdown_tol: float = SWEEP_BREAKDOWN_TOL

    def __post_init__(self):
        object.__setattr__(self, "norm_kind", NormKind.parse(self.norm_kind))
        if self.trials < 1:
            raise InvalidInputError(f"trials must be >= 1, got {self.trials}")
        if not self.m_list or any(m < 2 for m in self.m_list):
            raise InvalidInputError(f"every m must be >= 2, got {list(self.m_list)}")
        if not self.kappa_list or any(not (k >= 1.0) or math.isinf(k) for k in self.kappa_list):
            raise InvalidInputError(f"every kappa must be finite and >= 1, got {list(self.kappa_list)}")


def random_orthogonal(m: int, rng: np.random.Generator) -> np.ndarray:
    Q, _ = reference_householder_qr(rng.standard_normal((m, m)))
    return Q


def random_matrix_with_condition(m: int, kappa: float, seed: int) -> np.ndarray:
    """``U diag(s) V^T`` with ``s`` log-spaced from 1 down to ``1/kappa``.

    ``U`` and ``V`` are the (positive-diagonal) Householder ``Q`` factors of
    seeded Gaussian matrices, so the result is deterministic in the arguments.
    """
    if m < 2:
        raise InvalidInputError(f"m must be >= 2, got {m}")
    if not kappa >= 1.0:
        raise InvalidInputError(f"kappa must be >= 1, got {kappa}")
    rng = np.random.default_rng(np.random.SeedSequence([seed, m]))
    U = random_orthogonal(m, rng)
    V = random_orthogonal(m, rng)
    s = np.logspace(0.0, -math.log10(kappa), m)
    return np.asfortranarray((U * s) @ V.T)


def _sweep_seed(seed: int, m: int, kappa_index: int, trial: int) -> int:
    ss = np.random.SeedSequence([seed, m, kappa_index, trial])
    return int(ss.generate_state(1, dtype=np.uint32)[0])


def sweep_records(cfg: ExperimentConfig) -> list[SweepRecord]:
    """Compute every sweep row in ``(m, kappa, trial)`` order."""
    records = []
    kind = cfg.norm_kind
    for m in cfg.m_list:
        for ki, kappa in enumerate(cfg.kappa_list):
            for trial in range(cfg.trials):
                mseed = _sweep_seed(cfg.seed, m, ki, trial)
                A = random_matrix_with_condition(m, kappa, mseed)
                try:
                    kappa_actual = condition_number(A, NormKind.L2)
                except SingularMatrixError:
                    kappa_actual = math.inf
                try:
                    f = gen_qr(A, kind, cfg.breakdown_tol)
                    if f.rank != m:
                        raise SingularMatrixError(f.rank, 0.0)
                    rep = bound_report(f, SAMPLES_PER_FACTORIZATION, mseed)
                    fwd, inv, cq = rep.forward_norm, rep.inverse_norm, rep.cond_q
                except (SingularMatrixError, LpSolverError) as exc:
                    log.warning("m=%d kappa=%g trial=%d failed: %s", m, kappa, trial, exc)
                    fwd = inv = cq = math.nan
                records.append(SweepRecord(kind, m, float(kappa), kappa_actual, trial, fwd, inv, cq))
    return records


def write_sweep_csv(path: str | os.PathLike, records: Sequence[SweepRecord]) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write("# kappa_target and kappa_actual are 2-norm condition numbers of A\n")
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(SWEEP_HEADER)
        for r in records:
            w.writerow(r.as_row())


def read_sweep_csv(path: str | os.PathLike) -> list[SweepRecord]:
    with open(path, "r", encoding="utf-8", newline="") as fh:
        rows = [ln for ln in fh if not ln.startswith("#")]
    out = []
    for row in csv.DictReader(rows):
        out.append(SweepRecord(
            norm=NormKind.parse(row["norm"]), m=int(row["m"]),
            kappa_target=float(row["kappa_target"]), kappa_actual=float(row["kappa_actual"]),
            trial=int(row["trial"]), forward_norm=float(row["forward_norm"]),
            inverse_norm=float(row["inverse_norm"]), cond_q=float(row["cond_q"]),
        ))
    return out


def run_bound_sweep(cfg: ExperimentConfig) -> list[SweepRecord]:
    records = sweep_records(cfg)
    if cfg.output_path is not None:
        write_sweep_csv(cfg.output_path, records)
    return records


def median_cond_by_cell(records: Sequence[SweepRecord]) -> dict[tuple[int, float], float]:
    """Median ``cond_q`` per ``(m, kappa_target)``."""
    cells: dict[tuple[int, float], list[float]] = {}
    for r in records:
        cells.setdefault((r.m, r.kappa_target), []).append(r.cond_q)
    return {key: float(np.median(v)) for key, v in cells.items()}


def vandermonde(m: int, n: int) -> np.ndarray:
    """Monomials ``x**0 .. x**(n-1)`` on ``m`` equispaced points of ``[-1, 1]``."""
    if m < 2 or n < 1:
        raise InvalidInputError(f"need m >= 2 and n >= 1, got m={m}, n={n}")
    x = vandermonde_grid(m)
    return np.asfortranarray(x[:, None] ** np.arange(n))


def vandermonde_grid(m: int) -> np.ndarray:
    return -1.0 + 2.0 * np.arange(m) / (m - 1)


def chebyshev_correlations(f: QRFactors, x: np.ndarray) -> list[float]:
    """``|corr(Q_j, T_{j-1}(x))|`` for Q columns ``j = 2..k`` (1-based)."""
    out = []
    for j in range(1, f.Q.shape[1]):
        t = np.cos(j * np.arccos(np.clip(x, -1.0, 1.0)))
        out.append(float(abs(np.corrcoef(f.Q[:, j], t)[0, 1])))
    return out


@dataclass(frozen=True)
class BasisResult:
    x: np.ndarray
    factors: QRFactors
    cheb_corr: list[float] = dataclasses.field(default_factory=list)


def run_basis_experiment(
    m: int, n: int, kind: NormKind, output_path: str | os.PathLike | None = None
) -> BasisResult:
    """Factor the Vandermonde matrix and optionally write ``x, q1..qn`` as CSV.

    For the l-infinity norm the Chebyshev correlations are appended as
    ``# cheb_corr_<j>=<value>`` comment lines.
    """
    kind = NormKind.parse(kind)
    if n > m:
        raise InvalidInputError(f"need m >= n, got m={m}, n={n}")
    x = vandermonde_grid(m)
    f = gen_qr(vandermonde(m, n), kind)
    corr = chebyshev_correlations(f, x) if kind is NormKind.LINF else []
    result = BasisResult(x=x, factors=f, cheb_corr=corr)
    if output_path is not None:
        write_basis_csv(output_path, result)
    return result


def write_basis_csv(path: str | os.PathLike, result: BasisResult) -> None:
    k = result.factors.Q.shape[1]
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["x"] + [f"q{j + 1}" for j in range(k)])
        for i, xi in enumerate(result.x):
            w.writerow([repr(float(xi))] + [repr(float(v)) for v in result.factors.Q[i]])
        for j, c in enumerate(result.cheb_corr, start=2):
            fh.write(f"# cheb_corr_{j}={c!r}\n")
