"""Norm-generalized QR factorization with l1 / l2 / l-infinity working norms."""
from .diagnostics import (
    BoundReport,
    bound_report,
    check_forward_bound,
    check_inverse_bound,
    check_optimality_lemma,
)
from .genqr import EmptyFactorizationError, QRFactors, factor_rectangular, gen_qr, reconstruct
from .linalg import (
    InvalidInputError,
    NormKind,
    RankDeficientError,
    SingularMatrixError,
    condition_number,
    induced_matrix_norm,
    lu_invert,
    reference_householder_qr,
    vector_norm,
)
from .lp import LpProblem, LpSolution, LpStatus, solve_lp
from .minnorm import (
    LpSolverError,
    MinResidualResult,
    min_l1_residual,
    min_l2_residual,
    min_linf_residual,
    min_residual,
)

__version__ = "0.1.0"
