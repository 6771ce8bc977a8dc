import math

import numpy as np
import pytest

from normqr.experiments import (
    SWEEP_HEADER,
    ExperimentConfig,
    SweepRecord,
    chebyshev_correlations,
    median_cond_by_cell,
    random_matrix_with_condition,
    read_sweep_csv,
    run_basis_experiment,
    run_bound_sweep,
    vandermonde,
)
from normqr.linalg import InvalidInputError, NormKind, spectral_norm, lu_invert


def test_random_matrix_kappa_one_is_orthogonal():
    A = random_matrix_with_condition(6, 1.0, 0)
    assert np.abs(A.T @ A - np.eye(6)).max() <= 1e-10


def test_random_matrix_kappa_by_power_iteration():
    A = random_matrix_with_condition(5, 1e3, 1)
    kappa = spectral_norm(A) * spectral_norm(lu_invert(A))
    assert kappa == pytest.approx(1e3, rel=1e-6)
    # numpy's SVD is an independent estimate of the same quantity
    s = np.linalg.svd(A, compute_uv=False)
    assert s[0] / s[-1] == pytest.approx(1e3, rel=1e-9)


def test_random_matrix_deterministic():
    assert np.array_equal(random_matrix_with_condition(7, 1e4, 3), random_matrix_with_condition(7, 1e4, 3))
    assert not np.array_equal(random_matrix_with_condition(7, 1e4, 3), random_matrix_with_condition(7, 1e4, 4))


def test_random_matrix_validation():
    with pytest.raises(InvalidInputError):
        random_matrix_with_condition(1, 10.0, 0)
    with pytest.raises(InvalidInputError):
        random_matrix_with_condition(3, 0.5, 0)


def test_config_validation():
    with pytest.raises(InvalidInputError):
        ExperimentConfig("l1", [4], [1.0], trials=0)
    with pytest.raises(InvalidInputError):
        ExperimentConfig("l1", [1], [1.0])
    with pytest.raises(InvalidInputError):
        ExperimentConfig("l1", [4], [0.1])


def test_single_row_sweep(tmp_path):
    out = tmp_path / "s.csv"
    recs = run_bound_sweep(ExperimentConfig(NormKind.L1, [4], [1.0], 1, 0, str(out)))
    assert len(recs) == 1 and recs[0].cond_q >= 1.0
    assert read_sweep_csv(out) == recs


def test_sweep_csv_schema_and_determinism(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    cfg = dict(norm_kind="linf", m_list=[4, 5], kappa_list=[1e2, 1e8], trials=2, seed=7)
    run_bound_sweep(ExperimentConfig(**cfg, output_path=str(a)))
    run_bound_sweep(ExperimentConfig(**cfg, output_path=str(b)))
    assert a.read_bytes() == b.read_bytes()
    lines = a.read_text().splitlines()
    assert lines[0].startswith("#")
    assert tuple(lines[1].split(",")) == SWEEP_HEADER
    assert SWEEP_HEADER == tuple(f.name for f in SweepRecord.__dataclass_fields__.values())
    assert len(lines) - 2 == 8
    for r in read_sweep_csv(a):
        assert r.cond_q == pytest.approx(r.forward_norm * r.inverse_norm, rel=1e-12)
        assert r.kappa_actual == pytest.approx(r.kappa_target, rel=1e-6)


@pytest.mark.slow
def test_sweep_a_independence_l1():
    recs = run_bound_sweep(ExperimentConfig(NormKind.L1, [4, 8, 16], [1e2, 1e6, 1e10], 10, 0))
    assert len(recs) == 90
    med = median_cond_by_cell(recs)
    for m in (4, 8, 16):
        vals = [med[(m, k)] for k in (1e2, 1e6, 1e10)]
        assert max(vals) / min(vals) < 10


def test_sweep_records_failure_as_nan(tmp_path, monkeypatch):
    from normqr import experiments
    from normqr.linalg import SingularMatrixError

    def boom(*a, **k):
        raise SingularMatrixError(0, 0.0)

    monkeypatch.setattr(experiments, "gen_qr", boom)
    recs = run_bound_sweep(ExperimentConfig(NormKind.L1, [3], [1.0], 2, 0, str(tmp_path / "f.csv")))
    assert all(r.failed for r in recs)
    assert "nan" in (tmp_path / "f.csv").read_text()


def test_vandermonde_small():
    np.testing.assert_array_equal(vandermonde(3, 2), [[1, -1], [1, 0], [1, 1]])


def test_vandermonde_default_size():
    V = vandermonde(400, 5)
    assert V.shape == (400, 5)
    np.testing.assert_array_equal(V[:, 0], 1.0)
    assert V[0, 1] == -1.0 and V[-1, 1] == 1.0


def test_basis_l2_orthonormal():
    res = run_basis_experiment(400, 5, NormKind.L2)
    Q = res.factors.Q
    assert np.abs(Q.T @ Q - np.eye(5)).max() <= 1e-8
    assert res.cheb_corr == []


def test_basis_single_column(tmp_path):
    res = run_basis_experiment(10, 1, NormKind.LINF, tmp_path / "b.csv")
    np.testing.assert_allclose(res.factors.Q[:, 0], 1.0)
    lines = (tmp_path / "b.csv").read_text().splitlines()
    assert lines[0] == "x,q1" and len(lines) == 11


def test_chebyshev_correlation_of_exact_chebyshev():
    # Q columns equal to T_j on the grid must give correlation 1
    from normqr.genqr import QRFactors

    x = np.linspace(-1, 1, 50)
    T = np.stack([np.cos(j * np.arccos(x)) for j in range(4)], axis=1)
    f = QRFactors(T, np.eye(4), (0, 1, 2, 3), np.ones(4), NormKind.LINF)
    np.testing.assert_allclose(chebyshev_correlations(f, x), 1.0, atol=1e-12)


def test_basis_linf_chebyshev(tmp_path):
    out = tmp_path / "b.csv"
    res = run_basis_experiment(400, 5, NormKind.LINF, out)
    assert len(res.cheb_corr) == 4
    assert min(res.cheb_corr) >= 0.99
    lines = out.read_text().splitlines()
    assert lines[0] == "x,q1,q2,q3,q4,q5"
    assert len(lines) == 1 + 400 + 4
    assert lines[-1].startswith("# cheb_corr_5=")


def test_basis_validation():
    with pytest.raises(InvalidInputError):
        run_basis_experiment(3, 5, NormKind.L1)
