import itertools

import numpy as np
import pytest

ACCEPTANCE_LINES: list[str] = []


def record_criterion(label: str, ok: bool, detail: str) -> None:
    line = f"[{'PASS' if ok else 'FAIL'}] {label}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def rng():
    return np.random.default_rng(20240607)


def brute_force_lp(c, G, h, bounds):
    """Minimum of c^T x over the polytope, by enumerating every vertex.

    Bounds are folded into the row set; the polytope must be bounded and
    nonempty. Returns (objective, x) or (None, None) if no vertex is feasible.
    """
    c = np.asarray(c, float)
    n = c.size
    rows, rhs = [list(r) for r in np.asarray(G, float).reshape(-1, n)], list(np.asarray(h, float))
    for i, (lo, hi) in enumerate(bounds):
        e = np.zeros(n)
        e[i] = 1.0
        if lo is not None:
            rows.append(list(-e))
            rhs.append(-lo)
        if hi is not None:
            rows.append(list(e))
            rhs.append(hi)
    M, r = np.array(rows), np.array(rhs)
    subsets = np.array(list(itertools.combinations(range(len(r)), n)))
    S = M[subsets]
    ok = np.abs(np.linalg.det(S)) > 1e-10
    X = np.linalg.solve(S[ok], r[subsets[ok]][..., None])[..., 0]
    feas = np.all(X @ M.T <= r + 1e-9 * (1 + np.abs(r)), axis=1)
    if not feas.any():
        return None, None
    vals = X[feas] @ c
    i = int(np.argmin(vals))
    return float(vals[i]), X[feas][i]


def brute_force_l1_fit(B, b):
    """Least-absolute-deviations minimum over fits interpolating k rows."""
    m, k = B.shape
    subsets = np.array(list(itertools.combinations(range(m), k)))
    S = B[subsets]
    ok = np.abs(np.linalg.det(S)) > 1e-12
    C = np.linalg.solve(S[ok], b[subsets[ok]][..., None])[..., 0]
    return float(np.min(np.sum(np.abs(b - C @ B.T), axis=1)))


def brute_force_linf_fit(B, b):
    """Minimax residual over all (k+1)-point references and sign patterns."""
    m, k = B.shape
    best = np.inf
    signs = np.array(list(itertools.product([-1.0, 1.0], repeat=k + 1)))
    for sub in itertools.combinations(range(m), k + 1):
        Bs, bs = B[list(sub)], b[list(sub)]
        # B_i c + s_i z = b_i for the chosen rows
        M = np.concatenate([np.broadcast_to(Bs, (len(signs), k + 1, k)), signs[..., None]], axis=2)
        ok = np.abs(np.linalg.det(M)) > 1e-12
        if not ok.any():
            continue
        sol = np.linalg.solve(M[ok], np.broadcast_to(bs, (ok.sum(), k + 1))[..., None])[..., 0]
        C, z = sol[:, :k], sol[:, k]
        worst = np.max(np.abs(b - C @ B.T), axis=1)
        good = (z >= -1e-12) & (worst <= np.abs(z) + 1e-9)
        if good.any():
            best = min(best, float(np.min(worst[good])))
    return best
