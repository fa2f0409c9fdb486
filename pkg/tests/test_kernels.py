import numpy as np
import pytest
from scipy.optimize import linprog

from mabody import kernels
from mabody.kernels import _fallback, polytope_bstar_batch

try:
    from mabody import _kernels as compiled
except ImportError:
    compiled = None


def random_case(m, n, seed):
    """A bounded polytope around the origin plus unit query directions."""
    rng = np.random.default_rng(seed)
    normals = np.vstack([np.eye(n), -np.eye(n),
                         rng.normal(size=(m, n))])
    normals /= np.linalg.norm(normals, axis=1, keepdims=True)
    cvals = rng.uniform(0.5, 2.0, len(normals))
    Y = rng.normal(size=(24, n))
    Y /= np.linalg.norm(Y, axis=1, keepdims=True)
    return normals, cvals, Y


def lp_reference(normals, cvals, y):
    """Direct linprog solution of the (a, t) program, independent of the
    enumeration kernels."""
    m, n = normals.shape
    beta = normals @ y
    q = beta * beta / (2.0 * cvals)
    cost = np.zeros(n + 1)
    cost[-1] = -1.0
    A_ub = np.hstack([-normals, q[:, None]])
    res = linprog(cost, A_ub=A_ub, b_ub=cvals / 2.0,
                  bounds=[(None, None)] * n + [(0, None)])
    assert res.success
    return res.x[n]


@pytest.mark.parametrize("m,n,seed", [(3, 2, 0), (6, 2, 1), (10, 2, 2),
                                      (4, 3, 3), (8, 3, 4)])
def test_fallback_matches_linprog(m, n, seed):
    normals, cvals, Y = random_case(m, n, seed)
    t, a = polytope_bstar_batch(normals, cvals, Y)
    for j in range(len(Y)):
        assert t[j] == pytest.approx(lp_reference(normals, cvals, Y[j]),
                                     rel=1e-8, abs=1e-10)


@pytest.mark.parametrize("m,n,seed", [(3, 2, 0), (6, 2, 1), (10, 2, 2),
                                      (4, 3, 3), (8, 3, 4)])
def test_backends_agree(m, n, seed):
    if compiled is None:
        pytest.skip("compiled kernel not built")
    normals, cvals, Y = random_case(m, n, seed)
    tp, ap = _fallback.polytope_bstar_enum(normals, cvals, Y, 1e-11)
    tc, ac = compiled.polytope_bstar_enum(normals, cvals, Y, 1e-11)
    assert np.allclose(tp, tc, rtol=1e-10, atol=1e-12)
    settled = tp > -0.5
    assert np.allclose(ap[settled], ac[settled], rtol=1e-8, atol=1e-10)


def test_witness_offsets_are_feasible():
    normals, cvals, Y = random_case(6, 2, 7)
    t, a = polytope_bstar_batch(normals, cvals, Y)
    beta = Y @ normals.T
    q = beta * beta / (2.0 * cvals)
    lhs = -(a @ normals.T) + q * t[:, None]
    assert np.all(lhs <= cvals / 2.0 + 1e-8)


def test_gauge_max_matches_numpy():
    rng = np.random.default_rng(8)
    normals = rng.normal(size=(5, 2))
    normals /= np.linalg.norm(normals, axis=1, keepdims=True)
    slack = rng.uniform(0.5, 2.0, 5)
    P = rng.normal(size=(40, 2))
    expected = float(np.max((P @ normals.T) / slack))
    assert _fallback.polytope_gauge_max(normals, slack, P) == pytest.approx(expected)
    if compiled is not None:
        assert compiled.polytope_gauge_max(normals, slack, P) == pytest.approx(expected)


def test_active_backend_exposed():
    assert kernels.BACKEND in ("cython", "python")
