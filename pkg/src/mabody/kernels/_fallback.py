"""Pure-numpy implementation of the hot kernels.

The compiled twin lives in ``mabody._kernels`` (Cython); ``mabody.kernels``
picks whichever is importable.  Both backends implement the same contract
and are cross-checked in the test suite.
"""

from __future__ import annotations

import itertools

import numpy as np

BACKEND = "python"


def polytope_bstar_enum(normals: np.ndarray, cvals: np.ndarray,
                        Y: np.ndarray, ftol: float):
    """Batched maximal-ellipse scale for an H-polytope.

    For the polytope {z : n_i . z <= o_i} and an interior anchor x with facet
    clearances c_i = o_i - n_i.x > 0, the ellipse
    a cos(th) + b y sin(th) + (x - a) lies in the polytope iff for every i

        n_i.a  >=  (b^2 (n_i.y)^2 - c_i^2) / (2 c_i),

    so sup b^2 is a linear program in (a, t=b^2).  The optimum sits at a
    vertex of the feasible polyhedron; this enumerates (n+1)-subsets of
    active constraints, batched over all rows of Y.

    Returns (t, a) with t[j] = b*(x, Y[j])^2 and a[j] the witness offset;
    t[j] = -1 marks a row the enumeration failed on (caller rescues).
    """
    normals = np.ascontiguousarray(normals, dtype=float)
    cvals = np.ascontiguousarray(cvals, dtype=float)
    Y = np.atleast_2d(np.ascontiguousarray(Y, dtype=float))
    m, n = normals.shape
    d = Y.shape[0]

    beta = Y @ normals.T                      # (d, m)
    q = beta * beta / (2.0 * cvals)           # (d, m)
    rhs_base = -cvals / 2.0                   # (m,)

    best_t = np.full(d, -1.0)
    best_a = np.zeros((d, n))

    for idx in itertools.combinations(range(m), n + 1):
        idx = list(idx)
        M = np.empty((d, n + 1, n + 1))
        M[:, :, :n] = normals[idx]
        M[:, :, n] = -q[:, idx]
        dets = np.linalg.det(M)
        ok = np.abs(dets) > 1e-12
        if not np.any(ok):
            continue
        rhs = np.broadcast_to(rhs_base[idx], (int(ok.sum()), n + 1))
        sol = np.linalg.solve(M[ok], rhs[..., None])[..., 0]  # (k, n+1)
        a_cand = sol[:, :n]
        t_cand = sol[:, n]
        lhs = a_cand @ normals.T - q[ok] * t_cand[:, None]    # (k, m)
        feas = np.all(lhs >= rhs_base - ftol, axis=1) & (t_cand >= -ftol)
        rows = np.flatnonzero(ok)[feas]
        better = t_cand[feas] > best_t[rows]
        rows = rows[better]
        best_t[rows] = t_cand[feas][better]
        best_a[rows] = a_cand[feas][better]

    return best_t, best_a


def polytope_gauge_max(normals: np.ndarray, slack: np.ndarray,
                       P: np.ndarray) -> float:
    """max over rows p of the polytope gauge max_i n_i.(p - x0)/slack_i.

    P is given relative to the gauge anchor x0.
    """
    return float(np.max((P @ normals.T) / slack))
