"""Kernel backend selection: compiled Cython extension when available,
numpy fallback otherwise.

``polytope_bstar_batch`` wraps the raw enumeration kernel with a linprog
rescue for rows the vertex enumeration could not settle (degenerate facet
subsets), so callers always get a finite answer.
"""

from __future__ import annotations

import numpy as np

try:
    from mabody import _kernels as _impl

    BACKEND = "cython"
except ImportError:  # extension not built; use the numpy twin
    from mabody.kernels import _fallback as _impl

    BACKEND = "python"

from mabody.kernels import _fallback

polytope_bstar_enum = _impl.polytope_bstar_enum
polytope_gauge_max = _impl.polytope_gauge_max


def polytope_bstar_batch(normals: np.ndarray, cvals: np.ndarray,
                         Y: np.ndarray, ftol: float = 1e-11):
    """b*(x, y)^2 and witness offsets a for every row y of Y.

    normals: (m, n) unit facet normals of the polytope.
    cvals:   (m,) facet clearances o_i - n_i . x of the anchor x (all > 0).
    Y:       (d, n) tangent directions (need not be unit).
    Returns (t, a): t[j] = b*^2, a[j] the witness center offset.
    """
    Y = np.atleast_2d(np.asarray(Y, dtype=float))
    t, a = polytope_bstar_enum(normals, cvals, Y, ftol)
    bad = t < -0.5
    if np.any(bad):
        from scipy.optimize import linprog

        m, n = normals.shape
        for j in np.flatnonzero(bad):
            beta = normals @ Y[j]
            q = beta * beta / (2.0 * cvals)
            cost = np.zeros(n + 1)
            cost[-1] = -1.0
            A_ub = np.hstack([-normals, q[:, None]])
            res = linprog(cost, A_ub=A_ub, b_ub=cvals / 2.0,
                          bounds=[(None, None)] * n + [(0, None)])
            if not res.success:
                raise RuntimeError("maximal-ellipse LP failed to solve")
            a[j] = res.x[:n]
            t[j] = res.x[n]
    return np.maximum(t, 0.0), a
