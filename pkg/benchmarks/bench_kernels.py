"""Timing comparison of the compiled polytope kernel vs the numpy fallback.

Run as:  python benchmarks/bench_kernels.py
"""

import time

import numpy as np

from mabody.kernels import BACKEND, _fallback

try:
    from mabody import _kernels as compiled
except ImportError:
    compiled = None


def make_case(n_facets, n_dirs, dim, seed=0):
    rng = np.random.default_rng(seed)
    normals = rng.normal(size=(n_facets, dim))
    normals /= np.linalg.norm(normals, axis=1, keepdims=True)
    offsets = rng.uniform(0.8, 1.5, n_facets)
    x = np.zeros(dim)
    cvals = offsets - normals @ x
    Y = rng.normal(size=(n_dirs, dim))
    Y /= np.linalg.norm(Y, axis=1, keepdims=True)
    return normals, cvals, Y


def bench(fn, normals, cvals, Y, repeats=5):
    best = np.inf
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(normals, cvals, Y, 1e-11)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    print(f"active backend: {BACKEND}")
    for dim, n_facets, n_dirs in [(2, 6, 2000), (2, 12, 2000),
                                  (3, 8, 500), (3, 14, 500)]:
        normals, cvals, Y = make_case(n_facets, n_dirs, dim)
        t_py = bench(_fallback.polytope_bstar_enum, normals, cvals, Y)
        line = (f"dim={dim} facets={n_facets:3d} dirs={n_dirs:5d}  "
                f"python {t_py * 1e3:8.2f} ms")
        if compiled is not None:
            t_cy = bench(compiled.polytope_bstar_enum, normals, cvals, Y)
            tp, _ = _fallback.polytope_bstar_enum(normals, cvals, Y, 1e-11)
            tc, _ = compiled.polytope_bstar_enum(normals, cvals, Y, 1e-11)
            agree = np.allclose(np.clip(tp, 0, None), np.clip(tc, 0, None),
                                rtol=1e-9, atol=1e-12)
            line += (f"  compiled {t_cy * 1e3:8.2f} ms  "
                     f"speedup {t_py / t_cy:5.1f}x  agree={agree}")
        else:
            line += "  (compiled kernel unavailable)"
        print(line)


if __name__ == "__main__":
    main()
