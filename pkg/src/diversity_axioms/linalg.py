import numpy as np

from .errors import NoConvergence


def jacobi_eigenvalues(a, max_sweeps=64, rtol=1e-15):
    """Eigenvalues of a real symmetric matrix by cyclic Jacobi rotations.

    Each sweep annihilates every off-diagonal pair once.  Iteration stops
    when the off-diagonal Frobenius norm falls below ``rtol`` times the
    full norm, or when a sweep performs no rotation at all.

    Returns the eigenvalues in ascending order.
    """
    a = np.array(a, dtype=float, copy=True)
    n = a.shape[0]
    if n == 1:
        return a.diagonal().copy()
    scale = np.sqrt(np.sum(a * a))
    if scale == 0.0:
        return np.zeros(n)
    iu = np.triu_indices(n, 1)
    for _ in range(max_sweeps):
        off = np.sqrt(2.0 * np.sum(a[iu] ** 2))
        if off <= rtol * scale:
            return np.sort(a.diagonal())
        rotated = False
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                # skip entries already negligible relative to both pivots
                if abs(apq) < 1e-300 or (
                    abs(a[p, p]) + 100.0 * abs(apq) == abs(a[p, p])
                    and abs(a[q, q]) + 100.0 * abs(apq) == abs(a[q, q])
                ):
                    a[p, q] = a[q, p] = 0.0
                    continue
                rotated = True
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = 1.0 / (abs(theta) + np.sqrt(theta * theta + 1.0))
                if theta < 0.0:
                    t = -t
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                col_p = a[:, p].copy()
                col_q = a[:, q].copy()
                a[:, p] = c * col_p - s * col_q
                a[:, q] = s * col_p + c * col_q
                row_p = a[p, :].copy()
                row_q = a[q, :].copy()
                a[p, :] = c * row_p - s * row_q
                a[q, :] = s * row_p + c * row_q
                a[p, q] = a[q, p] = 0.0
        if not rotated:
            return np.sort(a.diagonal())
    raise NoConvergence(max_sweeps)
