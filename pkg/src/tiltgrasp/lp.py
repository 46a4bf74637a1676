"""Dense two-phase simplex for the tiny standard-form LPs used in wrench analysis.

Problems have the form ``min c.x  s.t.  A x = b, x >= 0`` with a handful of
rows and at most a few dozen columns. Bland's rule keeps it cycle-free.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

PIVOT_TOL = 1e-12
RESIDUAL_TOL = 1e-9


@dataclass
class LPResult:
    status: str  # "optimal", "infeasible" or "unbounded"
    x: np.ndarray | None
    fun: float


def _pivot(T: np.ndarray, basis: list[int], r: int, c: int) -> None:
    T[r] /= T[r, c]
    col = T[:, c].copy()
    col[r] = 0.0
    T -= np.outer(col, T[r])
    basis[r] = c


def _run(T: np.ndarray, basis: list[int], ncols: int, max_iter: int) -> bool:
    """Iterate on tableau ``T`` whose last row is the reduced-cost row.

    Only the first ``ncols`` columns may enter. Returns False when unbounded.
    """
    m = T.shape[0] - 1
    for _ in range(max_iter):
        cost = T[-1, :ncols]
        entering = next((j for j in range(ncols) if cost[j] < -PIVOT_TOL), None)
        if entering is None:
            return True
        col = T[:m, entering]
        best, leave = np.inf, None
        for i in range(m):
            if col[i] > PIVOT_TOL:
                ratio = T[i, -1] / col[i]
                # Bland: smallest ratio, ties by smallest basic index
                if ratio < best - 1e-15 or (abs(ratio - best) <= 1e-15 and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:
            return False
        _pivot(T, basis, leave, entering)
    raise RuntimeError("simplex iteration limit reached")


def _phase1(A: np.ndarray, b: np.ndarray, max_iter: int):
    m, n = A.shape
    neg = b < 0
    A = A.copy()
    b = b.copy()
    A[neg] *= -1.0
    b[neg] *= -1.0
    # tableau [A | I | b] with cost = sum of artificials
    T = np.zeros((m + 1, n + m + 1))
    T[:m, :n] = A
    T[:m, n:n + m] = np.eye(m)
    T[:m, -1] = b
    T[-1, :n] = -A.sum(axis=0)
    T[-1, -1] = -b.sum()
    basis = list(range(n, n + m))
    _run(T, basis, n + m, max_iter)
    x = np.zeros(n)
    for i, j in enumerate(basis):
        if j < n:
            x[j] = T[i, -1]
    x = np.maximum(x, 0.0)
    scale = max(1.0, float(np.abs(b).max(initial=0.0)))
    if np.abs(A @ x - b).max(initial=0.0) > RESIDUAL_TOL * scale:
        return T, basis, None
    return T, basis, x


def solve_lp(c, A, b, max_iter: int = 500) -> LPResult:
    """Minimize ``c.x`` subject to ``A x = b`` and ``x >= 0``."""
    A = np.asarray(A, dtype=float)
    b = np.asarray(b, dtype=float)
    c = np.asarray(c, dtype=float)
    m, n = A.shape
    T, basis, x = _phase1(A, b, max_iter)
    if x is None:
        return LPResult("infeasible", None, np.inf)

    # drive remaining artificials out of the basis where possible
    for i in range(m):
        if basis[i] >= n:
            row = T[i, :n]
            j = next((k for k in range(n) if abs(row[k]) > PIVOT_TOL), None)
            if j is not None:
                _pivot(T, basis, i, j)
    keep = [i for i in range(m) if basis[i] < n]
    T2 = np.zeros((len(keep) + 1, n + 1))
    T2[:-1, :n] = T[keep, :n]
    T2[:-1, -1] = T[keep, -1]
    basis2 = [basis[i] for i in keep]
    T2[-1, :n] = c
    for i, j in enumerate(basis2):
        T2[-1] -= c[j] * T2[i]
    if not _run(T2, basis2, n, max_iter):
        return LPResult("unbounded", None, -np.inf)
    x = np.zeros(n)
    for i, j in enumerate(basis2):
        x[j] = T2[i, -1]
    x = np.maximum(x, 0.0)
    return LPResult("optimal", x, float(c @ x))


def feasible_nonneg(A, b, max_iter: int = 500) -> np.ndarray | None:
    """Return some ``x >= 0`` with ``A x = b`` (residual <= 1e-9), or None."""
    return _phase1(np.asarray(A, dtype=float), np.asarray(b, dtype=float), max_iter)[2]
