"""Small dense linear algebra over both scalar backends.

numpy has no exact (Fraction) solvers, so row reduction, nullspaces and
inverses for the exact backend are written out here.  The float versions
delegate to numpy's SVD/solve.  Matrices are tiny throughout (structure
tensors of low-dimensional Hopf data), so O(n^3) Python loops are fine.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .scalars import EXACT, DEFAULT_TOL, zeros


def rref(m: np.ndarray):
    """Reduced row echelon form of an exact matrix.

    Returns (R, pivot_columns).  ``m`` is not modified.
    """
    a = m.copy()
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if a[i, c] != 0), None)
        if pivot is None:
            continue
        if pivot != r:
            a[[pivot, r]] = a[[r, pivot]]
        a[r] = a[r] / a[r, c]
        for i in range(rows):
            if i != r and a[i, c] != 0:
                a[i] = a[i] - a[i, c] * a[r]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return a, pivots


def nullspace(m: np.ndarray, field: str, tol: float = DEFAULT_TOL) -> list[np.ndarray]:
    """Basis of the right kernel of ``m`` as a list of 1-d arrays."""
    rows, cols = m.shape
    if cols == 0:
        return []
    if rows == 0:
        basis = []
        for j in range(cols):
            v = zeros((cols,), field)
            v[j] = 1 if field == EXACT else 1.0
            basis.append(v)
        return basis
    if field == EXACT:
        r, pivots = rref(m)
        free = [c for c in range(cols) if c not in pivots]
        basis = []
        for f in free:
            v = zeros((cols,), EXACT)
            v[f] = Fraction(1)
            for i, p in enumerate(pivots):
                v[p] = -r[i, f]
            basis.append(v)
        return basis
    u, s, vh = np.linalg.svd(m)
    scale = max(1.0, s[0]) if s.size else 1.0
    rank = int((s > tol * scale).sum())
    return [vh[i].conj() for i in range(rank, cols)]


def inverse(m: np.ndarray, field: str) -> np.ndarray:
    n = m.shape[0]
    if m.shape != (n, n):
        raise ValueError(f"not square: {m.shape}")
    if field != EXACT:
        return np.linalg.inv(m)
    a = m.copy()
    inv = np.empty((n, n), dtype=object)
    inv[...] = Fraction(0)
    for i in range(n):
        inv[i, i] = Fraction(1)
    for c in range(n):
        pivot = next((i for i in range(c, n) if a[i, c] != 0), None)
        if pivot is None:
            raise ValueError("matrix is singular")
        if pivot != c:
            a[[pivot, c]] = a[[c, pivot]]
            inv[[pivot, c]] = inv[[c, pivot]]
        s = a[c, c]
        a[c] = a[c] / s
        inv[c] = inv[c] / s
        for i in range(n):
            if i != c and a[i, c] != 0:
                f = a[i, c]
                a[i] = a[i] - f * a[c]
                inv[i] = inv[i] - f * inv[c]
    return inv
