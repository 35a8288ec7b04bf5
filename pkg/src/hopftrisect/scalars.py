"""Scalar backends shared by every module.

Two backends are supported:

  exact  -- entries are ``fractions.Fraction`` stored in object-dtype numpy
            arrays; equality is literal.
  float  -- entries are complex128; equality is scale-aware, |a - b| <=
            tol * (1 + max|entry|).

All structure tensors in this package are plain matrices (codomain x domain)
over one of these backends, composed with ``dot`` and tensored with ``kron``.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

EXACT = "exact"
FLOAT = "float"
DEFAULT_TOL = 1e-9


def as_scalar(x, field: str):
    if field == EXACT:
        if isinstance(x, Fraction):
            return x
        if isinstance(x, (int, np.integer)):
            return Fraction(int(x))
        if isinstance(x, str):
            return Fraction(x)
        raise TypeError(f"cannot coerce {x!r} to an exact scalar")
    return complex(x)


def array(data, field: str) -> np.ndarray:
    """Build a backend array from nested lists of ints/Fractions/complex."""
    if field == EXACT:
        a = np.array(data, dtype=object)
        it = np.nditer(a, flags=["refs_ok", "multi_index"])
        for _ in it:
            a[it.multi_index] = as_scalar(a[it.multi_index], EXACT)
        return a
    return np.array(data, dtype=complex)


def zeros(shape, field: str) -> np.ndarray:
    if field == EXACT:
        a = np.empty(shape, dtype=object)
        a[...] = Fraction(0)
        return a
    return np.zeros(shape, dtype=complex)


def eye(n: int, field: str) -> np.ndarray:
    a = zeros((n, n), field)
    for i in range(n):
        a[i, i] = as_scalar(1, field)
    return a


def swap_matrix(p: int, q: int, field: str) -> np.ndarray:
    """The flip V (x) W -> W (x) V on kron-ordered bases: (i,j) -> (j,i)."""
    a = zeros((p * q, p * q), field)
    for i in range(p):
        for j in range(q):
            a[j * p + i, i * q + j] = as_scalar(1, field)
    return a


def dot(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.dot(a, b)


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.kron(a, b)


def scalar_eq(a, b, field: str, tol: float = DEFAULT_TOL) -> bool:
    if field == EXACT:
        return a == b
    return abs(complex(a) - complex(b)) <= tol * (1 + max(abs(complex(a)), abs(complex(b))))


def tensor_eq(a: np.ndarray, b: np.ndarray, field: str, tol: float = DEFAULT_TOL) -> bool:
    if a.shape != b.shape:
        return False
    if a.size == 0:
        return True
    if field == EXACT:
        return bool(np.equal(a, b).all())
    scale = 1 + max(np.abs(a).max(), np.abs(b).max())
    return bool((np.abs(a - b) <= tol * scale).all())


def max_residual(a: np.ndarray, b: np.ndarray):
    """Largest entry of |a - b|, as a displayable number (0 for empty)."""
    if a.size == 0:
        return 0
    d = a - b
    if d.dtype == object:
        return max(abs(x) for x in d.flat)
    return float(np.abs(d).max())


def to_float_array(a: np.ndarray) -> np.ndarray:
    if a.dtype == object:
        out = np.zeros(a.shape, dtype=complex)
        it = np.nditer(a, flags=["refs_ok", "multi_index"])
        for _ in it:
            out[it.multi_index] = complex(a[it.multi_index])
        return out
    return a.astype(complex)
