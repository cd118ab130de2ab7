"""Array transposition and the Agarwal-Cooley re-indexing maps.

Arrays may carry trailing "record" axes (e.g. the d coefficients of a ring
element); every kernel moves whole records and never looks inside them.
"""

from __future__ import annotations

import math

import numpy as np

TRANSPOSE_BASE = 4


def transpose(a: np.ndarray) -> np.ndarray:
    """Out-of-place transpose of the two leading axes.

    The array is split in half along its short dimension and each half is
    transposed recursively; short dimensions of at most 4 are copied
    directly.
    """
    a = np.asarray(a)
    if a.ndim < 2:
        raise ValueError("transpose needs at least two axes")
    out = np.empty((a.shape[1], a.shape[0]) + a.shape[2:], dtype=a.dtype)
    _transpose_into(a, out)
    return out


def _transpose_into(a, out):
    n, m = a.shape[0], a.shape[1]
    if min(n, m) <= TRANSPOSE_BASE:
        out[...] = a.swapaxes(0, 1)
        return
    if n <= m:
        h = n // 2
        _transpose_into(a[:h], out[:, :h])
        _transpose_into(a[h:], out[:, h:])
    else:
        h = m // 2
        _transpose_into(a[:, :h], out[:h])
        _transpose_into(a[:, h:], out[h:])


def _check_coprime(n: int, m: int):
    n, m = int(n), int(m)
    if n < 1 or m < 1:
        raise ValueError("dimensions must be positive")
    if math.gcd(n, m) != 1:
        raise ValueError(f"dimensions {n} and {m} are not coprime")


def agarwal_cooley_fwd(f: np.ndarray, n: int, m: int) -> np.ndarray:
    """F_p[X]/(X^(nm) - 1) -> F_p[Y,Z]/(Y^n - 1, Z^m - 1) via X -> Y^c Z.

    ``f`` has shape (n*m, *rec).  The result has shape (m, n, *rec) and
    entry (j, i) is the coefficient of Y^i Z^j, so each row is a polynomial
    in Y.  Here c = m^(-1) mod n.
    """
    _check_coprime(n, m)
    n, m = int(n), int(m)
    f = np.asarray(f)
    if f.shape[0] != n * m:
        raise ValueError(f"expected length {n * m}, got {f.shape[0]}")
    c = pow(m, -1, n) if n > 1 else 0
    t = transpose(f.reshape((n, m) + f.shape[1:]))
    return _shift_rows(t, n, m, c)


def agarwal_cooley_inv(a: np.ndarray, n: int, m: int) -> np.ndarray:
    """Inverse of ``agarwal_cooley_fwd``: (m, n, *rec) -> (n*m, *rec)."""
    _check_coprime(n, m)
    n, m = int(n), int(m)
    a = np.asarray(a)
    if a.shape[:2] != (m, n):
        raise ValueError(f"expected leading shape {(m, n)}, got {a.shape[:2]}")
    c = pow(m, -1, n) if n > 1 else 0
    t = _shift_rows(a, n, m, -c)
    return transpose(t).reshape((n * m,) + a.shape[2:])


def _shift_rows(t, n, m, c):
    """Cyclically shift row j of an (m, n, *rec) array right by j c (mod n)."""
    idx = (np.arange(n)[None, :] - (np.arange(m) * c % n)[:, None]) % n
    return t[np.arange(m)[:, None], idx]


def _check_pairwise(dims):
    for i, a in enumerate(dims):
        if a < 1:
            raise ValueError("dimensions must be positive")
        for b in dims[i + 1 :]:
            if math.gcd(a, b) != 1:
                raise ValueError(f"dimensions {a} and {b} are not coprime")


def multidim_cyclic_map(f: np.ndarray, dims) -> np.ndarray:
    """F_p[X]/(X^(n_1...n_d) - 1) -> F_p[Z_1..Z_d]/(Z_i^(n_i) - 1).

    ``dims`` = (n_1, ..., n_d).  The result has shape (n_d, ..., n_1, *rec)
    and is built by peeling off one factor at a time: X -> Y^c Z_d splits
    off n_d, then the Y-polynomials are split again for n_(d-1), and so on.
    For d = 2 this is exactly ``agarwal_cooley_fwd(f, n_1, n_2)``.
    """
    dims = tuple(int(x) for x in dims)
    _check_pairwise(dims)
    f = np.asarray(f)
    if f.shape[0] != math.prod(dims):
        raise ValueError("length does not match the product of dims")
    if len(dims) == 1:
        return f.copy()
    rest = math.prod(dims[:-1])
    a = agarwal_cooley_fwd(f, rest, dims[-1])  # row j: Y-polynomial at Z_d^j
    return np.stack([multidim_cyclic_map(row, dims[:-1]) for row in a])


def multidim_cyclic_unmap(a: np.ndarray, dims) -> np.ndarray:
    """Inverse of ``multidim_cyclic_map``."""
    dims = tuple(int(x) for x in dims)
    _check_pairwise(dims)
    a = np.asarray(a)
    if len(dims) == 1:
        return a.copy()
    if a.shape[: len(dims)] != tuple(reversed(dims)):
        raise ValueError("array shape does not match dims")
    rest = math.prod(dims[:-1])
    rows = np.stack([multidim_cyclic_unmap(row, dims[:-1]) for row in a])
    return agarwal_cooley_inv(rows, rest, dims[-1])
