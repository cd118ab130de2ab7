"""Brute-force reference implementations used to cross-check the pipelines.

Nothing here imports the transform or pipeline modules; only the integer
primitives are shared.
"""

from __future__ import annotations

import numpy as np

from .bigint import CyclicInt


def oracle_cyclic_poly_mul(a, b, p: int) -> np.ndarray:
    """c_k = sum over i + j = k (mod r) of a_i b_j, one shifted row per a_i."""
    if not 2 <= p < 2**31:
        raise ValueError("p must be below 2^31")
    a = np.asarray(a, dtype=np.int64).reshape(-1) % p
    b = np.asarray(b, dtype=np.int64).reshape(-1) % p
    r = len(a)
    if len(b) != r:
        raise ValueError("operands must have the same length")
    out = np.zeros(r, dtype=np.int64)
    for i in range(r):
        if a[i]:
            # row i contributes a_i b_j to index i + j mod r
            out[i:] = (out[i:] + a[i] * b[: r - i]) % p
            out[:i] = (out[:i] + a[i] * b[r - i :]) % p
    return out


def oracle_cyclic_int_mul(u: CyclicInt, v: CyclicInt) -> CyclicInt:
    """Schoolbook product one 64-bit limb row at a time, then fold n bits at a time."""
    if u.n != v.n:
        raise ValueError("operands must share n")
    n = u.n
    x, a, shift = 0, u.value, 0
    while a:
        x += ((a & 0xFFFFFFFFFFFFFFFF) * v.value) << shift
        a >>= 64
        shift += 64
    mask = (1 << n) - 1
    while x >> n:
        x = (x & mask) + (x >> n)
    if x == mask:
        x = 0
    return CyclicInt(n, x)


def _ring_mul(a, b, modulus, p):
    """Product of coefficient lists modulo a monic polynomial, by long division."""
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            prod[i + j] = (prod[i + j] + x * y) % p
    d = len(modulus) - 1
    for k in range(len(prod) - 1, d - 1, -1):
        c = prod[k]
        if c:
            for j in range(d + 1):
                prod[k - d + j] = (prod[k - d + j] - c * modulus[j]) % p
    out = prod[:d] + [0] * max(0, d - len(prod))
    return out


def oracle_dft(omega, a, modulus, p: int) -> list[list[int]]:
    """â_j = sum_i omega^(ij) a_i over F_p[Y]/modulus, summed literally.

    ``omega`` and each a_i are coefficient lists of length deg(modulus).
    """
    modulus = [int(x) % p for x in modulus]
    d = len(modulus) - 1
    omega = [int(x) % p for x in omega]
    a = [[int(x) % p for x in row] for row in a]
    n = len(a)
    out = []
    for j in range(n):
        acc = [0] * d
        for i in range(n):
            w = [1] + [0] * (d - 1)
            for _ in range(i * j):
                w = _ring_mul(w, omega, modulus, p)
            term = _ring_mul(w, a[i], modulus, p)
            acc = [(x + y) % p for x, y in zip(acc, term)]
        out.append(acc)
    return out


def oracle_is_principal_root(omega, n: int, modulus, p: int) -> bool:
    """omega^n = 1 and sum_j omega^(ij) = 0 for 0 < i < n, all literally."""
    modulus = [int(x) % p for x in modulus]
    d = len(modulus) - 1
    one = [1] + [0] * (d - 1)
    omega = [int(x) % p for x in omega]
    powers = [one]
    for _ in range(n):
        powers.append(_ring_mul(powers[-1], omega, modulus, p))
    if powers[n] != one:
        return False
    for i in range(1, n):
        total = [0] * d
        for j in range(n):
            total = [(x + y) % p for x, y in zip(total, powers[i * j % n])]
        if any(total):
            return False
    return True


def oracle_orders(modulus_n: int, a: int) -> int:
    """Multiplicative order of a mod n by repeated multiplication."""
    x, k = a % modulus_n, 1
    while x != 1:
        x = x * a % modulus_n
        k += 1
        if k > modulus_n:
            raise ValueError("a is not a unit")
    return k

