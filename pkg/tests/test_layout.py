import math

import numpy as np
import pytest

from cyclomul.layout import (
    agarwal_cooley_fwd,
    agarwal_cooley_inv,
    multidim_cyclic_map,
    multidim_cyclic_unmap,
    transpose,
)


def test_transpose():
    assert np.array_equal(transpose(np.array([[1, 2, 3], [4, 5, 6]])), [[1, 4], [2, 5], [3, 6]])
    row = np.arange(7).reshape(1, 7)
    assert np.array_equal(transpose(row).reshape(-1), row.reshape(-1))
    a = np.random.default_rng(13).integers(0, 100, (37, 61, 3))
    assert np.array_equal(transpose(a), a.swapaxes(0, 1))
    assert np.array_equal(transpose(transpose(a)), a)


def test_agarwal_cooley_examples():
    f = np.zeros(6, dtype=np.int64)
    f[0] = 1
    a = agarwal_cooley_fwd(f, 3, 2)
    assert a.shape == (2, 3) and a[0, 0] == 1 and a.sum() == 1
    f = np.zeros(6, dtype=np.int64)
    f[1] = 1  # X -> Y^2 Z
    assert agarwal_cooley_fwd(f, 3, 2)[1, 2] == 1
    f = np.zeros(6, dtype=np.int64)
    f[2] = 1  # X^2 -> Y
    assert agarwal_cooley_fwd(f, 3, 2)[0, 1] == 1
    with pytest.raises(ValueError):
        agarwal_cooley_fwd(np.zeros(12), 2, 6)


def test_agarwal_cooley_round_trip():
    rng = np.random.default_rng(14)
    for _ in range(1000):
        n, m = rng.integers(1, 12, 2)
        if math.gcd(n, m) != 1:
            continue
        f = rng.integers(0, 50, (n * m, 2))
        assert np.array_equal(agarwal_cooley_inv(agarwal_cooley_fwd(f, n, m), n, m), f)
        a = rng.integers(0, 50, (m, n))
        assert np.array_equal(agarwal_cooley_fwd(agarwal_cooley_inv(a, n, m), n, m), a)
    c = np.full((3, 5), 4)
    assert np.array_equal(agarwal_cooley_inv(c, 5, 3), np.full(15, 4))


def cyclic_conv(f, g):
    n = len(f)
    return np.array([sum(f[i] * g[(k - i) % n] for i in range(n)) for k in range(n)])


def multidim_conv(a, b):
    out = np.zeros_like(a)
    shape = a.shape
    for i in np.ndindex(shape):
        for j in np.ndindex(shape):
            k = tuple((x + y) % s for x, y, s in zip(i, j, shape))
            out[k] += a[i] * b[j]
    return out


def test_multidim_map():
    rng = np.random.default_rng(15)
    f = rng.integers(0, 9, 7)
    assert np.array_equal(multidim_cyclic_map(f, (7,)), f)
    f = rng.integers(0, 9, 6)
    assert np.array_equal(multidim_cyclic_map(f, (3, 2)), agarwal_cooley_fwd(f, 3, 2))
    dims = (5, 3, 2)
    f, g = rng.integers(0, 9, 30), rng.integers(0, 9, 30)
    a, b = multidim_cyclic_map(f, dims), multidim_cyclic_map(g, dims)
    assert a.shape == (2, 3, 5)
    assert np.array_equal(multidim_cyclic_map(cyclic_conv(f, g), dims), multidim_conv(a, b))
    assert np.array_equal(multidim_cyclic_unmap(a, dims), f)
    with pytest.raises(ValueError):
        multidim_cyclic_map(np.zeros(12), (2, 6))
