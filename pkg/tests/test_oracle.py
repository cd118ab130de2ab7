import random

import numpy as np

from cyclomul.bigint import CyclicInt, cyclic_mul
from cyclomul.cyclo import get_ring
from cyclomul.dft import DftPlan, dft_naive
from cyclomul.oracle import (
    oracle_cyclic_int_mul,
    oracle_cyclic_poly_mul,
    oracle_dft,
    oracle_is_principal_root,
    oracle_orders,
)


def test_poly_oracle():
    a = [3, 1, 4, 1]
    assert oracle_cyclic_poly_mul(a, [1, 0, 0, 0], 5).tolist() == [3, 1, 4, 1]
    assert oracle_cyclic_poly_mul([1, 1], [1, 1], 3).tolist() == [2, 2]


def test_int_oracle():
    x = CyclicInt(8, 77)
    assert oracle_cyclic_int_mul(CyclicInt(8, 1), x) == x
    assert oracle_cyclic_int_mul(CyclicInt(8, 200), CyclicInt(8, 200)) == CyclicInt(8, 220)
    rnd = random.Random(40)
    for n in (5, 64, 1000):
        u, v = CyclicInt.of(rnd.getrandbits(n), n), CyclicInt.of(rnd.getrandbits(n), n)
        assert oracle_cyclic_int_mul(u, v) == cyclic_mul(u, v)


def test_dft_oracle():
    p, n = 17, 4
    delta = [[1], [0], [0], [0]]
    assert oracle_dft([4], delta, [16, 1], p) == [[1]] * 4
    assert oracle_dft([4], [[2]] * 4, [16, 1], p) == [[8], [0], [0], [0]]
    ring = get_ring(3, 13)
    w = ring.monomial(1)
    rng = np.random.default_rng(41)
    a = rng.integers(0, 3, (13, ring.d))
    want = dft_naive(DftPlan(ring, 13, w), a)
    assert oracle_dft(w.tolist(), a.tolist(), ring.phi.tolist(), 3) == want.tolist()


def test_principal_root_oracle():
    assert oracle_is_principal_root([2], 4, [4, 1], 5)
    assert not oracle_is_principal_root([1], 2, [4, 1], 5)
    assert oracle_is_principal_root([0, 1], 13, get_ring(3, 13).phi.tolist(), 3)


def test_order_oracle():
    assert oracle_orders(7, 2) == 3
    assert oracle_orders(23, 3) == 11
