import numpy as np
import pytest

from cyclomul.cyclo import build_principal_root, get_ring
from cyclomul.dft import DftPlan, dft_bluestein, dft_inverse, dft_multidim, dft_naive
from cyclomul.ntheory import factor_word


def field_plan(p, n, omega):
    return DftPlan.over_prime_field(p, n, omega)


def test_naive_examples():
    plan = field_plan(17, 4, 4)
    delta = np.zeros((4, 1), dtype=np.int64)
    delta[0] = 1
    assert np.array_equal(dft_naive(plan, delta), np.ones((4, 1)))
    const = np.full((4, 1), 3)
    assert dft_naive(plan, const)[:, 0].tolist() == [12, 0, 0, 0]
    a = np.array([[1], [2], [3], [4]])
    want = [sum(pow(4, i * j, 17) * (i + 1) for i in range(4)) % 17 for j in range(4)]
    assert dft_naive(plan, a)[:, 0].tolist() == want


def test_inverse():
    plan = field_plan(17, 4, 4)
    rng = np.random.default_rng(16)
    a = rng.integers(0, 17, (3, 4, 1))
    assert np.array_equal(dft_inverse(plan, dft_naive(plan, a)), a)
    delta = np.zeros((4, 1), dtype=np.int64)
    delta[0] = 1
    assert np.array_equal(dft_inverse(plan, np.ones((4, 1), dtype=np.int64)), delta)
    spike = np.zeros((4, 1), dtype=np.int64)
    spike[0] = 4 * 5 % 17
    assert np.array_equal(dft_inverse(plan, spike), np.full((4, 1), 5))


def test_plan_rejects_bad_root():
    with pytest.raises(ValueError):
        field_plan(17, 4, 16)
    with pytest.raises(ValueError):
        DftPlan(get_ring(5, 1), 10, np.array([1]))


def test_bluestein_ring():
    ring = get_ring(5, 77)
    w = build_principal_root(ring, factor_word(21), seed=4).rep
    plan = DftPlan(ring, 21, w, verify=True)
    rng = np.random.default_rng(17)
    a = rng.integers(0, 5, (2, 21, ring.d))
    assert np.array_equal(dft_bluestein(plan, a), dft_naive(plan, a))
    delta = np.zeros((21, ring.d), dtype=np.int64)
    delta[0, 0] = 1
    assert np.array_equal(dft_bluestein(plan, delta), np.tile(ring.one(), (21, 1)))
    with pytest.raises(ValueError):
        dft_bluestein(field_plan(17, 4, 4), np.zeros((4, 1)))


def test_multidim_brute_force():
    p = 31
    plans = [field_plan(p, 3, 5), field_plan(p, 5, 2)]  # 5 has order 3, 2 has order 5 mod 31
    rng = np.random.default_rng(18)
    a = rng.integers(0, p, (5, 3, 1))
    got = dft_multidim(plans, a)
    for j2 in range(5):
        for j1 in range(3):
            want = sum(
                int(a[i2, i1, 0]) * pow(5, i1 * j1, p) * pow(2, i2 * j2, p) for i2 in range(5) for i1 in range(3)
            )
            assert got[j2, j1, 0] == want % p
    assert np.array_equal(dft_multidim(plans, got, "inv"), a)
    single = dft_multidim(plans[:1], a[0])
    assert np.array_equal(single, dft_naive(plans[0], a[0]))
    delta = np.zeros((5, 3, 1), dtype=np.int64)
    delta[0, 0, 0] = 1
    assert np.array_equal(dft_multidim(plans, delta), np.ones((5, 3, 1)))
