import math
import random

import pytest

from cyclomul.ntheory import (
    crt_combine,
    divisors,
    euler_phi,
    factor_word,
    is_prime,
    is_squarefree,
    lg,
    mobius,
    mult_order,
    multiplicative_order,
    next_prime,
    pow_mod,
    primorial,
    sieve_primes,
)

Q1 = 36658226833235899


def trial_is_prime(n):
    return n >= 2 and all(n % d for d in range(2, math.isqrt(n) + 1))


def test_lg():
    assert [lg(n) for n in (1, 2, 3, 4, 5, 1024, 1025)] == [1, 1, 2, 2, 3, 10, 11]


def test_is_prime():
    assert is_prime(149)
    assert not is_prime(1)
    assert is_prime(Q1)
    assert [n for n in range(200) if is_prime(n)] == [n for n in range(200) if trial_is_prime(n)]


def test_sieve_primes():
    ps = sieve_primes(144, 234)
    assert len(ps) == 17 and ps[0] == 149 and ps[-1] == 233
    assert sieve_primes(0, 2) == [2]
    lo = 10**6
    assert sieve_primes(lo, lo + 1000) == [n for n in range(lo + 1, lo + 1001) if trial_is_prime(n)]
    with pytest.raises(MemoryError):
        sieve_primes(0, 10**9, budget=1000)


def test_next_prime():
    assert next_prime(1) == 2 and next_prime(2) == 3 and next_prime(144) == 149


def test_factor_word():
    f = factor_word(Q1 - 1)
    assert f.primes == [2, 3, 11, 17, 23, 29, 37, 53, 59, 67, 71, 89]
    assert str(f) == "2·3·11·17·23·29·37·53·59·67·71·89"
    assert factor_word(1).factors == ()
    rnd = random.Random(5)
    for _ in range(30):
        n = rnd.randrange(2, 10**12)
        g = factor_word(n)
        assert math.prod(q**e for q, e in g.factors) == n
        assert all(is_prime(q) for q, _ in g.factors)


def test_is_squarefree():
    assert is_squarefree(Q1 - 1)
    assert not is_squarefree(4)
    rnd = random.Random(6)
    for _ in range(10**4):
        n = rnd.randrange(1, 10**6)
        assert is_squarefree(n) == all(e == 1 for _, e in factor_word(n).factors)


def test_pow_mod():
    assert pow_mod(7, 0, 13) == 1
    assert pow_mod(3, 5, 11) == 1
    assert pow_mod(2, 10, 1000) == 24


def test_mult_order():
    assert mult_order(1, 101) == 1
    assert mult_order(2, 7, factor_word(6)) == 3
    assert mult_order(3, Q1, factor_word(Q1 - 1)) == Q1 - 1
    assert multiplicative_order(3, 77) == math.lcm(multiplicative_order(3, 7), multiplicative_order(3, 11))
    for n in range(2, 60):
        for a in range(1, n):
            if math.gcd(a, n) == 1:
                k = multiplicative_order(a, n)
                assert pow(a, k, n) == 1 % n and all(pow(a, j, n) != 1 for j in range(1, k))


def test_crt_combine():
    assert crt_combine([(1, 3), (1, 5)]) == (1, 15)
    assert crt_combine([(2, 3), (3, 5)]) == (8, 15)
    primes = sieve_primes(32, 67)
    P = math.prod(primes)
    x = random.Random(7).randrange(P)
    assert crt_combine([(x % p, p) for p in primes]) == (x, P)
    with pytest.raises(ValueError):
        crt_combine([(1, 6), (1, 4)])


def test_arithmetic_functions():
    assert primorial(113) == 31610054640417607788145206291543662493274686990
    assert euler_phi(77) == 60 and euler_phi(1) == 1
    assert [mobius(n) for n in range(1, 11)] == [1, -1, -1, 0, -1, 1, -1, 0, 0, 1]
    assert divisors(12) == [1, 2, 3, 4, 6, 12]
