"""Primality, sieving, factoring, orders and Chinese remaindering."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

# Deterministic Miller-Rabin: the first 13 primes are a proven witness set
# for every n < 3317044064679887385961981.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
MR_LIMIT = 3317044064679887385961981

SIEVE_BUDGET = 1 << 27
TRIAL_LIMIT = 1 << 21
WORD_LIMIT = 1 << 62


@dataclass(frozen=True)
class FactoredInt:
    value: int
    factors: tuple[tuple[int, int], ...] = field(default=())

    @property
    def primes(self) -> list[int]:
        return [q for q, _ in self.factors]

    def __str__(self):
        if not self.factors:
            return "1"
        return "·".join(str(q) if e == 1 else f"{q}^{e}" for q, e in self.factors)


def lg(n: int) -> int:
    """max(1, ceil(log2 n)) for n >= 1."""
    if n < 1:
        raise ValueError("lg needs n >= 1")
    return max(1, (n - 1).bit_length())


def is_prime(n: int) -> bool:
    if n > MR_LIMIT:
        raise ValueError(f"is_prime supports n < {MR_LIMIT}")
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def next_prime(n: int) -> int:
    """Least prime strictly greater than n."""
    c = max(n + 1, 2)
    while not is_prime(c):
        c += 1
    return c


def sieve_primes(lo: int, hi: int, budget: int = SIEVE_BUDGET) -> list[int]:
    """All primes in (lo, hi], ascending."""
    if hi < lo:
        raise ValueError("sieve_primes needs hi >= lo")
    if hi - lo > budget:
        raise MemoryError(f"sieve window {hi - lo} exceeds budget {budget}")
    start = lo + 1
    if hi < 2 or start > hi:
        return []
    start = max(start, 2)
    window = np.ones(hi - start + 1, dtype=bool)
    for q in _small_primes(math.isqrt(hi)):
        first = max(q * q, (start + q - 1) // q * q)
        window[first - start :: q] = False
    return (np.flatnonzero(window) + start).tolist()


_SMALL_CACHE: list = [np.array([], dtype=np.int64), 1]


def _small_primes(limit: int) -> np.ndarray:
    """Primes <= limit by a plain Eratosthenes sieve (cached)."""
    primes, covered = _SMALL_CACHE
    if limit <= covered:
        return primes[: np.searchsorted(primes, limit, side="right")]
    top = max(limit, 2 * covered, 1 << 12)
    flags = np.ones(top + 1, dtype=bool)
    flags[:2] = False
    for q in range(2, math.isqrt(top) + 1):
        if flags[q]:
            flags[q * q :: q] = False
    primes = np.flatnonzero(flags).astype(np.int64)
    _SMALL_CACHE[0], _SMALL_CACHE[1] = primes, top
    return primes[: np.searchsorted(primes, limit, side="right")]


def _pollard_brent(n: int, seed: int) -> int:
    """A nontrivial factor of composite odd n."""
    c = seed % (n - 1) + 1
    y, m, g, r, q = 2, 128, 1, 1, 1
    while g == 1:
        x = y
        for _ in range(r):
            y = (y * y + c) % n
        k = 0
        while k < r and g == 1:
            ys = y
            for _ in range(min(m, r - k)):
                y = (y * y + c) % n
                q = q * abs(x - y) % n
            g = math.gcd(q, n)
            k += m
        r *= 2
    if g == n:
        while True:
            ys = (ys * ys + c) % n
            g = math.gcd(abs(x - ys), n)
            if g > 1:
                break
    return g


def _split_all(n: int, out: dict, seed: int = 1):
    if n == 1:
        return
    if is_prime(n):
        out[n] = out.get(n, 0) + 1
        return
    s = seed
    while True:
        d = _pollard_brent(n, s)
        if 1 < d < n:
            break
        s += 1
    _split_all(d, out, s)
    _split_all(n // d, out, s)


def factor_word(n: int) -> FactoredInt:
    """Complete factorization: trial division up to 2^21, then Pollard rho."""
    if n < 1:
        raise ValueError("factor_word needs n >= 1")
    if n > MR_LIMIT:
        raise ValueError(f"factor_word supports n < {MR_LIMIT}")
    found: dict[int, int] = {}
    m = n
    limit = min(TRIAL_LIMIT, math.isqrt(m))
    for q in _small_primes(limit).tolist():
        if q * q > m:
            break
        if m % q == 0:
            e = 0
            while m % q == 0:
                m //= q
                e += 1
            found[q] = e
    if m > 1:
        _split_all(m, found)
    return FactoredInt(n, tuple(sorted(found.items())))


def is_squarefree(n: int) -> bool:
    if n < 1:
        raise ValueError("is_squarefree needs n >= 1")
    return all(e == 1 for _, e in factor_word(n).factors)


def pow_mod(base: int, exp: int, modulus: int) -> int:
    if modulus < 2:
        raise ValueError("modulus must be >= 2")
    return pow(base, exp, modulus)


def mult_order(a: int, modulus: int, modulus_minus_one: FactoredInt | None = None) -> int:
    """Least k >= 1 with a^k = 1 (mod modulus), modulus prime."""
    if modulus_minus_one is None:
        modulus_minus_one = factor_word(modulus - 1)
    if modulus_minus_one.value != modulus - 1:
        raise ValueError("factorization does not match modulus - 1")
    return order_from_multiple(a, modulus, modulus_minus_one)


def order_from_multiple(a: int, modulus: int, multiple: FactoredInt) -> int:
    """Order of a mod modulus given a factored multiple of that order."""
    a %= modulus
    if a == 0 or math.gcd(a, modulus) != 1:
        raise ValueError("element is not a unit")
    if pow(a, multiple.value, modulus) != 1:
        raise ValueError("supplied multiple is not a multiple of the order")
    k = multiple.value
    for q, e in multiple.factors:
        for _ in range(e):
            if pow(a, k // q, modulus) == 1:
                k //= q
            else:
                break
    return k


def multiplicative_order(a: int, n: int) -> int:
    """ord_n a for a composite or prime modulus n (via Carmichael lambda)."""
    if n == 1:
        return 1
    lam = 1
    for q, e in factor_word(n).factors:
        part = 2 ** (e - 2) if q == 2 and e >= 3 else (q - 1) * q ** (e - 1)
        lam = lam * part // math.gcd(lam, part)
    return order_from_multiple(a, n, factor_word(lam))


def crt_combine(residues) -> tuple[int, int]:
    """Combine (residue, modulus) pairs with pairwise coprime moduli."""
    x, m = 0, 1
    for r, q in residues:
        if q < 1:
            raise ValueError("moduli must be positive")
        if math.gcd(m, q) != 1:
            raise ValueError(f"modulus {q} is not coprime to the others")
        # x + m*t = r (mod q)
        t = (r - x) * pow(m, -1, q) % q if q > 1 else 0
        x += m * t
        m *= q
    return x % m, m


def primorial(bound: int) -> int:
    out = 1
    for q in sieve_primes(0, bound):
        out *= q
    return out


def euler_phi(n: int) -> int:
    out = n
    for q, _ in factor_word(n).factors:
        out = out // q * (q - 1)
    return out


def mobius(n: int) -> int:
    f = factor_word(n).factors
    if any(e > 1 for _, e in f):
        return 0
    return -1 if len(f) % 2 else 1


def divisors(n: int) -> list[int]:
    out = [1]
    for q, e in factor_word(n).factors:
        out = [d * q**k for d in out for k in range(e + 1)]
    return sorted(out)
