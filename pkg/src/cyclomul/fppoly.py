"""Dense polynomials over F_p.

Two layers live here.  ``FpPoly`` is the immutable, canonical value type
used at API boundaries.  The lowercase helpers (``mul``, ``divrem``,
``PolyModulus`` ...) work on raw ``int64`` numpy coefficient arrays, which
is what the transform pipelines pass around.  Primes are limited to
``p < 2**31`` so that every product of two residues fits in an int64.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .ntheory import FactoredInt, divisors, factor_word, mobius

P_LIMIT = 1 << 31
SCHOOLBOOK_CUTOFF = 24
CLASSICAL_DIV_CUTOFF = 32


def check_prime_size(p: int):
    if not 2 <= p < P_LIMIT:
        raise ValueError(f"coefficient prime {p} outside [2, 2^31)")


# --- raw array helpers -------------------------------------------------------


def as_array(a, p: int | None = None) -> np.ndarray:
    arr = np.asarray(a, dtype=np.int64)
    if arr.ndim != 1:
        arr = arr.reshape(-1)
    if p is not None:
        arr = arr % p
    return arr


def trim(a: np.ndarray) -> np.ndarray:
    nz = np.flatnonzero(a)
    return a[: nz[-1] + 1] if nz.size else a[:0]


def pad(a: np.ndarray, n: int) -> np.ndarray:
    if len(a) >= n:
        return a[:n]
    out = np.zeros(n, dtype=np.int64)
    out[: len(a)] = a
    return out


def mul_schoolbook(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    if len(a) == 0 or len(b) == 0:
        return np.zeros(0, dtype=np.int64)
    if len(a) > len(b):
        a, b = b, a
    out = np.zeros(len(a) + len(b) - 1, dtype=np.int64)
    lb = len(b)
    for i, c in enumerate(a.tolist()):
        if c:
            out[i : i + lb] = (out[i : i + lb] + c * b) % p
    return out


def kronecker_slot_bytes(bound: int) -> int:
    """Bytes per slot so that values up to ``bound`` never collide."""
    return max(1, (bound.bit_length() + 7) // 8)


def pack_slots(a: np.ndarray, slot_bytes: int) -> int:
    """Evaluate the nonnegative vector ``a`` at 2**(8*slot_bytes)."""
    if len(a) == 0:
        return 0
    raw = np.ascontiguousarray(a, dtype="<u8").view(np.uint8).reshape(-1, 8)
    if slot_bytes < 8:
        raw = raw[:, :slot_bytes]
    elif slot_bytes > 8:
        raw = np.hstack([raw, np.zeros((len(a), slot_bytes - 8), dtype=np.uint8)])
    return int.from_bytes(np.ascontiguousarray(raw).tobytes(), "little")


def unpack_slots(x: int, count: int, slot_bytes: int, p: int) -> np.ndarray:
    """Inverse of ``pack_slots`` for ``count`` slots, each reduced mod p."""
    if count == 0:
        return np.zeros(0, dtype=np.int64)
    need = count * slot_bytes
    buf = x.to_bytes(max(need, (x.bit_length() + 7) // 8), "little")[:need]
    raw = np.frombuffer(buf, dtype=np.uint8).reshape(count, slot_bytes)
    if slot_bytes <= 8:
        wide = np.zeros((count, 8), dtype=np.uint8)
        wide[:, :slot_bytes] = raw
        return (wide.view("<u8").reshape(-1) % np.uint64(p)).astype(np.int64)
    if slot_bytes > 16:
        raise ValueError("slot wider than 128 bits")
    lo = np.ascontiguousarray(raw[:, :8]).view("<u8").reshape(-1)
    hi_raw = np.zeros((count, 8), dtype=np.uint8)
    hi_raw[:, : slot_bytes - 8] = raw[:, 8:]
    hi = hi_raw.view("<u8").reshape(-1)
    pu = np.uint64(p)
    shift = np.uint64(pow(2, 64, p))
    return ((lo % pu + (hi % pu) * shift) % pu).astype(np.int64)


def mul_kronecker(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    if len(a) == 0 or len(b) == 0:
        return np.zeros(0, dtype=np.int64)
    slot = kronecker_slot_bytes((p - 1) ** 2 * min(len(a), len(b)))
    x = pack_slots(a, slot) * pack_slots(b, slot)
    return unpack_slots(x, len(a) + len(b) - 1, slot, p)


def mul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Full product of two coefficient arrays (no trimming)."""
    if min(len(a), len(b)) <= SCHOOLBOOK_CUTOFF:
        return mul_schoolbook(a, b, p)
    return mul_kronecker(a, b, p)


def inv_series(h: np.ndarray, k: int, p: int) -> np.ndarray:
    """Inverse of the power series h modulo X^k (h[0] must be a unit)."""
    g = np.array([pow(int(h[0]), -1, p)], dtype=np.int64)
    prec = 1
    while prec < k:
        prec = min(2 * prec, k)
        e = mul(pad(h, prec), g, p)[:prec]
        e = (-e) % p
        e[0] = (e[0] + 2) % p
        g = mul(g, e, p)[:prec]
    return g


def divrem_classical(a: np.ndarray, b: np.ndarray, p: int):
    m = len(b)
    n = len(a)
    if n < m:
        return np.zeros(0, dtype=np.int64), a.copy()
    inv_lc = pow(int(b[-1]), -1, p)
    r = a.copy()
    q = np.zeros(n - m + 1, dtype=np.int64)
    for i in range(n - 1, m - 2, -1):
        c = int(r[i]) * inv_lc % p
        if c:
            q[i - m + 1] = c
            r[i - m + 1 : i + 1] = (r[i - m + 1 : i + 1] - c * b) % p
    return q, r[: m - 1]


def divrem(a: np.ndarray, b: np.ndarray, p: int):
    """Quotient and remainder; ``b`` must have a nonzero leading entry."""
    b = trim(b)
    if len(b) == 0:
        raise ZeroDivisionError("polynomial division by zero")
    a = trim(a)
    k = len(a) - len(b) + 1
    if k <= CLASSICAL_DIV_CUTOFF or len(b) <= 2:
        q, r = divrem_classical(a, b, p)
        return trim(q), trim(r)
    inv = inv_series(b[::-1], k, p)
    return _barrett(a, b, inv, p)


def _barrett(a, b, inv, p):
    n, m = len(a), len(b)
    k = n - m + 1
    q = mul(a[::-1][:k], inv[:k], p)[:k][::-1]
    r = (a[: m - 1] - mul(q, b, p)[: m - 1]) % p
    return trim(q), trim(r)


class PolyModulus:
    """Reduction modulo a fixed polynomial f with a cached series inverse."""

    def __init__(self, f, p: int):
        self.p = p
        self.f = trim(as_array(f, p))
        if len(self.f) == 0:
            raise ZeroDivisionError("zero modulus")
        self.d = len(self.f) - 1
        self._rev_inv = np.zeros(0, dtype=np.int64)

    def _inverse(self, k):
        if len(self._rev_inv) < k:
            self._rev_inv = inv_series(self.f[::-1], max(k, 2 * len(self._rev_inv)), self.p)
        return self._rev_inv

    def reduce(self, a: np.ndarray) -> np.ndarray:
        """Remainder of ``a`` as a length-d array (zero padded)."""
        a = trim(np.asarray(a, dtype=np.int64))
        if len(a) <= self.d:
            return pad(a, self.d)
        k = len(a) - self.d
        if k <= CLASSICAL_DIV_CUTOFF or self.d <= 1:
            _, r = divrem_classical(a, self.f, self.p)
        else:
            _, r = _barrett(a, self.f, self._inverse(k), self.p)
        return pad(r, self.d)

    def mulmod(self, a, b) -> np.ndarray:
        return self.reduce(mul(a, b, self.p))

    def powmod(self, a, e: int) -> np.ndarray:
        if e < 0:
            raise ValueError("negative exponent")
        result = self.reduce(np.array([1], dtype=np.int64))
        base = self.reduce(a)
        while e:
            if e & 1:
                result = self.mulmod(result, base)
            e >>= 1
            if e:
                base = self.mulmod(base, base)
        return result


def xgcd(a: np.ndarray, b: np.ndarray, p: int):
    """(g, s, t) with g monic, s*a + t*b = g.

    Only the cofactor of ``a`` is tracked through the remainder sequence; the
    other one is recovered at the end by an exact division.
    """
    a, b = trim(as_array(a, p)), trim(as_array(b, p))
    if len(a) == 0 and len(b) == 0:
        raise ValueError("xgcd of two zero polynomials")
    r0, r1 = a, b
    s0, s1 = np.array([1], dtype=np.int64), np.zeros(0, dtype=np.int64)
    while len(r1):
        q, r = divrem(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, sub(s0, mul(q, s1, p), p)
    inv = pow(int(r0[-1]), -1, p)
    g, s = r0 * inv % p, trim(s0 * inv % p)
    if len(b) == 0:
        return g, s, np.zeros(0, dtype=np.int64)
    t, rem = divrem(sub(g, mul(s, a, p), p), b, p)
    if len(rem):
        raise ArithmeticError("inexact cofactor division")
    return g, s, trim(t)


def gcd(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    r0, r1 = trim(as_array(a, p)), trim(as_array(b, p))
    while len(r1):
        r0, r1 = r1, divrem(r0, r1, p)[1]
    if len(r0) == 0:
        return r0
    return r0 * pow(int(r0[-1]), -1, p) % p


def add(a, b, p):
    n = max(len(a), len(b))
    return trim((pad(a, n) + pad(b, n)) % p)


def sub(a, b, p):
    n = max(len(a), len(b))
    return trim((pad(a, n) - pad(b, n)) % p)


# --- cyclotomic polynomials ----------------------------------------------------


def _mul_binomial(a: np.ndarray, d: int, p: int) -> np.ndarray:
    """a * (X^d - 1)."""
    out = np.zeros(len(a) + d, dtype=np.int64)
    out[d:] = a
    out[: len(a)] -= a
    return out % p


def _div_binomial(a: np.ndarray, d: int, p: int) -> np.ndarray:
    """Exact quotient a / (X^d - 1), via q_i = q_{i-d} - a_i."""
    n = len(a) - d
    blocks = -(-n // d)
    buf = np.zeros(blocks * d, dtype=np.int64)
    buf[:n] = a[:n]
    q = (-np.cumsum(buf.reshape(blocks, d) % p, axis=0)) % p
    q = q.reshape(-1)[:n]
    return q


def cyclotomic_array(alpha: int, p: int) -> np.ndarray:
    """phi_alpha mod p as a coefficient array, by the Mobius product."""
    if alpha < 1:
        raise ValueError("alpha must be positive")
    ups, downs = [], []
    for d in divisors(alpha):
        mu = mobius(alpha // d)
        if mu == 1:
            ups.append(d)
        elif mu == -1:
            downs.append(d)
    a = np.array([1], dtype=np.int64)
    for d in ups:
        a = _mul_binomial(a, d, p)
    for d in downs:
        a = _div_binomial(a, d, p)
    return a


def cyclotomic_by_division(alpha: int, p: int) -> np.ndarray:
    """phi_alpha mod p by dividing X^alpha - 1 by phi_d for proper d | alpha."""
    a = np.zeros(alpha + 1, dtype=np.int64)
    a[0], a[alpha] = p - 1, 1
    for d in divisors(alpha)[:-1]:
        q, r = divrem(a, cyclotomic_by_division(d, p), p)
        if len(r):
            raise ArithmeticError("inexact cyclotomic division")
        a = q
    return trim(a)


# --- value type ------------------------------------------------------------------


@dataclass(frozen=True)
class FpPoly:
    p: int
    coeffs: tuple[int, ...] = ()

    def __post_init__(self):
        check_prime_size(self.p)
        if self.coeffs and self.coeffs[-1] == 0:
            raise ValueError("FpPoly coefficients must be trimmed")
        if any(not 0 <= c < self.p for c in self.coeffs):
            raise ValueError("coefficient out of range")

    @classmethod
    def of(cls, p: int, coeffs) -> "FpPoly":
        arr = trim(as_array(list(coeffs) if not isinstance(coeffs, np.ndarray) else coeffs, p))
        return cls(p, tuple(arr.tolist()))

    @classmethod
    def one(cls, p: int) -> "FpPoly":
        return cls(p, (1,) if p > 1 else ())

    @property
    def degree(self) -> int:
        """Degree, with -1 standing for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def array(self) -> np.ndarray:
        return np.array(self.coeffs, dtype=np.int64)

    def __str__(self):
        return poly_to_text(self)


def _same_p(a: FpPoly, b: FpPoly) -> int:
    if a.p != b.p:
        raise ValueError(f"mismatched primes {a.p} and {b.p}")
    return a.p


def poly_mul_schoolbook(a: FpPoly, b: FpPoly) -> FpPoly:
    p = _same_p(a, b)
    return FpPoly.of(p, mul_schoolbook(a.array(), b.array(), p))


def poly_mul(a: FpPoly, b: FpPoly) -> FpPoly:
    p = _same_p(a, b)
    return FpPoly.of(p, mul(a.array(), b.array(), p))


def poly_divrem(a: FpPoly, b: FpPoly) -> tuple[FpPoly, FpPoly]:
    p = _same_p(a, b)
    if b.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    q, r = divrem(a.array(), b.array(), p)
    return FpPoly.of(p, q), FpPoly.of(p, r)


def cyclotomic_mod_p(alpha: int, p: int) -> FpPoly:
    return FpPoly.of(p, cyclotomic_array(alpha, p))


def poly_xgcd(a: FpPoly, b: FpPoly):
    p = _same_p(a, b)
    g, s, t = xgcd(a.array(), b.array(), p)
    return FpPoly.of(p, g), FpPoly.of(p, s), FpPoly.of(p, t)


def _random_poly(rng, deg_bound: int, p: int) -> np.ndarray:
    return rng.integers(0, p, size=deg_bound, dtype=np.int64)


def _split_once(f: np.ndarray, r: int, p: int, rng) -> np.ndarray | None:
    """A proper monic factor of f, or None if this attempt failed."""
    mod = PolyModulus(f, p)
    a = _random_poly(rng, len(f) - 1, p)
    if len(trim(a)) == 0:
        return None
    if p == 2:
        b = mod.reduce(a)
        acc = b.copy()
        for _ in range(r - 1):
            b = mod.mulmod(b, b)
            acc = (acc + b) % 2
    else:
        acc = mod.powmod(a, (p**r - 1) // 2)
        acc[0] = (acc[0] - 1) % p
    g = gcd(f, acc, p)
    if 1 < len(g) < len(f):
        return g
    return None


def factor_equal_degree(f: FpPoly, r: int, seed: int = 0x5EED, max_tries: int = 10_000) -> list[FpPoly]:
    """Split a squarefree f whose irreducible factors all have degree r.

    Randomized equal-degree splitting with a fixed seed; the result is sorted
    by coefficient tuples.
    """
    if f.is_zero() or r < 1:
        raise ValueError("need nonzero f and r >= 1")
    p = f.p
    arr = f.array() * pow(f.coeffs[-1], -1, p) % p
    if f.degree % r:
        raise ValueError(f"degree {f.degree} is not a multiple of {r}")
    rng = np.random.default_rng(seed)
    todo, done = [arr], []
    tries = 0
    while todo:
        g = todo.pop()
        if len(g) - 1 == r:
            done.append(g)
            continue
        h = None
        while h is None:
            tries += 1
            if tries > max_tries:
                raise ArithmeticError("equal-degree splitting did not converge; precondition violated?")
            h = _split_once(g, r, p, rng)
        q, rem = divrem(g, h, p)
        if len(rem):
            raise ArithmeticError("factor does not divide")
        for part in (h, q):
            if (len(part) - 1) % r:
                raise ValueError("factor degree is not a multiple of r; precondition violated")
            todo.append(part * pow(int(part[-1]), -1, p) % p)
    return sorted((FpPoly.of(p, g) for g in done), key=lambda f: f.coeffs)


def primitive_root_of_order(field: FpPoly, order: FactoredInt, search_bound: int = 100_000) -> FpPoly:
    """An element of exact multiplicative order ``order`` in F_p[Y]/field."""
    p, r = field.p, field.degree
    if r < 1:
        raise ValueError("field polynomial must have positive degree")
    size = p**r - 1
    if size % order.value:
        raise ValueError(f"{order.value} does not divide p^r - 1")
    one = np.zeros(r, dtype=np.int64)
    one[0] = 1
    if order.value == 1:
        return FpPoly.one(p)
    mod = PolyModulus(field.array(), p)
    cof = size // order.value
    for idx in range(1, min(search_bound, size + 1) + 1):
        cand = _enumerate(idx, p, r)
        z = mod.powmod(cand, cof)
        if not np.any(z) or not np.array_equal(mod.powmod(z, order.value), one):
            continue
        if all(not np.array_equal(mod.powmod(z, order.value // q), one) for q in order.primes):
            return FpPoly.of(p, z)
    raise ArithmeticError("no root of the requested order found within the search bound")


def _enumerate(idx: int, p: int, r: int) -> np.ndarray:
    """idx-th element in base-p digit order, skipping nothing."""
    out = np.zeros(r, dtype=np.int64)
    i = 0
    while idx and i < r:
        idx, out[i] = divmod(idx, p)
        i += 1
    return out


# --- text format ------------------------------------------------------------------


def poly_to_text(f: FpPoly) -> str:
    return f"{f.p}: " + " ".join(map(str, f.coeffs)) if f.coeffs else f"{f.p}:"


def poly_from_text(s: str) -> FpPoly:
    head, sep, body = s.partition(":")
    if not sep:
        raise ValueError("expected 'p: c0 c1 ...'")
    p = int(head.strip())
    coeffs = [int(tok) for tok in body.split()]
    if any(not 0 <= c < p for c in coeffs):
        raise ValueError("coefficient out of range")
    return FpPoly.of(p, coeffs)

