"""Unsigned big-integer arithmetic and residues modulo 2^n - 1.

Naturals are plain Python ``int`` values (always >= 0).  The limb view
(``to_limbs``/``from_limbs``) exists for serialization and for the
basecase multiplier, which splits operands Karatsuba-style until they fit
in ``cutoff`` limbs and then multiplies the remaining word blocks directly.
"""

from __future__ import annotations

from dataclasses import dataclass

LIMB_BITS = 64
LIMB_MASK = (1 << LIMB_BITS) - 1

# Operands at or below this many limbs are multiplied without further
# splitting.  CPython multiplies operands of this size schoolbook-style.
KARATSUBA_CUTOFF = 32


def to_limbs(a: int) -> list[int]:
    """Little-endian limbs of ``a`` with no trailing zero limb."""
    if a < 0:
        raise ValueError("negative value")
    limbs = []
    while a:
        limbs.append(a & LIMB_MASK)
        a >>= LIMB_BITS
    return limbs


def from_limbs(limbs) -> int:
    a = 0
    for limb in reversed(list(limbs)):
        a = (a << LIMB_BITS) | limb
    return a


def to_hex(a: int) -> str:
    return format(a, "x")


def from_hex(s: str) -> int:
    s = s.strip().lower()
    if s.startswith("0x"):
        s = s[2:]
    if not s or any(c not in "0123456789abcdef" for c in s):
        raise ValueError(f"malformed hex integer: {s!r}")
    return int(s, 16)


def schoolbook_mul(a: int, b: int) -> int:
    """Limb-by-limb product; quadratic in the number of limbs."""
    x, y = to_limbs(a), to_limbs(b)
    if not x or not y:
        return 0
    out = [0] * (len(x) + len(y) + 1)
    for i, xi in enumerate(x):
        carry = 0
        for j, yj in enumerate(y):
            t = out[i + j] + xi * yj + carry
            out[i + j] = t & LIMB_MASK
            carry = t >> LIMB_BITS
        k = i + len(y)
        while carry:
            t = out[k] + carry
            out[k] = t & LIMB_MASK
            carry = t >> LIMB_BITS
            k += 1
    return from_limbs(out)


def big_mul(a: int, b: int, cutoff: int = KARATSUBA_CUTOFF) -> int:
    """Exact product of two naturals (Karatsuba above ``cutoff`` limbs)."""
    if a < 0 or b < 0:
        raise ValueError("big_mul takes naturals")
    if cutoff < 1:
        raise ValueError("cutoff must be at least one limb")
    return _karatsuba(a, b, cutoff * LIMB_BITS)


def _karatsuba(a: int, b: int, cutoff_bits: int) -> int:
    na, nb = a.bit_length(), b.bit_length()
    if na <= cutoff_bits or nb <= cutoff_bits:
        if max(na, nb) <= cutoff_bits or min(na, nb) == 0:
            return a * b
        # unbalanced: cut the long operand into pieces of the short one's size
        if na < nb:
            a, b, na, nb = b, a, nb, na
        step = max(nb, cutoff_bits)
        mask = (1 << step) - 1
        acc, shift = 0, 0
        while a:
            acc += _karatsuba(a & mask, b, cutoff_bits) << shift
            a >>= step
            shift += step
        return acc
    half = (max(na, nb) + 1) // 2
    mask = (1 << half) - 1
    a0, a1 = a & mask, a >> half
    b0, b1 = b & mask, b >> half
    lo = _karatsuba(a0, b0, cutoff_bits)
    hi = _karatsuba(a1, b1, cutoff_bits)
    mid = _karatsuba(a0 + a1, b0 + b1, cutoff_bits) - lo - hi
    return (hi << (2 * half)) + (mid << half) + lo


@dataclass(frozen=True)
class CyclicInt:
    """Residue modulo ``2**n - 1``, kept in ``[0, 2**n - 2]``."""

    n: int
    value: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("bit length must be positive")
        if not 0 <= self.value < (1 << self.n) - 1 and not (self.n == 1 and self.value == 0):
            raise ValueError("value is not a canonical residue mod 2^n - 1")

    @classmethod
    def of(cls, a: int, n: int) -> "CyclicInt":
        return mod_mersenne(a, n)

    def to_hex(self) -> str:
        return to_hex(self.value)


def mod_mersenne(a: int, n: int) -> CyclicInt:
    """Reduce ``a`` modulo ``2**n - 1`` by folding n-bit chunks."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if a < 0:
        raise ValueError("negative value")
    mask = (1 << n) - 1
    while a > mask:
        a = (a & mask) + (a >> n)
    if a == mask:
        a = 0
    return CyclicInt(n, a)


def cyclic_mul(u: CyclicInt, v: CyclicInt, cutoff: int = KARATSUBA_CUTOFF) -> CyclicInt:
    if u.n != v.n:
        raise ValueError(f"mismatched cyclic lengths {u.n} != {v.n}")
    return mod_mersenne(big_mul(u.value, v.value, cutoff), u.n)
