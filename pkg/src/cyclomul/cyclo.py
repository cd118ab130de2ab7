"""The cyclotomic coefficient ring R = F_p[Y]/phi_alpha(Y).

Elements are handled internally as int64 arrays of length d = phi(alpha)
(low degree first); ``CycloElem`` wraps one for the public API.  A ring
with alpha = 1 is just F_p (phi_1 = Y - 1, d = 1), which is how prime
fields are represented throughout.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field

import numpy as np

from . import fppoly as fp
from .fppoly import FpPoly, PolyModulus
from .ntheory import FactoredInt, divisors, euler_phi, factor_word, multiplicative_order


class CycloRing:
    """Descriptor for F_p[Y]/phi_alpha.  Use ``get_ring`` to share instances."""

    def __init__(self, p: int, alpha: int):
        fp.check_prime_size(p)
        if alpha < 1 or alpha % p == 0:
            raise ValueError(f"need alpha >= 1 with p ∤ alpha (p={p}, alpha={alpha})")
        self.p = p
        self.alpha = alpha
        self.phi = fp.cyclotomic_array(alpha, p)
        self.d = len(self.phi) - 1
        self.r = multiplicative_order(p % alpha, alpha) if alpha > 1 else 1
        self.k = self.d // self.r
        self.modulus = PolyModulus(self.phi, p)
        self._factors = None
        self._idempotents = None
        self._psi = None

    def __repr__(self):
        return f"CycloRing(p={self.p}, alpha={self.alpha}, d={self.d}, r={self.r}, k={self.k})"

    # -- element constructors (raw arrays) --

    def zero(self) -> np.ndarray:
        return np.zeros(self.d, dtype=np.int64)

    def one(self) -> np.ndarray:
        return self.scalar(1)

    def scalar(self, c: int) -> np.ndarray:
        out = self.zero()
        out[0] = c % self.p
        return out

    def monomial(self, k: int) -> np.ndarray:
        """Y^k, with Y^alpha = 1."""
        v = np.zeros(self.alpha, dtype=np.int64)
        v[k % self.alpha] = 1
        return self.reduce(v)

    def reduce(self, a) -> np.ndarray:
        return self.modulus.reduce(np.asarray(a, dtype=np.int64) % self.p)

    def reduce_cyclic(self, a) -> np.ndarray:
        """Reduce a vector indexed mod alpha (an element of F_p[Y]/(Y^alpha - 1))."""
        a = np.asarray(a, dtype=np.int64)
        if len(a) > self.alpha:
            folded = np.zeros(self.alpha, dtype=np.int64)
            for start in range(0, len(a), self.alpha):
                chunk = a[start : start + self.alpha]
                folded[: len(chunk)] += chunk
            a = folded
        return self.reduce(a % self.p)

    # -- arithmetic on raw arrays --

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def scale(self, a, c: int):
        return a * (c % self.p) % self.p

    def mul(self, a, b) -> np.ndarray:
        if self.d == 1:
            return a * b % self.p
        return self.modulus.mulmod(a, b)

    def mul_many(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Elementwise products of two (..., d) arrays."""
        a, b = np.broadcast_arrays(a, b)
        if self.d == 1:
            return a * b % self.p
        flat_a = a.reshape(-1, self.d)
        flat_b = b.reshape(-1, self.d)
        out = np.empty_like(flat_a)
        for i in range(len(flat_a)):
            out[i] = self.modulus.mulmod(flat_a[i], flat_b[i])
        return out.reshape(a.shape)

    def pow(self, a, e: int) -> np.ndarray:
        if self.d == 1:
            return np.array([pow(int(a[0]), e, self.p)], dtype=np.int64)
        return self.modulus.powmod(a, e)

    def equal(self, a, b) -> bool:
        return bool(np.array_equal(np.asarray(a) % self.p, np.asarray(b) % self.p))

    def is_zero(self, a) -> bool:
        return not np.any(np.asarray(a) % self.p)

    def inverse(self, a) -> np.ndarray:
        g, s, _ = fp.xgcd(a, self.phi, self.p)
        if len(g) != 1:
            raise ZeroDivisionError("element is not a unit")
        return self.reduce(s)

    def is_unit(self, a) -> bool:
        return len(fp.gcd(a, self.phi, self.p)) == 1

    def frobenius(self, a, j: int = 1) -> np.ndarray:
        """a^(p^j), computed as a(Y^(p^j)) since Y^alpha = 1."""
        step = pow(self.p, j, self.alpha) if self.alpha > 1 else 0
        v = np.zeros(self.alpha, dtype=np.int64)
        idx = (np.arange(self.d, dtype=np.int64) * step) % self.alpha
        np.add.at(v, idx, a)
        return self.reduce(v)

    def geometric_sum(self, x, k: int):
        """(1 + x + ... + x^(k-1), x^k) by binary splitting."""
        if k == 0:
            return self.zero(), self.one()
        if k % 2 == 0:
            s, xp = self.geometric_sum(x, k // 2)
            return self.add(s, self.mul(s, xp)), self.mul(xp, xp)
        s, xp = self.geometric_sum(x, k - 1)
        return self.add(s, xp), self.mul(xp, x)

    # -- factorization and CRT data (lazy) --

    @property
    def factors(self) -> list[FpPoly]:
        if self._factors is None:
            self._factors = factor_equal_degree_cached(self.p, self.alpha, self.r)
        return self._factors

    def idempotents(self) -> list[np.ndarray]:
        """e_j with e_j = 1 mod f_j and 0 mod f_i (i != j)."""
        if self._idempotents is None:
            out = []
            for f in self.factors:
                fa = f.array()
                cof, rem = fp.divrem(self.phi, fa, self.p)
                if len(rem):
                    raise ArithmeticError("factor does not divide phi")
                g, s, _ = fp.xgcd(cof, fa, self.p)
                out.append(self.reduce(fp.mul(s, cof, self.p)))
            self._idempotents = out
        return self._idempotents

    def psi_data(self):
        """(psi, chi2) with psi = (Y^alpha - 1)/phi and chi2*psi = 1 mod phi."""
        if self._psi is None:
            ya = np.zeros(self.alpha + 1, dtype=np.int64)
            ya[0], ya[-1] = self.p - 1, 1
            psi, rem = fp.divrem(ya, self.phi, self.p)
            if len(rem):
                raise ArithmeticError("phi does not divide Y^alpha - 1")
            if len(psi) == 1:
                chi2 = self.one()
            else:
                g, _, chi2 = fp.xgcd(self.phi, psi, self.p)
                if len(g) != 1:
                    raise ArithmeticError("phi and psi are not coprime")
            self._psi = (psi, self.reduce(chi2))
        return self._psi


@functools.lru_cache(maxsize=256)
def get_ring(p: int, alpha: int) -> CycloRing:
    return CycloRing(p, alpha)


@functools.lru_cache(maxsize=64)
def factor_equal_degree_cached(p: int, alpha: int, r: int) -> list[FpPoly]:
    return fp.factor_equal_degree(FpPoly.of(p, fp.cyclotomic_array(alpha, p)), r)


@dataclass(frozen=True, eq=False)
class CycloElem:
    ring: CycloRing
    rep: np.ndarray = field(repr=False)

    def __post_init__(self):
        rep = np.asarray(self.rep, dtype=np.int64)
        if rep.shape != (self.ring.d,):
            rep = self.ring.reduce(rep)
        object.__setattr__(self, "rep", rep % self.ring.p)

    @classmethod
    def of(cls, ring: CycloRing, coeffs) -> "CycloElem":
        return cls(ring, ring.reduce(fp.as_array(coeffs, ring.p)))

    def poly(self) -> FpPoly:
        return FpPoly.of(self.ring.p, self.rep)

    def __eq__(self, other):
        return (
            isinstance(other, CycloElem)
            and _same_ring(self.ring, other.ring)
            and np.array_equal(self.rep, other.rep)
        )

    def __hash__(self):
        return hash((self.ring.p, self.ring.alpha, self.rep.tobytes()))

    def __repr__(self):
        return f"CycloElem(p={self.ring.p}, alpha={self.ring.alpha}, {self.poly().coeffs})"


def _same_ring(a: CycloRing, b: CycloRing) -> bool:
    return a is b or (a.p == b.p and a.alpha == b.alpha)


def _check_ring(a: CycloElem, b: CycloElem) -> CycloRing:
    if not _same_ring(a.ring, b.ring):
        raise ValueError("elements belong to different rings")
    return a.ring


def ring_mul(a: CycloElem, b: CycloElem) -> CycloElem:
    ring = _check_ring(a, b)
    return CycloElem(ring, ring.mul(a.rep, b.rep))


def ring_pow(a: CycloElem, e: int) -> CycloElem:
    return CycloElem(a.ring, a.ring.pow(a.rep, e))


def crt_split(a: CycloElem) -> list[FpPoly]:
    ring = a.ring
    out = []
    for f in ring.factors:
        _, r = fp.divrem(a.rep, f.array(), ring.p)
        out.append(FpPoly.of(ring.p, r))
    return out


def crt_combine_ring(ring: CycloRing, residues) -> CycloElem:
    idem = ring.idempotents()
    if len(residues) != len(idem):
        raise ValueError(f"expected {len(idem)} residues, got {len(residues)}")
    acc = ring.zero()
    for res, e in zip(residues, idem):
        arr = res.array() if isinstance(res, FpPoly) else fp.as_array(res, ring.p)
        acc = ring.add(acc, ring.mul(ring.reduce(arr), e))
    return CycloElem(ring, acc)


# --- principal roots -------------------------------------------------------------


def is_principal_root(w: CycloElem, n: int, monomial: int | None = None) -> bool:
    """Exact test of the definition: w^n = 1 and sum_j w^(ij) = 0 for 0 < i < n.

    For g = gcd(i, n) the sum equals g * (1 + x + ... + x^(n/g - 1)) with
    x = w^g, so it suffices to check that geometric sum for every proper
    divisor g of n.  ``monomial=k`` declares that w = Y^k, which lets the
    sums be formed directly in F_p[Y]/(Y^alpha - 1).
    """
    ring = w.ring
    if n < 1:
        raise ValueError("order must be positive")
    if n % ring.p == 0:
        raise ValueError(f"order {n} is not invertible mod {ring.p}")
    if monomial is not None:
        if not ring.equal(ring.monomial(monomial), w.rep):
            raise ValueError("declared monomial does not match the element")
        return _is_principal_monomial(ring, monomial % ring.alpha, n)
    one = ring.one()
    if not ring.equal(ring.pow(w.rep, n), one):
        return False
    for g in divisors(n)[:-1]:
        x = ring.pow(w.rep, g)
        s, _ = ring.geometric_sum(x, n // g)
        if not ring.is_zero(s):
            return False
    return True


def _is_principal_monomial(ring: CycloRing, k: int, n: int) -> bool:
    if not ring.equal(ring.monomial(k * n), ring.one()):
        return False
    for g in divisors(n)[:-1]:
        exps = (np.arange(n // g, dtype=np.int64) * (g * k % ring.alpha)) % ring.alpha
        counts = np.bincount(exps, minlength=ring.alpha) % ring.p
        if not ring.is_zero(ring.reduce(counts)):
            return False
    return True


def _norm(ring: CycloRing, x, s: int, k: int):
    """prod_{j<k} x^(p^(s*j)), the relative norm down to F_(p^s) per component."""
    if k == 1:
        return x
    if k % 2 == 0:
        h = _norm(ring, x, s, k // 2)
        return ring.mul(h, ring.frobenius(h, s * (k // 2)))
    h = _norm(ring, x, s, k - 1)
    return ring.mul(h, ring.frobenius(x, s * (k - 1)))


def _pow_frobenius(ring: CycloRing, y, e: int):
    """y^e using base-p digits and Frobenius when that is cheaper."""
    p = ring.p
    digits = []
    t = e
    while t:
        t, dgt = divmod(t, p)
        digits.append(dgt)
    if p > 256 or p + len(digits) >= e.bit_length() * 2:
        return ring.pow(y, e)
    table = [ring.one(), y]
    for _ in range(2, p):
        table.append(ring.mul(table[-1], y))
    acc = ring.one()
    for j, dgt in enumerate(digits):
        if dgt:
            acc = ring.mul(acc, ring.frobenius(table[dgt], j))
    return acc


def _crt_pair(ring: CycloRing, z1, g1, z2, g2):
    """Element = z1 mod g1 and = z2 mod g2 (coprime divisors of phi)."""
    p = ring.p
    _, s, _ = fp.xgcd(g1, g2, p)
    diff = fp.divrem(fp.sub(z2, z1, p), g2, p)[1]
    t = fp.divrem(fp.mul(diff, s, p), g2, p)[1]
    z = fp.add(fp.trim(z1), fp.mul(g1, t, p), p)
    return fp.divrem(z, fp.mul(g1, g2, p), p)[1]


def _root_prime_power(ring: CycloRing, q: int, e: int, rng, max_rounds: int = 200):
    """Element whose image in every component has order exactly q^e."""
    p = ring.p
    qe = q**e
    if ring.alpha % qe == 0:
        return ring.monomial(ring.alpha // qe)
    s = multiplicative_order(p % qe, qe) if qe > 1 else 1
    if ring.r % s:
        raise ValueError(f"{qe} does not divide p^r - 1")
    one = ring.one()
    good_mod = np.array([1], dtype=np.int64)  # product of components already done
    bad_mod = fp.trim(ring.phi.copy())
    z_good = np.zeros(0, dtype=np.int64)
    for _ in range(max_rounds):
        x = rng.integers(0, p, size=ring.d, dtype=np.int64)
        y = _norm(ring, x, s, ring.r // s)
        z = _pow_frobenius(ring, y, (p**s - 1) // qe)
        test = ring.pow(z, qe // q) if e > 1 else z
        # components where z has order below q^e, or where x vanished
        bad = fp.mul(fp.gcd(fp.sub(test, one, p), bad_mod, p), fp.gcd(x, bad_mod, p), p)
        fresh = fp.divrem(bad_mod, bad, p)[0]
        if len(fresh) > 1:
            if len(good_mod) == 1:
                z_good = fp.divrem(fp.trim(z), fresh, p)[1]
            else:
                z_good = _crt_pair(ring, z_good, good_mod, fp.trim(z), fresh)
            good_mod = fp.mul(good_mod, fresh, p)
            bad_mod = bad
        if len(bad_mod) == 1:
            return ring.reduce(z_good)
    raise ArithmeticError(f"could not build a root of order {qe}")


def build_principal_root(
    ring: CycloRing, order: FactoredInt | int, method: str = "norm", seed: int = 1
) -> CycloElem:
    """A principal root of unity of the given order in ``ring``.

    ``method="norm"`` works on the whole ring (Frobenius norms, no
    factorization of phi); ``method="components"`` factors phi, picks a
    primitive root in each field component and recombines them.
    """
    if isinstance(order, int):
        order = factor_word(order)
    p = ring.p
    if order.value == 1:
        return CycloElem(ring, ring.one())
    if pow(p, ring.r, order.value) != 1:
        raise ValueError(f"order {order.value} does not divide p^r - 1")
    if method == "components":
        residues = [fp.primitive_root_of_order(f, order) for f in ring.factors]
        return crt_combine_ring(ring, residues)
    if method != "norm":
        raise ValueError(f"unknown method {method!r}")
    rng = np.random.default_rng(seed)
    acc = ring.one()
    for q, e in order.factors:
        acc = ring.mul(acc, _root_prime_power(ring, q, e, rng))
    return CycloElem(ring, acc)


def ring_summary(ring: CycloRing) -> dict:
    return {
        "p": ring.p,
        "alpha": ring.alpha,
        "degree": ring.d,
        "r": ring.r,
        "k": ring.k,
        "totient": euler_phi(ring.alpha),
    }
