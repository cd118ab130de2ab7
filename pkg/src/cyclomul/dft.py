"""Discrete Fourier transforms over a ring R = F_p[Y]/phi_alpha.

A sequence of length n over R is an array of shape (..., n, d); leading
axes are independent batch rows.  Prime fields are rings with alpha = 1.
"""

from __future__ import annotations

import math

import numpy as np

from . import layout
from .cyclo import CycloElem, CycloRing, get_ring, is_principal_root


class DftPlan:
    """Length-n transform data for a principal n-th root ``omega``."""

    def __init__(self, ring: CycloRing, n: int, omega, verify: bool = False):
        if n < 1:
            raise ValueError("length must be positive")
        if n % ring.p == 0:
            raise ValueError(f"length {n} is not invertible mod {ring.p}")
        self.ring = ring
        self.n = n
        self.omega = _as_rep(ring, omega)
        if verify and not is_principal_root(CycloElem(ring, self.omega), n):
            raise ValueError("omega is not a principal root of the requested order")
        self.omega_inv = ring.pow(self.omega, n - 1)
        self.n_inv = pow(n, -1, ring.p)
        self._powers = None
        self._chirp = None
        self._inverse = None

    @classmethod
    def over_prime_field(cls, p: int, n: int, omega: int, verify: bool = True) -> "DftPlan":
        return cls(get_ring(p, 1), n, np.array([omega % p]), verify=verify)

    @property
    def powers(self) -> np.ndarray:
        """omega^k for k < n, shape (n, d)."""
        if self._powers is None:
            self._powers = _power_table(self.ring, self.omega, self.n)
        return self._powers

    @property
    def chirp(self):
        """(xi^(i^2), xi^(-i^2)) tables for odd n, where xi = omega^((n+1)/2)."""
        if self.n % 2 == 0:
            raise ValueError("Bluestein chirp needs odd n")
        if self._chirp is None:
            xi = self.ring.pow(self.omega, (self.n + 1) // 2)
            xi_pows = _power_table(self.ring, xi, self.n)
            sq = (np.arange(self.n, dtype=np.int64) ** 2) % self.n
            self._chirp = (xi_pows[sq], xi_pows[(-sq) % self.n])
        return self._chirp

    def inverse(self) -> "DftPlan":
        if self._inverse is None:
            inv = DftPlan(self.ring, self.n, self.omega_inv)
            inv._inverse = self
            self._inverse = inv
        return self._inverse


def _as_rep(ring: CycloRing, x) -> np.ndarray:
    if isinstance(x, CycloElem):
        return x.rep
    arr = np.asarray(x, dtype=np.int64) % ring.p
    if arr.shape != (ring.d,):
        arr = ring.reduce(arr)
    return arr


def _power_table(ring: CycloRing, x, n: int) -> np.ndarray:
    out = np.empty((n, ring.d), dtype=np.int64)
    out[0] = ring.one()
    for k in range(1, n):
        out[k] = ring.mul(out[k - 1], x)
    return out


def _check_len(plan: DftPlan, a: np.ndarray):
    if a.ndim < 2 or a.shape[-2] != plan.n or a.shape[-1] != plan.ring.d:
        raise ValueError(f"expected (..., {plan.n}, {plan.ring.d}) array, got {a.shape}")


def dft_naive(plan: DftPlan, a: np.ndarray) -> np.ndarray:
    """â_j = sum_i omega^(ij) a_i, summed directly."""
    a = np.asarray(a, dtype=np.int64)
    _check_len(plan, a)
    ring, n = plan.ring, plan.n
    idx = np.arange(n, dtype=np.int64)
    out = np.empty_like(a)
    for j in range(n):
        terms = ring.mul_many(plan.powers[(idx * j) % n], a)
        out[..., j, :] = terms.sum(axis=-2) % ring.p
    return out


def dft_inverse(plan: DftPlan, ahat: np.ndarray, row_transform=None) -> np.ndarray:
    """Transform with omega^(-1), then divide by n."""
    row_transform = row_transform or dft_naive
    out = row_transform(plan.inverse(), ahat)
    return out * plan.n_inv % plan.ring.p


def cyclic_convolve_ring(ring: CycloRing, f: np.ndarray, g: np.ndarray) -> np.ndarray:
    """Schoolbook product in R[Z]/(Z^n - 1); f is (..., n, d), g is (n, d)."""
    n = f.shape[-2]
    out = np.zeros_like(f)
    for i in range(n):
        shifted = np.roll(g, i, axis=0)  # shifted[k] = g[k - i]
        out = (out + ring.mul_many(f[..., i : i + 1, :], shifted)) % ring.p
    return out


def dft_bluestein(plan: DftPlan, a: np.ndarray, convolver=None) -> np.ndarray:
    """DFT of odd length through one cyclic product against a fixed chirp.

    With xi^2 = omega we have omega^(ij) = xi^(i^2) xi^(j^2) xi^(-(i-j)^2), so
    â_j = xi^(j^2) (f g)_j for f_i = xi^(i^2) a_i and g_k = xi^(-k^2).
    ``convolver(f, g)`` must return the products f_s * g in R[Z]/(Z^n - 1).
    """
    a = np.asarray(a, dtype=np.int64)
    _check_len(plan, a)
    if plan.n % 2 == 0:
        raise ValueError("Bluestein's method here needs odd n")
    ring = plan.ring
    chirp, g = plan.chirp
    f = ring.mul_many(chirp, a)
    if convolver is None:
        h = cyclic_convolve_ring(ring, f, g)
    else:
        h = convolver(f, g)
    return ring.mul_many(chirp, h)


def dft_multidim(plans, a: np.ndarray, direction: str = "fwd", row_transform=None) -> np.ndarray:
    """Transform along every axis of an (..., n_d, ..., n_1, d) array.

    ``plans`` lists the per-axis plans in the order (n_1, ..., n_d).  For each
    axis the data is transposed so that the axis is contiguous, the rows are
    transformed as one batch, and the data is transposed back.
    """
    if direction not in ("fwd", "inv"):
        raise ValueError("direction must be 'fwd' or 'inv'")
    plans = list(plans)
    if not plans:
        raise ValueError("need at least one plan")
    ring = plans[0].ring
    a = np.asarray(a, dtype=np.int64)
    nd = len(plans)
    lead = a.ndim - nd - 1
    if lead < 0 or tuple(a.shape[lead:-1]) != tuple(pl.n for pl in reversed(plans)):
        raise ValueError(f"array shape {a.shape} does not match plan lengths")
    if a.shape[-1] != ring.d:
        raise ValueError("record size does not match the ring")
    row_transform = row_transform or dft_naive
    out = a
    for k, plan in enumerate(plans):
        use = plan if direction == "fwd" else plan.inverse()
        axis = lead + nd - 1 - k
        shape = out.shape
        before = math.prod(shape[:axis])
        after = math.prod(shape[axis + 1 : -1])
        blocks = out.reshape(before, plan.n, after, ring.d)
        if after > 1:
            rows = np.stack([layout.transpose(blk) for blk in blocks])
        else:
            rows = blocks.reshape(before, 1, plan.n, ring.d)
        rows = row_transform(use, rows.reshape(-1, plan.n, ring.d))
        rows = rows.reshape(before, after, plan.n, ring.d)
        if after > 1:
            blocks = np.stack([layout.transpose(blk) for blk in rows])
        else:
            blocks = rows.reshape(before, plan.n, 1, ring.d)
        out = blocks.reshape(shape)
    if direction == "inv":
        total = math.prod(pl.n for pl in plans)
        out = out * pow(total, -1, ring.p) % ring.p
    return out
