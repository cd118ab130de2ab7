"""Multiplication in F_p[X]/(X^r - 1): Kronecker substitution for small r,
and for large r the admissible-length pipeline (zero-pad to an admissible
N, split off the cyclotomic factor, run DFTs over F_p[Y]/phi_alpha whose
inner products recurse back into this module).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from . import fppoly as fp
from .admissible import (
    DESK,
    AdmissibleNotFound,
    AdmissibleTuple,
    DivisorBoundError,
    ParamProfile,
    build_divisor,
    find_admissible,
)
from .bigint import CyclicInt, cyclic_mul
from .cyclo import CycloRing
from .dft import DftPlan, dft_bluestein, dft_multidim
from .layout import agarwal_cooley_fwd, agarwal_cooley_inv, multidim_cyclic_map, multidim_cyclic_unmap
from .ntheory import factor_word, lg
from .trace import Trace


@dataclass
class CyclicPolyBatch:
    """Inputs U_1..U_t and V of F_p[X]/(X^r - 1) as length-r vectors."""

    p: int
    r: int
    U: np.ndarray
    V: np.ndarray

    def __post_init__(self):
        fp.check_prime_size(self.p)
        self.U = np.atleast_2d(np.asarray(self.U, dtype=np.int64))
        self.V = np.asarray(self.V, dtype=np.int64).reshape(-1)
        if self.r < 1 or self.U.shape[1] != self.r or len(self.V) != self.r:
            raise ValueError("every vector must have length exactly r")
        if self.U.shape[0] < 1:
            raise ValueError("need at least one U")
        if self.U.min(initial=0) < 0 or self.U.max(initial=0) >= self.p:
            raise ValueError("U coefficients must be reduced mod p")
        if self.V.min(initial=0) < 0 or self.V.max(initial=0) >= self.p:
            raise ValueError("V coefficients must be reduced mod p")

    @property
    def t(self) -> int:
        return self.U.shape[0]


@dataclass
class PolyContext:
    """Knobs and instrumentation threaded through one multiplication."""

    profile: ParamProfile = DESK
    depth_budget: int = 2
    trace: Trace = field(default_factory=Trace)
    int_mul: object = None  # callback (us, v, nbits) -> list[int], or None
    force: str | None = None  # "kronecker" or "admissible" at the top call
    seed: int = 1
    transforms: int = 0


# --- Kronecker substitution -----------------------------------------------------------


def kronecker_bits(r: int, p: int) -> int:
    """b = 2 lg p + lg r; the cyclic product has coefficients < r p^2 <= 2^b."""
    return 2 * lg(p) + lg(r)


def kronecker_pack(a, b_bits: int, p: int | None = None) -> CyclicInt:
    """Evaluate a cyclic polynomial at 2^b, as a residue mod 2^(r b) - 1."""
    a = np.asarray(a, dtype=np.int64).reshape(-1)
    r = len(a)
    if p is not None and b_bits < kronecker_bits(r, p):
        raise ValueError(f"b = {b_bits} is below 2 lg p + lg r = {kronecker_bits(r, p)}")
    if len(a) and (a.min() < 0 or int(a.max()).bit_length() > b_bits):
        raise ValueError("coefficient does not fit in a slot")
    bits = ((a[:, None] >> np.arange(b_bits, dtype=np.int64)) & 1).astype(np.uint8)
    raw = np.packbits(bits.reshape(-1), bitorder="little").tobytes()
    return CyclicInt.of(int.from_bytes(raw, "little"), r * b_bits)


def kronecker_unpack(w: CyclicInt, r: int, b_bits: int, p: int) -> np.ndarray:
    """Split w into r slots of b bits and reduce each slot mod p."""
    if w.n != r * b_bits:
        raise ValueError("residue length does not match r * b")
    nbytes = (r * b_bits + 7) // 8
    raw = np.frombuffer(w.value.to_bytes(nbytes, "little"), dtype=np.uint8)
    bits = np.unpackbits(raw, bitorder="little")[: r * b_bits].reshape(r, b_bits)
    out = np.zeros(r, dtype=np.int64)
    for start in range(0, b_bits, 30):
        chunk = bits[:, start : start + 30].astype(np.int64)
        val = chunk @ (np.int64(1) << np.arange(chunk.shape[1], dtype=np.int64))
        out = (out + (val % p) * pow(2, start, p)) % p
    return out


def _kronecker_path(U, V, p, ctx: PolyContext, rec) -> np.ndarray:
    r = len(V)
    b = kronecker_bits(r, p)
    us = [kronecker_pack(u, b) for u in U]
    v = kronecker_pack(V, b)
    if ctx.int_mul is not None and ctx.profile.refined_range(r, p):
        rec.info["path"] = "kronecker-refined"
        ws = ctx.int_mul([u.value for u in us], v.value, r * b)
        ws = [CyclicInt.of(w, r * b) for w in ws]
    else:
        rec.info["path"] = "kronecker"
        ws = [cyclic_mul(u, v) for u in us]
    return np.stack([kronecker_unpack(w, r, b, p) for w in ws])


# --- dispatch -------------------------------------------------------------------------------


def polynomial_multiply(
    batch: CyclicPolyBatch,
    profile: ParamProfile = DESK,
    depth_budget: int = 2,
    force: str | None = None,
    trace: Trace | None = None,
    ctx: PolyContext | None = None,
) -> np.ndarray:
    """Products U_s V in F_p[X]/(X^r - 1), returned as a (t, r) array."""
    if ctx is None:
        ctx = PolyContext(profile=profile, depth_budget=depth_budget, force=force, trace=trace or Trace())
    return _poly_mul(batch.U, batch.V, batch.p, ctx, 0)


def refined_polynomial_multiply(
    batch: CyclicPolyBatch,
    profile: ParamProfile = DESK,
    int_mul=None,
    depth_budget: int = 2,
    force: str | None = None,
    trace: Trace | None = None,
) -> np.ndarray:
    """As ``polynomial_multiply``, but small products go through ``int_mul``.

    ``int_mul(us, v, nbits)`` multiplies residues mod 2^nbits - 1; by default
    it is the integer pipeline.
    """
    trace = trace if trace is not None else Trace()
    if int_mul is None:
        from .intmul import integer_multiply

        def int_mul(us, v, nbits):
            res = integer_multiply(
                [CyclicInt.of(u, nbits) for u in us], CyclicInt.of(v, nbits), profile, depth_budget=1, trace=trace
            )
            return [w.value for w in res]

    ctx = PolyContext(profile=profile, depth_budget=depth_budget, force=force, trace=trace, int_mul=int_mul)
    return _poly_mul(batch.U, batch.V, batch.p, ctx, 0)


def _poly_mul(U, V, p, ctx: PolyContext, depth: int) -> np.ndarray:
    U = np.atleast_2d(U)
    r = len(V)
    force = ctx.force if depth == 0 else None
    with ctx.trace.call("poly", depth, r=r, p=p, t=len(U)) as rec:
        if force == "kronecker":
            return _kronecker_path(U, V, p, ctx, rec)
        want_admissible = force == "admissible" or (
            depth < ctx.depth_budget and not ctx.profile.kronecker_switch(r, p)
        )
        if want_admissible:
            try:
                out = _admissible_path(U, V, p, ctx, depth, rec, forced=force == "admissible")
                rec.info["path"] = "admissible"
                return out
            except (AdmissibleNotFound, DivisorBoundError) as exc:
                if force == "admissible":
                    raise
                ctx.trace.note_fallback(rec, f"admissible path unavailable: {exc}")
        return _kronecker_path(U, V, p, ctx, rec)


def _admissible_path(U, V, p, ctx, depth, rec, forced) -> np.ndarray:
    r = len(V)
    t = _find_length(2 * r, p, ctx.profile, forced)
    N = t.N
    rec.info["N"] = N
    Up = np.zeros((len(U), N), dtype=np.int64)
    Up[:, :r] = U
    Vp = np.zeros(N, dtype=np.int64)
    Vp[:r] = V
    W = _admissible(t, p, Up, Vp, ctx, depth)
    # deg(U_s V) <= 2r - 2 < N, so nothing wrapped around
    if np.any(W[:, 2 * r - 1 :]):
        raise ArithmeticError("zero-padded product spilled past degree 2r - 2")
    out = W[:, :r].copy()
    out[:, : r - 1] += W[:, r : 2 * r - 1]
    return out % p


def _find_length(target, p, profile, forced) -> AdmissibleTuple:
    """An admissible length above target; a forced call widens the target."""
    n = target
    while True:
        try:
            return find_admissible(n, p, profile)
        except AdmissibleNotFound:
            if not forced or n > profile.max_admissible_target:
                raise
            n *= 2


# --- admissible multiply ---------------------------------------------------------------------


def group_prime_factors(m: int, w: int) -> list[int]:
    """m_1, ..., m_d: products of w consecutive primes of m, the last group
    taking the leftovers (w to 2w - 1 primes); one group if m has < 2w primes."""
    if m == 1:
        return []
    primes = [q for q, e in factor_word(m).factors for _ in range(e)]
    if len(primes) < 2 * w:
        return [m]
    groups = [math.prod(primes[i : i + w]) for i in range(0, len(primes) - len(primes) % w, w)]
    extra = primes[len(primes) - len(primes) % w :]
    if extra:
        groups[-1] *= math.prod(extra)
    return groups


def admissible_multiply(
    t: AdmissibleTuple,
    p: int,
    U,
    V,
    profile: ParamProfile = DESK,
    ctx: PolyContext | None = None,
) -> np.ndarray:
    """Products U_s V in F_p[X]/(X^N - 1) for an admissible tuple of length N."""
    ctx = ctx or PolyContext(profile=profile)
    U = np.atleast_2d(np.asarray(U, dtype=np.int64)) % p
    V = np.asarray(V, dtype=np.int64).reshape(-1) % p
    if U.shape[1] != t.N or len(V) != t.N:
        raise ValueError("inputs must have length N")
    return _admissible(t, p, U, V, ctx, 0)


def _admissible(t: AdmissibleTuple, p, U, V, ctx: PolyContext, depth) -> np.ndarray:
    div = build_divisor(t, p, ctx.profile, seed=ctx.seed)
    ring = div.ring
    alpha, m = div.alpha, div.m
    nseq = len(U) + 1
    with ctx.trace.call("admissible", depth, N=t.N, q=list(t.q), p=p, alpha=alpha, m=m, t=len(U)) as rec:
        # Step 1: X -> Y^c Z, then split rows modulo phi_alpha and psi_alpha
        stack = np.vstack([U, V[None, :]])  # (t+1, N)
        if m == 1:
            rows = stack[:, None, :]
        else:
            rows = np.moveaxis(agarwal_cooley_fwd(stack.T, alpha, m), 2, 0)  # (t+1, m, alpha)
        psi, chi2 = ring.psi_data()
        psi_mod = _psi_modulus(ring)
        dpsi = len(psi) - 1
        phi_part = np.empty((nseq, m, ring.d), dtype=np.int64)
        psi_part = np.zeros((nseq, m, 2 * dpsi), dtype=np.int64)
        for s in range(nseq):
            for j in range(m):
                phi_part[s, j] = ring.reduce(rows[s, j])
                psi_part[s, j, :dpsi] = psi_mod.reduce(rows[s, j])

        # psi branch: Y -> X, Z -> X^(2 deg psi), one cyclic product of length 2 m deg psi
        flat = psi_part.reshape(nseq, -1)
        wpsi = _poly_mul(flat[:-1], flat[-1], p, ctx, depth + 1).reshape(nseq - 1, m, 2 * dpsi)
        wpsi = np.stack([[psi_mod.reduce(row) for row in seq] for seq in wpsi])

        # phi branch: Steps 2 and 3
        wphi = _phi_branch(div, phi_part, ctx, depth, rec)

        # recombine: W = W_psi + psi * ((W_phi - W_psi) * chi2 mod phi)
        out_rows = np.zeros((nseq - 1, m, alpha), dtype=np.int64)
        for s in range(nseq - 1):
            for j in range(m):
                diff = fp.sub(wphi[s, j], wpsi[s, j], p)
                corr = fp.mul(ring.mul(ring.reduce(diff), chi2), psi, p)
                out_rows[s, j, : len(corr)] = corr
                out_rows[s, j, :dpsi] = (out_rows[s, j, :dpsi] + wpsi[s, j]) % p
        if m == 1:
            return out_rows[:, 0, :]
        return agarwal_cooley_inv(np.moveaxis(out_rows, 0, 2), alpha, m).T.copy()


def _psi_modulus(ring: CycloRing) -> fp.PolyModulus:
    mod = getattr(ring, "_psi_modulus", None)
    if mod is None:
        mod = fp.PolyModulus(ring.psi_data()[0], ring.p)
        ring._psi_modulus = mod
    return mod


def _phi_branch(div, phi_part, ctx: PolyContext, depth, rec) -> np.ndarray:
    """Products in R[Z]/(Z^m - 1) of the first rows by the last one."""
    ring = div.ring
    m = div.m
    nseq = len(phi_part)
    if m == 1:
        return ring.mul_many(phi_part[:-1, 0], phi_part[-1, 0])[:, None, :]
    dims = group_prime_factors(m, ctx.profile.w(div.tuple.N))
    rec.info["dims"] = dims
    plans = _plans(div, tuple(dims))

    def row_transform(plan, rows):
        return transform_rows(plan, rows, ctx, depth + 1)

    spectra = []
    for s in range(nseq):
        a = multidim_cyclic_map(phi_part[s], dims)
        spectra.append(dft_multidim(plans, a, "fwd", row_transform))
        ctx.transforms += 1
    vhat = spectra[-1]
    out = np.empty((nseq - 1, m, ring.d), dtype=np.int64)
    for s in range(nseq - 1):
        prod = ring.mul_many(spectra[s], vhat)
        back = dft_multidim(plans, prod, "inv", row_transform)
        ctx.transforms += 1
        out[s] = multidim_cyclic_unmap(back, dims)
    rec.info["transforms"] = rec.info.get("transforms", 0) + 2 * (nseq - 1) + 1
    return out


def _plans(div, dims):
    cache = div.__dict__.setdefault("_plans", {})
    if dims not in cache:
        ring = div.ring
        order = div.tuple.order
        cache[dims] = [DftPlan(ring, mi, ring.pow(div.omega.rep, order // mi)) for mi in dims]
    return cache[dims]


# --- Transform ---------------------------------------------------------------------------------


def transform_rows(plan: DftPlan, rows: np.ndarray, ctx: PolyContext, depth: int) -> np.ndarray:
    """DFTs of a batch of rows over R via Bluestein; the chirp product is
    lifted to F_p[Y,Z]/(Y^alpha - 1, Z^n - 1), flattened by X -> Y^c Z and
    multiplied by the polynomial pipeline."""
    ring = plan.ring
    n, alpha, p = plan.n, ring.alpha, ring.p
    if n % 2 == 0:
        raise ValueError("transform length must be odd")
    if math.gcd(n, alpha) != 1:
        raise ValueError("transform length must be coprime to alpha")

    def convolver(f, g):
        lead = f.shape[:-2]
        f2 = f.reshape(-1, n, ring.d)
        lifted = np.zeros((len(f2) + 1, n, alpha), dtype=np.int64)
        lifted[:-1, :, : ring.d] = f2
        lifted[-1, :, : ring.d] = g
        flat = np.stack([agarwal_cooley_inv(x, alpha, n) for x in lifted])
        prod = _poly_mul(flat[:-1], flat[-1], p, ctx, depth)
        out = np.empty_like(f2)
        for b, w in enumerate(prod):
            grid = agarwal_cooley_fwd(w, alpha, n)
            for j in range(n):
                out[b, j] = ring.reduce(grid[j])
        return out.reshape(lead + (n, ring.d))

    return dft_bluestein(plan, rows, convolver)


def transform(t, n, alpha, p, omega, sequences, profile: ParamProfile = DESK, ctx: PolyContext | None = None):
    """DFTs of length n (odd, coprime to alpha) over F_p[Y]/phi_alpha."""
    from .cyclo import get_ring

    ring = get_ring(p, alpha)
    ctx = ctx or PolyContext(profile=profile)
    seqs = np.asarray(sequences, dtype=np.int64).reshape(t, n, ring.d)
    plan = DftPlan(ring, n, omega)
    return transform_rows(plan, seqs, ctx, 0)
