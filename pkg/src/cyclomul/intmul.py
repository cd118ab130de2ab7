"""Multiplication in Z/(2^n - 1)Z by reduction to F_p[X]/(X^N - 1).

Each residue is cut into N chunks of about n/N bits and weighted by powers
of theta, an N-th root of 2 modulo P = prod(primes), so that the cyclic
product modulo 2^n - 1 becomes a cyclic convolution.  The convolution is
computed modulo each prime by the admissible pipeline and recombined by CRT.
"""

from __future__ import annotations

import math

import numpy as np

from .admissible import DESK, AdmissibleNotFound, DivisorBoundError, ParamProfile, find_admissible
from .bigint import CyclicInt, cyclic_mul
from .layout import transpose
from .ntheory import crt_combine, lg
from .polymul import PolyContext, _admissible
from .trace import Trace


class PipelineUnavailable(RuntimeError):
    pass


def select_primes(n: int, profile: ParamProfile = DESK) -> list[int]:
    return profile.primes(n)


def build_theta(N: int, primes) -> int:
    """theta mod P with theta^N = 2, from theta_p = 2^(N^(-1) mod (p - 1))."""
    residues = []
    for p in primes:
        if math.gcd(N, p - 1) != 1:
            raise ValueError(f"N = {N} is not invertible mod p - 1 = {p - 1}")
        a = pow(N, -1, p - 1) if p > 2 else 0
        residues.append(pow(2, a, p))
    return crt_combine(zip(residues, primes))[0]


def cf_exponents(n: int, N: int):
    """Chunk offsets e_i = ceil(n i / N) for i <= N and weights c_i = N e_i - n i."""
    e = [-(-n * i // N) for i in range(N + 1)]
    c = [N * e[i] - n * i for i in range(N)]
    return e, c


def check_cf_params(n: int, N: int, P: int, theta: int):
    if not 1 <= N <= n:
        raise ValueError(f"need 1 <= N <= n, got N = {N}, n = {n}")
    need = 2 * -(-n // N) + lg(N) + 1
    if math.log2(P) <= need:
        raise ValueError(f"lg P = {math.log2(P):.2f} does not exceed {need}")
    if pow(theta, N, P) != 2 % P:
        raise ValueError("theta^N is not 2 mod P")


def _split_bits(x: int, e, lo: int, hi: int, out: list):
    """Chunks x_i = bits [e_i, e_(i+1)) of x for lo <= i < hi, x holding bits from e_lo."""
    if hi - lo == 1:
        out[lo] = x
        return
    mid = (lo + hi) // 2
    shift = e[mid] - e[lo]
    _split_bits(x & ((1 << shift) - 1), e, lo, mid, out)
    _split_bits(x >> shift, e, mid, hi, out)


def _join_bits(vals, e, lo: int, hi: int) -> int:
    if hi - lo == 1:
        return int(vals[lo])
    mid = (lo + hi) // 2
    return _join_bits(vals, e, lo, mid) + (_join_bits(vals, e, mid, hi) << (e[mid] - e[lo]))


def _theta_table(theta: int, N: int, P: int) -> np.ndarray:
    tbl = np.empty(N, dtype=object)
    x = 1
    for i in range(N):
        tbl[i] = x
        x = x * theta % P
    return tbl


def crandall_fagin_split(u: CyclicInt, N: int, P: int, theta: int) -> list[int]:
    """Weighted chunks theta^(c_i) u_i mod P of a residue mod 2^n - 1."""
    n = u.n
    check_cf_params(n, N, P, theta)
    e, c = cf_exponents(n, N)
    chunks = [0] * N
    _split_bits(u.value, e, 0, N, chunks)
    weights = _theta_table(theta, N, P)[np.array(c)]
    return list(np.array(chunks, dtype=object) * weights % P)


def crandall_fagin_recombine(W, n: int, N: int, P: int, theta: int) -> CyclicInt:
    """Undo the weights and sum w_i 2^(e_i) modulo 2^n - 1."""
    check_cf_params(n, N, P, theta)
    e, c = cf_exponents(n, N)
    inv = _theta_table(pow(theta, -1, P), N, P)[np.array(c)]
    w = np.array([int(x) for x in W], dtype=object) * inv % P
    return CyclicInt.of(_join_bits(w, e, 0, N), n)


def crt_split(coeffs, primes) -> np.ndarray:
    """Residues of nonnegative integers modulo each prime, shape (len(primes), len(coeffs))."""
    coeffs = [int(x) for x in coeffs]
    width = max(1, (max(coeffs, default=0).bit_length() + 15) // 16) * 2
    raw = b"".join(x.to_bytes(width, "little") for x in coeffs)
    limbs = np.frombuffer(raw, dtype="<u2").reshape(len(coeffs), width // 2).astype(np.int64)
    out = np.empty((len(coeffs), len(primes)), dtype=np.int64)
    for k, p in enumerate(primes):
        acc = np.zeros(len(coeffs), dtype=np.int64)
        for j in range(limbs.shape[1] - 1, -1, -1):
            acc = (acc * 65536 + limbs[:, j]) % p
        out[:, k] = acc
    return transpose(out)


def crt_recombine(residues: np.ndarray, primes) -> list[int]:
    """Inverse of ``crt_split`` by mixed-radix (Garner) conversion."""
    res = transpose(np.asarray(residues, dtype=np.int64))  # (count, |P|)
    primes = list(primes)
    digits = [res[:, 0] % primes[0]]
    for k in range(1, len(primes)):
        p = primes[k]
        v = res[:, k] % p
        # subtract the partial value digits[0] + p_0 digits[1] + ... modulo p
        partial = np.zeros_like(v)
        for j in range(k - 1, -1, -1):
            partial = (partial * (primes[j] % p) + digits[j]) % p
        inv = pow(math.prod(primes[:k]) % p, -1, p)
        digits.append((v - partial) % p * inv % p)
    acc = digits[-1].astype(object)
    for j in range(len(primes) - 2, -1, -1):
        acc = acc * primes[j] + digits[j].astype(object)
    return [int(x) for x in acc]


def child_length(n: int, P: int) -> int:
    """n' = ceil(2n / (lg P - lg n - 3))."""
    denom = math.log2(P) - lg(n) - 3
    if denom <= 0:
        raise PipelineUnavailable(f"lg P - lg n - 3 = {denom:.2f} is not positive")
    return math.ceil(2 * n / denom)


def integer_multiply(
    us,
    v: CyclicInt,
    profile: ParamProfile = DESK,
    depth_budget: int = 1,
    force_pipeline: bool = False,
    trace: Trace | None = None,
    _depth: int = 0,
) -> list[CyclicInt]:
    """Products u_s v in Z/(2^n - 1)Z for a batch us sharing one modulus.

    Below the bit-size threshold, or once the recursion depth reaches
    ``depth_budget``, products are computed directly; whenever the pipeline
    cannot run the direct method is used and the reason is logged in ``trace``.
    """
    us = list(us)
    if not us:
        raise ValueError("need at least one u")
    n = v.n
    for u in us:
        if u.n != n:
            raise ValueError("all residues must share the same n")
    trace = trace if trace is not None else Trace()
    with trace.call("int", _depth, n=n, t=len(us)) as rec:
        if _depth >= depth_budget or (profile.int_basecase(n) and not force_pipeline):
            rec.info["path"] = "basecase"
            return [cyclic_mul(u, v) for u in us]
        try:
            out = _pipeline(us, v, profile, depth_budget, trace, _depth, rec)
            rec.info["path"] = "pipeline"
            return out
        except (PipelineUnavailable, AdmissibleNotFound, DivisorBoundError, ValueError) as exc:
            trace.note_fallback(rec, f"n = {n}: {exc}")
            rec.info["path"] = "basecase"
            return [cyclic_mul(u, v) for u in us]


def plan_pipeline(n: int, profile: ParamProfile = DESK):
    """Primes, child length, admissible tuple and theta for one level."""
    primes = select_primes(n, profile)
    P = math.prod(primes)
    n_child = child_length(n, P)
    # q_i > max(P) keeps N coprime to every p(p - 1); N > p^2 is needed anyway
    p_max = max(primes)
    t = find_admissible(max(n_child, p_max * p_max), p_max, profile, q_min=p_max)
    if t.N > n:
        raise PipelineUnavailable(f"admissible N = {t.N} exceeds n = {n}")
    theta = build_theta(t.N, primes)
    check_cf_params(n, t.N, P, theta)
    return primes, P, n_child, t, theta


def _pipeline(us, v, profile, depth_budget, trace, depth, rec):
    n = v.n
    primes, P, n_child, t, theta = plan_pipeline(n, profile)
    N = t.N
    rec.info.update(primes=primes, n_child=n_child, N=N, q=list(t.q))

    coeffs = []
    for x in us + [v]:
        coeffs.extend(crandall_fagin_split(x, N, P, theta))
    residues = crt_split(coeffs, primes).reshape(len(primes), len(us) + 1, N)

    def int_mul(xs, y, nbits):
        # contraction guard: only recurse on strictly shorter problems
        if nbits >= n / 2:
            trace.note_fallback(rec, f"child length {nbits} is not below n/2 = {n / 2}")
            return [(x * y) % ((1 << nbits) - 1) for x in xs]
        res = integer_multiply(
            [CyclicInt.of(x, nbits) for x in xs],
            CyclicInt.of(y, nbits),
            profile,
            depth_budget,
            trace=trace,
            _depth=depth + 1,
        )
        return [w.value for w in res]

    ctx = PolyContext(profile=profile, depth_budget=1, trace=trace, int_mul=int_mul)
    products = np.empty((len(primes), len(us), N), dtype=np.int64)
    for k, p in enumerate(primes):
        products[k] = _admissible(t, p, residues[k, :-1], residues[k, -1], ctx, 0)

    merged = crt_recombine(products.reshape(len(primes), -1), primes)
    return [crandall_fagin_recombine(merged[s * N : (s + 1) * N], n, N, P, theta) for s in range(len(us))]
