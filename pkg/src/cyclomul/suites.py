"""Verification suites behind the ``verify`` command.

Each check returns (name, passed, detail).  Checks never raise; an
exception inside a check counts as a failure with the message as detail.
"""

from __future__ import annotations

import math
import random

import numpy as np

from . import vectors
from .admissible import DESK, PAPER, build_divisor, find_admissible
from .bigint import CyclicInt, from_hex, to_hex
from .cyclo import get_ring
from .dft import DftPlan, dft_bluestein, dft_naive
from .intmul import build_theta, crandall_fagin_recombine, crandall_fagin_split, integer_multiply
from .layout import agarwal_cooley_fwd, agarwal_cooley_inv
from .ntheory import factor_word, is_prime, mult_order, primorial
from .oracle import oracle_cyclic_int_mul, oracle_cyclic_poly_mul
from .polymul import CyclicPolyBatch, polynomial_multiply
from .trace import Trace


def _run(name, fn):
    try:
        ok, detail = fn()
    except Exception as exc:  # reported, not raised
        return name, False, f"{type(exc).__name__}: {exc}"
    return name, bool(ok), detail


def example_checks() -> list[tuple[str, bool, str]]:
    out = []
    for i, (q, factors) in vectors.TUPLE_PRIMES.items():
        out.append(_run(f"q_{i} is prime", lambda q=q: (is_prime(q), str(q))))
        out.append(
            _run(
                f"q_{i} - 1 factors",
                lambda q=q, f=factors: (factor_word(q - 1).primes == list(f), str(factor_word(q - 1))),
            )
        )
    out.append(
        _run(
            "lambda = primorial(113)",
            lambda: (str(primorial(vectors.LAMBDA_TOP_PRIME)) == vectors.LAMBDA_DIGITS, vectors.LAMBDA_DIGITS),
        )
    )

    def orders():
        return {
            i: mult_order(3, q, factor_word(q - 1)) for i, (q, _) in vectors.TUPLE_PRIMES.items() if 1 <= i <= 4
        }

    ords = orders()
    for label, ok in vectors.order_assertions(ords):
        out.append((label, ok, ""))
    q1 = vectors.TUPLE_PRIMES[1][0]
    out.append(("ord_{q_1} 3 = q_1 - 1", ords[1] == q1 - 1, str(ords[1])))

    def primes_1e5():
        ps = PAPER.primes(10**5)
        ok = tuple(ps) == vectors.PRIMES_1E5 and len(ps) != vectors.PRIMES_1E5_STATED_COUNT
        return ok, f"{len(ps)} primes {ps[0]}..{ps[-1]} (text states {vectors.PRIMES_1E5_STATED_COUNT})"

    out.append(_run("P(10^5) prime set", primes_1e5))
    return out


def property_checks(seed: int = 0) -> list[tuple[str, bool, str]]:
    rng = np.random.default_rng(seed)
    rnd = random.Random(seed)
    out = []

    def poly_paths():
        prof = DESK.with_overrides(require_n_gt_p2=False)
        count = 0
        for p in (3, 5, 101, 65537):
            for force in ("kronecker", "admissible"):
                r = int(rng.integers(2, 400))
                U = rng.integers(0, p, (3, r))
                V = rng.integers(0, p, r)
                W = polynomial_multiply(CyclicPolyBatch(p, r, U, V), prof, force=force)
                for s in range(3):
                    if not np.array_equal(W[s], oracle_cyclic_poly_mul(U[s], V, p)):
                        return False, f"mismatch p={p} r={r} path={force}"
                    count += 1
        return True, f"{count} products"

    def int_pipeline():
        for n in (2**12, 2**14):
            us = [CyclicInt.of(rnd.getrandbits(n), n) for _ in range(2)]
            v = CyclicInt.of(rnd.getrandbits(n), n)
            tr = Trace()
            ws = integer_multiply(us, v, DESK, force_pipeline=True, trace=tr)
            if ws != [oracle_cyclic_int_mul(u, v) for u in us]:
                return False, f"mismatch at n={n}"
            if tr.records[0].info.get("path") != "pipeline":
                return False, f"pipeline did not run at n={n}"
        return True, "n = 2^12, 2^14"

    def bluestein():
        ring = get_ring(5, 77)
        div = build_divisor(find_admissible(640, 3, DESK), 3, DESK)
        for plan_ring, order, omega in ((ring, 21, None), (div.ring, div.tuple.order, div.omega.rep)):
            if omega is None:
                from .cyclo import build_principal_root

                omega = build_principal_root(plan_ring, factor_word(order), seed=seed).rep
            for n in [x for x in range(1, order + 1, 2) if order % x == 0][:4]:
                plan = DftPlan(plan_ring, n, plan_ring.pow(omega, order // n))
                a = rng.integers(0, plan_ring.p, (2, n, plan_ring.d))
                if not np.array_equal(dft_bluestein(plan, a), dft_naive(plan, a)):
                    return False, f"n={n} over {plan_ring}"
        return True, "lengths dividing 21 and 23"

    def agarwal_cooley():
        for n, m in ((5, 3), (7, 4), (9, 10)):
            f = rng.integers(0, 97, n * m)
            if not np.array_equal(agarwal_cooley_inv(agarwal_cooley_fwd(f, n, m), n, m), f):
                return False, f"({n}, {m})"
        return True, "3 shapes"

    def crandall_fagin():
        n, N = 1000, 101
        primes = [p for p in range(2**20, 2**20 + 400) if is_prime(p) and math.gcd(N, p - 1) == 1][:4]
        P = math.prod(primes)
        theta = build_theta(N, primes)
        u = CyclicInt.of(rnd.getrandbits(n), n)
        v = CyclicInt.of(rnd.getrandbits(n), n)
        a = crandall_fagin_split(u, N, P, theta)
        b = crandall_fagin_split(v, N, P, theta)
        if crandall_fagin_recombine(a, n, N, P, theta) != u:
            return False, "round trip"
        conv = [sum(a[i] * b[(k - i) % N] for i in range(N)) % P for k in range(N)]
        return crandall_fagin_recombine(conv, n, N, P, theta) == oracle_cyclic_int_mul(u, v), f"n={n} N={N}"

    def principal_root():
        results = []
        for n, p in ((640, 3), (3000, 43), (10**4, 5)):
            t = find_admissible(n, p, DESK)
            d = build_divisor(t, p, DESK)
            results.append(d.omega_is_principal() and all(pow(p, d.r, q) == 1 for q in t.q[1:]))
        return all(results), "3 divisors"

    def hex_round_trip():
        x = rnd.getrandbits(300)
        return from_hex(to_hex(x)) == x, "300 bits"

    for name, fn in (
        ("polynomial pipeline vs oracle", poly_paths),
        ("integer pipeline vs oracle", int_pipeline),
        ("Bluestein = naive DFT", bluestein),
        ("Agarwal-Cooley round trip", agarwal_cooley),
        ("Crandall-Fagin round trip and product", crandall_fagin),
        ("principal roots of built divisors", principal_root),
        ("hex round trip", hex_round_trip),
    ):
        out.append(_run(name, fn))
    return out


SUITES = {
    "paper-examples": lambda seed: example_checks(),
    "properties": property_checks,
    "all": lambda seed: example_checks() + property_checks(seed),
}
