"""Explore admissible lengths: search one, build its coefficient ring, and run a multiply with real DFTs."""

import numpy as np

from cyclomul.admissible import DESK, AdmissibleTuple, build_divisor, find_admissible, order_table
from cyclomul.oracle import oracle_cyclic_poly_mul
from cyclomul.polymul import PolyContext, admissible_multiply


def describe(t, p, profile=DESK):
    d = build_divisor(t, p, profile, check_bounds=False)
    rep = d.report()
    print(f"  q = {rep['q']}  N = {rep['N']}  lambda = {rep['lambda']} (primes {rep['lambda_factors']})")
    print(f"  orders of {p}: {order_table(t, p)}")
    print(f"  sigma = {rep['sigma']}  alpha = {rep['alpha']}  m = N/alpha = {rep['m']}")
    print(f"  r = ord_alpha p = {rep['r']}, phi(alpha) = {rep['phi_alpha']}, {rep['k']} field components")
    print(f"  omega principal of order {t.order}: {d.omega_is_principal()}")
    return d


def main():
    print("desk search for N > 10^6, p = 3:")
    describe(find_admissible(10**6, 3, DESK), 3)
    # desk lengths put every q_i into alpha, so m = 1 and no transform runs; a hand-picked
    # tuple leaves 3 * 31 outside alpha and exercises the DFT branch
    t = AdmissibleTuple.of((11, 7, 3, 31))
    print()
    print("hand-picked tuple for p = 5:")
    describe(t, 5)
    rng = np.random.default_rng(0)
    for w in (1, 2):
        profile = DESK.with_overrides(w_const=w)
        for count in (1, 4):
            ctx = PolyContext(profile=profile)
            U, V = rng.integers(0, 5, (count, t.N)), rng.integers(0, 5, t.N)
            W = admissible_multiply(t, 5, U, V, profile, ctx)
            ok = all(np.array_equal(W[s], oracle_cyclic_poly_mul(U[s], V, 5)) for s in range(count))
            dims = ctx.trace.of_kind("admissible")[0].info.get("dims")
            print(f"  w = {w}, t = {count}: dims {dims}, {ctx.transforms} transforms (2t+1 = {2 * count + 1}), correct {ok}")


if __name__ == "__main__":
    main()
