"""Walk one product mod 2^n - 1 through the integer pipeline and print its recursion trace."""

import random
import sys

from cyclomul.admissible import DESK
from cyclomul.bigint import CyclicInt
from cyclomul.intmul import integer_multiply, plan_pipeline
from cyclomul.oracle import oracle_cyclic_int_mul
from cyclomul.trace import Trace


def main(n=2**16, depth=2, seed=1):
    rnd = random.Random(seed)
    u, v = CyclicInt.of(rnd.getrandbits(n), n), CyclicInt.of(rnd.getrandbits(n), n)

    primes, P, n_child, t, theta = plan_pipeline(n, DESK)
    print(f"n = {n} bits")
    print(f"CRT primes: {primes[0]}..{primes[-1]} ({len(primes)} primes, lg P = {P.bit_length()})")
    print(f"transform length N = {t.N} = {' * '.join(map(str, t.q))}, child integers of ~{n_child} bits")

    trace = Trace()
    (w,) = integer_multiply([u], v, DESK, depth_budget=depth, force_pipeline=True, trace=trace)
    print(f"matches oracle: {w == oracle_cyclic_int_mul(u, v)}")
    print()
    print("integer calls, indented by depth, with the admissible multiplies each one issued:")
    for rec in trace.of_kind("int"):
        pad = "  " * rec.depth
        print(f"{pad}int n={rec.info['n']} path={rec.info.get('path')}  {rec.seconds:.3f}s")
        mine = [a for a in trace.of_kind("admissible") if trace.nearest(a, "int") is rec]
        if mine:
            Ns = sorted({a.info["N"] for a in mine})
            ps = [a.info["p"] for a in mine]
            print(f"{pad}  {len(mine)} admissible multiplies, N in {Ns}, p = {ps[0]}..{ps[-1]}")
    print(f"{len(trace.records)} records in total, {len(trace.fallbacks)} fallbacks")
    for reason in sorted(set(trace.fallbacks))[:5]:
        print(f"  {reason}")


if __name__ == "__main__":
    main(*(int(x) for x in sys.argv[1:]))
