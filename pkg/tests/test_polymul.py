import numpy as np
import pytest

from cyclomul.admissible import DESK, AdmissibleTuple, build_divisor, find_admissible
from cyclomul.bigint import CyclicInt
from cyclomul.cyclo import get_ring
from cyclomul.dft import DftPlan, dft_naive
from cyclomul.oracle import oracle_cyclic_poly_mul
from cyclomul.polymul import (
    CyclicPolyBatch,
    PolyContext,
    admissible_multiply,
    group_prime_factors,
    kronecker_pack,
    kronecker_unpack,
    polynomial_multiply,
    refined_polynomial_multiply,
    transform,
)
from cyclomul.trace import Trace

WIDE = DESK.with_overrides(require_n_gt_p2=False)


def check(U, V, W, p):
    for s in range(len(U)):
        assert np.array_equal(W[s], oracle_cyclic_poly_mul(U[s], V, p))


def test_batch_validation():
    with pytest.raises(ValueError):
        CyclicPolyBatch(3, 4, [[0, 1, 2]], [0, 1, 2, 0])
    with pytest.raises(ValueError):
        CyclicPolyBatch(3, 2, [[0, 3]], [0, 1])


def test_kronecker_pack():
    assert kronecker_pack([2, 1], 5, p=3) == CyclicInt(10, 34)
    assert kronecker_pack([0, 0, 0], 8).value == 0
    with pytest.raises(ValueError):
        kronecker_pack([2, 1], 4, p=3)
    rng = np.random.default_rng(20)
    for p, r in [(3, 10), (65537, 40), (101, 257)]:
        b = 2 * (p - 1).bit_length() + (r - 1).bit_length() + 1
        a, c = rng.integers(0, p, r), rng.integers(0, p, r)
        x, y = kronecker_pack(a, b, p), kronecker_pack(c, b, p)
        assert np.array_equal(kronecker_unpack(x, r, b, p), a)
        prod = CyclicInt.of(x.value * y.value, r * b)
        assert np.array_equal(kronecker_unpack(prod, r, b, p), oracle_cyclic_poly_mul(a, c, p))
    assert not kronecker_unpack(CyclicInt(20, 0), 4, 5, 3).any()


@pytest.mark.parametrize("force", ["kronecker", "admissible"])
def test_small_examples(force):
    W = polynomial_multiply(CyclicPolyBatch(3, 2, [[1, 1]], [1, 1]), WIDE, force=force)
    assert W.tolist() == [[2, 2]]
    U = np.random.default_rng(21).integers(0, 7, (3, 50))
    one = np.zeros(50, dtype=np.int64)
    one[0] = 1
    assert np.array_equal(polynomial_multiply(CyclicPolyBatch(7, 50, U, one), WIDE, force=force), U)


@pytest.mark.parametrize("p", [3, 5, 101, 65537])
@pytest.mark.parametrize("force", ["kronecker", "admissible", None])
def test_random_batches(p, force):
    rng = np.random.default_rng(p)
    for r in (2, 9, 64, 500, 1500):
        U, V = rng.integers(0, p, (3, r)), rng.integers(0, p, r)
        check(U, V, polynomial_multiply(CyclicPolyBatch(p, r, U, V), WIDE, force=force), p)


def test_admissible_path_is_traced():
    tr = Trace()
    rng = np.random.default_rng(22)
    U, V = rng.integers(0, 3, (1, 1000)), rng.integers(0, 3, 1000)
    polynomial_multiply(CyclicPolyBatch(3, 1000, U, V), DESK, trace=tr)
    top = tr.records[0]
    assert top.info["path"] == "admissible" and top.info["N"] > 2000
    assert tr.of_kind("admissible")


def test_admissible_multiply_desk_tuple():
    t = find_admissible(640, 3, DESK)
    rng = np.random.default_rng(23)
    U, V = rng.integers(0, 3, (2, t.N)), rng.integers(0, 3, t.N)
    check(U, V, admissible_multiply(t, 3, U, V, DESK), 3)
    one = np.zeros(t.N, dtype=np.int64)
    one[0] = 1
    assert np.array_equal(admissible_multiply(t, 3, U[:1], one, DESK), U[:1])


@pytest.mark.parametrize("w", [1, 2])
def test_admissible_multiply_with_transforms(w):
    # alpha = 77 and m = 3 * 31: the phi branch runs real DFTs over F_5[Y]/phi_77
    t = AdmissibleTuple.of((11, 7, 3, 31))
    prof = DESK.with_overrides(w_const=w)
    rng = np.random.default_rng(24)
    for count in (1, 3):
        U, V = rng.integers(0, 5, (count, t.N)), rng.integers(0, 5, t.N)
        ctx = PolyContext(profile=prof)
        check(U, V, admissible_multiply(t, 5, U, V, prof, ctx), 5)
        assert ctx.transforms == 2 * count + 1
    dims = [r.info.get("dims") for r in ctx.trace.of_kind("admissible") if r.depth == 0]
    assert dims == [[3, 31]] if w == 1 else dims == [[93]]


def test_psi_branch_alone():
    t = AdmissibleTuple.of((11, 7, 3))
    d = build_divisor(t, 5, DESK, check_bounds=False)
    ring = d.ring
    psi, _ = ring.psi_data()
    rng = np.random.default_rng(25)
    U, V = rng.integers(0, 5, (1, t.N)), rng.integers(0, 5, t.N)
    W = admissible_multiply(t, 5, U, V, DESK)
    # W mod (psi(Y), Z^3 - 1) equals the bivariate schoolbook product there
    from cyclomul import fppoly as fp
    from cyclomul.layout import agarwal_cooley_fwd

    def rows(x):
        return [fp.pad(fp.divrem(row, psi, 5)[1], len(psi) - 1) for row in agarwal_cooley_fwd(x, 77, 3)]

    a, b, w = rows(U[0]), rows(V), rows(W[0])
    for k in range(3):
        acc = np.zeros(len(psi) - 1, dtype=np.int64)
        for i in range(3):
            prod = fp.divrem(fp.mul(a[i], b[(k - i) % 3], 5), psi, 5)[1]
            acc = fp.pad(fp.add(acc, prod, 5), len(acc))
        assert np.array_equal(acc, w[k])


def test_group_prime_factors():
    assert group_prime_factors(1, 2) == []
    assert group_prime_factors(3 * 5 * 7, 2) == [105]
    assert group_prime_factors(3 * 5 * 7 * 11, 2) == [15, 77]
    assert group_prime_factors(3 * 5 * 7 * 11 * 13, 2) == [15, 77 * 13]


def test_transform():
    t = AdmissibleTuple.of((11, 7, 3))
    d = build_divisor(t, 5, DESK, check_bounds=False)
    ring = d.ring
    omega = ring.pow(d.omega.rep, 21 // 3)
    rng = np.random.default_rng(26)
    seqs = rng.integers(0, 5, (4, 3, ring.d))
    got = transform(4, 3, 77, 5, omega, seqs)
    plan = DftPlan(ring, 3, omega)
    assert np.array_equal(got, dft_naive(plan, seqs))
    for s in range(4):
        assert np.array_equal(transform(1, 3, 77, 5, omega, seqs[s : s + 1])[0], got[s])
    delta = np.zeros((1, 3, ring.d), dtype=np.int64)
    delta[0, 0, 0] = 1
    assert np.array_equal(transform(1, 3, 77, 5, omega, delta)[0], np.tile(ring.one(), (3, 1)))
    assert get_ring(5, 77) is ring


@pytest.mark.parametrize("force", ["kronecker", "admissible", None])
def test_refined_matches_unrefined(force):
    rng = np.random.default_rng(27)
    for p, r in [(3, 700), (101, 300), (65537, 200)]:
        U, V = rng.integers(0, p, (3, r)), rng.integers(0, p, r)
        batch = CyclicPolyBatch(p, r, U, V)
        tr = Trace()
        a = refined_polynomial_multiply(batch, WIDE, force=force, trace=tr)
        b = polynomial_multiply(batch, WIDE, force=force)
        assert np.array_equal(a, b)
        check(U, V, a, p)
        if force == "kronecker":
            assert tr.records[0].info["path"] == "kronecker-refined" and tr.of_kind("int")


def test_refined_identity():
    one = np.zeros(40, dtype=np.int64)
    one[0] = 1
    U = np.random.default_rng(28).integers(0, 5, (1, 40))
    assert np.array_equal(refined_polynomial_multiply(CyclicPolyBatch(5, 40, U, one), force="kronecker"), U)
