import numpy as np
import pytest

from cyclomul import fppoly as fp
from cyclomul.fppoly import FpPoly, factor_equal_degree, poly_divrem, poly_mul, poly_xgcd
from cyclomul.ntheory import factor_word


def P(p, *c):
    return FpPoly.of(p, c)


def direct_convolution(a, b, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += int(x) * int(y)
    return [c % p for c in out]


def test_mul_examples():
    assert poly_mul(P(3, 1, 1), P(3, 1, 1)) == P(3, 1, 2, 1)
    a = P(5, 1, 2, 3)
    assert poly_mul(a, FpPoly.one(5)) == a


def test_mul_random():
    rng = np.random.default_rng(8)
    for p in (5, 65537, 2**31 - 1):
        for la, lb in [(51, 51), (10, 300), (400, 400)]:
            a, b = rng.integers(0, p, la), rng.integers(0, p, lb)
            want = direct_convolution(a, b, p)
            assert list(fp.mul(a, b, p)) == want
            assert list(fp.mul_kronecker(a, b, p)) == want


def test_divrem():
    q, r = poly_divrem(P(5, 4, 0, 0, 0, 0, 0, 1), P(5, 4, 1))
    assert q == P(5, 1, 1, 1, 1, 1, 1) and r.is_zero
    a = P(7, 3, 1, 4)
    q, r = poly_divrem(a, a)
    assert q == FpPoly.one(7) and r.is_zero
    rng = np.random.default_rng(9)
    for la, lb in [(20, 7), (500, 60), (200, 150), (5, 9)]:
        a, b = rng.integers(0, 7, la), rng.integers(1, 7, lb)
        q, r = fp.divrem(a, b, 7)
        assert len(fp.trim(r)) < len(b)
        assert np.array_equal(fp.trim(fp.add(fp.mul(q, b, 7), r, 7)), fp.trim(a))
    with pytest.raises(ZeroDivisionError):
        fp.divrem(np.array([1]), np.array([0]), 7)


def test_cyclotomic():
    assert fp.cyclotomic_mod_p(7, 3) == FpPoly.of(3, [1] * 7)
    assert fp.cyclotomic_mod_p(1, 5) == P(5, 4, 1)
    assert fp.poly_to_text(fp.cyclotomic_mod_p(12, 7)) == "7: 1 0 6 0 1"
    for alpha in range(1, 120):
        for p in (2, 3, 101):
            if alpha % p:
                assert np.array_equal(fp.cyclotomic_array(alpha, p), fp.cyclotomic_by_division(alpha, p))


def test_xgcd():
    g, s, t = poly_xgcd(P(5, 1, 1, 1), P(5, 4, 1))
    assert (g, s, t) == (FpPoly.one(5), P(5, 2), P(5, 1, 3))
    a = P(11, 3, 0, 2)
    g, s, t = poly_xgcd(a, FpPoly.of(11, []))
    assert g == P(11, 7, 0, 1) and s == P(11, 6) and t.is_zero
    rng = np.random.default_rng(10)
    for _ in range(20):
        a, b = FpPoly.of(11, rng.integers(0, 11, 30)), FpPoly.of(11, rng.integers(0, 11, 17))
        g, s, t = poly_xgcd(a, b)
        lhs = fp.add(fp.mul(s.array(), a.array(), 11), fp.mul(t.array(), b.array(), 11), 11)
        assert np.array_equal(fp.trim(lhs), g.array())


def test_equal_degree_factorization():
    assert factor_equal_degree(P(5, 1, 0, 1), 1) == [P(5, 2, 1), P(5, 3, 1)]
    assert factor_equal_degree(P(7, 1, 0, 0, 0, 1), 2) == [P(7, 1, 3, 1), P(7, 1, 4, 1)]
    f = P(3, 2, 1, 0, 0, 1)  # Y^4 + Y + 2 is irreducible over F_3
    assert factor_equal_degree(f, 4) == [f]
    phi = fp.cyclotomic_mod_p(11 * 13, 2)
    parts = factor_equal_degree(phi, 60)
    prod = FpPoly.one(2)
    for g in parts:
        prod = poly_mul(prod, g)
    assert prod == phi and all(g.degree == 60 for g in parts)


def test_primitive_root_of_order():
    f5 = P(5, 4, 1)
    assert fp.primitive_root_of_order(f5, factor_word(1)) == FpPoly.one(5)
    w = fp.primitive_root_of_order(f5, factor_word(4))
    assert w.coeffs[0] in (2, 3)
    field = P(3, 2, 1, 0, 0, 1)
    w = fp.primitive_root_of_order(field, factor_word(16)).array()
    mod = fp.PolyModulus(field.array(), 3)
    assert np.array_equal(fp.trim(mod.powmod(w, 16)), [1])
    assert not np.array_equal(fp.trim(mod.powmod(w, 8)), [1])


def test_text_format():
    f = P(13, 1, 0, 12)
    assert fp.poly_from_text(fp.poly_to_text(f)) == f
    with pytest.raises(ValueError):
        fp.poly_from_text("13 1 2")
