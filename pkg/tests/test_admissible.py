import math

import pytest

from cyclomul.admissible import (
    DESK,
    PAPER,
    AdmissibleNotFound,
    AdmissibleTuple,
    build_divisor,
    find_admissible,
    get_profile,
    order_table,
    select_sigma,
    tuple_violations,
    verify_tuple,
)
from cyclomul.ntheory import is_squarefree, primorial
from cyclomul.vectors import TUPLE_PRIMES


def test_profiles():
    assert get_profile("desk") is DESK
    with pytest.raises(ValueError):
        get_profile("fast")
    prof = DESK.with_text_overrides(["w_const=3", "require-n-gt-p2=false"])
    assert prof.w_const == 3 and not prof.require_n_gt_p2
    with pytest.raises(ValueError):
        DESK.with_text_overrides(["bogus=1"])
    assert PAPER.primes(256) == [37, 41, 43, 47, 53, 59, 61, 67]
    assert all(len(DESK.primes(n)) == len(PAPER.primes(n)) for n in (2**10, 2**14, 10**5))


def test_verify_tuple_rejections():
    assert not verify_tuple(AdmissibleTuple.of((29, 23, 23)), 3, DESK)
    # 37 - 1 = 4 * 9 is not squarefree
    bad = AdmissibleTuple.of((41, 37, 23))
    assert "q_1 - 1 is not squarefree" in " ".join(tuple_violations(bad, 3, DESK)["correctness"]) or not verify_tuple(
        bad, 3, DESK
    )
    assert not verify_tuple(AdmissibleTuple.of((29, 23)), 29, DESK)


def test_lambda_of_large_tuple():
    lam = primorial(113)
    for i in (1, 2, 3, 4):
        q = TUPLE_PRIMES[i][0]
        assert lam % (q - 1) == 0 and is_squarefree(q - 1)


def test_find_admissible_large():
    t = find_admissible(10**6, 3, DESK)
    assert 10**6 < t.N < 1.3 * 10**6
    assert verify_tuple(t, 3, DESK)
    assert math.prod(t.q) == t.N


@pytest.mark.parametrize("n,p", [(640, 3), (3000, 43), (10**4, 5), (2 * 10**4, 101), (7825, 67)])
def test_find_and_build(n, p):
    t = find_admissible(n, p, DESK)
    assert n < t.N <= 2 * n and p not in t.q and verify_tuple(t, p, DESK)
    d = build_divisor(t, p, DESK)
    assert d.alpha % t.q[0] == 0 and t.N % d.alpha == 0
    assert all(pow(p, d.r, q) == 1 for q in t.q[1:])
    assert d.omega_is_principal()


def test_avoid_and_q_min():
    t = find_admissible(640, 3, DESK)
    t2 = find_admissible(640, t.q[0], DESK)
    assert t.q[0] not in t2.q
    t3 = find_admissible(3000, 43, DESK, q_min=50)
    assert min(t3.q) > 50


def test_search_failure():
    with pytest.raises(AdmissibleNotFound):
        find_admissible(20, 3, DESK)


def test_single_prime_sigma():
    t = AdmissibleTuple.of((29, 23))
    # lambda = 22 but ord_23 3 = 11, so ell = 2 takes the ignore branch
    sigma, ignored = select_sigma(t, 3)
    assert sigma == (1,) and ignored == (2,)
    d = build_divisor(t, 3, DESK)
    assert d.alpha == 29 * 23 and d.m == 1 and d.ignored == (2,)
    assert d.omega_is_principal() and pow(3, d.r, 23) == 1


def test_order_table():
    t = AdmissibleTuple.of((29, 23, 31))
    for q, o in order_table(t, 3):
        assert (q - 1) % o == 0 and pow(3, o, q) == 1
    assert order_table(AdmissibleTuple.of((11, 7)), 2) == [(7, 3)]


def test_outside_root_divisor():
    # alpha = 77 leaves m = 3; the 3rd root of unity comes from the field components
    t = AdmissibleTuple.of((11, 7, 3))
    d = build_divisor(t, 5, DESK, check_bounds=False)
    assert d.sigma == (1, 0) and d.alpha == 77 and d.m == 3 and d.k == 2
    assert d.omega_is_principal()
