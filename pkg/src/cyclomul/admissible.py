"""Admissible lengths, admissible divisors and the parameter profiles.

An admissible tuple is a list of distinct primes (q_0, q_1, ..., q_e) with
every q_i - 1 (i >= 1) squarefree; its length is N = q_0 q_1 ... q_e.  A
p-admissible divisor alpha of N (q_0 | alpha) is one for which
F_p[Y]/phi_alpha holds a principal (q_1 ... q_e)-th root of unity; the
multiplication pipelines run their DFTs over that ring.

Every size threshold the algorithms branch on lives in ``ParamProfile``.
The ``paper`` preset uses the asymptotic formulas, which are vacuous at
sizes a test can reach; the ``desk`` preset replaces the bounds that only
matter for complexity with small constants and keeps every condition that
matters for correctness.
"""

from __future__ import annotations

import dataclasses
import functools
import math
from dataclasses import dataclass, field

import numpy as np

from .cyclo import CycloElem, CycloRing, build_principal_root, get_ring, is_principal_root
from .ntheory import (
    FactoredInt,
    euler_phi,
    factor_word,
    is_prime,
    is_squarefree,
    lg,
    mult_order,
    next_prime,
    sieve_primes,
)


class AdmissibleNotFound(RuntimeError):
    pass


class DivisorBoundError(ValueError):
    pass


def lglg(n: int) -> int:
    return lg(lg(n))


@dataclass(frozen=True)
class ParamProfile:
    """Thresholds used by the search and by the pipelines.

    ``formulas="paper"`` evaluates the asymptotic bounds; ``"desk"`` uses
    the constant fields below.  Fields that apply to both presets are noted.
    """

    name: str = "desk"
    formulas: str = "desk"
    q_lo_const: int = 17
    q_hi_const: int = 1 << 14
    lambda_max_const: int = 1 << 20
    lambda_retries: int = 2
    alpha_hi_const: int = 1 << 20
    totient_slack_const: float = 0.75
    w_const: int = 2
    interval_factor: float = 2.0
    prime_floor: int = 2
    # both presets
    require_n_gt_p2: bool = True
    kronecker_floor: int = 0
    refined_always: bool = True
    int_basecase_bits: int = 2048
    max_admissible_target: int = 1 << 22

    def __post_init__(self):
        if self.formulas not in ("paper", "desk"):
            raise ValueError("formulas must be 'paper' or 'desk'")
        if self.q_lo_const >= self.q_hi_const:
            raise ValueError("q_lo must be below q_hi")
        if min(self.lambda_max_const, self.alpha_hi_const, self.w_const, self.int_basecase_bits) < 1:
            raise ValueError("bounds must be positive")

    @property
    def paper(self) -> bool:
        return self.formulas == "paper"

    # -- tuple bounds, as functions of the length N --
    def q_lo(self, N: int) -> int:
        return lg(N) ** 3 if self.paper else self.q_lo_const

    def q_hi(self, N: int) -> int:
        return 2 ** (lglg(N) ** 2) if self.paper else self.q_hi_const

    def lambda_bound(self, N: int) -> int:
        if self.paper:
            return 2 ** (lglg(N) ** 2)
        return self.lambda_max_const << self.lambda_retries

    def alpha_lo(self, N: int) -> int:
        return lg(N)

    def alpha_hi(self, N: int) -> int:
        return 2 ** (lglg(N) ** 4) if self.paper else self.alpha_hi_const

    def totient_slack(self, N: int) -> float:
        return 1 - 1 / lg(N) if self.paper else self.totient_slack_const

    def w(self, N: int) -> int:
        return max(1, (2 * lglg(N) ** 5) // 5) if self.paper else self.w_const

    # -- search parameters, as functions of the target n --
    def search_q_lo(self, n: int) -> int:
        return lg(n) ** 4 if self.paper else self.q_lo_const

    def search_lambda_max(self, n: int) -> int:
        if self.paper:
            return math.ceil(2 ** (2 * lglg(n) ** 2 / 9))
        return self.lambda_max_const

    def search_retries(self) -> int:
        return 0 if self.paper else self.lambda_retries

    def e_threshold(self, n: int) -> float:
        return n / 2 ** (lglg(n) ** 2 / 2)

    def interval_hi(self, n: int) -> float:
        if self.paper:
            return n * (1 + 1 / lg(n))
        return self.interval_factor * n

    # -- pipeline predicates --
    def kronecker_switch(self, r: int, p: int) -> bool:
        return r <= p * p or r <= self.kronecker_floor

    def refined_range(self, r: int, p: int) -> bool:
        if self.refined_always and not self.paper:
            return True
        return lglg(p) ** 2 < lg(r) < math.sqrt(lg(p))

    def int_basecase(self, n: int) -> bool:
        return n <= self.int_basecase_bits

    def primes(self, n: int) -> list[int]:
        """The prime set P(n): lg n consecutive primes above a floor."""
        count = lg(n)
        floor = lg(n) ** 2 / 2 if self.paper else self.prime_floor
        out, c = [], math.floor(floor)
        while len(out) < count:
            c = next_prime(c)
            out.append(c)
        return out

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)

    def with_overrides(self, **kv) -> "ParamProfile":
        return dataclasses.replace(self, **kv)

    def with_text_overrides(self, pairs) -> "ParamProfile":
        """Apply ``key=value`` strings, parsing values by the field type."""
        kinds = {f.name: f.type for f in dataclasses.fields(self)}
        kv = {}
        for item in pairs:
            key, sep, raw = item.partition("=")
            key = key.strip().replace("-", "_")
            if not sep or key not in kinds:
                raise ValueError(f"unknown profile setting {item!r}")
            kind = kinds[key]
            if kind in ("bool", bool):
                if raw.lower() not in ("1", "0", "true", "false", "yes", "no"):
                    raise ValueError(f"{key} expects a boolean")
                kv[key] = raw.lower() in ("1", "true", "yes")
            elif kind in ("int", int):
                kv[key] = int(raw, 0)
            elif kind in ("float", float):
                kv[key] = float(raw)
            else:
                kv[key] = raw
        return self.with_overrides(**kv)


DESK = ParamProfile()
PAPER = ParamProfile(name="paper", formulas="paper")
PROFILES = {"desk": DESK, "paper": PAPER}


def get_profile(name: str) -> ParamProfile:
    try:
        return PROFILES[name]
    except KeyError:
        raise ValueError(f"unknown profile {name!r}; choose from {sorted(PROFILES)}") from None


# --- tuples ----------------------------------------------------------------------


@dataclass(frozen=True)
class AdmissibleTuple:
    q: tuple[int, ...]
    N: int
    lam: int
    lambda_factors: FactoredInt = field(compare=False, repr=False)

    @classmethod
    def of(cls, qs) -> "AdmissibleTuple":
        qs = tuple(int(x) for x in qs)
        if len(qs) < 2:
            raise ValueError("need q_0 and at least one more prime")
        lam = 1
        for q in qs[1:]:
            lam = lam * (q - 1) // math.gcd(lam, q - 1)
        return cls(qs, math.prod(qs), lam, factor_word(lam))

    @property
    def e(self) -> int:
        return len(self.q) - 1

    @property
    def order(self) -> int:
        """q_1 ... q_e, the order of the root of unity a divisor must hold."""
        return self.N // self.q[0]


def tuple_violations(t: AdmissibleTuple, p: int, profile: ParamProfile) -> dict:
    """Failed conditions, split into correctness and profile classes."""
    correct, prof = [], []
    qs = t.q
    if len(qs) < 2:
        correct.append("e >= 1")
    if len(set(qs)) != len(qs):
        correct.append("distinct primes")
    if not all(q >= 2 and is_prime(q) for q in qs):
        correct.append("all q_i prime")
    if math.prod(qs) != t.N:
        correct.append("N = product of q_i")
    lam = 1
    for q in qs[1:]:
        if q < 3 or not is_squarefree(q - 1):
            correct.append(f"q_i - 1 squarefree (q_i = {q})")
        lam = lam * (q - 1) // math.gcd(lam, max(q - 1, 1))
    if lam != t.lam:
        correct.append("stored lambda matches lcm")
    elif lam >= 1 and not is_squarefree(lam):
        correct.append("lambda squarefree")
    if p in qs:
        correct.append("p does not divide N")
    lo, hi = profile.q_lo(t.N), profile.q_hi(t.N)
    for q in qs:
        if not lo < q < hi:
            prof.append(f"{lo} < q_i < {hi} (q_i = {q})")
    if not t.lam < profile.lambda_bound(t.N):
        prof.append(f"lambda < {profile.lambda_bound(t.N)}")
    if profile.require_n_gt_p2 and not t.N > p * p:
        prof.append("N > p^2")
    return {"correctness": correct, "profile": prof}


def verify_tuple(t: AdmissibleTuple, p: int, profile: ParamProfile) -> bool:
    v = tuple_violations(t, p, profile)
    return not v["correctness"] and not v["profile"]


def _squarefree_mask(limit: int) -> np.ndarray:
    mask = np.ones(limit + 1, dtype=bool)
    mask[0] = False
    for ell in sieve_primes(0, math.isqrt(limit)):
        mask[ell * ell :: ell * ell] = False
    return mask


def find_admissible(
    n: int, p: int, profile: ParamProfile, q_min: int = 0, avoid=()
) -> AdmissibleTuple:
    """A p-admissible tuple whose length N lies in (n, interval_hi(n)].

    Counters c_lambda are bumped for every squarefree lambda divisible by
    q - 1, for candidate primes q in increasing order; the first lambda_0
    whose counter reaches lg n supplies q_1, q_2, ... (primes with
    q - 1 | lambda_0), e is chosen so that q_1...q_e just exceeds
    n / 2^((lglg n)^2 / 2), and q_0 is the least suitable prime above
    n / (q_1...q_e).  ``q_min`` and ``avoid`` exclude further primes.
    """
    if n < 2:
        raise ValueError("target must be at least 2")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    quota = lg(n)
    excluded = set(avoid) | {p}
    hi = profile.interval_hi(n)
    # every q_i exceeds the floor, so N is at least the product of the next two primes
    q_first = next_prime(max(profile.search_q_lo(n), q_min))
    if q_first * next_prime(q_first) > hi:
        raise AdmissibleNotFound(f"interval ({n}, {hi:.0f}] lies below the smallest possible length")
    for attempt in range(profile.search_retries() + 1):
        lam_max = profile.search_lambda_max(n) << attempt
        q_floor = max(profile.search_q_lo(n), q_min)
        q_top = min(lam_max + 1, profile.q_hi(n) - 1 if not profile.paper else lam_max + 1)
        if q_top <= q_floor:
            continue
        cands = [q for q in sieve_primes(q_floor, q_top) if q not in excluded]
        sf = _squarefree_mask(lam_max)
        counts = np.zeros(lam_max + 1, dtype=np.int32)
        used = []
        for q in cands:
            step = q - 1
            if step > lam_max:
                break
            used.append(q)
            view = counts[step::step]
            view += sf[step::step]
            hits = np.flatnonzero(view >= quota)
            for h in hits:
                lam0 = int(step * (h + 1))
                found = _tuple_from_lambda(lam0, used, n, p, profile, q_floor, excluded, hi)
                if found is not None:
                    return found
            view[hits] = np.iinfo(np.int32).min // 2
    raise AdmissibleNotFound(
        f"no admissible length in ({n}, {hi:.0f}] for p={p} under profile {profile.name!r}"
    )


def _tuple_from_lambda(lam0, used, n, p, profile, q_floor, excluded, hi):
    qs = [q for q in used if lam0 % (q - 1) == 0]
    prods, acc = [], 1
    for q in qs:
        acc *= q
        prods.append(acc)
    threshold = profile.e_threshold(n)
    e_first = next((i + 1 for i, pr in enumerate(prods) if pr > threshold), len(prods))
    order = [e_first] + list(range(e_first - 1, 0, -1)) + list(range(e_first + 1, len(prods) + 1))
    for e in order:
        prod = prods[e - 1]
        if prod >= n:
            continue
        members = set(qs[:e])
        q0 = next_prime(max(n // prod, q_floor))
        while q0 in excluded or q0 in members:
            q0 = next_prime(q0)
        t = AdmissibleTuple.of([q0] + qs[:e])
        if not n < t.N <= hi:
            continue
        if verify_tuple(t, p, profile):
            return t
    return None


# --- divisors -----------------------------------------------------------------------


def order_table(t: AdmissibleTuple, p: int) -> list[tuple[int, int]]:
    """(q_i, ord_{q_i} p) for i = 1..e."""
    if p in t.q:
        raise ValueError("p must not divide N")
    return [(q, mult_order(p, q, factor_word(q - 1))) for q in t.q[1:]]


@dataclass(frozen=True, eq=False)
class AdmissibleDivisor:
    tuple: AdmissibleTuple
    p: int
    sigma: tuple[int, ...]
    alpha: int
    ring: CycloRing = field(repr=False)
    omega: CycloElem = field(repr=False)
    r: int
    ignored: tuple[int, ...] = ()
    omega_monomial: int | None = None

    @property
    def m(self) -> int:
        return self.tuple.N // self.alpha

    @property
    def k(self) -> int:
        return self.ring.k

    def omega_is_principal(self) -> bool:
        return is_principal_root(self.omega, self.tuple.order, monomial=self.omega_monomial)

    def report(self) -> dict:
        return {
            "q": list(self.tuple.q),
            "N": self.tuple.N,
            "lambda": self.tuple.lam,
            "lambda_factors": [q for q, _ in self.tuple.lambda_factors.factors],
            "p": self.p,
            "sigma": list(self.sigma),
            "alpha": self.alpha,
            "m": self.m,
            "r": self.r,
            "k": self.k,
            "phi_alpha": self.ring.d,
            "ignored_ell": list(self.ignored),
        }


def select_sigma(t: AdmissibleTuple, p: int):
    """sigma_i = 1 for the first q_i whose order is divisible by each ell | lambda."""
    orders = [o for _, o in order_table(t, p)]
    sigma = [0] * t.e
    ignored = []
    for ell in t.lambda_factors.primes:
        i = next((i for i, o in enumerate(orders) if o % ell == 0), None)
        if i is None:
            ignored.append(ell)
        else:
            sigma[i] = 1
    return tuple(sigma), tuple(ignored)


def build_divisor(
    t: AdmissibleTuple,
    p: int,
    profile: ParamProfile,
    seed: int = 1,
    root_method: str = "norm",
    check_bounds: bool = True,
) -> AdmissibleDivisor:
    return _build_divisor(t, p, profile, seed, root_method, check_bounds)


@functools.lru_cache(maxsize=128)
def _build_divisor(t, p, profile, seed, root_method, check_bounds):
    if p in t.q:
        raise ValueError(f"p = {p} divides N")
    sigma, ignored = select_sigma(t, p)
    alpha = t.q[0] * math.prod(q for q, s in zip(t.q[1:], sigma) if s)
    if check_bounds:
        N = t.N
        if not profile.alpha_lo(N) < alpha < profile.alpha_hi(N):
            raise DivisorBoundError(
                f"alpha bound {profile.alpha_lo(N)} < alpha < {profile.alpha_hi(N)} fails for alpha={alpha}"
            )
        if not euler_phi(alpha) > profile.totient_slack(N) * alpha:
            raise DivisorBoundError(
                f"totient bound phi(alpha) > {profile.totient_slack(N):.4f} alpha fails for alpha={alpha}"
            )
    ring = get_ring(p, alpha)
    r = ring.r
    for q in t.q[1:]:
        if pow(p, r, q) != 1:
            raise ArithmeticError(f"q = {q} does not divide p^r - 1")
    inside = [q for q, s in zip(t.q[1:], sigma) if s]
    outside = [q for q, s in zip(t.q[1:], sigma) if not s]
    mono = sum(alpha // q for q in inside) % alpha
    omega = ring.monomial(mono)
    if outside:
        rest = build_principal_root(ring, factor_word(math.prod(outside)), method=root_method, seed=seed)
        omega = ring.mul(omega, rest.rep)
    return AdmissibleDivisor(
        tuple=t,
        p=p,
        sigma=sigma,
        alpha=alpha,
        ring=ring,
        omega=CycloElem(ring, omega),
        r=r,
        ignored=ignored,
        omega_monomial=None if outside else mono,
    )
