"""Published test vectors: a large admissible tuple and its order data for p = 3."""

# (q_i, prime factors of q_i - 1) for i = 0, 1, 2, 3, 4 and the last prime q_6035
TUPLE_PRIMES = {
    0: (206658761261792645783, (2, 883, 9041, 327251, 39551747)),
    1: (36658226833235899, (2, 3, 11, 17, 23, 29, 37, 53, 59, 67, 71, 89)),
    2: (36658244723486119, (2, 3, 17, 29, 47, 59, 67, 73, 83, 101, 109)),
    3: (36658319675739343, (2, 3, 7, 17, 29, 31, 41, 47, 53, 61, 89, 103)),
    4: (36658428883190467, (2, 3, 11, 31, 43, 61, 71, 73, 107, 109, 113)),
    6035: (37076481100386859, (2, 3, 13, 29, 31, 59, 83, 97, 101, 103, 107)),
}

# lambda(N) = 2 * 3 * 5 * ... * 113, as printed
LAMBDA_DIGITS = "31610054640417607788145206291543662493274686990"
LAMBDA_TOP_PRIME = 113

# for p = 3: ell -> index i of the first q_i whose order of 3 is divisible by ell
FIRST_ORDER_INDEX = {
    2: 1, 3: 1, 5: 5, 7: 9, 11: 1,
    13: 5, 17: 1, 19: 5, 23: 1, 29: 1,
    31: 3, 37: 1, 41: 3, 43: 4, 47: 2,
    53: 1, 59: 1, 61: 3, 67: 1, 71: 1,
    73: 2, 79: 6, 83: 2, 89: 1, 97: 5,
    101: 2, 103: 3, 107: 4, 109: 2, 113: 4,
}

# the prime set for n = 10^5 under the asymptotic formulas: 17 primes from 149 to 233
PRIMES_1E5 = (149, 151, 157, 163, 167, 173, 179, 181, 191, 193, 197, 199, 211, 223, 227, 229, 233)
# the accompanying text says "the first 14 primes"; the displayed set holds 17
PRIMES_1E5_STATED_COUNT = 14


def order_assertions(orders: dict[int, int]) -> list[tuple[str, bool]]:
    """Divisibility checks implied by FIRST_ORDER_INDEX for the known q_1..q_4.

    ``orders`` maps i to ord_{q_i} 3.  For each ell whose first index i is at
    most 4: ell | ord_{q_i} 3, and ell does not divide ord_{q_j} 3 for j < i.
    """
    out = []
    for ell, i in FIRST_ORDER_INDEX.items():
        if i > 4:
            continue
        ok = orders[i] % ell == 0 and all(orders[j] % ell for j in range(1, i))
        out.append((f"first q with {ell} | ord 3 is q_{i}", ok))
    return out
