import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from shimura_gate.arith import (
    PrimeFactorization,
    factorize,
    floor_sqrt,
    is_prime,
    kronecker,
    next_prime,
    primes_in_range,
    sqrt_mod_prime,
    squarefree_part,
)
from shimura_gate.errors import InvalidInput


def naive_is_prime(n):
    return n >= 2 and all(n % d for d in range(2, math.isqrt(n) + 1))


def legendre_by_search(a, p):
    a %= p
    if a == 0:
        return 0
    return 1 if any(x * x % p == a for x in range(1, p)) else -1


def test_is_prime_examples():
    assert not is_prime(1)
    assert is_prime(29)
    assert not is_prime(16769025)


def test_is_prime_matches_trial_division():
    assert [n for n in range(3000) if is_prime(n)] == [n for n in range(3000) if naive_is_prime(n)]


def test_is_prime_large():
    assert is_prime(2**61 - 1)
    assert is_prime(2**127 - 1)
    assert not is_prime((2**61 - 1) * (2**31 - 1))
    # strong pseudoprime to many small bases
    assert not is_prime(3825123056546413051)
    assert not is_prime(318665857834031151167461)


def test_factorize_examples():
    assert factorize(140).factors == [(2, 2), (5, 1), (7, 1)]
    assert factorize(-4095).factors == [(3, 2), (5, 1), (7, 1), (13, 1)]
    assert factorize(79).factors == [(79, 1)]
    assert factorize(16769025).factors == [(3, 4), (5, 2), (7, 2), (13, 2)]


def test_factorize_zero_rejected():
    with pytest.raises(InvalidInput):
        factorize(0)


def test_factorize_semiprime_below_2_128():
    p, q = 1000000007, 998244353
    fac = factorize(p * q * q)
    assert fac.complete
    assert fac.factors == [(q, 2), (p, 1)]


def test_factorize_budget_leaves_cofactor():
    n = (2**89 - 1) * (2**107 - 1)
    fac = factorize(n, rho_budget=100, exhaust_below_2_128=False)
    assert not fac.complete
    assert fac.value() == n


def test_factorize_ecm_stage():
    n = 9541071588675257 * 2311339531970929
    assert not factorize(n, rho_budget=1000, exhaust_below_2_128=False).complete
    fac = factorize(n, rho_budget=1000, exhaust_below_2_128=False, ecm_curves=50)
    assert fac.complete and fac.value() == n


@settings(max_examples=200, deadline=None)
@given(st.integers(min_value=1, max_value=10**18))
def test_factorize_recomposes(n):
    fac = factorize(n)
    assert fac.complete
    assert fac.value() == n
    primes = fac.primes
    assert primes == sorted(set(primes))
    assert all(is_prime(p) for p in primes)


def test_kronecker_examples():
    assert kronecker(7, 29) == 1
    assert kronecker(-20, 7) == 1
    assert all(kronecker(a, 1) == 1 for a in range(-20, 20))


def test_kronecker_matches_legendre_by_search():
    for p in primes_in_range(3, 200):
        for a in range(-50, 50):
            assert kronecker(a, p) == legendre_by_search(a, p), (a, p)


def test_quadratic_reciprocity_sweep():
    for a in range(1, 1000, 2):
        for n in range(1, 1000, 2):
            if math.gcd(a, n) != 1:
                continue
            sign = -1 if ((a - 1) // 2 * (n - 1) // 2) % 2 else 1
            assert kronecker(a, n) * kronecker(n, a) == sign


def test_kronecker_at_two():
    # (D|2) for D = 1 mod 8 is 1, D = 5 mod 8 is -1, even D gives 0
    assert kronecker(-79, 2) == 1
    assert kronecker(-35, 2) == -1
    assert kronecker(-20, 2) == 0


def test_floor_sqrt_examples():
    assert floor_sqrt(8) == 2
    assert floor_sqrt(0) == 0
    assert floor_sqrt(316) == 17


def test_floor_sqrt_random_sweep():
    rng = random.Random(2024)
    for _ in range(2000):
        n = rng.randrange(0, 2**128)
        s = floor_sqrt(n)
        assert s * s <= n < (s + 1) ** 2


def test_primes_in_range_examples():
    assert primes_in_range(1, 10) == [2, 3, 5, 7]
    assert primes_in_range(29, 29) == [29]
    assert primes_in_range(114, 130) == [127]
    assert next_prime(113) == 127


def test_sqrt_mod_prime():
    for p in primes_in_range(3, 300):
        for a in range(p):
            if kronecker(a, p) == 1:
                r = sqrt_mod_prime(a, p)
                assert r * r % p == a


def test_squarefree_part():
    assert squarefree_part(-20) == -5
    assert squarefree_part(28) == 7
    assert squarefree_part(1) == 1


def test_prime_factorization_value():
    assert PrimeFactorization(12, [(2, 2), (3, 1)]).value() == 12
