"""Exact integer primitives: primality, factorization, Kronecker symbols."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from functools import lru_cache

import gmpy2
from sympy.ntheory import ecm as _sympy_ecm

from .errors import InvalidInput

# Miller-Rabin with these bases is exact below 3.3e24 (covers 2**64).
_DETERMINISTIC_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_DETERMINISTIC_LIMIT = 3317044064679887385961981
# each extra round has error <= 1/4, so 64 rounds give <= 2**-128
_EXTRA_ROUNDS = 64

DEFAULT_RHO_BUDGET = 10**6
DEFAULT_ECM_CURVES = 0
TRIAL_BOUND = 1 << 16


@lru_cache(maxsize=1)
def _small_primes() -> tuple[int, ...]:
    return tuple(primes_in_range(2, TRIAL_BOUND))


def _mr_round(n: int, d: int, s: int, a: int) -> bool:
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def is_prime(n: int) -> bool:
    """Primality test, deterministic below 2**64 (in fact below 3.3e24).

    Larger inputs get 64 extra Miller-Rabin rounds with bases drawn from a
    generator seeded by ``n`` itself, so the answer is reproducible and the
    error probability is at most 2**-128.
    """
    if n < 2:
        return False
    for p in _DETERMINISTIC_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    if not all(_mr_round(n, d, s, a) for a in _DETERMINISTIC_BASES):
        return False
    if n < _DETERMINISTIC_LIMIT:
        return True
    rng = random.Random(n)
    return all(_mr_round(n, d, s, rng.randrange(2, n - 1)) for _ in range(_EXTRA_ROUNDS))


def floor_sqrt(n: int) -> int:
    if n < 0:
        raise InvalidInput(f"floor_sqrt of negative number {n}")
    return math.isqrt(n)


def is_square(n: int) -> bool:
    return n >= 0 and math.isqrt(n) ** 2 == n


def primes_in_range(lo: int, hi: int) -> list[int]:
    """All primes ``lo <= p <= hi`` in increasing order (sieve of Eratosthenes)."""
    if lo > hi:
        raise InvalidInput(f"empty range {lo}..{hi}")
    lo = max(lo, 2)
    if hi < 2:
        return []
    sieve = bytearray([1]) * (hi + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, math.isqrt(hi) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, hi + 1, i)))
    return [i for i in range(lo, hi + 1) if sieve[i]]


def next_prime(n: int) -> int:
    """Smallest prime strictly greater than ``n``."""
    c = max(n + 1, 2)
    while not is_prime(c):
        c += 1
    return c


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a|n), extending Jacobi to even and negative n."""
    if n == 0:
        if abs(a) == 1:
            return 1
        if a == 0:
            raise InvalidInput("kronecker(0, 0) is undefined")
        return 0
    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -result
    v = 0
    while n % 2 == 0:
        n //= 2
        v += 1
    if v:
        if a % 2 == 0:
            return 0
        if v % 2 and a % 8 in (3, 5):
            result = -result
    # n is now odd and positive: plain Jacobi symbol
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def squarefree_part(n: int) -> int:
    """Signed squarefree kernel: ``n = squarefree_part(n) * t**2``."""
    if n == 0:
        raise InvalidInput("squarefree part of 0")
    fac = factorize(n)
    if not fac.complete:
        raise InvalidInput(f"could not factor {n} to take its squarefree part")
    out = -1 if n < 0 else 1
    for p, e in fac.factors:
        if e % 2:
            out *= p
    return out


def is_squarefree(n: int) -> bool:
    fac = factorize(n)
    return fac.complete and all(e == 1 for _, e in fac.factors)


def valuation(n: int, p: int) -> int:
    if n == 0:
        raise InvalidInput("valuation of 0")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


@dataclass
class PrimeFactorization:
    """Factorization of ``|n|``.

    ``unfactored`` holds composite cofactors the rho budget could not split;
    their prime divisors are unknown, so ``complete`` is false whenever it is
    non-empty.
    """

    n: int
    factors: list[tuple[int, int]]
    unfactored: list[int] = field(default_factory=list)

    @property
    def complete(self) -> bool:
        return not self.unfactored

    @property
    def primes(self) -> list[int]:
        return [p for p, _ in self.factors]

    def value(self) -> int:
        out = 1
        for p, e in self.factors:
            out *= p**e
        for c in self.unfactored:
            out *= c
        return out


def _brent_rho(n: int, budget: int, seed: int) -> tuple[int | None, int]:
    """One Brent-Pollard rho attempt. Returns (factor or None, iterations used)."""
    rng = random.Random(seed)
    y = rng.randrange(1, n)
    c = rng.randrange(1, n)
    m = 128
    g = r = q = 1
    used = 0
    x = ys = y
    while g == 1:
        x = y
        for _ in range(r):
            y = (y * y + c) % n
        used += r
        k = 0
        while k < r and g == 1:
            ys = y
            for _ in range(min(m, r - k)):
                y = (y * y + c) % n
                q = q * abs(x - y) % n
            g = math.gcd(q, n)
            k += m
        used += min(r, k)
        r *= 2
        if used > budget and g == 1:
            return None, used
    if g == n:
        # batched gcd overshot; retrace one step at a time
        while True:
            ys = (ys * ys + c) % n
            g = math.gcd(abs(x - ys), n)
            if g > 1:
                break
    if g == n:
        return None, used
    return g, used


def _ecm(n: int, curves: int) -> list[int] | None:
    """Prime divisors of n by elliptic-curve factoring with a fixed seed, or None."""
    if curves <= 0:
        return None
    try:
        found = _sympy_ecm(n, max_curve=curves, seed=n % (1 << 32))
    except ValueError:
        return None
    primes = sorted(int(p) for p in found)
    if not primes or not all(is_prime(p) and n % p == 0 for p in primes):
        return None
    return primes


def _split(n: int, budget: int, ecm_curves: int = 0) -> tuple[list[int], list[int]]:
    """Split a cofactor free of small primes into (primes with multiplicity, unfactored composites)."""
    if n == 1:
        return [], []
    if is_prime(n):
        return [n], []
    if is_square(n):
        r = math.isqrt(n)
        p, u = _split(r, budget, ecm_curves)
        return p + p, u + u
    remaining = budget
    attempt = 0
    while remaining > 0:
        d, used = _brent_rho(gmpy2.mpz(n), remaining, seed=n + attempt)
        d = None if d is None else int(d)
        remaining -= used
        attempt += 1
        if d is not None:
            p1, u1 = _split(d, budget, ecm_curves)
            p2, u2 = _split(n // d, budget, ecm_curves)
            return p1 + p2, u1 + u2
    primes = _ecm(n, ecm_curves)
    if primes is None:
        return [], [n]
    out = []
    for p in primes:
        while n % p == 0:
            n //= p
            out.append(p)
    if n != 1:
        rest_p, rest_u = _split(n, budget, ecm_curves)
        return out + rest_p, rest_u
    return out, []


def factorize(
    n: int,
    rho_budget: int = DEFAULT_RHO_BUDGET,
    exhaust_below_2_128: bool = True,
    ecm_curves: int = DEFAULT_ECM_CURVES,
) -> PrimeFactorization:
    """Factor ``|n|`` by trial division below 2**16, Brent's rho, then optionally ECM.

    ``rho_budget`` bounds the rho iterations spent on each composite
    cofactor and ``ecm_curves`` the elliptic curves tried after rho gives
    up; anything left over is reported in ``unfactored``. Cofactors below
    2**128 ignore the rho budget unless ``exhaust_below_2_128`` is off.
    """
    if n == 0:
        raise InvalidInput("cannot factor 0")
    m = abs(n)
    counts: dict[int, int] = {}
    for p in _small_primes():
        if p * p > m:
            break
        while m % p == 0:
            m //= p
            counts[p] = counts.get(p, 0) + 1
    unfactored: list[int] = []
    if m > 1:
        if m < TRIAL_BOUND * TRIAL_BOUND:
            counts[m] = counts.get(m, 0) + 1
        else:
            budget = rho_budget
            if exhaust_below_2_128 and m.bit_length() <= 128:
                budget = 1 << 62
            primes, unfactored = _split(m, budget, ecm_curves)
            for p in primes:
                counts[p] = counts.get(p, 0) + 1
    return PrimeFactorization(n=abs(n), factors=sorted(counts.items()), unfactored=sorted(unfactored))


def sqrt_mod_prime(a: int, p: int) -> int:
    """A square root of ``a`` modulo the prime ``p`` (Tonelli-Shanks)."""
    a %= p
    if a == 0 or p == 2:
        return a
    if pow(a, (p - 1) // 2, p) != 1:
        raise InvalidInput(f"{a} is not a square modulo {p}")
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c, t, r = i, b * b % p, t * b * b % p, r * b % p
    return r


def multiplicative_order(a: int, n: int) -> int:
    if math.gcd(a, n) != 1:
        raise InvalidInput(f"{a} is not a unit modulo {n}")
    k, x = 1, a % n
    while x != 1 % n:
        x = x * a % n
        k += 1
    return k


def euler_phi(n: int) -> int:
    out = n
    for p, _ in factorize(n).factors:
        out = out // p * (p - 1)
    return out
