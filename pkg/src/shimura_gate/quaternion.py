"""Indefinite quaternion algebras over Q, known only through their discriminant."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .arith import factorize, is_prime, kronecker, primes_in_range
from .errors import InvalidDiscriminant, InvalidInput
from .fields.abelian import AbelianFieldSpec
from .fields.quadratic import QuadraticField, SplittingType, splitting_type

DEFAULT_Q_BOUND = 10**4


@dataclass(frozen=True)
class QuaternionDiscriminant:
    """Discriminant ``d`` of an indefinite quaternion algebra B over Q."""

    primes: tuple[int, ...]

    @property
    def d(self) -> int:
        out = 1
        for p in self.primes:
            out *= p
        return out

    def __str__(self) -> str:
        return str(self.d)


def validate_discriminant(d: int) -> QuaternionDiscriminant:
    if not isinstance(d, int) or d <= 1:
        raise InvalidDiscriminant(f"discriminant must be an integer > 1, got {d!r}")
    fac = factorize(d)
    if any(e > 1 for _, e in fac.factors):
        raise InvalidDiscriminant(f"{d} is not squarefree")
    if len(fac.factors) % 2:
        raise InvalidDiscriminant(f"{d} has an odd number of prime factors")
    return QuaternionDiscriminant(tuple(fac.primes))


def splits_over_quadratic(B: QuaternionDiscriminant, m: int) -> bool:
    """B is split by Q(sqrt(m)) iff no prime of ramification of B splits in it."""
    K = QuadraticField(m)
    return all(splitting_type(K, ell) != SplittingType.SPLIT for ell in B.primes)


def splits_over_abelian(B: QuaternionDiscriminant, k: AbelianFieldSpec) -> bool:
    """B tensor k is a matrix algebra iff every local degree at a ramified prime of B is even."""
    return all(k.local_degree(ell) % 2 == 0 for ell in B.primes)


def least_nonsplitting_completely_split_prime(
    B: QuaternionDiscriminant, k: AbelianFieldSpec, bound: int = DEFAULT_Q_BOUND
) -> int | None:
    """Least prime q <= bound splitting completely in k with B not split by Q(sqrt(-q))."""
    if bound < 2:
        raise InvalidInput("bound must be at least 2")
    for q in primes_in_range(2, bound):
        if k.splits_completely(q) and not splits_over_quadratic(B, -q):
            return q
    return None


def eichler_genus(B: QuaternionDiscriminant) -> Fraction:
    """1 + mu/12 - e2/4 - e3/3 as an exact rational."""
    mu = e2 = e3 = 1
    for ell in B.primes:
        mu *= ell - 1
        e2 *= 1 - kronecker(-4, ell)
        e3 *= 1 - kronecker(-3, ell)
    return 1 + Fraction(mu, 12) - Fraction(e2, 4) - Fraction(e3, 3)


def shimura_genus(B: QuaternionDiscriminant) -> int:
    g = eichler_genus(B)
    if g.denominator != 1 or g < 0:
        raise ArithmeticError(f"genus formula gave {g} for d = {B.d}")
    return int(g)


def valid_discriminants_below(bound: int) -> list[QuaternionDiscriminant]:
    """All discriminants d < bound, in increasing order."""
    out = []
    for d in range(2, bound):
        try:
            out.append(validate_discriminant(d))
        except InvalidDiscriminant:
            continue
    return out


def is_ramified_prime(B: QuaternionDiscriminant, ell: int) -> bool:
    return is_prime(ell) and B.d % ell == 0
