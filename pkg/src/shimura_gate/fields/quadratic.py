"""Exact arithmetic in quadratic fields and principal generators of prime powers."""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from ..arith import floor_sqrt, is_prime, is_square, is_squarefree, kronecker
from ..errors import ExhaustedSearch, InvalidInput, NotPrincipal
from .forms import Form, quadratic_class_group

# cap on the number of y-values scanned when solving a norm equation
GENERATOR_SEARCH_CAP = 10**7


class SplittingType(str, Enum):
    SPLIT = "split"
    INERT = "inert"
    RAMIFIED = "ramified"


@dataclass(frozen=True)
class QuadraticField:
    m: int

    def __post_init__(self):
        if self.m in (0, 1) or not is_squarefree(self.m):
            raise InvalidInput(f"{self.m} is not a squarefree integer other than 0, 1")

    @property
    def D(self) -> int:
        return self.m if self.m % 4 == 1 else 4 * self.m

    @property
    def imaginary(self) -> bool:
        return self.m < 0

    @classmethod
    def from_discriminant(cls, D: int) -> QuadraticField:
        return cls(D if D % 4 == 1 else D // 4)

    def __str__(self) -> str:
        return f"Q(sqrt({self.m}))"

    def element(self, x, y=0) -> QuadElement:
        return QuadElement(self, Fraction(x), Fraction(y))

    def class_group(self):
        return quadratic_class_group(self.D)


@dataclass(frozen=True)
class QuadElement:
    """``x + y*sqrt(m)`` with rational ``x``, ``y``."""

    field: QuadraticField
    x: Fraction
    y: Fraction

    def _coerce(self, other) -> QuadElement:
        if isinstance(other, QuadElement):
            if other.field != self.field:
                raise InvalidInput("elements of different quadratic fields")
            return other
        return QuadElement(self.field, Fraction(other), Fraction(0))

    def __add__(self, other):
        o = self._coerce(other)
        return QuadElement(self.field, self.x + o.x, self.y + o.y)

    __radd__ = __add__

    def __neg__(self):
        return QuadElement(self.field, -self.x, -self.y)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        m = self.field.m
        return QuadElement(self.field, self.x * o.x + m * self.y * o.y, self.x * o.y + self.y * o.x)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise InvalidInput("negative powers are not supported")
        out = QuadElement(self.field, Fraction(1), Fraction(0))
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def conjugate(self) -> QuadElement:
        return QuadElement(self.field, self.x, -self.y)

    def norm(self) -> Fraction:
        return self.x * self.x - self.field.m * self.y * self.y

    def trace(self) -> Fraction:
        return 2 * self.x

    def is_integral(self) -> bool:
        t, n = self.trace(), self.norm()
        return t.denominator == 1 and n.denominator == 1

    def __float__(self):
        if self.field.m < 0:
            raise TypeError("imaginary element has no real value")
        return float(self.x) + float(self.y) * math.sqrt(self.field.m)

    def __str__(self) -> str:
        if self.y == 0:
            return str(self.x)
        sign = "-" if self.y < 0 else "+"
        coeff = abs(self.y)
        ys = "" if coeff == 1 else f"{coeff}*"
        xs = "" if self.x == 0 else f"{self.x}"
        if not xs:
            return f"{'-' if self.y < 0 else ''}{ys}sqrt({self.field.m})"
        return f"{xs}{sign}{ys}sqrt({self.field.m})"


def splitting_type(K: QuadraticField, ell: int) -> SplittingType:
    if not is_prime(ell):
        raise InvalidInput(f"{ell} is not prime")
    if K.D % ell == 0:
        return SplittingType.RAMIFIED
    return SplittingType.SPLIT if kronecker(K.D, ell) == 1 else SplittingType.INERT


def hensel_sqrt(m: int, q: int, r: int, e: int) -> int:
    """Lift ``r`` with ``r**2 = m mod q`` to a square root of ``m`` modulo ``q**e`` (q odd)."""
    mod = q
    for _ in range(1, e):
        mod *= q
        # Newton step r <- r - (r^2 - m) / (2r)
        r = (r - (r * r - m) * pow(2 * r, -1, mod)) % mod
    return r % mod


@dataclass(frozen=True)
class SplitPrimeIdeal:
    """The prime ``(q, sqrt(m) - r)`` above a split odd prime ``q``: sqrt(m) = r mod it."""

    field: QuadraticField
    q: int
    r: int

    def __post_init__(self):
        K, q, r = self.field, self.q, self.r
        if q == 2 or not is_prime(q):
            raise InvalidInput(f"{q} must be an odd prime")
        if K.D % q == 0 or kronecker(K.D, q) != 1:
            raise InvalidInput(f"{q} does not split in {K}")
        if (r * r - K.m) % q:
            raise InvalidInput(f"{r}^2 is not {K.m} modulo {q}")
        object.__setattr__(self, "r", r % q)

    def conjugate(self) -> SplitPrimeIdeal:
        return SplitPrimeIdeal(self.field, self.q, -self.r)

    def form(self) -> Form:
        """Form ``(q, b, c)`` of the Z-basis ``q, (-b + sqrt(D))/2`` of the ideal."""
        D, q, r = self.field.D, self.q, self.r
        if D % 2 == 0:
            b = (2 * r) % (2 * q)
        else:
            b = r if r % 2 else r + q
        return q, b, (b * b - D) // (4 * q)

    def contains_power(self, alpha: QuadElement, e: int) -> bool:
        """Whether ``alpha`` lies in the ``e``-th power of this prime."""
        if not alpha.is_integral():
            return False
        mod = self.q**e
        root = hensel_sqrt(self.field.m, self.q, self.r, e)
        x, y = alpha.x, alpha.y
        num = (x.numerator * pow(x.denominator, -1, mod) + y.numerator * pow(y.denominator, -1, mod) * root) % mod
        return num == 0


def fundamental_unit(K: QuadraticField) -> QuadElement:
    """Smallest unit greater than 1 of a real quadratic field, from the continued fraction of sqrt(D)."""
    if K.imaginary:
        raise InvalidInput("imaginary quadratic fields have finite unit groups")
    D = K.D

    def unit(x: int, y: int) -> QuadElement:
        # (x + y sqrt(D)) / 2 in terms of sqrt(m)
        if D == K.m:
            return K.element(Fraction(x, 2), Fraction(y, 2))
        return K.element(Fraction(x, 2), y)

    if D <= 16:
        y = 1
        while True:
            for sgn in (-4, 4):
                t = D * y * y + sgn
                if t > 0 and is_square(t):
                    return unit(math.isqrt(t), y)
            y += 1
    s = floor_sqrt(D)
    m_, d_, a_ = 0, 1, s
    p_prev, p = 1, s
    q_prev, q = 0, 1
    best = None
    while best is None or q < best[1]:
        N = p * p - D * q * q
        if N in (4, -4):
            cand = (p, q)
        elif N in (1, -1):
            cand = (2 * p, 2 * q)
        else:
            cand = None
        if cand and (best is None or cand[1] < best[1]):
            best = cand
        m_ = d_ * a_ - m_
        d_ = (D - m_ * m_) // d_
        a_ = (s + m_) // d_
        p_prev, p = p, a_ * p + p_prev
        q_prev, q = q, a_ * q + q_prev
    return unit(*best)


def _generator_candidates(K: QuadraticField, N: int, y_max: int, signs) -> list[QuadElement]:
    """All integral x + y sqrt(m) with norm in ``signs * N`` and 0 <= 2y <= 2*y_max (both signs of x)."""
    m = K.m
    half = K.D == m  # m = 1 mod 4 allows half-integral coordinates
    out = []
    v_max = 2 * y_max
    step = 1 if half else 2
    for v in range(0, v_max + 1, step):
        for sgn in signs:
            t = 4 * sgn * N + m * v * v
            if t < 0 or not is_square(t):
                continue
            u = math.isqrt(t)
            if half and (u - v) % 2:
                continue
            if not half and u % 2:
                continue
            for uu in {u, -u}:
                for vv in {v, -v}:
                    out.append(K.element(Fraction(uu, 2), Fraction(vv, 2)))
    return out


def _tie_key(a: QuadElement):
    return (abs(a.x), abs(a.y), a.x < 0, a.y < 0)


def principal_generator(P: SplitPrimeIdeal, h: int) -> QuadElement:
    """Generator of ``P**h``, minimal under the (|x|, |y|, sign) order.

    Imaginary fields are searched exhaustively over the finite norm ellipse.
    Real fields are searched over all generators whose ratio to their
    conjugate lies between eps**-2 and eps**2 (eps the fundamental unit),
    which contains a representative of every generator up to units and the
    minimal one.
    """
    if h < 1:
        raise InvalidInput("h must be positive")
    K = P.field
    N = P.q**h
    if K.imaginary:
        y_max = floor_sqrt(4 * N // -K.m) // 2 + 1
        signs = (1,)
    else:
        eps = float(fundamental_unit(K))
        bound = 2 * math.sqrt(N) * eps / math.sqrt(K.m)
        if bound > GENERATOR_SEARCH_CAP:
            raise ExhaustedSearch(f"generator search bound {bound:.3g} exceeds the cap for {K}")
        y_max = int(bound) + 1
        signs = (1, -1)
    found = [a for a in _generator_candidates(K, N, y_max, signs) if P.contains_power(a, h)]
    if not found:
        raise NotPrincipal(f"no generator of the {h}-th power of ({P.q}, sqrt({K.m}) - {P.r}); is h wrong?")
    return min(found, key=_tie_key)
