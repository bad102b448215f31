"""Genus-zero conics x^2 + y^2 + c = 0: local solvability and point search over abelian fields."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .arith import factorize, is_prime, kronecker, valuation
from .errors import InvalidInput, NoKnownModel
from .fields.abelian import AbelianFieldSpec
from .fields.numberfield import PowerBasisField, power_basis_field

REAL_PLACE = "real"
DEFAULT_HEIGHT = 10

_MODELS = {6: 3, 10: 2, 22: 11}


@dataclass(frozen=True)
class ConicModel:
    c: int
    source_d: int | None = None

    def __post_init__(self):
        if self.c <= 0:
            raise InvalidInput("conic coefficient must be positive")
        if self.source_d is not None and _MODELS.get(self.source_d) != self.c:
            raise InvalidInput(f"no model x^2+y^2+{self.c}=0 is attached to d = {self.source_d}")


@dataclass
class ConicResult:
    """Outcome of a search for a point on x^2 + y^2 + c = 0.

    ``kind`` is ``point``, ``local_obstruction`` or ``unknown``. A point
    carries both coordinates as strings in the display basis of the field;
    an obstruction names the place (a prime or ``real``); unknown carries
    the height bound that was exhausted.
    """

    kind: str
    point: tuple[str, str] | None = None
    place: str | None = None
    bound: int | None = None
    infinitely_many: bool = False
    elements: tuple | None = field(default=None, repr=False, compare=False)

    def to_json(self) -> dict:
        out: dict = {"kind": self.kind}
        if self.kind == "point":
            out["point"] = list(self.point)
            out["infinitely_many"] = self.infinitely_many
        elif self.kind == "local_obstruction":
            out["place"] = self.place
        else:
            out["bound"] = self.bound
        return out


def conic_for(d: int) -> ConicModel:
    if d not in _MODELS:
        raise NoKnownModel(f"no genus-zero conic model is known for d = {d}")
    return ConicModel(_MODELS[d], d)


def real_solvable(c: int) -> bool:
    return c <= 0


def real_point(c: int) -> tuple[float, float] | None:
    return ((-c) ** 0.5, 0.0) if c <= 0 else None


def hilbert_symbol(a: int, b: int, p: int) -> int:
    """Hilbert symbol (a, b)_p over Q_p for nonzero integers a, b."""
    if a == 0 or b == 0:
        raise InvalidInput("Hilbert symbol of zero")
    if not is_prime(p):
        raise InvalidInput(f"{p} is not prime")
    alpha, beta = valuation(a, p), valuation(b, p)
    u, v = a // p**alpha, b // p**beta
    if p != 2:
        sign = -1 if (alpha * beta * ((p - 1) // 2)) % 2 else 1
        return sign * kronecker(u, p) ** beta * kronecker(v, p) ** alpha

    def eps(x):
        return ((x - 1) // 2) % 2

    def omega(x):
        return ((x * x - 1) // 8) % 2

    e = eps(u) * eps(v) + alpha * omega(v) + beta * omega(u)
    return -1 if e % 2 else 1


def local_solvable_Qp(c: int, p: int) -> bool:
    """x^2 + y^2 + c = 0 has a Q_p-point iff (-1, -c)_p = 1."""
    if c == 0:
        return True
    return hilbert_symbol(-1, -c, p) == 1


def local_solvable_completion(c: int, k: AbelianFieldSpec, ell: int) -> bool:
    """Solvability over the completions of k above ``ell``.

    For b in Q_l and a completion K of degree n, (a, b)_K = (a, b)_l ** n,
    so even local degree kills any obstruction and odd degree keeps it. This
    holds whether or not the completion is ramified.
    """
    if c == 0:
        return True
    n = k.local_degree(ell)
    return hilbert_symbol(-1, -c, ell) ** n == 1


def obstruction_places(c: int, k: AbelianFieldSpec) -> list[str]:
    """Every place of k where the conic has no local point: real place first, then primes increasing."""
    out = []
    if c > 0 and k.is_real:
        out.append(REAL_PLACE)
    if c != 0:
        for ell, _ in factorize(2 * c).factors:
            if not local_solvable_completion(c, k, ell):
                out.append(str(ell))
    return out


def _signed_range(h: int) -> list[int]:
    """0, 1, -1, 2, -2, ..., h, -h."""
    return [0] + [s * i for i in range(1, h + 1) for s in (1, -1)]


def _shell(n: int, h: int):
    """Integer vectors of length n and max-norm exactly h; the first coordinate varies fastest."""
    for v in itertools.product(_signed_range(h), repeat=n):
        if max((abs(x) for x in v), default=0) == h:
            yield v[::-1]


def _normalize_sign(K: PowerBasisField, y):
    disp = K.to_display(y)
    first = next((c for c in disp if c != 0), 0)
    return K.scale(y, -1) if first < 0 else y


def search_point(c: int, k: AbelianFieldSpec, height: int = DEFAULT_HEIGHT, K: PowerBasisField | None = None) -> ConicResult:
    """Search x with display-basis coordinates (numerator, denominator) of height <= ``height``.

    For each x the equation forces y = sqrt(-c - x^2); that square root is
    looked for in k and the point is re-substituted exactly.
    """
    if height < 0:
        raise InvalidInput("height must be nonnegative")
    K = K or power_basis_field(k)
    n = K.n
    minus_c = K.element([-c])
    for num, den in _candidates(n, height):
        x = K.from_display([Fraction(v, den) for v in num])
        t = K.sub(minus_c, K.mul(x, x))
        y = K.sqrt(t)
        if y is None:
            continue
        y = _normalize_sign(K, y)
        total = K.add(K.add(K.mul(x, x), K.mul(y, y)), K.element([c]))
        if any(total):
            raise ArithmeticError("square root failed exact re-substitution")
        return ConicResult(
            kind="point",
            point=(K.format(x), K.format(y)),
            infinitely_many=True,
            elements=(x, y),
        )
    return ConicResult(kind="unknown", bound=height)


def _candidates(n: int, height: int):
    """(numerators, denominator) pairs with max(|numerators|, denominator) = 0, 1, ..., height."""
    yield (0,) * n, 1
    for h in range(1, height + 1):
        for den in range(1, h + 1):
            if den < h:
                yield from ((v, den) for v in _shell(n, h))
            else:
                yield from ((v[::-1], den) for v in itertools.product(_signed_range(h), repeat=n) if any(v))


def has_k_point(c: int, k: AbelianFieldSpec, height: int = DEFAULT_HEIGHT) -> ConicResult:
    """Local obstruction if any, else a point from the bounded search, else unknown."""
    places = obstruction_places(c, k)
    if places:
        return ConicResult(kind="local_obstruction", place=places[0])
    if k.degree > 4:
        return ConicResult(kind="unknown", bound=0)
    return search_point(c, k, height)


def verify_point(K: PowerBasisField, c: int, x, y) -> bool:
    total = K.add(K.add(K.mul(x, x), K.mul(y, y)), K.element([c]))
    return not any(total)
