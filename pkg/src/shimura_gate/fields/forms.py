"""Binary quadratic forms: reduction, composition and class groups.

Definite forms (D < 0) are reduced to the unique reduced representative.
Indefinite forms (D > 0) are reduced into a cycle of reduced forms; a class
is identified by its cycle. Wide (ideal) classes additionally identify a
form ``(a, b, c)`` with ``(-a, b, -c)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from ..arith import floor_sqrt, is_square, is_squarefree
from ..errors import UnsupportedDiscriminant

DEFAULT_DISCRIMINANT_BOUND = 10**8

Form = tuple[int, int, int]


def discriminant(f: Form) -> int:
    a, b, c = f
    return b * b - 4 * a * c


def is_fundamental_discriminant(D: int) -> bool:
    if D in (0, 1) or is_square(D):
        return False
    if D % 4 == 1:
        m = D
    elif D % 4 == 0 and (D // 4) % 4 in (2, 3):
        m = D // 4
    else:
        return False
    return is_squarefree(m)


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, x, y) with x*a + y*b = g = gcd(a, b) >= 0."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def reduce_definite(f: Form) -> Form:
    a, b, c = f
    if a <= 0:
        raise ValueError(f"form {f} is not positive definite")
    while True:
        if b > a or b <= -a:
            # translate b into (-a, a]
            k = (a - b) // (2 * a)
            c = a * k * k + b * k + c
            b = b + 2 * a * k
        if a > c:
            a, b, c = c, -b, a
            continue
        if a == c and b < 0:
            b = -b
        return a, b, c


def is_reduced_definite(f: Form) -> bool:
    a, b, c = f
    if not (abs(b) <= a <= c):
        return False
    if (abs(b) == a or a == c) and b < 0:
        return False
    return True


def _is_reduced_indefinite(f: Form, s: int) -> bool:
    # |sqrt(D) - 2|a|| < b < sqrt(D), with s = floor(sqrt(D)) and sqrt(D) irrational
    a, b, _ = f
    return 0 < b <= s and b >= s - 2 * abs(a) + 1 and 2 * abs(a) - b <= s


def _rho(f: Form, D: int, s: int) -> Form:
    """One step of the indefinite reduction operator."""
    _, b, c = f
    ac = abs(c)
    two_c = 2 * ac
    if ac > s:
        # -|c| < b' <= |c|
        lo = -ac + 1
    else:
        # sqrt(D) - 2|c| < b' < sqrt(D)
        lo = s - two_c + 1
    target = (-b) % two_c
    bp = lo + ((target - lo) % two_c)
    return c, bp, (bp * bp - D) // (4 * c)


def reduce_indefinite(f: Form) -> Form:
    D = discriminant(f)
    s = floor_sqrt(D)
    for _ in range(10_000 + 4 * D.bit_length()):
        if _is_reduced_indefinite(f, s):
            return f
        f = _rho(f, D, s)
    raise RuntimeError(f"indefinite reduction did not converge for {f}")


def cycle(f: Form) -> list[Form]:
    """The cycle of a reduced indefinite form under the reduction operator."""
    D = discriminant(f)
    s = floor_sqrt(D)
    out = [f]
    g = _rho(f, D, s)
    while g != f:
        out.append(g)
        g = _rho(g, D, s)
    return out


def compose(f1: Form, f2: Form) -> Form:
    """Dirichlet composition of two primitive forms of equal discriminant with a > 0.

    The result is not reduced.
    """
    a1, b1, c1 = f1
    a2, b2, c2 = f2
    if a1 <= 0 or a2 <= 0:
        raise ValueError("composition expects forms with positive leading coefficient")
    D = discriminant(f1)
    if discriminant(f2) != D:
        raise ValueError("forms of different discriminants")
    if a1 > a2:
        a1, b1, c1, a2, b2, c2 = a2, b2, c2, a1, b1, c1
    s = (b1 + b2) // 2
    n = b2 - s
    if a2 % a1 == 0:
        y1, d = 0, a1
    else:
        d, u, _ = _xgcd(a2, a1)
        y1 = u
    if s % d == 0:
        y2, x2, d1 = -1, 0, d
    else:
        d1, x2, y2 = _xgcd(s, d)
        y2 = -y2
    v1 = a1 // d1
    v2 = a2 // d1
    r = (y1 * y2 * n - x2 * c2) % v1
    b3 = b2 + 2 * v2 * r
    a3 = v1 * v2
    num = b3 * b3 - D
    return a3, b3, num // (4 * a3)


@dataclass
class ClassGroupQF:
    """Wide class group of the quadratic order of discriminant ``D`` via forms.

    ``representatives`` lists one canonical reduced form per class: for
    ``D < 0`` the reduced form itself, for ``D > 0`` the smallest form of the
    cycle (together with the cycle of its negative).
    """

    D: int
    representatives: list[Form]
    narrow_h: int
    _index: dict[Form, int] = field(default_factory=dict, repr=False)

    @property
    def h(self) -> int:
        return len(self.representatives)

    @property
    def identity(self) -> Form:
        return principal_form(self.D)

    def canonical(self, f: Form) -> Form:
        if self.D < 0:
            return reduce_definite(f)
        g = reduce_indefinite(f)
        neg = reduce_indefinite((-g[0], g[1], -g[2]))
        return min(cycle(g) + cycle(neg))

    def class_index(self, f: Form) -> int:
        return self._index[self.canonical(f)]

    def positive_rep(self, f: Form) -> Form:
        """A form in the class of ``f`` with positive leading coefficient."""
        if f[0] > 0:
            return f
        if self.D < 0:
            raise ValueError("negative definite form")
        for g in cycle(reduce_indefinite(f)):
            if g[0] > 0:
                return g
        raise RuntimeError("cycle without a positive leading coefficient")

    def multiply(self, f1: Form, f2: Form) -> Form:
        return self.canonical(compose(self.positive_rep(f1), self.positive_rep(f2)))

    def is_ambiguous_class(self, f: Form) -> bool:
        return self.multiply(f, f) == self.canonical(self.identity)

    def exponent_at_most_two(self) -> bool:
        return all(self.is_ambiguous_class(f) for f in self.representatives)

    def generated_subgroup(self, gens: list[Form]) -> set[Form]:
        """Closure of the canonical classes of ``gens`` under composition."""
        ident = self.canonical(self.identity)
        seen = {ident}
        frontier = [ident]
        gens = [self.canonical(g) for g in gens]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = self.multiply(x, g)
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return seen

    def order(self, f: Form) -> int:
        ident = self.canonical(self.identity)
        x = self.canonical(f)
        k = 1
        while x != ident:
            x = self.multiply(x, f)
            k += 1
        return k


def principal_form(D: int) -> Form:
    b = D % 2
    return 1, b, (b * b - D) // 4


def _reduced_definite_forms(D: int) -> list[Form]:
    out = []
    a_max = floor_sqrt(-D // 3)
    for a in range(1, a_max + 1):
        for b in range(-a + 1, a + 1):
            num = b * b - D
            if num % (4 * a):
                continue
            c = num // (4 * a)
            if c < a or (c == a and b < 0):
                continue
            if math.gcd(math.gcd(a, b), c) != 1:
                continue
            out.append((a, b, c))
    return out


def _reduced_indefinite_forms(D: int) -> list[Form]:
    s = floor_sqrt(D)
    out = []
    for b in range(1, s + 1):
        if (b - D) % 2:
            continue
        N = (D - b * b) // 4
        if N <= 0:
            continue
        for a0 in _divisors(N):
            for a in (a0, -a0):
                c = -N // a
                f = (a, b, c)
                if _is_reduced_indefinite(f, s) and math.gcd(math.gcd(a0, b), abs(c)) == 1:
                    out.append(f)
    return out


def _divisors(n: int) -> list[int]:
    small, large = [], []
    i = 1
    while i * i <= n:
        if n % i == 0:
            small.append(i)
            if i * i != n:
                large.append(n // i)
        i += 1
    return small + large[::-1]


def quadratic_class_group(D: int, bound: int = DEFAULT_DISCRIMINANT_BOUND) -> ClassGroupQF:
    """Class group of discriminant ``D`` by enumeration of reduced forms."""
    if abs(D) > bound:
        raise UnsupportedDiscriminant(f"|D| = {abs(D)} exceeds the configured bound {bound}")
    if D % 4 not in (0, 1) or is_square(D):
        raise UnsupportedDiscriminant(f"{D} is not a non-square discriminant")
    if D < 0:
        reps = sorted(_reduced_definite_forms(D))
        grp = ClassGroupQF(D=D, representatives=reps, narrow_h=len(reps))
    else:
        forms = set(_reduced_indefinite_forms(D))
        cycles: list[list[Form]] = []
        while forms:
            c = cycle(min(forms))
            forms -= set(c)
            cycles.append(c)
        narrow = len(cycles)
        grp = ClassGroupQF(D=D, representatives=[], narrow_h=narrow)
        reps = sorted({grp.canonical(c[0]) for c in cycles})
        grp.representatives = reps
    grp._index = {f: i for i, f in enumerate(grp.representatives)}
    return grp
