"""Number fields of small degree as Q[x]/(f) with explicit Galois automorphisms.

Elements are tuples of Fractions in the power basis 1, t, ..., t^(n-1).
Norms are resultants against the defining polynomial, so they are exact.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

import mpmath
import numpy as np

from ..arith import is_prime
from ..errors import DegreeUnsupported, InvalidInput, MalformedInput
from .abelian import AbelianFieldSpec
from .quadratic import QuadElement

Poly = list  # low-to-high coefficients


def _trim(p: Poly) -> Poly:
    p = list(p)
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


def poly_mul(a: Poly, b: Poly) -> Poly:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def poly_divmod(a: Poly, b: Poly) -> tuple[Poly, Poly]:
    a = [Fraction(x) for x in a]
    b = _trim([Fraction(x) for x in b])
    if b == [0]:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    lead = b[-1]
    for i in range(len(a) - len(b), -1, -1):
        c = a[i + len(b) - 1] / lead
        q[i] = c
        if c:
            for j, y in enumerate(b):
                a[i + j] -= c * y
    return _trim(q), _trim(a[: len(b) - 1] or [Fraction(0)])


def poly_eval(p: Poly, x):
    out = 0
    for c in reversed(p):
        out = out * x + c
    return out


def resultant(f: Poly, g: Poly) -> Fraction:
    """Res(f, g) as the determinant of the Sylvester matrix (exact, Fractions)."""
    f, g = _trim(f), _trim(g)
    m, n = len(f) - 1, len(g) - 1
    if g == [0] or f == [0]:
        return Fraction(0)
    if n == 0:
        return Fraction(g[0]) ** m
    if m == 0:
        return Fraction(f[0]) ** n
    size = m + n
    rows = []
    fh, gh = f[::-1], g[::-1]
    for i in range(n):
        rows.append([0] * i + fh + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + gh + [0] * (size - n - 1 - i))
    return _det([[Fraction(x) for x in r] for r in rows])


def _det(M) -> Fraction:
    M = [row[:] for row in M]
    n = len(M)
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if M[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            det = -det
        det *= M[c][c]
        inv = 1 / M[c][c]
        for r in range(c + 1, n):
            if M[r][c]:
                fac = M[r][c] * inv
                for k in range(c, n):
                    M[r][k] -= fac * M[c][k]
    return det


def _solve(M, v):
    """Solve M x = v over Q by Gauss-Jordan elimination."""
    n = len(M)
    A = [[Fraction(x) for x in row] + [Fraction(b)] for row, b in zip(M, v)]
    for c in range(n):
        piv = next(r for r in range(c, n) if A[r][c] != 0)
        A[c], A[piv] = A[piv], A[c]
        inv = 1 / A[c][c]
        A[c] = [x * inv for x in A[c]]
        for r in range(n):
            if r != c and A[r][c]:
                fac = A[r][c]
                A[r] = [x - fac * y for x, y in zip(A[r], A[c])]
    return [A[r][n] for r in range(n)]


@dataclass(eq=False)
class PowerBasisField:
    """``Q[t]/(f)`` for a monic irreducible integer ``f`` with its automorphism group.

    ``automorphisms[i]`` is the image of ``t`` under the i-th automorphism
    written in the power basis; index 0 is the identity. ``display_names``
    and ``display_matrix`` describe a friendlier basis (rows = display basis
    elements in power-basis coordinates).
    """

    poly: list[int]
    automorphisms: list[tuple[Fraction, ...]]
    display_names: list[str] = field(default_factory=list)
    display_matrix: list[list[Fraction]] = field(default_factory=list)
    label: str = ""

    def __post_init__(self):
        if self.poly[-1] != 1:
            raise InvalidInput("defining polynomial must be monic")
        if not self.display_names:
            self.display_names = ["1"] + [f"t^{i}" if i > 1 else "t" for i in range(1, self.n)]
            self.display_matrix = [[Fraction(int(i == j)) for j in range(self.n)] for i in range(self.n)]
        for g in self.automorphisms:
            if any(self.reduce(poly_eval(self.poly, _AsElement(self, g))._v)):
                raise InvalidInput(f"{g} is not a root of the defining polynomial")

    @property
    def n(self) -> int:
        return len(self.poly) - 1

    # -- element arithmetic -------------------------------------------------

    def element(self, coords) -> tuple[Fraction, ...]:
        coords = [Fraction(c) for c in coords]
        if len(coords) > self.n:
            coords = list(self.reduce(coords))
        return tuple(coords + [Fraction(0)] * (self.n - len(coords)))

    def reduce(self, p) -> tuple[Fraction, ...]:
        p = list(p)
        n = self.n
        f = self.poly
        for i in range(len(p) - 1, n - 1, -1):
            c = p[i]
            if c:
                for j in range(n):
                    p[i - n + j] -= c * f[j]
            p[i] = 0
        out = p[:n] + [0] * max(0, n - len(p))
        return tuple(Fraction(x) for x in out)

    def one(self):
        return self.element([1])

    def add(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def sub(self, a, b):
        return tuple(x - y for x, y in zip(a, b))

    def scale(self, a, c):
        return tuple(x * c for x in a)

    def mul(self, a, b):
        return self.reduce(poly_mul(list(a), list(b)))

    def pow(self, a, e: int):
        out = self.one()
        base = a
        while e:
            if e & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            e >>= 1
        return out

    def norm(self, a) -> Fraction:
        return resultant(self.poly, list(a))

    def apply(self, i: int, a):
        """Image of ``a`` under the i-th automorphism."""
        g = self.automorphisms[i]
        return poly_eval(list(a), _AsElement(self, g))._v if self.n > 1 else tuple(a)

    def conjugates(self, a) -> list[tuple[Fraction, ...]]:
        return [self.apply(i, a) for i in range(len(self.automorphisms))]

    @cached_property
    def power_traces(self) -> list[Fraction]:
        """Tr(t^i) for i < 2n via Newton's identities."""
        n = self.n
        # elementary symmetric functions s_k of the roots: f = sum (-1)^k s_k x^(n-k)
        s = [Fraction(1)] + [Fraction((-1) ** k * self.poly[n - k]) for k in range(1, n + 1)]
        p = [Fraction(n)]
        for k in range(1, 2 * n):
            total = Fraction(0)
            for i in range(1, min(k, n) + 1):
                sign = (-1) ** (i - 1)
                if i < k:
                    total += sign * s[i] * p[k - i]
                else:
                    total += sign * k * s[i]
            p.append(total)
        return p

    def trace(self, a) -> Fraction:
        return sum((c * self.power_traces[i] for i, c in enumerate(a)), Fraction(0))

    def char_poly(self, a) -> list[Fraction]:
        """Characteristic polynomial (low-to-high, monic) from traces of powers."""
        n = self.n
        p = [None] + [self.trace(self.pow(a, k)) for k in range(1, n + 1)]
        e = [Fraction(1)]
        for k in range(1, n + 1):
            total = sum(((-1) ** (i - 1) * e[k - i] * p[i] for i in range(1, k + 1)), Fraction(0))
            e.append(total / k)
        return [(-1) ** (n - j) * e[n - j] for j in range(n)] + [Fraction(1)]

    def is_integral(self, a) -> bool:
        return all(c.denominator == 1 for c in self.char_poly(a))

    def is_rational(self, a) -> bool:
        return all(c == 0 for c in a[1:])

    # -- display -----------------------------------------------------------

    @cached_property
    def _display_transpose(self):
        return [list(col) for col in zip(*self.display_matrix)]

    def from_display(self, coords):
        coords = [Fraction(c) for c in coords]
        out = [Fraction(0)] * self.n
        for c, row in zip(coords, self.display_matrix):
            for j, x in enumerate(row):
                out[j] += c * x
        return tuple(out)

    def to_display(self, a):
        return tuple(_solve(self._display_transpose, list(a)))

    def format(self, a) -> str:
        parts = []
        for c, name in zip(self.to_display(a), self.display_names):
            if c == 0:
                continue
            if name == "1":
                parts.append(str(c))
            elif c == 1:
                parts.append(name)
            elif c == -1:
                parts.append(f"-{name}")
            else:
                parts.append(f"{c}*{name}")
        return "+".join(parts).replace("+-", "-") or "0"

    # -- numerics ------------------------------------------------------------

    def roots(self, dps: int = 50):
        """Complex roots of the defining polynomial at ``dps`` digits."""
        with mpmath.workdps(dps):
            if self.n == 1:
                return [mpmath.mpc(-self.poly[0])]
            return mpmath.polyroots(list(reversed(self.poly)), maxsteps=200, extraprec=4 * dps)

    def embed(self, a, dps: int = 50):
        with mpmath.workdps(dps):
            return [poly_eval([mpmath.mpf(c.numerator) / c.denominator for c in a], r) for r in self.roots(dps)]

    @cached_property
    def _vandermonde_inv(self):
        rts = np.array([complex(r) for r in self.roots(30)])
        V = np.vander(rts, self.n, increasing=True)
        return rts, np.linalg.inv(V)

    def sqrt(self, t):
        """A square root of ``t`` in the field, or None. Candidates are numeric, checks exact."""
        if all(c == 0 for c in t):
            return self.element([0])
        rts, Vinv = self._vandermonde_inv
        vals = np.array([complex(sum(float(c) * r**i for i, c in enumerate(t))) for r in rts])
        sq = np.sqrt(vals)
        for signs in itertools.product((1, -1), repeat=self.n - 1):
            y = sq * np.array((1,) + signs)
            coords = Vinv @ y
            if np.max(np.abs(coords.imag)) > 1e-6:
                continue
            cand = self.element(Fraction(float(c)).limit_denominator(10**6) for c in coords.real)
            if self.mul(cand, cand) == tuple(t):
                return cand
        return None

    def has_real_embedding(self) -> bool:
        return any(abs(r.imag) < mpmath.mpf(10) ** -30 for r in self.roots())

    # -- primes ----------------------------------------------------------------

    def simple_root_mod(self, q: int, r: int) -> None:
        if poly_eval(self.poly, r) % q:
            raise MalformedInput(f"{r} is not a root of the defining polynomial modulo {q}")
        deriv = [i * c for i, c in enumerate(self.poly)][1:]
        if poly_eval(deriv, r) % q == 0:
            raise MalformedInput(f"{r} is a repeated root modulo {q}; {q} divides the polynomial index")

    def lift_root(self, q: int, r: int, e: int) -> int:
        """Hensel-lift a simple root ``r`` modulo ``q`` to one modulo ``q**e``."""
        self.simple_root_mod(q, r)
        deriv = [i * c for i, c in enumerate(self.poly)][1:]
        mod = q
        for _ in range(1, e):
            mod *= q
            r = (r - poly_eval(self.poly, r) * pow(poly_eval(deriv, r), -1, mod)) % mod
        return r % mod

    def reduce_at(self, a, root: int, mod: int) -> int:
        """Image of ``a`` under t -> root modulo ``mod`` (denominators must be units)."""
        total = 0
        for i, c in enumerate(a):
            total += c.numerator * pow(c.denominator, -1, mod) * pow(root, i, mod)
        return total % mod


class _AsElement:
    """Lets ``poly_eval`` compute a(g) for a field element g via + and *."""

    __slots__ = ("K", "_v")

    def __init__(self, K: PowerBasisField, v):
        self.K = K
        self._v = tuple(Fraction(x) for x in v)

    def __mul__(self, other):
        if isinstance(other, _AsElement):
            return _AsElement(self.K, self.K.mul(self._v, other._v))
        return _AsElement(self.K, self.K.scale(self._v, Fraction(other)))

    __rmul__ = __mul__

    def __add__(self, other):
        if isinstance(other, _AsElement):
            return _AsElement(self.K, self.K.add(self._v, other._v))
        return _AsElement(self.K, self.K.add(self._v, self.K.element([other])))

    __radd__ = __add__


# -- constructors -------------------------------------------------------------


def rational_field() -> PowerBasisField:
    return PowerBasisField([0, 1], [(Fraction(0),)], ["1"], [[Fraction(1)]], "Q")


def quadratic_power_field(m: int) -> PowerBasisField:
    F = Fraction
    return PowerBasisField(
        [-m, 0, 1],
        [(F(0), F(1)), (F(0), F(-1))],
        ["1", f"sqrt({m})"],
        [[F(1), F(0)], [F(0), F(1)]],
        f"Q(sqrt({m}))",
    )


def biquadratic_power_field(m1: int, m2: int) -> PowerBasisField:
    """Q(sqrt(m1), sqrt(m2)) with primitive element t = sqrt(m1) + sqrt(m2)."""
    F = Fraction
    if m1 == m2:
        raise InvalidInput("biquadratic field needs distinct m1, m2")
    poly = [(m1 - m2) ** 2, 0, -2 * (m1 + m2), 0, 1]
    # sqrt(m1) = (t^3 - (3 m1 + m2) t) / (2 (m2 - m1)),  sqrt(m2) = t - sqrt(m1)
    den = F(2 * (m2 - m1))
    s1 = (F(0), -(3 * m1 + m2) / den, F(0), 1 / den)
    s2 = (F(0), F(1) - s1[1], F(0), -s1[3])
    s12 = _mul_raw(poly, s1, s2)
    autos = []
    for e1, e2 in ((1, 1), (-1, 1), (1, -1), (-1, -1)):
        autos.append(tuple(e1 * x + e2 * y for x, y in zip(s1, s2)))
    display = [[F(1), F(0), F(0), F(0)], list(s1), list(s2), list(s12)]
    names = ["1", f"sqrt({m1})", f"sqrt({m2})", f"sqrt({m1})*sqrt({m2})"]
    return PowerBasisField(poly, autos, names, display, f"Q(sqrt({m1}),sqrt({m2}))")


def _mul_raw(poly, a, b):
    K = PowerBasisField.__new__(PowerBasisField)
    K.poly = poly
    return PowerBasisField.mul(K, a, b)


def _periods_field(spec: AbelianFieldSpec, dps: int = 60) -> PowerBasisField:
    """Primitive Gaussian period of the fixed field, with certified exact data."""
    f, H = spec.conductor, sorted(spec.subgroup)
    reps = spec.galois_coset_reps()
    n = len(reps)
    with mpmath.workdps(dps):
        zeta = [mpmath.expjpi(mpmath.mpf(2 * j) / f) for j in range(f)]

        def period(j):
            return mpmath.fsum(zeta[(j * h) % f] for h in H)

        for j in range(1, f):
            vals = [period(j * a) for a in reps]
            gaps = [abs(x - y) for x, y in itertools.combinations(vals, 2)]
            if min(gaps) > mpmath.mpf(10) ** -10:
                break
        else:
            raise DegreeUnsupported(f"no primitive Gaussian period found for {spec}")
        coeffs = [mpmath.mpc(1)]
        for v in vals:
            coeffs = [(coeffs[i - 1] if i > 0 else 0) - v * (coeffs[i] if i < len(coeffs) else 0) for i in range(len(coeffs) + 1)]
        poly = [int(mpmath.nint(c.real)) for c in coeffs]
        if max(abs(c - p) for c, p in zip(coeffs, poly)) > mpmath.mpf(10) ** -20:
            raise DegreeUnsupported(f"period polynomial of {spec} is not numerically integral")
        disc = abs(_disc(poly))
        V = mpmath.matrix([[v**i for i in range(n)] for v in vals])
        autos = []
        for a in reps:
            target = mpmath.matrix([period(j * a * b) for b in reps])
            sol = mpmath.lu_solve(V, target)
            autos.append(tuple(Fraction(int(mpmath.nint((sol[i] * disc).real)), disc) for i in range(n)))
    K = PowerBasisField(poly, autos, label=str(spec))
    _check_splitting(K, spec)
    return K


def _disc(poly) -> Fraction:
    deriv = [i * c for i, c in enumerate(poly)][1:]
    n = len(poly) - 1
    return (-1) ** (n * (n - 1) // 2) * resultant(poly, deriv)


def _check_splitting(K: PowerBasisField, spec: AbelianFieldSpec, bound: int = 300) -> None:
    """Cross-check: small unramified primes split completely in K exactly when spec says so."""
    disc = _disc(K.poly)
    for q in range(3, bound):
        if not is_prime(q) or disc % q == 0 or spec.conductor % q == 0:
            continue
        nroots = sum(1 for r in range(q) if poly_eval(K.poly, r) % q == 0)
        if (nroots == K.n) != spec.splits_completely(q):
            raise InvalidInput(f"constructed polynomial for {spec} disagrees with it at {q}")


def power_basis_field(spec: AbelianFieldSpec) -> PowerBasisField:
    """Explicit model of an abelian field of degree at most 4."""
    n = spec.degree
    if n == 1:
        return rational_field()
    if n == 2:
        return quadratic_power_field(spec.quadratic_subfields[0].m)
    if n == 4 and spec.is_biquadratic:
        subs = [K.m for K in spec.quadratic_subfields]
        m1, m2 = _biquad_gens(spec, subs)
        return biquadratic_power_field(m1, m2)
    if n <= 4:
        return _periods_field(spec)
    raise DegreeUnsupported(f"explicit arithmetic in {spec} (degree {n}) is not supported; the cap is 4")


def _biquad_gens(spec: AbelianFieldSpec, subs: list[int]) -> tuple[int, int]:
    label = spec.label
    if label.startswith("biquad:"):
        m1, m2 = (int(x) for x in label.split(":", 1)[1].split(","))
        return m1, m2
    return subs[0], subs[1]


def quad_to_power(K: PowerBasisField, a: QuadElement):
    return K.element([a.x, a.y])


def verify_supplied_generator(K: PowerBasisField, spec: AbelianFieldSpec, q: int, root: int, h: int, alpha) -> bool:
    """Check that ``alpha`` generates the h-th power of the prime (q, t - root).

    Requires |Norm(alpha)| = q**h, alpha integral, and alpha in the h-th
    power of the prime (image under t -> lifted root vanishes mod q**h).
    Together these force (alpha) to equal that power.
    """
    if spec.degree not in (1, 2, 4) or K.n != spec.degree:
        raise MalformedInput(f"supplied generators need degree 1, 2 or 4 (got {spec.degree})")
    if len(alpha) != K.n:
        raise MalformedInput(f"expected {K.n} coordinates, got {len(alpha)}")
    if h < 1 or not is_prime(q):
        raise MalformedInput("q must be prime and h positive")
    if not spec.splits_completely(q):
        raise MalformedInput(f"{q} does not split completely in {spec}")
    alpha = K.element(alpha)
    if not K.is_integral(alpha):
        return False
    if abs(K.norm(alpha)) != q**h:
        return False
    r = K.lift_root(q, root, h)
    return K.reduce_at(alpha, r, q**h) == 0
