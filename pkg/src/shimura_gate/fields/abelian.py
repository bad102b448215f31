"""Abelian number fields as (conductor, subgroup of (Z/fZ)^x).

The field attached to ``(f, H)`` is the fixed field of ``H`` inside the
cyclotomic field of conductor ``f``; Galois theory over Q becomes arithmetic
in the finite group ``(Z/fZ)^x / H``.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass
from functools import cached_property, reduce

from ..arith import factorize, is_prime, kronecker
from ..errors import InvalidInput, MalformedInput, NonAbelianField
from .quadratic import QuadraticField


def _units(f: int) -> list[int]:
    if f == 1:
        return [0]
    return [a for a in range(1, f) if math.gcd(a, f) == 1]


def _closure(gens, f: int) -> frozenset[int]:
    """Subgroup of (Z/fZ)^x generated by ``gens``."""
    one = 1 % f
    group = {one}
    frontier = [one]
    gens = [g % f for g in gens]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = x * g % f
                if y not in group:
                    group.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(group)


def _crt(r1: int, m1: int, r2: int, m2: int) -> int:
    return (r1 + m1 * ((r2 - r1) * pow(m1, -1, m2) % m2)) % (m1 * m2)


def prime_discriminant(p: int) -> list[int]:
    """The prime discriminants attached to ``p``: p* for odd p, {-4, 8, -8} for 2."""
    if p == 2:
        return [-4, 8, -8]
    return [p if p % 4 == 1 else -p]


@dataclass(frozen=True, eq=False)
class AbelianFieldSpec:
    """Fixed field of ``H`` in Q(zeta_f), normalized to the minimal conductor."""

    conductor: int
    subgroup: frozenset[int]
    label: str = ""

    @classmethod
    def from_generators(cls, f: int, gens, label: str = "") -> AbelianFieldSpec:
        if f < 1:
            raise InvalidInput("conductor must be positive")
        for g in gens:
            if f > 1 and math.gcd(g, f) != 1:
                raise InvalidInput(f"{g} is not a unit modulo {f}")
        H = _closure(list(gens) or [1], f)
        f, H = _minimize(f, H)
        return cls(f, H, label or f"abelian:f={f};H={','.join(map(str, _minimal_gens(H, f)))}")

    @classmethod
    def from_characters(cls, discs: list[int], label: str = "") -> AbelianFieldSpec:
        """Compositum of the quadratic fields of the given fundamental discriminants."""
        f = reduce(lambda a, b: a * b // math.gcd(a, b), [abs(D) for D in discs], 1)
        H = [a for a in _units(f) if all(kronecker(D, a) == 1 for D in discs)]
        f2, H2 = _minimize(f, frozenset(H))
        return cls(f2, H2, label)

    def __eq__(self, other):
        return isinstance(other, AbelianFieldSpec) and (self.conductor, self.subgroup) == (
            other.conductor,
            other.subgroup,
        )

    def __hash__(self):
        return hash((self.conductor, self.subgroup))

    def __str__(self) -> str:
        return self.label or self.canonical

    @cached_property
    def canonical(self) -> str:
        gens = _minimal_gens(self.subgroup, self.conductor)
        return f"abelian:f={self.conductor};H={','.join(map(str, gens))}"

    @cached_property
    def digest(self) -> str:
        body = f"{self.conductor}:{sorted(self.subgroup)}"
        return hashlib.sha256(body.encode()).hexdigest()[:16]

    @cached_property
    def degree(self) -> int:
        return len(_units(self.conductor)) // len(self.subgroup)

    @property
    def is_real(self) -> bool:
        """Totally real (complex conjugation, i.e. -1, lies in H); otherwise totally imaginary."""
        return (-1) % self.conductor in self.subgroup

    @cached_property
    def ramified_primes(self) -> list[int]:
        return [p for p, _ in factorize(self.conductor).factors] if self.conductor > 1 else []

    def splits_completely(self, q: int) -> bool:
        if self.conductor % q == 0:
            return False
        return q % self.conductor in self.subgroup

    def _inertia(self, ell: int) -> frozenset[int]:
        """Image of the inertia group at ``ell``: units that are 1 modulo the prime-to-ell part of f."""
        f, m = self.conductor, self.conductor
        while m % ell == 0:
            m //= ell
        if m == f:
            return frozenset({1 % f})
        return frozenset(u for u in _units(f) if u % m == 1 % m)

    def _with_inertia(self, ell: int) -> frozenset[int]:
        # H * I is a subgroup since the group is abelian
        f, inertia = self.conductor, self._inertia(ell)
        return frozenset(h * i % f for h in self.subgroup for i in inertia)

    def local_degree(self, ell: int) -> int:
        """e*f of the primes above ``ell``: order of the decomposition group in G/H.

        The decomposition group is generated by inertia and a Frobenius lift
        (ell modulo the prime-to-ell part of f, 1 modulo the ell part).
        """
        if not is_prime(ell):
            raise InvalidInput(f"{ell} is not prime")
        f = self.conductor
        if f == 1:
            return 1
        m = f
        while m % ell == 0:
            m //= ell
        frob = _crt(ell % m, m, 1, f // m) if m > 1 else 1 % f
        HI = self._with_inertia(ell)
        n, x = 1, frob
        while x not in HI:
            x = x * frob % f
            n += 1
        return len(HI) // len(self.subgroup) * n

    def ramification_index(self, ell: int) -> int:
        if self.conductor % ell:
            return 1
        return len(self._with_inertia(ell)) // len(self.subgroup)

    def contains_quadratic(self, D: int) -> bool:
        """Whether Q(sqrt(D)) (D a fundamental discriminant) is a subfield."""
        if self.conductor % abs(D):
            return False
        return all(kronecker(D, h) == 1 for h in self.subgroup)

    @cached_property
    def quadratic_subfields(self) -> list[QuadraticField]:
        """All quadratic subfields, by fundamental discriminants supported on the conductor."""
        choices: list[list[int]] = []
        for p in self.ramified_primes:
            choices.append([1] + prime_discriminant(p))
        discs = {1}
        for opts in choices:
            discs = {d * o for d in discs for o in opts}
        out = [QuadraticField.from_discriminant(D) for D in sorted(discs) if D != 1 and self.contains_quadratic(D)]
        return sorted(out, key=lambda K: (abs(K.D), K.D))

    def galois_coset_reps(self) -> list[int]:
        """One representative of each coset of H, smallest first (identity = 1)."""
        reps, seen = [], set()
        for a in _units(self.conductor):
            if a in seen:
                continue
            reps.append(a)
            seen |= {a * h % self.conductor for h in self.subgroup} if self.conductor > 1 else {a}
        return reps

    @property
    def is_biquadratic(self) -> bool:
        return self.degree == 4 and len(self.quadratic_subfields) == 3


def _minimize(f: int, H: frozenset[int]) -> tuple[int, frozenset[int]]:
    changed = True
    while changed and f > 1:
        changed = False
        for p, _ in factorize(f).factors:
            g = f // p
            kernel = [u for u in _units(f) if u % g == 1 % g]
            if all(u in H for u in kernel):
                f, H = g, frozenset(h % g for h in H) if g > 1 else frozenset({0})
                changed = True
                break
    if f == 1:
        H = frozenset({0})
    return f, H


def _minimal_gens(H: frozenset[int], f: int) -> list[int]:
    """A short deterministic generating list of H (greedy by smallest residue)."""
    gens: list[int] = []
    cur = _closure([1], f)
    for h in sorted(H):
        if h not in cur:
            gens.append(h)
            cur = _closure(gens, f)
        if len(cur) == len(H):
            break
    return gens or [1 % f]


def _discriminant_of(m: int) -> int:
    return QuadraticField(m).D


def parse_field_spec(text: str) -> AbelianFieldSpec:
    """Parse ``quad:<m>`` | ``biquad:<m1>,<m2>`` | ``cyclo:<n>`` | ``abelian:f=<f>;H=<g>,...`` | ``rational``."""
    s = text.strip()
    if s in ("rational", "Q", "cyclo:1"):
        return AbelianFieldSpec(1, frozenset({0}), s)
    kind, sep, body = s.partition(":")
    if not sep:
        raise MalformedInput(f"field spec {text!r} lacks a ':'")
    try:
        if kind == "quad":
            return AbelianFieldSpec.from_characters([_discriminant_of(int(body))], s)
        if kind == "biquad":
            m1, m2 = (int(x) for x in body.split(","))
            if m1 == m2:
                raise MalformedInput("biquadratic field needs two distinct squarefree integers")
            return AbelianFieldSpec.from_characters([_discriminant_of(m1), _discriminant_of(m2)], s)
        if kind == "cyclo":
            n = int(body)
            if n < 1:
                raise MalformedInput("cyclotomic index must be positive")
            if n % 4 == 2:
                n //= 2
            return AbelianFieldSpec.from_generators(n, [1 % n] if n > 1 else [], s)
        if kind == "abelian":
            parts = dict(p.split("=", 1) for p in body.split(";"))
            f = int(parts["f"])
            gens = [int(g) for g in parts.get("H", "").split(",") if g.strip()]
            return AbelianFieldSpec.from_generators(f, gens, s)
    except (ValueError, KeyError) as exc:
        raise MalformedInput(f"cannot parse field spec {text!r}: {exc}") from exc
    if kind in ("poly", "galois", "nonabelian"):
        raise NonAbelianField(f"only abelian fields are supported, got {text!r}")
    raise MalformedInput(f"unknown field kind {kind!r}")


def genus_field_discriminants(D: int) -> list[int]:
    """Prime discriminants d_i* with D = prod d_i*; their square roots generate the genus field."""
    out = []
    rest = D
    for p, _ in factorize(D).factors:
        if p == 2:
            continue
        ps = p if p % 4 == 1 else -p
        out.append(ps)
        rest //= ps
    if rest != 1:
        # rest is the 2-part: -4, 8 or -8
        out.append(rest)
    return sorted(out)


def contains_hilbert_class_field(k: AbelianFieldSpec) -> tuple[bool, QuadraticField | None]:
    """Whether some imaginary quadratic L has its Hilbert class field inside ``k``.

    H_L inside an abelian k forces Gal(H_L/Q) abelian, which happens exactly
    when Cl_L has exponent at most 2; then H_L is the genus field of L.
    """
    for L in k.quadratic_subfields:
        if not L.imaginary:
            continue
        if not L.class_group().exponent_at_most_two():
            continue
        if all(k.contains_quadratic(d) for d in genus_field_discriminants(L.D)):
            return True, L
    return False, None
