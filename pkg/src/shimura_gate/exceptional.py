"""Finite exceptional prime sets attached to an abelian field.

For each generator alpha of q^h (q in the chosen set S), each exponent
tuple eps over the Galois group and each Frobenius trace a, the integer
Norm(alpha^eps - beta^e) is formed, where beta is a root of
x^2 + a x + q and e = 24h (unprimed) or 12h (primed). The primes dividing
the nonzero values, together with 2, 3, the primes under S and the
ramified primes, make up the exceptional set.
"""

from __future__ import annotations

import hashlib
import itertools
import json
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

from .arith import factorize, floor_sqrt, is_prime, is_square, kronecker, primes_in_range, sqrt_mod_prime
from .errors import DegreeUnsupported, ExhaustedSearch, InvalidInput, MalformedInput
from .fields.abelian import AbelianFieldSpec
from .fields.numberfield import PowerBasisField, power_basis_field, verify_supplied_generator
from .fields.quadratic import QuadraticField, SplitPrimeIdeal, principal_generator

MAX_DEGREE = 4
S_SCAN_BOUND = 10**5
# rho iterations per composite cofactor when listing prime divisors of the values
EXCEPTIONAL_RHO_BUDGET = 10**5
# elliptic curves tried on cofactors that survive rho
EXCEPTIONAL_ECM_CURVES = 100


class Variant(str, Enum):
    UNPRIMED = "unprimed"
    PRIMED = "primed"

    @property
    def exponents(self) -> tuple[int, ...]:
        return (0, 8, 12, 16, 24) if self is Variant.UNPRIMED else (0, 4, 6, 8, 12)

    @property
    def beta_exponent(self) -> int:
        """e / h: 24 or 12."""
        return 24 if self is Variant.UNPRIMED else 12


@dataclass(frozen=True)
class FrobeniusRootSet:
    """Traces a of the Weil polynomials x^2 + a x + q, i.e. all a with a^2 < 4q."""

    q: int
    traces: tuple[int, ...]


def fr_set(q: int) -> FrobeniusRootSet:
    if not is_prime(q):
        raise InvalidInput(f"{q} is not prime")
    if is_square(4 * q):
        raise ArithmeticError("4q is a square")
    b = floor_sqrt(4 * q)
    return FrobeniusRootSet(q, tuple(range(-b, b + 1)))


def epsilon_exponents(n: int, variant: Variant):
    """All 5**n exponent tuples over {0,8,12,16,24} or {0,4,6,8,12}, lexicographically."""
    if n > MAX_DEGREE:
        raise DegreeUnsupported(f"exponent tuples for degree {n} exceed the cap {MAX_DEGREE}")
    if n < 1:
        raise InvalidInput("degree must be positive")
    return itertools.product(Variant(variant).exponents, repeat=n)


def beta_power(a: int, q: int, e: int) -> tuple[int, int]:
    """(s, t) with beta**e = s*beta + t for beta^2 + a*beta + q = 0."""
    s, t = 0, 1
    for _ in range(e):
        s, t = t - a * s, -q * s
    return s, t


def legendre_obstruction(p: int, q: int) -> bool:
    """(q|p) = -1, cross-checked against q^((p-1)/2) = -1 mod p."""
    if p == 2 or not is_prime(p) or not is_prime(q):
        raise InvalidInput("p must be an odd prime and q prime")
    if p == q:
        raise InvalidInput("p and q must differ")
    symbol = kronecker(q, p) == -1
    euler = pow(q, (p - 1) // 2, p) == p - 1
    if symbol != euler:
        raise ArithmeticError(f"Euler's criterion disagrees with the Legendre symbol at ({q}|{p})")
    return symbol


def trace_filter(q: int, p: int) -> set[int]:
    """Traces a with a^2 = 3q or a^2 = 0 modulo p."""
    if p == 2 or not is_prime(p) or not is_prime(q):
        raise InvalidInput("p must be an odd prime and q prime")
    return {a for a in fr_set(q).traces if (a * a - 3 * q) % p == 0 or (a * a) % p == 0}


def trace_filter_violations(p_max: int = 500) -> list[tuple[int, int, set[int]]]:
    """Pairs (q, p), p > 4q, p <= p_max, whose filter leaves a trace other than 0 (or +-3 when q = 3)."""
    bad = []
    for p in primes_in_range(3, p_max):
        if p <= 8:
            continue  # no prime q with 4q < p
        for q in primes_in_range(2, (p - 1) // 4):
            allowed = {0, 3, -3} if q == 3 else {0}
            got = trace_filter(q, p)
            if not got <= allowed:
                bad.append((q, p, got))
    return bad


@dataclass
class GeneratorDatum:
    """A prime of S with its chosen generator of the h-th power.

    ``residue`` locates the prime: for quadratic fields sqrt(m) = residue
    modulo it, otherwise the power-basis generator t = residue modulo it.
    ``alpha`` holds display-basis coordinates.
    """

    q: int
    residue: int
    h: int
    alpha: tuple[Fraction, ...]
    alpha_str: str
    provenance: str = "computed"

    def to_json(self) -> dict:
        return {
            "q": self.q,
            "residue": self.residue,
            "h": self.h,
            "alpha": self.alpha_str,
            "alpha_coords": [str(c) for c in self.alpha],
            "provenance": self.provenance,
        }


@dataclass
class SuppliedData:
    h: int
    generators: list[dict]

    @classmethod
    def from_json(cls, data: dict) -> SuppliedData:
        try:
            h = int(data["h"])
            gens = list(data["generators"])
        except (KeyError, TypeError, ValueError) as exc:
            raise MalformedInput(f"supplied data needs 'h' and 'generators': {exc}") from exc
        if h < 1 or not gens:
            raise MalformedInput("supplied data needs h >= 1 and at least one generator")
        return cls(h, gens)


@dataclass
class ExceptionalConfig:
    variants: tuple[Variant, ...] = (Variant.UNPRIMED, Variant.PRIMED)
    rho_budget: int = EXCEPTIONAL_RHO_BUDGET
    ecm_curves: int = EXCEPTIONAL_ECM_CURVES
    supplied: SuppliedData | None = None
    s_scan_bound: int = S_SCAN_BOUND

    def key(self) -> str:
        body = {
            "variants": [v.value for v in self.variants],
            "rho_budget": self.rho_budget,
            "ecm_curves": self.ecm_curves,
            "supplied": None if self.supplied is None else {"h": self.supplied.h, "generators": self.supplied.generators},
        }
        return json.dumps(body, sort_keys=True)


# -- choosing S ------------------------------------------------------------


def _display_coords(K: PowerBasisField, a) -> tuple[Fraction, ...]:
    return tuple(K.to_display(a))


def choose_S(k: AbelianFieldSpec, K: PowerBasisField, scan_bound: int = S_SCAN_BOUND) -> list[GeneratorDatum]:
    """Deterministic S for Q or a quadratic field.

    Primes q are scanned upwards; q must split completely and not divide
    6h. The prime above q with sqrt(m) = r, r = min residue, is added when
    its class enlarges the subgroup generated so far (for h = 1 the first
    eligible prime is taken).
    """
    if k.degree == 1:
        return [GeneratorDatum(5, 0, 1, (Fraction(5),), "5")]
    if k.degree != 2:
        raise DegreeUnsupported(f"S for {k} (degree {k.degree}) must be supplied")
    L = QuadraticField(k.quadratic_subfields[0].m)
    grp = L.class_group()
    h = grp.h
    chosen: list[GeneratorDatum] = []
    forms = []
    generated = {grp.canonical(grp.identity)}
    for q in primes_in_range(3, scan_bound):
        if not k.splits_completely(q) or (6 * h) % q == 0:
            continue
        r = _min_sqrt_residue(L.m, q)
        P = SplitPrimeIdeal(L, q, r)
        cls = grp.canonical(P.form())
        if h > 1 and cls in generated:
            continue
        alpha = principal_generator(P, h)
        coords = (alpha.x, alpha.y)
        chosen.append(GeneratorDatum(q, r, h, coords, str(alpha)))
        forms.append(P.form())
        generated = grp.generated_subgroup(forms)
        if len(generated) == h:
            return chosen
    raise ExhaustedSearch(f"no generating set of split primes below {scan_bound}; is the class number right?")


def _min_sqrt_residue(m: int, q: int) -> int:
    r = sqrt_mod_prime(m, q)
    return min(r, q - r)


def supplied_S(k: AbelianFieldSpec, K: PowerBasisField, data: SuppliedData) -> list[GeneratorDatum]:
    """Check supplied generators; reject the whole block if any entry fails."""
    out = []
    for entry in data.generators:
        try:
            q = int(entry["q"])
            alpha_disp = [Fraction(str(c)) for c in entry["alpha"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise MalformedInput(f"malformed generator entry {entry!r}: {exc}") from exc
        if (6 * data.h) % q == 0:
            raise MalformedInput(f"{q} divides 6h")
        if len(alpha_disp) != K.n:
            raise MalformedInput(f"alpha needs {K.n} display coordinates")
        root = _supplied_root(k, K, q, entry)
        alpha = K.from_display(alpha_disp)
        if not verify_supplied_generator(K, k, q, root, data.h, alpha):
            raise MalformedInput(f"alpha = {K.format(alpha)} does not generate the {data.h}-th power of the prime above {q}")
        if "conjugates" in entry:
            given = sorted(tuple(Fraction(str(c)) for c in conj) for conj in entry["conjugates"])
            actual = sorted(_display_coords(K, c) for c in K.conjugates(alpha))
            if given != actual:
                raise MalformedInput(f"supplied conjugates of alpha above {q} are not its Galois conjugates")
        out.append(GeneratorDatum(q, root, data.h, tuple(alpha_disp), K.format(alpha), "supplied+verified"))
    return out


def _supplied_root(k: AbelianFieldSpec, K: PowerBasisField, q: int, entry: dict) -> int:
    """Root of the defining polynomial mod q from ``root`` or from square-root residues."""
    if "root" in entry:
        return int(entry["root"]) % q
    res = entry.get("residues")
    if res is None:
        raise MalformedInput("generator entry needs 'root' or 'residues'")
    res = [int(r) for r in res]
    names = K.display_names
    radicands = [int(n[5:-1]) for n in names[1:] if n.startswith("sqrt(") and "*" not in n]
    if len(res) != len(radicands) or not radicands:
        raise MalformedInput(f"'residues' needs one square root residue for each of {radicands}")
    for r, m in zip(res, radicands):
        if (r * r - m) % q:
            raise MalformedInput(f"{r}^2 is not {m} modulo {q}")
    # t = sqrt(m) for quadratic fields, sqrt(m1) + sqrt(m2) for biquadratic ones
    return sum(res) % q


# -- values ----------------------------------------------------------------


def galois_permutations(K: PowerBasisField) -> list[list[int]]:
    """perm[tau][j] = index of tau o sigma_j."""
    autos = [tuple(g) for g in K.automorphisms]
    index = {g: i for i, g in enumerate(autos)}
    perms = []
    for tau in range(len(autos)):
        perms.append([index[tuple(K.apply(tau, g))] for g in autos])
    return perms


def orbit_representatives(tuples, perms) -> list[tuple[int, ...]]:
    """Tuples that are minimal in their orbit under the translation action of the Galois group."""
    out = []
    for t in tuples:
        best = t
        for p in perms:
            moved = [0] * len(t)
            for j, v in enumerate(t):
                moved[p[j]] = v
            moved = tuple(moved)
            if moved < best:
                best = moved
                break
        if best == t:
            out.append(t)
    return out


def _as_int(x: Fraction) -> int:
    if x.denominator != 1:
        raise ArithmeticError(f"norm {x} is not an integer")
    return x.numerator


def norm_value(
    K: PowerBasisField, alpha, eps: tuple[int, ...], a: int, q: int, h: int, variant: Variant, root_sign: int = 1
) -> int:
    """Norm from k(beta) to Q of alpha^eps - beta^e, beta a root of x^2 + a x + q.

    When beta lies outside k, this is Norm_k(g^2 - T g + q^e) with
    g = alpha^eps and T = beta^e + conj(beta)^e. When beta lies in k (its
    quadratic field is a subfield), ``root_sign`` picks
    beta = (-a + root_sign * sqrt(a^2 - 4q)) / 2.
    """
    variant = Variant(variant)
    e = variant.beta_exponent * h
    gamma = K.one()
    conj = K.conjugates(alpha)
    for c, ai in zip(conj, eps):
        if ai:
            gamma = K.mul(gamma, K.pow(c, ai))
    s, t = beta_power(a, q, e)
    root = K.sqrt(K.element([a * a - 4 * q]))
    if root is None:
        T = -a * s + 2 * t
        x = K.add(K.sub(K.mul(gamma, gamma), K.scale(gamma, T)), K.element([q**e]))
        return _as_int(K.norm(x))
    beta = K.scale(K.add(K.element([-a]), K.scale(root, root_sign)), Fraction(1, 2))
    beta_e = K.add(K.scale(beta, s), K.element([t]))
    return _as_int(K.norm(K.sub(gamma, beta_e)))


def _values_for(K: PowerBasisField, datum: GeneratorDatum, variant: Variant, perms) -> set[int]:
    """Distinct nonzero |values| over all eps tuples and traces for one prime of S."""
    alpha = K.from_display(datum.alpha)
    h, q = datum.h, datum.q
    e = variant.beta_exponent * h
    conj = K.conjugates(alpha)
    unit = 4 if variant is Variant.UNPRIMED else 2
    # powers conj_i^(unit*j) for j in {0, 2, 3, 4, 6}
    powers = []
    for c in conj:
        row = {0: K.one()}
        c_unit = K.pow(c, unit)
        c2 = K.mul(c_unit, c_unit)
        row[2 * unit] = c2
        row[3 * unit] = K.mul(c2, c_unit)
        row[4 * unit] = K.mul(c2, c2)
        row[6 * unit] = K.mul(row[3 * unit], row[3 * unit])
        powers.append(row)
    tuples = orbit_representatives(list(epsilon_exponents(K.n, variant)), perms)
    traces = [a for a in fr_set(q).traces if a >= 0]
    per_trace = []
    for a in traces:
        s, t = beta_power(a, q, e)
        root = K.sqrt(K.element([a * a - 4 * q]))
        if root is None:
            per_trace.append((a, -a * s + 2 * t, None))
        else:
            betas = []
            for sign in (1, -1):
                beta = K.scale(K.add(K.element([-a]), K.scale(root, sign)), Fraction(1, 2))
                betas.append(K.add(K.scale(beta, s), K.element([t])))
            per_trace.append((a, None, betas))
    qe = K.element([q**e])
    values: set[int] = set()
    for eps in tuples:
        gamma = K.one()
        for row, ai in zip(powers, eps):
            if ai:
                gamma = K.mul(gamma, row[ai])
        g2 = K.mul(gamma, gamma)
        for _, T, betas in per_trace:
            if betas is None:
                x = K.add(K.sub(g2, K.scale(gamma, T)), qe)
                vals = [K.norm(x)]
            else:
                vals = [K.norm(K.sub(gamma, b)) for b in betas]
            for v in vals:
                v = abs(_as_int(v))
                if v:
                    values.add(v)
    return values


# -- report ----------------------------------------------------------------


@dataclass
class VariantSets:
    primes: list[int]
    cofactors: list[int]
    value_count: int

    @property
    def complete(self) -> bool:
        return not self.cofactors

    def divides(self, p: int) -> bool:
        """Exact membership of p among the prime divisors of the values."""
        return p in set(self.primes) or any(c % p == 0 for c in self.cofactors)


@dataclass
class ExceptionalSetReport:
    field: str
    canonical: str
    degree: int
    h: int
    S: list[GeneratorDatum]
    T: list[int]
    Ram: list[int]
    unprimed: VariantSets | None
    primed: VariantSets | None
    rho_budget: int
    ecm_curves: int = 0
    defining_polynomial: list[int] = field(default_factory=list)
    display_basis: list[str] = field(default_factory=list)

    @property
    def N0(self) -> list[int] | None:
        return None if self.unprimed is None else self.unprimed.primes

    @property
    def N0p(self) -> list[int] | None:
        return None if self.primed is None else self.primed.primes

    def _union(self, vs: VariantSets | None) -> list[int] | None:
        if vs is None:
            return None
        return sorted(set(vs.primes) | set(self.T) | set(self.Ram))

    @property
    def N1(self) -> list[int] | None:
        return self._union(self.unprimed)

    @property
    def N1p(self) -> list[int] | None:
        return self._union(self.primed)

    @property
    def L(self) -> list[int] | None:
        if self.unprimed is None or self.primed is None:
            return None
        return sorted(set(self.N1) | set(self.N1p))

    @property
    def complete(self) -> bool:
        return all(v is None or v.complete for v in (self.unprimed, self.primed))

    def in_N1(self, p: int) -> bool:
        return p in self.T or p in self.Ram or self.unprimed.divides(p)

    def in_N1p(self, p: int) -> bool:
        return p in self.T or p in self.Ram or self.primed.divides(p)

    def in_L(self, p: int) -> bool:
        if self.unprimed is None or self.primed is None:
            raise InvalidInput("membership in L needs both variants")
        return self.in_N1(p) or self.in_N1p(p)

    def to_json(self) -> dict:
        def vs_json(v):
            return None if v is None else {"cofactors": [str(c) for c in v.cofactors], "value_count": v.value_count}

        return {
            "field": self.field,
            "canonical": self.canonical,
            "degree": self.degree,
            "h": self.h,
            "S": [s.to_json() for s in self.S],
            "N0": self.N0,
            "T": self.T,
            "Ram": self.Ram,
            "N1": self.N1,
            "N0p": self.N0p,
            "N1p": self.N1p,
            "L": self.L,
            "complete": self.complete,
            "unfactored": {"unprimed": vs_json(self.unprimed), "primed": vs_json(self.primed)},
            "rho_budget": self.rho_budget,
            "ecm_curves": self.ecm_curves,
            "defining_polynomial": self.defining_polynomial,
            "display_basis": self.display_basis,
        }

    @classmethod
    def from_json(cls, data: dict) -> ExceptionalSetReport:
        def vs(primes, extra):
            if primes is None:
                return None
            return VariantSets(list(primes), [int(c) for c in extra["cofactors"]], int(extra["value_count"]))

        S = [
            GeneratorDatum(
                s["q"], s["residue"], s["h"], tuple(Fraction(c) for c in s["alpha_coords"]), s["alpha"], s["provenance"]
            )
            for s in data["S"]
        ]
        return cls(
            field=data["field"],
            canonical=data["canonical"],
            degree=data["degree"],
            h=data["h"],
            S=S,
            T=list(data["T"]),
            Ram=list(data["Ram"]),
            unprimed=vs(data["N0"], data["unfactored"]["unprimed"]),
            primed=vs(data["N0p"], data["unfactored"]["primed"]),
            rho_budget=data["rho_budget"],
            ecm_curves=data.get("ecm_curves", 0),
            defining_polynomial=list(data["defining_polynomial"]),
            display_basis=list(data["display_basis"]),
        )

    def check_invariants(self) -> None:
        T, Ram = set(self.T), set(self.Ram)
        assert {2, 3} <= T
        for n1, v in ((self.N1, self.unprimed), (self.N1p, self.primed)):
            if n1 is None:
                continue
            assert T <= set(n1) and Ram <= set(n1)
            assert set(n1) == set(v.primes) | T | Ram


def _factor_values(values: set[int], rho_budget: int, ecm_curves: int) -> VariantSets:
    primes: set[int] = set()
    cofactors: set[int] = set()
    for v in sorted(values):
        fac = factorize(v, rho_budget=rho_budget, exhaust_below_2_128=False, ecm_curves=ecm_curves)
        primes.update(fac.primes)
        cofactors.update(fac.unfactored)
    # drop cofactors that are divisible by known primes of another value
    reduced = set()
    for c in cofactors:
        for p in primes:
            while c % p == 0:
                c //= p
        if c > 1:
            if is_prime(c):
                primes.add(c)
            else:
                reduced.add(c)
    return VariantSets(sorted(primes), sorted(reduced), len(values))


def exceptional_sets(k: AbelianFieldSpec, config: ExceptionalConfig | None = None) -> ExceptionalSetReport:
    config = config or ExceptionalConfig()
    if k.degree > MAX_DEGREE:
        raise DegreeUnsupported(f"exceptional sets of {k} (degree {k.degree}) are beyond the cap {MAX_DEGREE}")
    K = power_basis_field(k)
    if config.supplied is not None:
        S = supplied_S(k, K, config.supplied)
    elif k.degree <= 2:
        S = choose_S(k, K, config.s_scan_bound)
    else:
        raise DegreeUnsupported(f"{k} has degree {k.degree}; supply h and generators for it")
    perms = galois_permutations(K)
    T = sorted({2, 3} | {d.q for d in S})
    Ram = list(k.ramified_primes)
    results: dict[Variant, VariantSets] = {}
    for variant in config.variants:
        values: set[int] = set()
        for datum in S:
            values |= _values_for(K, datum, variant, perms)
        results[variant] = _factor_values(values, config.rho_budget, config.ecm_curves)
    report = ExceptionalSetReport(
        field=str(k),
        canonical=k.canonical,
        degree=k.degree,
        h=S[0].h,
        S=S,
        T=T,
        Ram=Ram,
        unprimed=results.get(Variant.UNPRIMED),
        primed=results.get(Variant.PRIMED),
        rho_budget=config.rho_budget,
        ecm_curves=config.ecm_curves,
        defining_polynomial=list(K.poly),
        display_basis=list(K.display_names),
    )
    report.check_invariants()
    return report


def report_digest(report: ExceptionalSetReport) -> str:
    body = json.dumps(report.to_json(), sort_keys=True)
    return hashlib.sha256(body.encode()).hexdigest()
