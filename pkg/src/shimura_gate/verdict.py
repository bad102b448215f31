"""Per-prime verdicts: every hypothesis is checked and failures are reported as codes."""

from __future__ import annotations

from dataclasses import dataclass, field

from .arith import is_prime, primes_in_range
from .errors import DegreeUnsupported, InvalidInput
from .exceptional import MAX_DEGREE, ExceptionalConfig, ExceptionalSetReport, exceptional_sets
from .fields.abelian import AbelianFieldSpec, contains_hilbert_class_field
from .quaternion import (
    DEFAULT_Q_BOUND,
    QuaternionDiscriminant,
    least_nonsplitting_completely_split_prime,
    splits_over_abelian,
)

HCF_CONTAINED = "HCF_CONTAINED"
NO_Q_FOUND = "NO_Q_FOUND"
P_LE_4Q = "P_LE_4Q"
P_TOO_SMALL = "P_TOO_SMALL"
P_EQ_13 = "P_EQ_13"
P_DIVIDES_D = "P_DIVIDES_D"
P_IN_L = "P_IN_L"
L_UNCOMPUTED_ASSUMED = "L_UNCOMPUTED_ASSUMED"

EMPTY = "empty"
ELLIPTIC_ONLY = "elliptic_only"
INCONCLUSIVE = "inconclusive"
IRREDUCIBLE = "irreducible"


@dataclass
class VerdictOptions:
    q_bound: int = DEFAULT_Q_BOUND
    assume_outside_exceptional: bool = False
    exceptional_config: ExceptionalConfig | None = None
    # a report computed earlier (e.g. from the cache); skips recomputation
    report: ExceptionalSetReport | None = None
    report_source: str = "computed"


@dataclass
class HypothesisReport:
    abelian_ok: bool
    hcf_contained: bool
    hcf_witness: str | None
    q: int | None
    B_splits_over_k: bool
    exceptional: ExceptionalSetReport | None
    L_source: str
    S_dividing_d: list[int] = field(default_factory=list)

    @property
    def assumed(self) -> bool:
        return self.exceptional is None

    def to_json(self) -> dict:
        return {
            "abelian_ok": self.abelian_ok,
            "hcf_contained": self.hcf_contained,
            "hcf_witness": self.hcf_witness,
            "q": self.q,
            "B_splits_over_k": self.B_splits_over_k,
            "L_source": self.L_source,
            "S_dividing_d": self.S_dividing_d,
        }


@dataclass
class Verdict:
    d: int
    field: str
    p: int
    outcome: str
    conditional: bool
    reasons: list[str]
    q: int | None
    L_source: str
    assumptions: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "field": self.field,
            "p": self.p,
            "outcome": self.outcome,
            "conditional": self.conditional,
            "reasons": list(self.reasons),
            "q": self.q,
            "L_source": self.L_source,
            "assumptions": list(self.assumptions),
        }

    def describe(self) -> str:
        if self.outcome == EMPTY:
            text = "no k-rational points"
        elif self.outcome == ELLIPTIC_ONLY:
            text = "k-rational points, if any, are elliptic points of order 2 or 3"
        elif self.outcome == IRREDUCIBLE:
            text = "mod-p representation irreducible for every QM-abelian surface over k"
        else:
            text = "inconclusive: " + ", ".join(self.reasons)
        tag = " [conditional on p outside the exceptional set]" if self.conditional else ""
        return f"d={self.d} k={self.field} p={self.p}: {text}{tag}"


def hypotheses(B: QuaternionDiscriminant, k: AbelianFieldSpec, options: VerdictOptions | None = None) -> HypothesisReport:
    """Everything that does not depend on p, computed once per (B, k)."""
    options = options or VerdictOptions()
    contained, witness = contains_hilbert_class_field(k)
    q = least_nonsplitting_completely_split_prime(B, k, options.q_bound)
    report = None
    source = "assumed"
    if not options.assume_outside_exceptional:
        if k.degree > MAX_DEGREE:
            raise DegreeUnsupported(
                f"{k} has degree {k.degree} > {MAX_DEGREE}; rerun with the assume-outside-exceptional option"
            )
        report = options.report or exceptional_sets(k, options.exceptional_config)
        source = options.report_source if options.report is not None else "computed"
    S_dividing_d = [] if report is None else [s.q for s in report.S if B.d % s.q == 0]
    return HypothesisReport(
        abelian_ok=True,
        hcf_contained=contained,
        hcf_witness=None if witness is None else str(witness),
        q=q,
        B_splits_over_k=splits_over_abelian(B, k),
        exceptional=report,
        L_source=source,
        S_dividing_d=S_dividing_d,
    )


def _p_codes(B: QuaternionDiscriminant, hyp: HypothesisReport, p: int, in_exceptional) -> list[str]:
    reasons = []
    if hyp.hcf_contained:
        reasons.append(HCF_CONTAINED)
    if hyp.q is None:
        reasons.append(NO_Q_FOUND)
    elif p <= 4 * hyp.q:
        reasons.append(P_LE_4Q)
    if p < 11:
        reasons.append(P_TOO_SMALL)
    if p == 13:
        reasons.append(P_EQ_13)
    if B.d % p == 0:
        reasons.append(P_DIVIDES_D)
    if not hyp.assumed and in_exceptional(p):
        reasons.append(P_IN_L)
    return reasons


def _check_prime(p: int) -> None:
    if not is_prime(p):
        raise InvalidInput(f"{p} is not prime")


def verdict_from(B: QuaternionDiscriminant, k: AbelianFieldSpec, p: int, hyp: HypothesisReport) -> Verdict:
    _check_prime(p)
    reasons = _p_codes(B, hyp, p, lambda x: hyp.exceptional.in_L(x))
    if reasons:
        outcome = INCONCLUSIVE
    else:
        outcome = EMPTY if hyp.B_splits_over_k else ELLIPTIC_ONLY
    return Verdict(
        d=B.d,
        field=str(k),
        p=p,
        outcome=outcome,
        conditional=hyp.assumed and outcome != INCONCLUSIVE,
        reasons=reasons,
        q=hyp.q,
        L_source=hyp.L_source,
        assumptions=[L_UNCOMPUTED_ASSUMED] if hyp.assumed else [],
    )


def evaluate(B: QuaternionDiscriminant, k: AbelianFieldSpec, p: int, options: VerdictOptions | None = None) -> Verdict:
    _check_prime(p)
    return verdict_from(B, k, p, hypotheses(B, k, options))


def evaluate_range(
    B: QuaternionDiscriminant, k: AbelianFieldSpec, p_lo: int, p_hi: int, options: VerdictOptions | None = None
) -> list[Verdict]:
    if p_lo > p_hi:
        raise InvalidInput(f"empty prime range {p_lo}..{p_hi}")
    hyp = hypotheses(B, k, options)
    return [verdict_from(B, k, p, hyp) for p in primes_in_range(max(p_lo, 2), p_hi)]


def irreducibility_from(B: QuaternionDiscriminant, k: AbelianFieldSpec, p: int, hyp: HypothesisReport) -> Verdict:
    _check_prime(p)
    reasons = []
    if hyp.hcf_contained:
        reasons.append(HCF_CONTAINED)
    if hyp.q is None:
        reasons.append(NO_Q_FOUND)
    elif p <= 4 * hyp.q:
        reasons.append(P_LE_4Q)
    if B.d % p == 0:
        reasons.append(P_DIVIDES_D)
    if not hyp.assumed and hyp.exceptional.in_N1p(p):
        reasons.append(P_IN_L)
    outcome = INCONCLUSIVE if reasons else IRREDUCIBLE
    return Verdict(
        d=B.d,
        field=str(k),
        p=p,
        outcome=outcome,
        conditional=hyp.assumed and outcome != INCONCLUSIVE,
        reasons=reasons,
        q=hyp.q,
        L_source=hyp.L_source,
        assumptions=[L_UNCOMPUTED_ASSUMED] if hyp.assumed else [],
    )


def irreducibility_verdict(
    B: QuaternionDiscriminant, k: AbelianFieldSpec, p: int, options: VerdictOptions | None = None
) -> Verdict:
    """Irreducibility of the mod-p representation; uses only the primed exceptional set."""
    _check_prime(p)
    return irreducibility_from(B, k, p, hypotheses(B, k, options))
