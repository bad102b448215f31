"""Command-line front end: ``shimura-gate <command> [options]``.

Exit codes: 0 success (an inconclusive verdict is still a success),
2 invalid input, 3 field degree beyond the cap without
``--assume-outside-exceptional``. The quaternion algebra is always taken
to be indefinite.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import tempfile
import time
from pathlib import Path

from . import __version__
from .arith import primes_in_range
from .curves import conic_for, has_k_point
from .errors import MalformedInput, ShimuraGateError
from .exceptional import (
    ExceptionalConfig,
    ExceptionalSetReport,
    SuppliedData,
    Variant,
    exceptional_sets,
    fr_set,
    trace_filter,
)
from .fields.abelian import AbelianFieldSpec, parse_field_spec
from .fields.forms import is_fundamental_discriminant, quadratic_class_group
from .quaternion import (
    DEFAULT_Q_BOUND,
    least_nonsplitting_completely_split_prime,
    shimura_genus,
    validate_discriminant,
)
from .verdict import VerdictOptions, hypotheses, irreducibility_from, verdict_from

CACHE_ENV = "SHIMURA_GATE_CACHE"


# -- cache ---------------------------------------------------------------------


def cache_dir() -> Path:
    return Path(os.environ.get(CACHE_ENV) or Path.home() / ".cache" / "shimura_gate")


def cache_key(k: AbelianFieldSpec, config: ExceptionalConfig) -> str:
    body = json.dumps({"field": k.canonical, "config": config.key(), "version": __version__}, sort_keys=True)
    return hashlib.sha256(body.encode()).hexdigest()


def cache_load(key: str) -> ExceptionalSetReport | None:
    path = cache_dir() / f"{key}.json"
    try:
        entry = json.loads(path.read_text())
    except (OSError, ValueError):
        return None
    if entry.get("key") != key:
        return None
    return ExceptionalSetReport.from_json(entry["value"])


def cache_store(key: str, report: ExceptionalSetReport) -> None:
    directory = cache_dir()
    directory.mkdir(parents=True, exist_ok=True)
    entry = {"key": key, "created_at": time.time(), "value": report.to_json()}
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            json.dump(entry, fh, sort_keys=True)
        os.replace(tmp, directory / f"{key}.json")
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def obtain_report(k: AbelianFieldSpec, config: ExceptionalConfig, use_cache: bool) -> tuple[ExceptionalSetReport, str]:
    """Exceptional sets from the cache when allowed, else computed (and stored)."""
    key = cache_key(k, config)
    if use_cache:
        hit = cache_load(key)
        if hit is not None:
            # the cache is keyed by canonical form; report the label actually asked for
            hit.field = str(k)
            return hit, "cache"
    report = exceptional_sets(k, config)
    if use_cache:
        cache_store(key, report)
    return report, "computed"


# -- helpers ---------------------------------------------------------------------


def _load_supplied(path: str | None) -> SuppliedData | None:
    if path is None:
        return None
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, ValueError) as exc:
        raise MalformedInput(f"cannot read supplied data {path!r}: {exc}") from exc
    return SuppliedData.from_json(data)


def _variants(name: str) -> tuple[Variant, ...]:
    if name == "both":
        return (Variant.UNPRIMED, Variant.PRIMED)
    return (Variant(name),)


def _config(args, variants: tuple[Variant, ...] = (Variant.UNPRIMED, Variant.PRIMED)) -> ExceptionalConfig:
    cfg = ExceptionalConfig(variants=variants, supplied=_load_supplied(getattr(args, "supplied", None)))
    if getattr(args, "rho_budget", None) is not None:
        cfg.rho_budget = args.rho_budget
    if getattr(args, "ecm_curves", None) is not None:
        cfg.ecm_curves = args.ecm_curves
    return cfg


def _emit(args, payload, text: str) -> None:
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


def _prime_range(text: str) -> tuple[int, int]:
    try:
        lo, hi = (int(x) for x in text.split(":"))
    except ValueError as exc:
        raise MalformedInput(f"--p-range expects LO:HI, got {text!r}") from exc
    return lo, hi


def _fmt_list(xs) -> str:
    return "-" if xs is None else "{" + ", ".join(map(str, xs)) + "}"


# -- commands ----------------------------------------------------------------------


def cmd_verdict(args) -> int:
    B = validate_discriminant(args.d)
    k = parse_field_spec(args.field)
    if (args.p is None) == (args.p_range is None):
        raise MalformedInput("give exactly one of --p and --p-range")
    options = VerdictOptions(q_bound=args.q_bound, assume_outside_exceptional=args.assume_outside_exceptional)
    if not args.assume_outside_exceptional and k.degree <= 4:
        options.report, options.report_source = obtain_report(k, _config(args), not args.no_cache)
    hyp = hypotheses(B, k, options)
    if args.p is not None:
        primes = [args.p]
    else:
        lo, hi = _prime_range(args.p_range)
        if lo > hi:
            raise MalformedInput(f"empty prime range {args.p_range}")
        primes = primes_in_range(max(lo, 2), hi)
    judge = irreducibility_from if args.irreducibility else verdict_from
    verdicts = [judge(B, k, p, hyp) for p in primes]
    if args.json:
        payload = verdicts[0].to_json() if args.p is not None else [v.to_json() for v in verdicts]
        print(json.dumps(payload, sort_keys=True))
    else:
        for v in verdicts:
            print(v.describe())
    return 0


def cmd_sets(args) -> int:
    k = parse_field_spec(args.field)
    report, _ = obtain_report(k, _config(args, _variants(args.variant)), not args.no_cache)
    payload = report.to_json()
    lines = [
        f"field {report.field} (degree {report.degree}, h = {report.h})",
        "S: " + "; ".join(f"q={s.q} residue={s.residue} alpha={s.alpha_str} [{s.provenance}]" for s in report.S),
        f"T   = {_fmt_list(report.T)}",
        f"Ram = {_fmt_list(report.Ram)}",
        f"N0  = {_fmt_list(report.N0)}",
        f"N0' = {_fmt_list(report.N0p)}",
        f"L   = {_fmt_list(report.L)}",
        f"complete factorization: {report.complete}",
    ]
    _emit(args, payload, "\n".join(lines))
    return 0


def cmd_least_q(args) -> int:
    B = validate_discriminant(args.d)
    k = parse_field_spec(args.field)
    q = least_nonsplitting_completely_split_prime(B, k, args.bound)
    _emit(args, {"d": B.d, "field": str(k), "q": q}, "none" if q is None else str(q))
    return 0


def cmd_genus(args) -> int:
    B = validate_discriminant(args.d)
    g = shimura_genus(B)
    _emit(args, {"d": B.d, "genus": g}, str(g))
    return 0


def cmd_conic(args) -> int:
    if (args.d is None) == (args.c is None):
        raise MalformedInput("give exactly one of --d and --c")
    if args.height < 0:
        raise MalformedInput("--height must be nonnegative")
    c = conic_for(args.d).c if args.d is not None else args.c
    k = parse_field_spec(args.field)
    result = has_k_point(c, k, args.height)
    payload = {"c": c, "field": str(k), "result": result.to_json()}
    if result.kind == "point":
        text = f"point ({result.point[0]}, {result.point[1]}) on x^2+y^2+{c}=0; genus 0, so infinitely many"
    elif result.kind == "local_obstruction":
        where = "the real place" if result.place == "real" else f"{result.place}"
        text = f"local obstruction at {where}: no points over {k}"
    else:
        text = f"unknown: no point up to height {result.bound}"
    _emit(args, payload, text)
    return 0


def cmd_classgroup(args) -> int:
    D = args.D
    if not is_fundamental_discriminant(D):
        raise MalformedInput(f"{D} is not a fundamental discriminant")
    grp = quadratic_class_group(D)
    payload = {
        "D": D,
        "h": grp.h,
        "narrow_h": grp.narrow_h,
        "forms": [list(f) for f in grp.representatives],
        "exponent_at_most_two": grp.exponent_at_most_two(),
    }
    _emit(args, payload, f"h({D}) = {grp.h}; forms: {', '.join(map(str, grp.representatives))}")
    return 0


def cmd_fr(args) -> int:
    fr = fr_set(args.q)
    _emit(args, {"q": fr.q, "traces": list(fr.traces)}, " ".join(map(str, fr.traces)))
    return 0


def cmd_trace_filter(args) -> int:
    got = sorted(trace_filter(args.q, args.p))
    _emit(args, {"q": args.q, "p": args.p, "traces": got}, " ".join(map(str, got)) or "(none)")
    return 0


# -- parser ------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="shimura-gate",
        description="Points of Shimura curves of Gamma_0(p)-type over abelian fields (B indefinite).",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.set_defaults(func=func)
        return p

    field_help = "quad:<m> | biquad:<m1>,<m2> | cyclo:<n> | abelian:f=<f>;H=<g1>,... | rational"

    p = add("verdict", cmd_verdict, "verdict for primes p")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--field", required=True, help=field_help)
    p.add_argument("--p", type=int)
    p.add_argument("--p-range", help="LO:HI")
    p.add_argument("--assume-outside-exceptional", action="store_true")
    p.add_argument("--q-bound", type=int, default=DEFAULT_Q_BOUND)
    p.add_argument("--irreducibility", action="store_true", help="irreducibility of the mod-p representation instead")
    _add_set_options(p)

    p = add("sets", cmd_sets, "exceptional prime sets of a field")
    p.add_argument("--field", required=True, help=field_help)
    p.add_argument("--variant", choices=["both", "unprimed", "primed"], default="both")
    _add_set_options(p)

    p = add("least-q", cmd_least_q, "least usable auxiliary prime q")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--field", required=True, help=field_help)
    p.add_argument("--bound", type=int, default=DEFAULT_Q_BOUND)

    p = add("genus", cmd_genus, "genus of the Shimura curve of discriminant d")
    p.add_argument("--d", type=int, required=True)

    p = add("conic", cmd_conic, "points on x^2 + y^2 + c = 0")
    p.add_argument("--d", type=int, help="6, 10 or 22")
    p.add_argument("--c", type=int)
    p.add_argument("--field", default="rational", help=field_help)
    p.add_argument("--height", type=int, default=10)

    p = add("classgroup", cmd_classgroup, "class group of a quadratic discriminant")
    p.add_argument("--D", type=int, required=True)

    p = add("fr", cmd_fr, "Frobenius traces for a prime q")
    p.add_argument("--q", type=int, required=True)

    p = add("trace-filter", cmd_trace_filter, "traces surviving the mod-p filter")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    return parser


def _add_set_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--supplied", help="JSON file with h and verified generators (degree 4)")
    p.add_argument("--no-cache", action="store_true")
    p.add_argument("--rho-budget", type=int)
    p.add_argument("--ecm-curves", type=int)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ShimuraGateError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
