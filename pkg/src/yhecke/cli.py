"""Command-line front end.

Subcommands
-----------
- ``invariant``: the 2-variable invariant of a braid closure at (d, S);
- ``trace``: the Markov trace of a braid image, generic or substituted;
- ``esystem``: enumerate or verify E-system solutions for a modulus;
- ``adelic``: per-level invariants along a divisor chain with lifted subsets;
- ``verify``: seeded property suites (relations, markov, skein, esystem,
  adelic-coherence).

Results go to stdout, diagnostics to stderr.  Exit codes: 0 success,
1 parse/validation error, 2 mathematical precondition violation,
3 internal coherence failure.  Output for a fixed input and seed is
byte-identical across runs; numeric evaluation (--eval-u/--eval-z) is
double precision and labeled approximate.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from fractions import Fraction
from typing import Sequence

from .adelic import (
    CoherenceError,
    DivisibilityError,
    DivisorChain,
    adelic_delta,
    rho,
    xi,
)
from .braid import (
    BraidParseError,
    BraidWord,
    CorpusRecordError,
    closure_component_count,
    exponent_sum,
    format_braid,
    iter_corpus,
    markov_conjugate,
    markov_stabilize,
    parse_braid,
)
from .esystem import (
    enumerate_subsets,
    lift_subset,
    render_subset,
    solution_from_subset,
    verify_solution,
    zeta_value,
)
from .exactnum import (
    Cyclotomic,
    LaurentU,
    OrderMismatchError,
    PolyUZ,
    RatFunc,
    TracePolynomial,
)
from .invariant import (
    InvariantValue,
    delta_invariant,
    evaluate_numeric,
    skein_check,
)
from .trace import markov_trace, trace_of_braid
from .yokonuma import AlgebraElement, BasisWord, generator, idempotent_e, multiply, represent_braid

SEED_ENV = "YHECKE_SEED"

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PRECONDITION = 2
EXIT_COHERENCE = 3


class UsageError(ValueError):
    """Bad syntax in an argument value (exit code 1)."""


class PreconditionError(ValueError):
    """Well-formed input that violates a mathematical precondition (exit 2)."""


# ---------------------------------------------------------------------------
# JSON encoding of exact values: rationals as "p/q" strings, cyclotomic
# coefficients as arrays in the power basis of zeta_d.
# ---------------------------------------------------------------------------

def _json_fraction(q: Fraction) -> str:
    return str(q)


def _json_cyclotomic(c: Cyclotomic) -> list[str]:
    return [_json_fraction(x) for x in c.coeffs]


def _json_laurent(c: LaurentU) -> list[list]:
    return [[e, _json_fraction(q)] for e, q in c.terms]


def _json_trace_poly(p: TracePolynomial) -> dict:
    return {
        "order": p.order,
        "terms": [
            {"z": ze, "x": list(xe), "coeff": _json_laurent(c)}
            for (ze, xe), c in p.terms
        ],
    }


def _json_poly_uz(p: PolyUZ) -> list[dict]:
    return [
        {"u": ue, "z": ze, "coeff": _json_cyclotomic(c)} for (ue, ze), c in p.terms
    ]


def _json_ratfunc(f: RatFunc) -> dict:
    return {
        "order": f.order,
        "numerator": _json_poly_uz(f.num),
        "denominator": _json_poly_uz(f.den),
    }


def _json_invariant(v: InvariantValue) -> dict:
    return {
        "order": v.order,
        "halfLambda": v.half,
        "body": _json_ratfunc(v.body),
    }


def _json_complex(x: complex) -> dict:
    return {"re": x.real, "im": x.imag, "note": "approximate"}


# ---------------------------------------------------------------------------
# Argument helpers.
# ---------------------------------------------------------------------------

def _parse_subset(text: str, d: int) -> frozenset[int]:
    try:
        parts = [int(tok) for tok in text.split(",") if tok.strip() != ""]
    except ValueError as exc:
        raise UsageError(f"malformed subset {text!r}: expected comma-separated integers") from exc
    if not parts:
        raise PreconditionError("subset must be non-empty")
    out = frozenset(p % d for p in parts)
    return out


def _parse_complex(text: str) -> complex:
    try:
        return complex(text.replace(" ", ""))
    except ValueError as exc:
        raise UsageError(f"malformed complex number {text!r}") from exc


def _load_braids(args) -> list[tuple[str, "BraidWord | CorpusRecordError"]]:
    """Braid source: inline word or corpus file; corpus errors are kept as
    records so the batch continues."""
    if args.braid is not None:
        try:
            return [("braid", parse_braid(args.braid))]
        except BraidParseError as exc:
            raise UsageError(f"bad braid word: {exc}") from exc
    assert args.corpus is not None
    try:
        with open(args.corpus, encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise UsageError(f"cannot read corpus file {args.corpus!r}: {exc}") from exc
    return [(name, rec) for _, name, rec in iter_corpus(lines)]


def _numeric_point(args) -> "tuple[complex, complex] | None":
    if (args.eval_u is None) != (args.eval_z is None):
        raise UsageError("--eval-u and --eval-z must be given together")
    if args.eval_u is None:
        return None
    return _parse_complex(args.eval_u), _parse_complex(args.eval_z)


# ---------------------------------------------------------------------------
# Subcommands.
# ---------------------------------------------------------------------------

def _cmd_invariant(args, out, err) -> int:
    d = args.d
    subset = _parse_subset(args.subset, d)
    sol = solution_from_subset(d, subset)
    point = _numeric_point(args)
    records = _load_braids(args)
    results = []
    for name, rec in records:
        if isinstance(rec, CorpusRecordError):
            print(f"skipped: {rec}", file=err)
            results.append({"name": name, "error": str(rec)})
            continue
        value = delta_invariant(d, sol, rec)
        entry = {
            "name": name,
            "braid": format_braid(rec),
            "d": d,
            "subset": sorted(subset),
            "components": closure_component_count(rec),
            "exponentSum": exponent_sum(rec),
            "invariant": _json_invariant(value),
        }
        if point is not None:
            entry["approx"] = _json_complex(evaluate_numeric(value, sol, *point))
        results.append(entry)
        if args.format == "text":
            prefix = f"{name}: " if args.corpus else ""
            print(f"{prefix}Delta[{render_subset(d, subset)}]({format_braid(rec)}) = {value}", file=out)
            if point is not None:
                approx = entry["approx"]
                print(
                    f"{prefix}approx at u={point[0]}, z={point[1]}: "
                    f"{approx['re']:.12g}{approx['im']:+.12g}j (approximate)",
                    file=out,
                )
    if args.format == "json":
        print(json.dumps(results if args.corpus else results[0], indent=2, sort_keys=True), file=out)
    return EXIT_OK


def _cmd_trace(args, out, err) -> int:
    d = args.d
    sol = None
    if args.subset is not None:
        sol = solution_from_subset(d, _parse_subset(args.subset, d))
    point = _numeric_point(args)
    if point is not None and sol is None:
        raise PreconditionError("numeric evaluation of a trace requires --subset")
    records = _load_braids(args)
    results = []
    for name, rec in records:
        if isinstance(rec, CorpusRecordError):
            print(f"skipped: {rec}", file=err)
            results.append({"name": name, "error": str(rec)})
            continue
        value = trace_of_braid(d, rec, sol)
        entry = {"name": name, "braid": format_braid(rec), "d": d}
        if sol is None:
            entry["trace"] = _json_trace_poly(value)
        else:
            entry["subset"] = sorted(sol.subset)
            entry["trace"] = _json_ratfunc(value)
            if point is not None:
                entry["approx"] = _json_complex(value.eval_complex(*point))
        results.append(entry)
        if args.format == "text":
            prefix = f"{name}: " if args.corpus else ""
            print(f"{prefix}tr_{d}({format_braid(rec)}) = {value}", file=out)
            if point is not None and sol is not None:
                approx = entry["approx"]
                print(
                    f"{prefix}approx at u={point[0]}, z={point[1]}: "
                    f"{approx['re']:.12g}{approx['im']:+.12g}j (approximate)",
                    file=out,
                )
    if args.format == "json":
        print(json.dumps(results if args.corpus else results[0], indent=2, sort_keys=True), file=out)
    return EXIT_OK


def _cmd_esystem(args, out, err) -> int:
    d = args.d
    if args.enumerate:
        subsets = list(enumerate_subsets(d))
    elif args.subset is not None:
        subsets = [_parse_subset(args.subset, d)]
    else:
        raise UsageError("esystem requires --enumerate or --subset")
    results = []
    for subset in subsets:
        sol = solution_from_subset(d, subset)
        ok = verify_solution(d, sol.values)
        entry = {
            "d": d,
            "subset": sorted(subset),
            "zeta": _json_fraction(zeta_value(sol)),
            "values": [_json_cyclotomic(v) for v in sol.values],
            "verified": ok,
        }
        results.append(entry)
        if args.format == "text":
            vals = ", ".join(str(v) for v in sol.values)
            status = "ok" if ok else "FAILED"
            print(
                f"{render_subset(d, subset)}: x = [{vals}], zeta = {zeta_value(sol)} [{status}]",
                file=out,
            )
    if args.format == "json":
        print(json.dumps(results, indent=2, sort_keys=True), file=out)
    if not all(r["verified"] for r in results):
        print("esystem verification failed", file=err)
        return EXIT_COHERENCE
    return EXIT_OK


def _cmd_adelic(args, out, err) -> int:
    chain = _parse_chain(args.chain)
    d1 = chain.entries[0]
    subset = _parse_subset(args.subset, d1)
    records = _load_braids(args)
    results = []
    for name, rec in records:
        if isinstance(rec, CorpusRecordError):
            print(f"skipped: {rec}", file=err)
            results.append({"name": name, "error": str(rec)})
            continue
        values = adelic_delta(chain, subset, rec)
        levels = []
        for d, value in zip(chain.entries, values):
            lifted = lift_subset(d1, d, subset)
            levels.append(
                {
                    "d": d,
                    "subset": sorted(lifted),
                    "invariant": _json_invariant(value),
                }
            )
        entry = {"name": name, "braid": format_braid(rec), "chain": list(chain.entries), "levels": levels}
        results.append(entry)
        if args.format == "text":
            prefix = f"{name}: " if args.corpus else ""
            for d, value in zip(chain.entries, values):
                lifted = lift_subset(d1, d, subset)
                print(
                    f"{prefix}Delta[{render_subset(d, lifted)}]({format_braid(rec)}) = {value}",
                    file=out,
                )
    if args.format == "json":
        # a single braid renders as the bare array of per-level invariants
        payload = results if args.corpus else results[0]["levels"]
        print(json.dumps(payload, indent=2, sort_keys=True), file=out)
    return EXIT_OK


def _parse_chain(text: str) -> DivisorChain:
    try:
        return DivisorChain.parse(text)
    except ValueError as exc:
        if "malformed" in str(exc):
            raise UsageError(str(exc)) from exc
        raise PreconditionError(str(exc)) from exc


# ---------------------------------------------------------------------------
# Verification suites (seeded, deterministic).
# ---------------------------------------------------------------------------

def _random_braid(rng: random.Random, n_max: int = 4, len_max: int = 6) -> BraidWord:
    n = rng.randint(2, n_max)
    gens = [k for k in range(-(n - 1), n) if k != 0]
    letters = tuple(rng.choice(gens) for _ in range(rng.randint(1, len_max)))
    return BraidWord(n, letters)


def _random_element(rng: random.Random, d: int, n: int, max_terms: int = 3) -> AlgebraElement:
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        fr = tuple(rng.randrange(d) for _ in range(n))
        perm = list(range(n))
        rng.shuffle(perm)
        coeff = LaurentU.from_dict(
            {rng.randint(-2, 2): Fraction(rng.randint(-3, 3))}
        )
        if coeff.is_zero():
            coeff = LaurentU.from_scalar(1)
        terms[BasisWord(d, n, fr, tuple(perm))] = coeff
    return AlgebraElement(d, n, terms)


def _suite_relations(rng, report) -> bool:
    from .exactnum import laurent_u_minus_one

    ok = True
    for d in (1, 2, 3):
        for n in (2, 3):
            one = AlgebraElement.one(d, n)
            for i in range(1, n):
                g = generator(d, n, i)
                e = idempotent_e(d, n, i)
                w = laurent_u_minus_one()
                quad = multiply(g, g) == one + e.scale(w) - multiply(e, g).scale(w)
                ok &= report(f"quadratic relation d={d} n={n} i={i}", quad)
            for i in range(1, n - 1):
                g1, g2 = generator(d, n, i), generator(d, n, i + 1)
                braid_rel = multiply(multiply(g1, g2), g1) == multiply(multiply(g2, g1), g2)
                ok &= report(f"braid relation d={d} n={n} i={i}", braid_rel)
    return ok


def _suite_markov(rng, report) -> bool:
    ok = True
    for d, subset in ((1, {0}), (2, {0, 1}), (3, {0, 1})):
        sol = solution_from_subset(d, subset)
        for trial in range(5):
            b = _random_braid(rng, n_max=3, len_max=5)
            w = BraidWord(b.strands, _random_braid(rng, n_max=2, len_max=4).letters if b.strands >= 2 else ())
            w = BraidWord(b.strands, tuple(k for k in w.letters if abs(k) <= b.strands - 1))
            base = delta_invariant(d, sol, b)
            conj = delta_invariant(d, sol, markov_conjugate(b, w))
            stab = delta_invariant(d, sol, markov_stabilize(b, rng.choice((1, -1))))
            ok &= report(
                f"markov invariance d={d} S={sorted(subset)} trial={trial}",
                base == conj == stab,
            )
    return ok


def _suite_skein(rng, report) -> bool:
    ok = True
    for d, subset in ((1, {0}), (2, {0}), (3, {0, 1})):
        sol = solution_from_subset(d, subset)
        for trial in range(5):
            b = _random_braid(rng, n_max=3, len_max=5)
            i = rng.randrange(len(b.letters))
            ok &= report(
                f"skein relation d={d} S={sorted(subset)} trial={trial}",
                skein_check(d, sol, b, i),
            )
    return ok


def _suite_esystem(rng, report) -> bool:
    ok = True
    for d in range(1, 7):
        good = all(
            verify_solution(d, solution_from_subset(d, S).values)
            for S in enumerate_subsets(d)
        )
        ok &= report(f"esystem solutions exhaustive d={d}", good)
    return ok


def _suite_adelic(rng, report) -> bool:
    ok = True
    for d, dp in ((1, 2), (2, 4), (3, 6)):
        for trial in range(5):
            b = _random_braid(rng, n_max=3, len_max=5)
            upper = represent_braid(dp, b)
            lower = represent_braid(d, b)
            ok &= report(
                f"representation diagram {d}|{dp} trial={trial}",
                rho(d, dp, upper) == lower,
            )
            a = _random_element(rng, dp, rng.randint(2, 3))
            ok &= report(
                f"trace diagram {d}|{dp} trial={trial}",
                xi(d, dp, markov_trace(a)) == markov_trace(rho(d, dp, a)),
            )
    return ok


_SUITES = {
    "relations": _suite_relations,
    "markov": _suite_markov,
    "skein": _suite_skein,
    "esystem": _suite_esystem,
    "adelic-coherence": _suite_adelic,
}


def _cmd_verify(args, out, err) -> int:
    names = list(_SUITES) if args.suite == "all" else [args.suite]
    rng = random.Random(args.seed)
    all_ok = True

    def report(label: str, passed: bool) -> bool:
        print(f"{'ok  ' if passed else 'FAIL'} {label}", file=out)
        return passed

    for name in names:
        ok = _SUITES[name](rng, report)
        print(f"suite {name}: {'PASS' if ok else 'FAIL'} (seed={args.seed})", file=out)
        all_ok &= ok
    return EXIT_OK if all_ok else EXIT_COHERENCE


# ---------------------------------------------------------------------------
# Entry point.
# ---------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="yhecke",
        description="Exact link invariants from Markov traces on Y_{d,n}(u).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_braid_source(p):
        group = p.add_mutually_exclusive_group(required=True)
        group.add_argument("--braid", help="inline braid word, e.g. '1 1 1' or '3: 1 -2'")
        group.add_argument("--corpus", help="corpus file: one 'name;braidword' per line")

    def add_common(p):
        p.add_argument("--format", choices=("text", "json"), default="text")

    p_inv = sub.add_parser("invariant", help="invariant of a braid closure")
    p_inv.add_argument("--d", type=int, required=True, help="modulus d of the algebra")
    p_inv.add_argument("--subset", required=True, help="subset of Z/dZ, e.g. '0,1'")
    add_braid_source(p_inv)
    add_common(p_inv)
    p_inv.add_argument("--eval-u", help="numeric u for an approximate evaluation")
    p_inv.add_argument("--eval-z", help="numeric z for an approximate evaluation")
    p_inv.set_defaults(func=_cmd_invariant)

    p_tr = sub.add_parser("trace", help="Markov trace of a braid image")
    p_tr.add_argument("--d", type=int, required=True)
    p_tr.add_argument("--subset", help="optional subset for substituted values")
    add_braid_source(p_tr)
    add_common(p_tr)
    p_tr.add_argument("--eval-u", help="numeric u (requires --subset)")
    p_tr.add_argument("--eval-z", help="numeric z (requires --subset)")
    p_tr.set_defaults(func=_cmd_trace)

    p_es = sub.add_parser("esystem", help="E-system solutions for a modulus")
    p_es.add_argument("--d", type=int, required=True)
    p_es.add_argument("--enumerate", action="store_true", help="all non-empty subsets")
    p_es.add_argument("--subset", help="a single subset to solve and verify")
    add_common(p_es)
    p_es.set_defaults(func=_cmd_esystem)

    p_ad = sub.add_parser("adelic", help="invariants along a divisor chain")
    p_ad.add_argument("--chain", required=True, help="divisor chain, e.g. '2,4,8'")
    p_ad.add_argument("--subset", required=True, help="subset of Z/d1Z")
    add_braid_source(p_ad)
    add_common(p_ad)
    p_ad.set_defaults(func=_cmd_adelic)

    p_vf = sub.add_parser("verify", help="run a named property suite")
    p_vf.add_argument(
        "--suite",
        choices=("all",) + tuple(_SUITES),
        default="all",
    )
    p_vf.add_argument(
        "--seed",
        type=int,
        default=int(os.environ.get(SEED_ENV, "0")),
        help=f"random seed (default from ${SEED_ENV}, else 0)",
    )
    p_vf.set_defaults(func=_cmd_verify)

    return parser


def main(argv: "Sequence[str] | None" = None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors; normalize to the documented code 1.
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    try:
        if getattr(args, "d", None) is not None and args.d < 1:
            raise PreconditionError(f"modulus d must be positive, got {args.d}")
        return args.func(args, out, err)
    except UsageError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_USAGE
    except (PreconditionError, DivisibilityError, OrderMismatchError) as exc:
        print(f"error: {exc}", file=err)
        return EXIT_PRECONDITION
    except CoherenceError as exc:
        print(f"internal coherence failure: {exc}", file=err)
        return EXIT_COHERENCE
    except ValueError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
