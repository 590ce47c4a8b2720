"""Command-line front end.

Subcommands: count, motive, classify, stab, selfmaps, verify-suite.
All rationals are serialized as exact "numerator/denominator" strings; JSON
key order is fixed, so identical reports serialize to identical bytes.
Exit status is 0 iff every requested verification matched.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from .binforms import DEFAULT_FACTOR_SEED, parse_form
from .counting import (
    CountModel,
    CountReport,
    CountStratum,
    CountingError,
    Method,
    verify_report,
)
from .ffield import FieldError, parse_field
from .homstack import (
    HomTuple,
    WeightVector,
    base_point_free,
    classify_stabilizer,
    constancy_witness,
    git_classify,
    pgl2_stabilizer,
)
from .motive import (
    ambient_class,
    hom_class,
    moduli_class,
    selfmap_moduli_class,
)
from .selfmaps import (
    RationalSelfMap,
    SelfMapError,
    critical_divisor,
    fix_divisor,
    selfmap_stabilizer,
    tameness,
)
from .weierstrass import WeierstrassDatum, classify_stratum, fiber_survey

_STRATUM_TOKENS = {
    "all": CountStratum.ALL_NONZERO,
    "all_nonzero": CountStratum.ALL_NONZERO,
    "bpf": CountStratum.BASEPOINT_FREE,
    "basepoint_free": CountStratum.BASEPOINT_FREE,
    "morphism": CountStratum.MORPHISM,
    "delta": CountStratum.U_DELTA,
    "min": CountStratum.U_MIN,
    "sf": CountStratum.U_SF,
    "stable": CountStratum.GIT_STABLE,
    "semistable": CountStratum.GIT_SEMISTABLE,
}


class CliError(ValueError):
    pass


def _parse_lambda(text: str) -> WeightVector:
    return WeightVector(tuple(int(x) for x in text.split(",")))


def _parse_forms(text: str, field, lam: WeightVector, n: int) -> HomTuple:
    chunks = text.split(";")
    if len(chunks) != lam.n_coords:
        raise CliError(
            f"{lam.n_coords} semicolon-separated forms expected, got {len(chunks)}"
        )
    forms = []
    for chunk, w in zip(chunks, lam):
        f = parse_form(chunk, field)
        if f.degree != n * w:
            raise CliError(
                f"form of degree {f.degree} where n*lambda = {n * w} expected"
            )
        forms.append(f)
    return HomTuple(lam, n, tuple(forms))


# -- report serialization -----------------------------------------------------

def emit_report(payload: dict | list, fmt: str, stream) -> None:
    """Serialize a report dict (or list of row dicts) byte-stably."""
    if fmt == "json":
        json.dump(payload, stream, indent=2, sort_keys=True)
        stream.write("\n")
    elif fmt == "csv":
        rows = payload if isinstance(payload, list) else [payload]
        flat = [_flatten(r) for r in rows]
        fields = sorted({k for r in flat for k in r})
        writer = csv.DictWriter(stream, fieldnames=fields)
        writer.writeheader()
        for r in flat:
            writer.writerow(r)
    elif fmt == "text":
        rows = payload if isinstance(payload, list) else [payload]
        for r in rows:
            for k, v in sorted(_flatten(r).items()):
                print(f"{k}: {v}", file=stream)
            print("", file=stream)
    else:
        raise CliError(f"unknown format {fmt!r}")


def _flatten(d: dict, prefix: str = "") -> dict:
    out = {}
    for k, v in d.items():
        key = f"{prefix}{k}"
        if isinstance(v, dict):
            out.update(_flatten(v, key + "."))
        elif isinstance(v, list):
            out[key] = ";".join(str(x) for x in v)
        else:
            out[key] = v
    return out


def _write_out(payload, fmt: str, out_path: str | None) -> None:
    if out_path:
        with open(out_path, "w") as fh:
            emit_report(payload, fmt, fh)
    else:
        emit_report(payload, fmt, sys.stdout)


# -- subcommand handlers ------------------------------------------------------

def _cmd_count(args) -> int:
    field = parse_field(args.q)
    stratum = _STRATUM_TOKENS[args.stratum]
    if args.selfmap:
        model = CountModel("SELFMAP", stratum, args.n)
    else:
        if args.lam is None:
            raise CliError("--lambda is required unless --selfmap is given")
        model = CountModel("HOM_WEIGHTED", stratum, args.n, _parse_lambda(args.lam))
    report = verify_report(
        model,
        field.order,
        Method[args.method.upper()],
        workers=args.workers,
        budget=args.budget,
    )
    _write_out(report.as_dict(), args.format, args.out)
    return 0 if report.match is not False else 1


def _cmd_motive(args) -> int:
    lam = _parse_lambda(args.lam)
    n = args.n
    empirical = n % 2 == 0
    expr = moduli_class(lam, n, empirical=empirical)
    lines = [str(expr)]
    if empirical:
        lines.append("# even-degree value is conjectural (EMPIRICAL)")
    if args.show_hom:
        lines.append(f"hom: {hom_class(lam, n)}")
        lines.append(f"ambient: {ambient_class(lam, n)}")
    if args.q is not None:
        lines.append(f"at q={args.q}: {_frac(expr.specialize(args.q))}")
    print("\n".join(lines))
    return 0


def _frac(f) -> str:
    return f"{f.numerator}/{f.denominator}"


def _cmd_classify(args) -> int:
    field = parse_field(args.q)
    a = parse_form(args.A, field)
    b = parse_form(args.B, field)
    if a.degree != 4 * args.n or b.degree != 6 * args.n:
        raise CliError("classify expects degrees (4n, 6n)")
    w = WeierstrassDatum(args.n, a, b)
    lam = WeightVector.of(4, 6)
    t = HomTuple(lam, args.n, (a, b))
    payload = {
        "q": field.order,
        "n": args.n,
        "A": args.A,
        "B": args.B,
        "stratum": classify_stratum(w).value,
        "git_class": git_classify(t).value,
        "stabilizer_verdict": classify_stabilizer(t, field.p).value,
        "fiber_survey": [],
    }
    if not w.delta.is_zero:
        payload["fiber_survey"] = [
            {"degree": deg, "fiber": str(fib)} for deg, fib in fiber_survey(w)
        ]
    _write_out(payload, args.format, args.out)
    return 0


def _cmd_stab(args) -> int:
    field = parse_field(args.q)
    lam = _parse_lambda(args.lam)
    t = _parse_forms(args.forms, field, lam, args.n)
    stab = pgl2_stabilizer(t)
    witness = constancy_witness(t)
    payload = {
        "q": field.order,
        "lambda": list(lam.weights),
        "n": args.n,
        "base_point_free": base_point_free(t),
        "git_class": git_classify(t).value,
        "stabilizer_verdict": classify_stabilizer(t, field.p).value,
        "constant_map": witness is not None,
        "pgl2_stabilizer_order": len(stab),
        "pgl2_stabilizer": [str(g) for g in stab],
    }
    _write_out(payload, args.format, args.out)
    return 0


def _cmd_selfmaps(args) -> int:
    field = parse_field(args.q)
    if args.action == "count":
        model = CountModel("SELFMAP", CountStratum.MORPHISM, args.n)
        report = verify_report(
            model,
            field.order,
            Method[args.method.upper()],
            workers=args.workers,
            budget=args.budget,
        )
        _write_out(report.as_dict(), args.format, args.out)
        return 0 if report.match is not False else 1
    f = parse_form(args.F, field)
    g = parse_form(args.G, field)
    if f.degree != args.n or g.degree != args.n:
        raise CliError("F and G must have degree n")
    m = RationalSelfMap(args.n, f, g)
    payload = {
        "q": field.order,
        "n": args.n,
        "is_morphism": m.is_morphism,
        "tameness": tameness(m).value if m.is_morphism else None,
        "fix_divisor": None,
        "critical_divisor": None,
        "stabilizer_order": None,
    }
    try:
        payload["fix_divisor"] = str(fix_divisor(m))
    except SelfMapError as exc:
        payload["fix_divisor"] = f"error: {exc}"
    try:
        payload["critical_divisor"] = str(critical_divisor(m))
    except SelfMapError as exc:
        payload["critical_divisor"] = f"error: {exc}"
    if args.stab:
        payload["stabilizer_order"] = len(selfmap_stabilizer(m))
    _write_out(payload, args.format, args.out)
    return 0


def _cmd_verify_suite(args) -> int:
    from .acceptance import run_suite

    numbers = args.criteria or None
    results = run_suite(numbers, workers=args.workers)
    payload = [
        {
            "criterion": r.number,
            "name": r.name,
            "passed": r.passed,
            "details": r.details,
            "wall_time": r.wall_time,
        }
        for r in results
    ]
    if args.out:
        _write_out(payload, args.format, args.out)
    return 0 if all(r.passed for r in results) else 1


# -- parser -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="weierstats",
        description=(
            "Exact strata counts, motive formulas and classification for "
            "Weierstrass data, Hom stacks to weighted projective stacks, "
            "and self-maps of P^1 over small finite fields."
        ),
    )
    sub = top.add_subparsers(dest="command", required=True)

    def common_output(p):
        p.add_argument("--format", choices=("json", "csv", "text"), default="json")
        p.add_argument("--out", help="write the report to this path")

    def common_counting(p):
        p.add_argument("--method", choices=("brute", "sieve"), default="sieve")
        p.add_argument("--workers", type=int, default=None)
        p.add_argument("--budget", type=int, default=300_000_000)
        p.add_argument(
            "--seed",
            type=int,
            default=DEFAULT_FACTOR_SEED,
            help="seed for factorization splitting only; counts never depend on it",
        )

    p = sub.add_parser("count", help="count a stratum cone over F_q")
    p.add_argument("--lambda", dest="lam", help="weights, e.g. 4,6")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--q", required=True, help="field size p or p^k")
    p.add_argument("--stratum", choices=sorted(_STRATUM_TOKENS), required=True)
    p.add_argument("--selfmap", action="store_true", help="self-map model")
    common_counting(p)
    common_output(p)
    p.set_defaults(fn=_cmd_count)

    p = sub.add_parser("motive", help="print a moduli motive, optionally specialized")
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--q", type=int, default=None)
    p.add_argument("--show-hom", action="store_true")
    p.set_defaults(fn=_cmd_motive)

    p = sub.add_parser("classify", help="classify Weierstrass data (A, B)")
    p.add_argument("--q", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--A", required=True, help="coefficients c_0,...,c_4n (X-ascending)")
    p.add_argument("--B", required=True, help="coefficients c_0,...,c_6n (X-ascending)")
    common_output(p)
    p.set_defaults(fn=_cmd_classify)

    p = sub.add_parser("stab", help="stabilizer and GIT data of a weighted tuple")
    p.add_argument("--q", required=True)
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument(
        "--forms", required=True, help='semicolon-separated forms, e.g. "0,0,0,0,1;1,0,0,0,0,0,0"'
    )
    common_output(p)
    p.set_defaults(fn=_cmd_stab)

    p = sub.add_parser("selfmaps", help="self-maps of P^1: classify or count")
    p.add_argument("action", choices=("classify", "count"))
    p.add_argument("--q", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--F", help="coefficients of F (X-ascending)")
    p.add_argument("--G", help="coefficients of G (X-ascending)")
    p.add_argument("--stab", action="store_true", help="also enumerate the stabilizer")
    common_counting(p)
    common_output(p)
    p.set_defaults(fn=_cmd_selfmaps)

    p = sub.add_parser("verify-suite", help="run the acceptance criteria")
    p.add_argument("--criteria", type=int, nargs="*", help="criterion numbers to run")
    p.add_argument("--workers", type=int, default=None)
    common_output(p)
    p.set_defaults(fn=_cmd_verify_suite)

    return top


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (CliError, CountingError, FieldError, SelfMapError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
