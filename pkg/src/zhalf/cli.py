"""Command-line front end: every operation behind one argparse tree, with a
machine-readable envelope and a verify suite that replays the numeric
claims the certification logic rests on.

Exit codes: 0 all ok, 1 an undetermined certification (or failed verify),
2 usage or domain errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional

from . import __version__, dedekind, lfunc, survey
from .mpreal import (
    BoundedReal,
    DomainError,
    PrecisionContext,
    PrecisionExhausted,
    constant_gamma,
    constant_log,
    constant_pi,
    exp,
    render,
)

ENV_DIGITS = "ZHALF_DIGITS"
MIN_CLI_DIGITS = 15
ERR_DIGITS = 3

EXIT_OK = 0
EXIT_UNDETERMINED = 1
EXIT_USAGE = 2


@dataclass
class Envelope:
    command: str
    inputs: dict
    results: List[dict] = field(default_factory=list)
    status: str = "ok"

    def add(self, name: str, value: BoundedReal, digits: int) -> None:
        self.results.append(
            {
                "name": name,
                "value": render(value, digits),
                "err": render(value.err, ERR_DIGITS),
            }
        )

    def add_text(self, name: str, text: str) -> None:
        self.results.append({"name": name, "value": text, "err": "0"})

    def to_json(self) -> str:
        payload = {
            "command": self.command,
            "inputs": self.inputs,
            "results": self.results,
            "status": self.status,
        }
        return json.dumps(payload, indent=2, sort_keys=True)

    def to_text(self) -> str:
        lines = [f"{r['name']} = {r['value']} ± {r['err']}" for r in self.results]
        lines.append(f"status: {self.status}")
        return "\n".join(lines)


def _default_digits() -> int:
    raw = os.environ.get(ENV_DIGITS)
    if raw is None:
        return 50
    try:
        return max(MIN_CLI_DIGITS, int(raw))
    except ValueError:
        return 50


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--digits", type=int, default=None, help="decimal digits (min 15)")
    p.add_argument(
        "--format",
        choices=("text", "json"),
        default="text",
        help="output format for the result envelope",
    )


def _ctx_for(args) -> PrecisionContext:
    digits = args.digits if args.digits is not None else _default_digits()
    return PrecisionContext(max(MIN_CLI_DIGITS, digits))


def _parse_s(raw: str) -> Fraction:
    return Fraction(raw)


def _parse_sig(raw: str) -> dedekind.FieldSignature:
    parts = raw.split(",")
    if len(parts) != 3:
        raise DomainError(f"--sig expects n,r1,d, got {raw!r}")
    n, r1, d = (int(p) for p in parts)
    if (n - r1) % 2 != 0 or r1 > n or r1 < 0:
        raise DomainError(f"r1 = {r1} not admissible for degree {n}")
    return dedekind.FieldSignature(n=n, r1=r1, r2=(n - r1) // 2, d=d)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="zhalf",
        description="Central values of Dedekind zeta and quadratic Dirichlet "
        "L-functions with rigorous error bounds.",
    )
    ap.add_argument("--version", action="version", version=f"zhalf {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("constants", help="the constant block of the factor derivative")
    _add_common(p)

    p = sub.add_parser("zeta", help="Riemann zeta and its derivative at s")
    p.add_argument("--s", type=_parse_s, default=Fraction(1, 2))
    _add_common(p)

    p = sub.add_parser("lvalue", help="L(s, chi_D) and dL/ds for fundamental D")
    p.add_argument("--disc", type=int, required=True)
    p.add_argument("--s", type=_parse_s, default=Fraction(1, 2))
    _add_common(p)

    p = sub.add_parser("field", help="central values for Q(sqrt(d)), d squarefree")
    p.add_argument("--squarefree", type=int, required=True, metavar="d")
    _add_common(p)

    p = sub.add_parser("criteria", help="non-vanishing certificate for a signature")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--r1", type=int, required=True)
    p.add_argument("--disc-abs", type=int, required=True)
    p.add_argument(
        "--abelian",
        action="store_true",
        help="use the degree-only abelian bound instead of the signature rules",
    )
    _add_common(p)

    p = sub.add_parser("exceptional", help="integer bracketing of the vanishing point")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--r1", type=int, required=True)
    _add_common(p)

    p = sub.add_parser("compare", help="gap quantities for two fields")
    p.add_argument("--quad", type=int, nargs=2, metavar=("d1", "d2"))
    p.add_argument("--sig", action="append", type=_parse_sig, metavar="n,r1,d")
    _add_common(p)

    p = sub.add_parser("survey", help="non-vanishing survey over chi_8d")
    p.add_argument("--limit", type=int, required=True)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out", type=str, default=None)
    p.add_argument(
        "--format", choices=("csv", "json"), default="csv", help="report file format"
    )
    p.add_argument("--digits", type=int, default=None)

    p = sub.add_parser("verify", help="replay the numeric claims behind the rules")
    p.add_argument("--digits", type=int, default=None)

    return ap


# -- subcommand bodies ---------------------------------------------------------


def _cmd_constants(args) -> int:
    ctx = _ctx_for(args)
    digs = ctx.digits
    env = Envelope("constants", {"digits": digs})
    gam = constant_gamma(ctx)
    half_pi = constant_pi(ctx) / 2
    log8pi = constant_log(8 * constant_pi(ctx), ctx)
    base = dedekind.log8pi_gamma(ctx)
    lo, hi = dedekind.threshold_constants(ctx)
    env.add("gamma", gam, digs)
    env.add("pi/2", half_pi, digs)
    env.add("log(8 pi)", log8pi, digs)
    env.add("log(8 pi) + gamma", base, digs)
    env.add("pi/2 + log(8 pi) + gamma", half_pi + log8pi + gam, digs)
    env.add("exp(log(8 pi) + gamma)", lo, digs)
    env.add("exp(pi/2 + log(8 pi) + gamma)", hi, digs)
    _emit(env, args)
    return EXIT_OK


def _cmd_zeta(args) -> int:
    ctx = _ctx_for(args)
    env = Envelope("zeta", {"s": str(args.s), "digits": ctx.digits})
    env.add("zeta(s)", lfunc.riemann_zeta(args.s, ctx), ctx.digits)
    env.add("zeta'(s)", lfunc.riemann_zeta_ds(args.s, ctx), ctx.digits)
    _emit(env, args)
    return EXIT_OK


def _cmd_lvalue(args) -> int:
    ctx = _ctx_for(args)
    env = Envelope("lvalue", {"disc": args.disc, "s": str(args.s), "digits": ctx.digits})
    env.add("L(s, chi_D)", lfunc.l_value(args.disc, args.s, ctx), ctx.digits)
    env.add("L'(s, chi_D)", lfunc.l_value_ds(args.disc, args.s, ctx), ctx.digits)
    _emit(env, args)
    return EXIT_OK


def _cmd_field(args) -> int:
    ctx = _ctx_for(args)
    d = args.squarefree
    env = Envelope("field", {"squarefree": d, "digits": ctx.digits})
    cv = lfunc.quad_central(d, ctx)
    sig = dedekind.FieldSignature.quadratic(d)
    cert = dedekind.certify(sig, ctx)
    env.add_text("discriminant", str(cv.discriminant))
    env.add("zeta_K(1/2)", cv.zeta_k, ctx.digits)
    env.add("zeta_K'(1/2) [product rule]", cv.zeta_k_prime, ctx.digits)
    env.add(
        "zeta_K'(1/2) [factor route]",
        -Fraction(1, 2) * cv.a_prime * cv.zeta_k,
        ctx.digits,
    )
    env.add("A_K'(1/2)", cv.a_prime, ctx.digits)
    if cv.log_ratio is not None:
        env.add("zeta_K'/zeta_K(1/2)", cv.log_ratio, ctx.digits)
    else:
        env.add_text("zeta_K'/zeta_K(1/2)", "undetermined")
    env.add_text("certification", _cert_text(cert))
    if cert.status != "certified_nonzero" or cv.log_ratio is None:
        env.status = "undetermined"
    _emit(env, args)
    return EXIT_OK if env.status == "ok" else EXIT_UNDETERMINED


def _cert_text(cert: dedekind.Certificate) -> str:
    if cert.status == "certified_nonzero":
        sgn = "+" if cert.sign > 0 else "-"
        return f"certified_nonzero sign={sgn} rule={cert.rule} margin={render(cert.margin, 8)}"
    return "undetermined"


def _cmd_criteria(args) -> int:
    ctx = _ctx_for(args)
    env = Envelope(
        "criteria",
        {
            "degree": args.degree,
            "r1": args.r1,
            "disc_abs": args.disc_abs,
            "abelian": bool(args.abelian),
            "digits": ctx.digits,
        },
    )
    if args.abelian:
        cert = dedekind.certify_abelian(args.degree, ctx)
    else:
        if (args.degree - args.r1) % 2 != 0 or not 0 <= args.r1 <= args.degree:
            raise DomainError(f"r1 = {args.r1} not admissible for degree {args.degree}")
        r2 = (args.degree - args.r1) // 2
        sig = dedekind.FieldSignature(
            n=args.degree, r1=args.r1, r2=r2, d=(-1) ** r2 * args.disc_abs
        )
        cert = dedekind.certify(sig, ctx)
    env.add_text("certificate", _cert_text(cert))
    env.add("margin", cert.margin, ctx.digits)
    if cert.status != "certified_nonzero":
        env.status = "undetermined"
    _emit(env, args)
    return EXIT_OK if env.status == "ok" else EXIT_UNDETERMINED


def _cmd_exceptional(args) -> int:
    ctx = _ctx_for(args)
    env = Envelope(
        "exceptional", {"degree": args.degree, "r1": args.r1, "digits": ctx.digits}
    )
    m, m1, ok = dedekind.exceptional_interval(args.degree, args.r1, ctx)
    env.add_text("lower", str(m))
    env.add_text("upper", str(m1))
    env.add_text("certified_strictly_between", "true" if ok else "false")
    _emit(env, args)
    return EXIT_OK


def _cmd_compare(args) -> int:
    ctx = _ctx_for(args)
    if args.quad and args.sig:
        raise DomainError("--quad and --sig are mutually exclusive")
    if args.quad:
        d1, d2 = args.quad
        env = Envelope("compare", {"quad": [d1, d2], "digits": ctx.digits})
        env.add("theorem1_gap", dedekind.theorem1_gap(d1, d2, ctx), ctx.digits)
    elif args.sig and len(args.sig) == 2:
        s1, s2 = args.sig
        env = Envelope(
            "compare",
            {
                "sig1": [s1.n, s1.r1, s1.d],
                "sig2": [s2.n, s2.r1, s2.d],
                "digits": ctx.digits,
            },
        )
        env.add("theorem6_gap", dedekind.theorem6_gap(s1, s2, ctx), ctx.digits)
        distinct = dedekind.theorem6_condition1(s1, s2)
        env.add_text(
            "|d_K|^m vs |d_L|^n", "distinct" if distinct else "equal"
        )
    else:
        raise DomainError("compare needs --quad d1 d2 or two --sig n,r1,d")
    _emit(env, args)
    return EXIT_OK


def _cmd_survey(args) -> int:
    digits = args.digits if args.digits is not None else _default_digits()
    ctx = PrecisionContext(max(MIN_CLI_DIGITS, digits))
    report = survey.run_survey(args.limit, ctx, worker_count=max(1, args.jobs))
    if args.out:
        if args.format == "csv":
            survey.write_csv(report, args.out)
        else:
            survey.write_json(report, args.out)
    summary = survey.report_to_json(report)["summary"]
    for key in ("limit", "digits", "total", "certified_nonzero", "undetermined", "proportion"):
        print(f"{key}: {summary[key]}")
    if args.out:
        print(f"report written to {args.out}")
    return EXIT_OK if report.undetermined == 0 else EXIT_UNDETERMINED


def _cmd_verify(args) -> int:
    digits = args.digits if args.digits is not None else _default_digits()
    ctx = PrecisionContext(max(MIN_CLI_DIGITS, digits))
    checks = run_verify_suite(ctx)
    width = max(len(name) for name, _ in checks)
    ok = True
    for name, passed in checks:
        print(f"{'PASS' if passed else 'FAIL'}  {name:<{width}}")
        ok = ok and passed
    print(f"verify: {'all checks passed' if ok else 'FAILURES PRESENT'} at {ctx.digits} digits")
    return EXIT_OK if ok else EXIT_UNDETERMINED


def run_verify_suite(ctx: PrecisionContext) -> List[tuple]:
    """(name, passed) pairs for the paper-claim replay."""
    checks: List[tuple] = []
    ec = ctx._err

    brackets = {(2, 0): (2003, 2004), (2, 2): (46368, 46369),
                (3, 1): (431471, 431472), (3, 3): (9984558, 9984559)}
    for (n, r1), (lo, hi) in brackets.items():
        try:
            m, m1, ok = dedekind.exceptional_interval(n, r1, ctx)
            x = exp(r1 * constant_pi(ctx) / 2 + n * dedekind.log8pi_gamma(ctx), ctx)
            margin = min(float(x.value) - m, m + 1 - float(x.value))
            passed = ok and (m, m1) == (lo, hi) and margin > 10 * float(x.err)
        except PrecisionExhausted:
            passed = False
        checks.append((f"bracket (n={n}, r1={r1}) in ({lo}, {hi})", passed))

    tlo, thi = dedekind.threshold_constants(ctx)
    checks.append(
        ("exp(log 8pi + gamma) in (44.762, 44.764)",
         float(tlo.lower()) > 44.762 and float(tlo.upper()) < 44.764)
    )
    checks.append(
        ("exp(pi/2 + log 8pi + gamma) in (215.332, 215.334)",
         float(thi.lower()) > 215.332 and float(thi.upper()) < 215.334)
    )

    below = dedekind.abelian_lower_bound_check(dedekind.ABELIAN_DEGREE_BOUND - 1, ctx)
    at = dedekind.abelian_lower_bound_check(dedekind.ABELIAN_DEGREE_BOUND, ctx)
    checks.append((f"abelian bound negative at n={dedekind.ABELIAN_DEGREE_BOUND - 1}",
                   below.sign() < 0))
    checks.append((f"abelian bound positive at n={dedekind.ABELIAN_DEGREE_BOUND}",
                   at.sign() > 0))

    half = Fraction(1, 2)
    tight = 10.0 ** (-(ctx.digits - 12))
    sig_q = dedekind.FieldSignature.rationals()
    resid = lfunc.riemann_zeta_ds(half, ctx) + half * dedekind.a_prime_half(
        sig_q, ctx
    ) * lfunc.riemann_zeta(half, ctx)
    checks.append(
        ("derivative identity for the rationals",
         abs(float(resid.value)) <= float(resid.err) and float(resid.err) < tight)
    )

    spot_ok = True
    for sig in (
        sig_q,
        dedekind.FieldSignature(2, 2, 0, 5),
        dedekind.FieldSignature(2, 0, 1, -4),
        dedekind.FieldSignature(3, 1, 1, -23),
        dedekind.FieldSignature(4, 0, 2, 117),
    ):
        a = dedekind.a_factor(sig, half, ctx)
        gap = abs(a - 1)
        spot_ok = spot_ok and float(gap.value) <= float(gap.err) < tight
    checks.append(("factor equals 1 at the central point (spot checks)", spot_ok))

    return checks


def _emit(env: Envelope, args) -> None:
    fmt = getattr(args, "format", "text")
    print(env.to_json() if fmt == "json" else env.to_text())


_DISPATCH = {
    "constants": _cmd_constants,
    "zeta": _cmd_zeta,
    "lvalue": _cmd_lvalue,
    "field": _cmd_field,
    "criteria": _cmd_criteria,
    "exceptional": _cmd_exceptional,
    "compare": _cmd_compare,
    "survey": _cmd_survey,
    "verify": _cmd_verify,
}


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse exits 2 on usage errors, 0 on --help
        return int(exc.code or 0)
    try:
        return _DISPATCH[args.command](args)
    except (DomainError, PrecisionExhausted, ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except lfunc.RouteDisagreement as exc:
        print(f"internal consistency failure: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
