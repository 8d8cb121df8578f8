"""Command-line front end: ``qcx <subcommand> ...``.

Exit codes: 0 on success or when every selected check passes, 1 when a
check fails, 2 on usage errors.  Rationals are always printed as "p/q".
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from typing import Optional, Sequence

from .construction import NoNegativeMass, build_profile, density_field, evaluate_Q, profile_volume
from .extremes import Sign, extreme_table, extreme_volume
from .rational import alt_binom_tail, alt_binom_tail_closed, format_rational, parse_rational
from .recursions import build_tables, verify_alpha_beta_gamma

__all__ = ["run", "main", "format_table"]


class UsageError(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _latex_cell(v: Fraction) -> str:
    if v.denominator == 1:
        return f"${v.numerator}$"
    sign = "-" if v < 0 else ""
    return f"${sign}\\tfrac{{{abs(v.numerator)}}}{{{v.denominator}}}$"


def format_table(d_max: int, sign, fmt: str) -> str:
    sign = Sign.parse(sign)
    table = extreme_table(d_max, sign)
    ds = list(range(2, d_max + 1))
    ks = list(range(2, d_max + 1))

    def cell(k, d, render):
        v = table[k, d]
        return "" if v is None else render(v)

    if fmt == "json":
        return _dump(
            {
                "sign": sign.value,
                "dmax": d_max,
                "rows": {str(k): {str(d): format_rational(table[k, d]) for d in ds if k <= d} for k in ks},
            }
        )
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["k\\d"] + ds)
        for k in ks:
            w.writerow([k] + [cell(k, d, format_rational) for d in ds])
        return buf.getvalue()
    if fmt == "md":
        lines = ["| k\\d | " + " | ".join(map(str, ds)) + " |", "|" + "---|" * (len(ds) + 1)]
        for k in ks:
            lines.append(f"| {k} | " + " | ".join(cell(k, d, format_rational) for d in ds) + " |")
        return "\n".join(lines) + "\n"
    if fmt == "latex":
        caption = "Minimal" if sign is Sign.MINUS else "Maximal"
        lines = [
            r"\begin{table}[h!]",
            rf"\caption{{{caption} values of $V_Q(\mathcal B)$ over $d$-variate $k$-increasing quasi-copulas.}}",
            r"\begin{tabular}{|" + "c|" * (len(ds) + 1) + "}",
            r"\hline",
            r"$k\backslash d$ & " + " & ".join(map(str, ds)) + r" \\",
            r"\hline",
        ]
        for k in ks:
            lines.append(f"{k} & " + " & ".join(cell(k, d, _latex_cell) for d in ds) + r" \\")
            lines.append(r"\hline")
        lines += [r"\end{tabular}", r"\end{table}"]
        return "\n".join(lines) + "\n"
    raise UsageError(f"unknown format {fmt!r}")


def _cmd_tables(args) -> tuple[int, str]:
    return 0, _dump(build_tables(args.d, args.k).to_json())


def _cmd_extremes(args) -> tuple[int, str]:
    ev = extreme_volume(args.d, args.k, args.sign)
    out = ev.to_json()
    out["i0"] = ev.witness_index
    return 0, _dump(out)


def _cmd_table(args) -> tuple[int, str]:
    return 0, format_table(args.dmax, args.sign, args.format)


def _parse_point(text: str, d: int) -> list[Fraction]:
    try:
        point = [parse_rational(t) for t in text.split(",")]
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(str(exc)) from None
    if len(point) != d:
        raise UsageError(f"--eval needs {d} coordinates, got {len(point)}")
    return point


def _cmd_construct(args) -> tuple[int, str]:
    try:
        p = build_profile(args.d, args.k, args.sign)
    except NoNegativeMass as exc:
        return 0, _dump({"d": args.d, "k": args.k, "sign": args.sign, "constructed": False, "reason": str(exc)})
    out = p.to_json()
    out["constructed"] = True
    if args.eval:
        x = _parse_point(args.eval, args.d)
        try:
            out["eval"] = {"x": [format_rational(v) for v in x], "Q": format_rational(evaluate_Q(density_field(p), x))}
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    return 0, _dump(out)


def _cmd_verify(args) -> tuple[int, str]:
    from .lp.builders import build_reduced_lp
    from .lp.duality import canonical_dual, check_complementary_slackness, reduced_point_from_profile
    from .verify import (
        BRUTE_FORCE_DMAX,
        check_k_increasing_extension,
        check_quasi_copula_axioms,
        check_symmetric_feasibility,
        grid_values,
    )

    if args.brute_force and args.d > BRUTE_FORCE_DMAX:
        raise UsageError(f"--brute-force is capped at d <= {BRUTE_FORCE_DMAX} (set QCX_BRUTE_FORCE_DMAX to raise it)")
    ev = extreme_volume(args.d, args.k, args.sign)
    out = {"d": args.d, "k": args.k, "sign": ev.sign.value, "value": format_rational(ev.value)}
    try:
        p = build_profile(args.d, args.k, args.sign)
    except NoNegativeMass:
        out.update(constructed=False, passed=True, checks={})
        return 0, _dump(out)
    checks = {
        "volume": {"passed": profile_volume(p) == ev.value, "volume": format_rational(profile_volume(p))},
        "symmetric_feasibility": check_symmetric_feasibility(p).to_json(),
        "complementary_slackness": check_complementary_slackness(
            build_reduced_lp(args.d, args.k, args.sign), reduced_point_from_profile(p), canonical_dual(args.d, args.k, args.sign)
        ).to_json(),
    }
    if args.brute_force:
        f = density_field(p)
        values = grid_values(f)
        checks["quasi_copula_axioms"] = check_quasi_copula_axioms(f, values=values).to_json()
        checks["k_increasing"] = check_k_increasing_extension(f, args.k, values=values).to_json()
    passed = all(c["passed"] for c in checks.values())
    out.update(constructed=True, passed=passed, checks=checks)
    return (0 if passed else 1), _dump(out)


def _cmd_lp_oracle(args) -> tuple[int, str]:
    from .lp import CertificateError, solve_simplex
    from .lp.builders import build_lp

    lp = build_lp(args.variant, args.d, args.k, args.sign)
    try:
        result = solve_simplex(lp)
    except CertificateError as exc:
        return 1, _dump({"status": "certificate-failed", "error": str(exc)})
    out = {"d": args.d, "k": args.k, "sign": args.sign, "variant": args.variant, **result.to_json(lp)}
    code = 0
    if args.certify:
        expected = extreme_volume(args.d, args.k, args.sign).value
        agrees = result.optimum == expected
        out["closed_form"] = format_rational(expected)
        out["agrees_with_closed_form"] = agrees
        code = 0 if agrees and result.certified else 1
    return code, _dump(out)


def _cmd_identities(args) -> tuple[int, str]:
    abg = all(
        verify_alpha_beta_gamma(build_tables(d, k)) for d in range(2, args.dmax + 1) for k in range(2, d + 1)
    )
    gamma_top = all(
        build_tables(d, k).gamma[j, d] == 1
        for d in range(2, args.dmax + 1)
        for k in range(2, d + 1)
        for j in range(2, k + 1)
    )
    alt = all(
        alt_binom_tail(r, n) == alt_binom_tail_closed(r, n) for r in range(args.rmax + 1) for n in range(r + 1)
    )
    out = {
        "alpha_plus_beta_equals_gamma": abg,
        "gamma_last_is_one": gamma_top,
        "alternating_binomial": alt,
        "dmax": args.dmax,
        "rmax": args.rmax,
    }
    return (0 if abg and gamma_top and alt else 1), _dump(out)


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qcx", description=__doc__.splitlines()[0])
    parser.add_argument("--out", metavar="FILE", help="write output to FILE instead of stdout")
    sub = parser.add_subparsers(dest="command", required=True)

    def dk(p):
        p.add_argument("--d", type=int, required=True)
        p.add_argument("--k", type=int, required=True)

    def signed(p):
        p.add_argument("--sign", choices=["minus", "plus"], required=True)

    p = sub.add_parser("tables", help="gamma/alpha/beta coefficient tables as JSON")
    dk(p)
    p.set_defaults(func=_cmd_tables)

    p = sub.add_parser("extremes", help="one extreme volume with its witness index")
    dk(p)
    signed(p)
    p.set_defaults(func=_cmd_extremes)

    p = sub.add_parser("table", help="the full extreme-volume table up to d = dmax")
    p.add_argument("--dmax", type=int, default=15)
    signed(p)
    p.add_argument("--format", choices=["csv", "md", "latex", "json"], default="csv")
    p.set_defaults(func=_cmd_table)

    p = sub.add_parser("construct", help="the extremal box and vertex profile")
    dk(p)
    signed(p)
    p.add_argument("--format", choices=["json"], default="json")
    p.add_argument("--eval", metavar="X1,...,XD", help="evaluate the extension at a rational point")
    p.set_defaults(func=_cmd_construct)

    p = sub.add_parser("verify", help="check the construction; exit 1 on any violation")
    dk(p)
    signed(p)
    p.add_argument("--brute-force", action="store_true", help="also enumerate every face of every subbox")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("lp-oracle", help="solve one LP family exactly")
    dk(p)
    signed(p)
    p.add_argument("--variant", choices=["full", "symmetric", "reduced", "dual"], default="symmetric")
    p.add_argument("--certify", action="store_true", help="compare with the closed form; exit 1 on mismatch")
    p.set_defaults(func=_cmd_lp_oracle)

    p = sub.add_parser("identities", help="sweep the coefficient and binomial identities")
    p.add_argument("--dmax", type=int, default=20)
    p.add_argument("--rmax", type=int, default=20)
    p.set_defaults(func=_cmd_identities)
    return parser


def run(argv: Optional[Sequence[str]] = None) -> tuple[int, str]:
    """Parse ``argv`` and return ``(exit_code, stdout_text)``; usage errors go to stderr."""
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0), ""
    try:
        code, text = args.func(args)
    except (UsageError, ValueError) as exc:
        parser.print_usage(sys.stderr)
        print(f"qcx: error: {exc}", file=sys.stderr)
        return 2, ""
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        return code, ""
    return code, text


def main(argv: Optional[Sequence[str]] = None) -> int:
    code, text = run(argv)
    sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
