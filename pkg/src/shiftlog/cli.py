"""Command-line front end: ``shiftlog {measure,table,verify,pade}``."""

from __future__ import annotations

import argparse
import json
import shlex
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from .balls import ComplexBall
from .document import dumps, to_document
from .exact import Poly
from .inputs import (
    BetaSpec,
    ParseError,
    parse_beta,
    parse_complex,
    parse_expr,
    parse_int_list,
    parse_rational,
    parse_rational_list,
    parse_root_selector,
)
from .measure import (
    CERTIFIED,
    DEFAULT_MU_WIDTH,
    DEFAULT_START_PREC,
    HYPOTHESIS_FAILED,
    LAMBDA_NOT_POSITIVE,
    PRECISION_CAP_HIT,
    certify,
)
from .numfield import PRECISION_CAP

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_HYPOTHESIS = 2
EXIT_LAMBDA = 3
EXIT_PRECISION = 4
EXIT_PARSE = 5

STATUS_EXIT = {
    CERTIFIED: EXIT_OK,
    HYPOTHESIS_FAILED: EXIT_HYPOTHESIS,
    LAMBDA_NOT_POSITIVE: EXIT_LAMBDA,
    PRECISION_CAP_HIT: EXIT_PRECISION,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_PARSE)


def _add_beta_args(p: argparse.ArgumentParser):
    g = p.add_argument_group("beta")
    g.add_argument("--beta", help="compact form, e.g. poly:-2,1 or field:-2,0,1;expr=-6-5*Y;root=near:1.41")
    g.add_argument("--poly", help="integer coefficients of beta's polynomial, constant term first")
    g.add_argument("--root", help="root selector: index:K or near:a+bi")
    g.add_argument("--field-poly", help="defining polynomial of a field generator Y, constant term first")
    g.add_argument("--field-root", help="which root of the field polynomial Y stands for")
    g.add_argument("--expr", help="rational expression in Y giving beta")
    g.add_argument("--high-first", action="store_true", help="read coefficient lists leading term first")


def _add_precision_args(p: argparse.ArgumentParser):
    p.add_argument("--precision-bits", type=int, default=DEFAULT_START_PREC)
    p.add_argument("--precision-cap", type=int, default=PRECISION_CAP)
    p.add_argument("--mu-width", type=float, default=DEFAULT_MU_WIDTH, help="relative width target of the mu interval")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="shiftlog", description="Effective approximation measures for shifted logarithms.")
    ap.add_argument("--config", help="file of flags ('--flag value' or 'flag = value' lines)")
    ap.add_argument("--jobs", type=int, default=1, help="worker processes for table/verify")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    m = sub.add_parser("measure", help="certify a mu bound for one (beta, x)")
    _add_beta_args(m)
    m.add_argument("--x", default="0", help="shift x in [0,1) as a/b")
    _add_precision_args(m)
    m.add_argument("--output", help="write the certificate document to this file")
    m.add_argument("--timing", action="store_true", help="include elapsed time in the (unhashed) meta section")

    t = sub.add_parser("table", help="recompute the reference table")
    _add_precision_args(t)

    v = sub.add_parser("verify", help="run property suites")
    v.add_argument("suite", choices=["pade", "integrality", "perron", "heights", "denominators", "all"])
    _add_beta_args(v)
    v.add_argument("--nmax", type=int, default=None)
    v.add_argument("--x", default=None, help="comma-separated shifts")

    pd = sub.add_parser("pade", help="print Q_n, P_n and optionally their values at z")
    pd.add_argument("--n", type=int, required=True)
    pd.add_argument("--x", default="0")
    pd.add_argument("--z", help="evaluation point: rational a/b or complex a+bi")
    pd.add_argument("--precision-bits", type=int, default=128)
    return ap


def _config_tokens(path: str) -> list[str]:
    tokens = []
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            s = line.split("#", 1)[0].strip()
            if not s:
                continue
            if s.startswith("--"):
                tokens += shlex.split(s)
            elif "=" in s:
                k, v = s.split("=", 1)
                tokens += ["--" + k.strip().replace("_", "-"), v.strip()]
            else:
                raise ParseError("expected '--flag value' or 'flag = value'", line.rstrip("\n"), 0, lineno)
    return tokens


def _expand_config(argv: list[str]) -> list[str]:
    """Insert config-file flags after the subcommand; explicit flags win."""
    if "--config" not in argv:
        return argv
    i = argv.index("--config")
    path = argv[i + 1]
    rest = argv[:i] + argv[i + 2 :]
    cmds = {"measure", "table", "verify", "pade"}
    pos = next((j for j, a in enumerate(rest) if a in cmds), None)
    if pos is None:
        return rest
    j = pos + 2 if rest[pos] == "verify" and pos + 1 < len(rest) else pos + 1
    return rest[:j] + _config_tokens(path) + rest[j:]


def beta_from_args(a) -> BetaSpec:
    if a.beta:
        if any([a.poly, a.field_poly, a.expr]):
            raise ParseError("--beta cannot be combined with --poly/--field-poly/--expr")
        return parse_beta(a.beta)
    if a.poly and a.field_poly:
        raise ParseError("give --poly or --field-poly, not both")
    if a.poly:
        if a.expr:
            raise ParseError("--expr needs --field-poly")
        root = parse_root_selector(a.root) if a.root else BetaSpec.root
        return BetaSpec(poly=parse_int_list(a.poly, a.high_first), root=root, label=a.poly)
    if a.field_poly:
        if not a.expr:
            raise ParseError("--field-poly needs --expr")
        root = parse_root_selector(a.field_root or a.root) if (a.field_root or a.root) else BetaSpec.root
        spec = BetaSpec(field_poly=parse_int_list(a.field_poly, a.high_first), field_root=root, expr=a.expr, label=a.expr)
        parse_expr(a.expr, Poly(spec.field_poly))
        return spec
    raise ParseError("no beta given (use --beta, --poly or --field-poly)")


def cmd_measure(a) -> int:
    spec = beta_from_args(a)
    x = parse_rational(a.x)
    t0 = time.perf_counter()
    cert = certify(spec, x, a.mu_width, a.precision_bits, a.precision_cap)
    doc = to_document(cert, time.perf_counter() - t0 if a.timing else None)
    text = dumps(doc)
    if a.output:
        with open(a.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if cert.status != CERTIFIED:
        print(f"shiftlog: {cert.status}: {cert.message}", file=sys.stderr)
    return STATUS_EXIT[cert.status]


def _table_row(args):
    i, prec, cap, width = args
    from .table import TABLE_ROWS

    row = TABLE_ROWS[i]
    cert = certify(row.beta, row.x, width, prec, cap)
    value = float(cert.mu.mid) if cert.mu is not None else None
    return i, cert.status, value


def run_table(prec=DEFAULT_START_PREC, cap=PRECISION_CAP, width=DEFAULT_MU_WIDTH, jobs: int = 1):
    from .table import TABLE_ROWS

    work = [(i, prec, cap, width) for i in range(len(TABLE_ROWS))]
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as ex:
            results = list(ex.map(_table_row, work))
    else:
        results = [_table_row(w) for w in work]
    out = []
    for i, status, value in sorted(results):
        row = TABLE_ROWS[i]
        ok = status == CERTIFIED and value is not None and row.matches(value)
        out.append((row, status, value, ok))
    return out


def cmd_table(a) -> int:
    rows = run_table(a.precision_bits, a.precision_cap, a.mu_width, a.jobs)
    print(f"{'beta':26} {'x':>4} {'printed':>9} {'computed':>12}  result")
    for row, status, value, ok in rows:
        shown = f"{value:.7f}" if value is not None else status
        print(f"{row.label:26} {str(row.x):>4} {row.printed:>9} {shown:>12}  {'PASS' if ok else 'FAIL'}")
    n_ok = sum(r[3] for r in rows)
    print(f"{n_ok}/{len(rows)} rows match at printed precision")
    return EXIT_OK if n_ok == len(rows) else EXIT_FAILED


def cmd_verify(a) -> int:
    from . import verify as V

    results = []
    suites = ["pade", "integrality", "perron", "heights", "denominators"] if a.suite == "all" else [a.suite]
    has_beta = any([a.beta, a.poly, a.field_poly])
    spec = beta_from_args(a) if has_beta else parse_beta("poly:-2,1")
    xs = parse_rational_list(a.x) if a.x else None
    for s in suites:
        if s == "pade":
            results += V.pade_suite(a.nmax or 40, xs or V.DEFAULT_XS)
        elif s == "integrality":
            results += V.integrality_suite(nmax=a.nmax or 40, xs=xs or V.DEFAULT_XS)
        elif s == "perron":
            results += V.perron_suite(spec, xs or (Fraction(0),), a.nmax or 2000)
        elif s == "heights":
            n_hi = a.nmax or 200
            for x in xs or (Fraction(0),):
                results += V.heights_suite(spec, x, min(50, n_hi), n_hi)
                num = spec.resolve(128).number
                if num.degree == 1:
                    results += V.convergence_suite(-num.min_poly[0] / num.min_poly[1], x)
        elif s == "denominators":
            results += V.denominators_suite(xs or (Fraction(1, 3), Fraction(1, 5)), a.nmax or 3000)
    for r in results:
        print(json.dumps(r.to_dict(), default=str, sort_keys=True))
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAILED


def cmd_pade(a) -> int:
    from .pade import build_explicit, eval_R

    x = parse_rational(a.x)
    if a.n < 0:
        raise ParseError("n must be non-negative", str(a.n), 0)
    pair = build_explicit(a.n, x)
    print(f"Q={pair.Q.to_str('z')}")
    print(f"P={pair.P.to_str('z')}")
    if a.z is None:
        return EXIT_OK
    prec = a.precision_bits
    try:
        z = parse_rational(a.z)
    except ParseError:
        c = parse_complex(a.z)
        z = ComplexBall.from_rational(Fraction(c.real), prec, Fraction(c.imag))
    if isinstance(z, Fraction):
        print(f"Q(z)={pair.Q(z)}")
        print(f"P(z)={pair.P(z)}")
        if pair.Q(z) != 0:
            print(f"Theta={pair.P(z) / pair.Q(z)}")
        zb = ComplexBall.from_rational(z, prec)
    else:
        zb = z
        qv = ComplexBall.coerce(pair.Q(zb), prec)
        pv = ComplexBall.coerce(pair.P(zb), prec)
        print(f"Q(z)={qv.to_str(20)}")
        print(f"P(z)={pv.to_str(20)}")
        if not qv.contains_zero():
            print(f"Theta={(pv / qv).to_str(20)}")
    if zb.abs_lower() > 1:
        print(f"R(z)={eval_R(a.n, x, zb).to_str(20)}")
    return EXIT_OK


COMMANDS = {"measure": cmd_measure, "table": cmd_table, "verify": cmd_verify, "pade": cmd_pade}


_VALUE_FLAGS = {"--beta", "--poly", "--root", "--field-poly", "--field-root", "--expr", "--x", "--z"}


def _glue_negative_values(argv: list[str]) -> list[str]:
    """Let '--poly -2,1' mean '--poly=-2,1' (argparse would read -2,1 as a flag)."""
    out, i = [], 0
    while i < len(argv):
        a = argv[i]
        if a in _VALUE_FLAGS and i + 1 < len(argv) and argv[i + 1].startswith("-") and not argv[i + 1].startswith("--"):
            out.append(f"{a}={argv[i + 1]}")
            i += 2
        else:
            out.append(a)
            i += 1
    return out


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        argv = _glue_negative_values(_expand_config(argv))
        args = build_parser().parse_args(argv)
        return COMMANDS[args.command](args)
    except ParseError as e:
        print(f"shiftlog: parse error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except OSError as e:
        print(f"shiftlog: {e}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
