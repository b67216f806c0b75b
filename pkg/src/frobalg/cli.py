"""frobalg command line: verification suites, specialization, traces and surface data.

Exit codes: 0 all hard checks pass, 1 a hard check failed, 2 bad input or fixture.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import checks
from .expr import alpha_count, is_torus_expression, parse_terms, to_bigon, to_torus
from .oqsl2 import InsideW, OqSL2
from .qtorus import QuantumTorus, SkewForm, central_lattice
from .qtorus.forms import FixtureInvalid
from .surface import PbSurface, UnsupportedSurface, surface_info
from .trace_engine import frobenius_certificate, trace_f

log = logging.getLogger("frobalg")

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


def _odd_n(text: str) -> int:
    n = int(text)
    if n < 3 or n % 2 == 0:
        raise argparse.ArgumentTypeError("N must be an odd integer >= 3")
    return n


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=_odd_n, default=3, help="order of the root of unity (odd, >= 3)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--report", type=Path, help="write the JSON report here")
    common.add_argument("--exploratory", action="store_true", help="also run exploratory checks")
    common.add_argument("--no-timings", action="store_true", help="omit elapsed times from reports")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="frobalg", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", parents=[common], help="run a verification suite")
    verify.add_argument("suite", choices=checks.SUITES)
    verify.add_argument("--form", type=Path, help="skew-form fixture for the torus suite")
    verify.add_argument("--square", type=Path, help="square-surface fixture with its skew form")
    verify.add_argument("--w-point", type=Path, action="append", default=[], help="SL_2 point in W (exploratory)")
    verify.add_argument("--only", action="append", help="run only the named check (repeatable)")

    spec = sub.add_parser("specialize", parents=[common], help="specialize O_q(SL_2) at a point of SL_2")
    spec.add_argument("--rho", type=Path, required=True)
    spec.add_argument("--dump", type=Path, help="write the structure constants as JSON")

    tr = sub.add_parser("trace", parents=[common], help="trace of an element")
    tr.add_argument("--element", required=True)
    tr.add_argument("--over", choices=("frobenius", "center"), required=True)
    tr.add_argument("--form", type=Path, help="skew form for torus expressions")

    surf = sub.add_parser("surface", parents=[common], help="surface invariants")
    surf_sub = surf.add_subparsers(dest="surface_command", required=True)
    info = surf_sub.add_parser("info", parents=[common])
    info.add_argument("--fixture", type=Path, required=True)
    return parser


def _emit(payload: dict, report: Path | None) -> None:
    text = json.dumps(payload, indent=2, sort_keys=True)
    if report:
        report.write_text(text + "\n")
    print(text)


def cmd_verify(args) -> int:
    ctx = checks.Context(N=args.n, seed=args.seed, form=args.form, w_points=args.w_point)
    if args.square:
        ctx.square = args.square
    try:
        selected = checks.select(args.suite, args.exploratory, args.only)
    except KeyError as exc:
        log.error("%s", exc.args[0])
        return EXIT_INPUT
    report = checks.run_checks(selected, ctx, timings=not args.no_timings)
    report["suite"] = args.suite
    _emit(report, args.report)
    for rec in report["checks"]:
        log.info("%-28s %s", rec["name"], rec["status"])
    return EXIT_OK if report["passed"] else EXIT_FAIL


def cmd_specialize(args) -> int:
    O = OqSL2(args.n)
    rho = checks.load_rho(args.rho, args.n)
    out = {"rho": rho.to_json(), "N": args.n}
    try:
        alg = O.specialize(rho)
        out["basis"] = alg.meta["kind"]
    except InsideW:
        if not args.exploratory:
            log.error("point lies in W (rho(a) = rho(d) = 0); pass --exploratory to use the quotient construction")
            return EXIT_INPUT
        alg = O.specialize_quotient(rho)
        out["basis"] = "quotient"
        out["exploratory"] = True
    cert = frobenius_certificate(alg)
    out.update(
        dim=alg.dim,
        trace_one=trace_f(alg.unit, alg).to_json(),
        symmetric=cert.symmetric,
        determinant=cert.determinant.to_json(),
        verdict=cert.verdict,
    )
    if args.dump:
        args.dump.write_text(alg.dumps() + "\n")
    _emit(out, args.report)
    return EXIT_OK


def cmd_trace(args) -> int:
    terms = parse_terms(args.element)
    if is_torus_expression(terms):
        if args.form is None:
            raise FixtureInvalid("torus expressions need --form")
        form = SkewForm.load(args.form)
        na = alpha_count(terms)
        torus = QuantumTorus(form, args.n, tuple(f"alpha{p}" for p in range(na)))
        t = to_torus(torus, terms)
        if args.over == "frobenius":
            result = torus.trace_over_frobenius(t)
        else:
            result = torus.trace_over_center(t, central_lattice(form, args.n))
        out = {"kind": "torus", "element": t.to_json(), "trace": result.to_json(), "text": repr(result)}
    else:
        O = OqSL2(args.n)
        x = to_bigon(O, terms)
        result = O.trace_over_frobenius_fraction(x) if args.over == "frobenius" else O.trace_over_center_fraction(x)
        out = {"kind": "bigon", "element": x.to_json(), "generators": ["d", "b", "c"], "trace": result.to_json(), "text": repr(result)}
    out.update(over=args.over, N=args.n, input=args.element)
    _emit(out, args.report)
    return EXIT_OK


def cmd_surface(args) -> int:
    s = PbSurface.load(args.fixture)
    _emit(surface_info(s, args.n), args.report)
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(message)s",
        stream=sys.stderr,
    )
    handler = {"verify": cmd_verify, "specialize": cmd_specialize, "trace": cmd_trace, "surface": cmd_surface}[args.command]
    try:
        return handler(args)
    except (FixtureInvalid, UnsupportedSurface) as exc:
        log.error("invalid input: %s", exc)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
