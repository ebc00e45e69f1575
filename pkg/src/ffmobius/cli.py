"""Command-line entry point: ``ffmobius {scan,verify,approx,lfunc,sum}``.

Exit codes: 0 pass, 1 usage error, 2 resource guard, 3 verification failure.
Reports go to stdout (or ``--out``) and are byte-identical for identical
arguments; timings go to stderr, or into the report with ``--timing``.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

import numpy as np

from . import __version__, bounds, lfunc, verify
from .expsum import EQ_TOL, MAX_SCAN_WORK, brute_sum, decomposition_sum, scan_max
from .fq import FieldError, parse_field
from .hayes import HayesModulus, ResourceError, unit_group
from .laurent import PrecisionError, agreement_length, approx, expand_rational, parse_torus
from .polyring import PolyError, deg, ring_for

SCHEMA_VERSION = 1

EXIT_OK, EXIT_USAGE, EXIT_RESOURCE, EXIT_FAIL = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad arguments; 2 is reserved for the resource guard
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _num(x: float) -> str:
    x = float(x)
    if abs(x) < 1e-12:
        x = 0.0
    return f"{x:.12g}"


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if math.isinf(x) or math.isnan(x):
            return repr(x)
        return x
    if isinstance(obj, complex):
        return [float(obj.real), float(obj.imag)]
    return obj


def _tolerances(args) -> dict:
    return {
        "equality": args.tol if args.tol is not None else EQ_TOL,
        "weil_root": args.tol if args.tol is not None else lfunc.ROOT_TOL,
        "coefficient": lfunc.COEFF_TOL,
    }


def _header(args, field) -> dict:
    config = {k: v for k, v in sorted(vars(args).items()) if k not in ("func", "out", "timing")}
    return {
        "schema_version": SCHEMA_VERSION,
        "command": args.command,
        "config": config,
        "version": __version__,
        "field": field.token() if field is not None else None,
        "tolerances": _tolerances(args),
    }


def _csv_preamble(header: dict) -> str:
    lines = [f"# {k}: {json.dumps(_jsonable(v), sort_keys=True)}" for k, v in header.items()]
    return "\n".join(lines) + "\n"


def _emit(args, text: str) -> None:
    if args.out:
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dump_json(obj: dict) -> str:
    return json.dumps(_jsonable(obj), indent=2, sort_keys=False) + "\n"


def _single_object(args, report: dict) -> str:
    if args.format == "json":
        return _dump_json(report)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["key", "value"])
    for k, v in report.items():
        w.writerow([k, v if isinstance(v, str) else json.dumps(_jsonable(v))])
    return buf.getvalue()


def _field(args):
    try:
        return parse_field(args.q)
    except FieldError as exc:
        raise UsageError(str(exc)) from exc


# -- commands ------------------------------------------------------------------------


def cmd_scan(args) -> int:
    field = _field(args)
    ring = ring_for(field)
    if args.n is None:
        raise UsageError("scan needs --n")
    if args.n < 1:
        raise UsageError("--n must be >= 1")
    if args.jobs < 1:
        raise UsageError("--jobs must be >= 1")
    rep = scan_max(
        ring, args.n, jobs=args.jobs, sample=args.sample, seed=args.seed, max_work=args.max_work
    )
    print(f"scan q={ring.q} n={args.n}: {rep.runtime:.3f}s", file=sys.stderr)
    header = _header(args, field)
    summary = {
        "rows": len(rep.thetas),
        "sampled": rep.sampled,
        "max": rep.max_abs,
        "argmax": rep.argmax,
        "bound": rep.bound,
        "ratio": rep.ratio,
        "trivial_bound": ring.q**args.n,
        "verdict": rep.verdict,
    }
    if args.timing:
        summary["runtime"] = rep.runtime
    if args.format == "json":
        out = dict(header)
        out["summary"] = summary
        out["rows"] = [
            {"theta": t, "re": float(v.real), "im": float(v.imag), "abs": float(abs(v))}
            for t, v in zip(rep.thetas, rep.values)
        ]
        text = _dump_json(out)
    else:
        buf = io.StringIO()
        buf.write(_csv_preamble(header))
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["theta", "re", "im", "abs"])
        for t, v in zip(rep.thetas, rep.values):
            w.writerow([t, _num(v.real), _num(v.imag), _num(abs(v))])
        bound = "none" if rep.bound is None else _num(rep.bound)
        buf.write(
            f"# summary: verdict={rep.verdict} max={_num(rep.max_abs)} "
            f"argmax={rep.argmax} bound={bound} rows={len(rep.thetas)}\n"
        )
        if args.timing:
            buf.write(f"# runtime: {rep.runtime:.6f}\n")
        text = buf.getvalue()
    _emit(args, text)
    return EXIT_FAIL if rep.verdict == "FAIL" else EXIT_OK


def _run_suite(name: str, ring, args) -> verify.SuiteResult:
    n, tol = args.n, args.tol
    eq_tol = tol if tol is not None else EQ_TOL
    small = lambda ns: None if ring.q ** (max(ns) + 1) <= 1024 else 50  # noqa: E731
    if name == "lemma1":
        return verify.suite_lemma1(ring, n_max=n if n is not None else 8, tol=eq_tol)
    if name == "lemma2":
        return verify.suite_lemma2(ring, n if n is not None else 8)
    if name == "lemma3":
        return verify.suite_lemma3(ring, (n,) if n is not None else (4, 6))
    if name == "lemma4":
        return verify.suite_lemma4(ring, n if n is not None else 8)
    if name == "pnt":
        return verify.suite_pnt(ring, n)
    if name in ("weil", "orthogonality"):
        single = None
        if args.g is not None or args.s is not None:
            g = ring.parse(args.g) if args.g is not None else (1,)
            single = HayesModulus(args.s or 0, g)
        if name == "weil":
            return verify.suite_weil(
                ring, single, tol=tol if tol is not None else lfunc.ROOT_TOL
            )
        if single is not None:
            res = verify.SuiteResult("orthogonality")
            grp = unit_group(ring, single)
            T = grp.char_table()
            res.checks = 1
            if np.max(np.abs(T @ T.conj().T - grp.order * np.eye(grp.order))) > 1e-9:
                res.fail(f"{single}: rows not orthogonal")
            return res
        return verify.suite_orthogonality(ring)
    if name == "oracle":
        ns = (n,) if n is not None else (3, 4, 5)
        return verify.suite_oracle(ring, ns, small(ns), args.seed or 0, eq_tol)
    if name == "gauss":
        ns = (n,) if n is not None else (3, 4, 5)
        return verify.suite_gauss(ring, ns, small(ns), args.seed or 0)
    if name == "robbins":
        return verify.suite_robbins(n if n is not None else 100)
    if name == "chain":
        return verify.suite_chain(n if n is not None else 200)
    if name == "final":
        return verify.suite_final(n if n is not None else 200)
    if name == "remark":
        return verify.suite_remark()
    raise UsageError(f"unknown suite {name!r}")


def cmd_verify(args) -> int:
    field = _field(args)
    ring = ring_for(field)
    names = verify.SUITES if args.suite == "all" else (args.suite,)
    results = []
    for name in names:
        res = _run_suite(name, ring, args)
        status = "pass" if res.passed else "FAIL"
        print(f"{name}: {status} ({res.checks} checks, {res.seconds:.2f}s)", file=sys.stderr)
        results.append(res)
    ok = all(r.passed for r in results)
    header = _header(args, field)
    if args.format == "json":
        out = dict(header)
        out["suites"] = []
        for r in results:
            entry = {
                "name": r.name,
                "verdict": "pass" if r.passed else "fail",
                "checks": r.checks,
                "failures": r.failures,
                "details": r.details,
                "tightest": [dict(zip(bounds.CSV_HEADER, c.row())) for c in r.tightest],
            }
            if args.timing:
                entry["seconds"] = r.seconds
            out["suites"].append(entry)
        out["verdict"] = "PASS" if ok else "FAIL"
        text = _dump_json(out)
    else:
        buf = io.StringIO()
        buf.write(_csv_preamble(header))
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(bounds.CSV_HEADER)
        for r in results:
            if r.tightest:
                # bound suites: the least-slack instance of each inequality
                for c in r.tightest:
                    w.writerow(c.row())
            else:
                verdict = "pass" if r.passed else "fail"
                w.writerow([f"{r.name}_failures", f"checks={r.checks}", len(r.failures), 0, verdict])
        buf.write(f"# summary: verdict={'PASS' if ok else 'FAIL'} suites={len(results)}\n")
        text = buf.getvalue()
    _emit(args, text)
    return EXIT_OK if ok else EXIT_FAIL


def _theta(args, field):
    if args.theta is None:
        raise UsageError("--theta is required")
    try:
        return parse_torus(field, args.theta)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def cmd_approx(args) -> int:
    field = _field(args)
    ring = ring_for(field)
    if args.n is None or args.n < 1:
        raise UsageError("approx needs --n >= 1")
    theta = _theta(args, field)
    r = approx(theta, args.n)
    need = args.n // 2 + deg(r.g)
    agree = agreement_length(theta, expand_rational(ring, r.a, r.g, need + 1))
    report = _header(args, field)
    report.update(
        theta=theta.token(),
        a=ring.token(r.a),
        g=ring.token(r.g),
        a_pretty=ring.pretty(r.a),
        g_pretty=ring.pretty(r.g),
        deg_g=deg(r.g),
        required_agreement=need,
        agreement=agree,
        verdict="PASS" if agree >= need else "FAIL",
    )
    _emit(args, _single_object(args, report))
    return EXIT_OK if agree >= need else EXIT_FAIL


def cmd_lfunc(args) -> int:
    field = _field(args)
    ring = ring_for(field)
    g = ring.parse(args.g) if args.g is not None else (1,)
    m = HayesModulus(args.s or 0, g)
    grp = unit_group(ring, m)
    if args.char is None:
        exps = (0,) * len(grp.orders)
    else:
        try:
            exps = tuple(int(c) for c in args.char.split(","))
        except ValueError as exc:
            raise UsageError(f"bad character token {args.char!r}") from exc
    if len(exps) != len(grp.orders):
        raise UsageError(f"character needs {len(grp.orders)} exponents (orders {grp.orders})")
    chi = grp.character(exps)
    report = _header(args, field)
    report.update(
        modulus={"s": m.s, "g": ring.token(g)},
        group_order=grp.order,
        invariant_factors=list(grp.orders),
        character=chi.token(),
        degree_bound=m.s + deg(g) - 1,
    )
    tol = args.tol if args.tol is not None else lfunc.ROOT_TOL
    L = lfunc.l_polynomial(grp, chi)
    if isinstance(L, lfunc.TrivialLForm):
        num = L.numerator()
        report.update(
            trivial=True,
            numerator=num,
            denominator=[1, -ring.q],
            verdict="PASS",
        )
        ok = True
    else:
        rep = lfunc.weil_check(L, ring.q, tol)
        vanish = L.vanishes_beyond_bound(lfunc.COEFF_TOL)
        ok = rep.ok and vanish
        report.update(
            trivial=False,
            coefficients=[[_round(c.real), _round(c.imag)] for c in L.coeffs],
            degree=L.degree,
            vanishes_beyond_bound=vanish,
            inverse_roots=[[_round(r.real), _round(r.imag)] for r in rep.roots],
            abs=[_round(abs(r)) for r in rep.roots],
            classes=rep.classes,
            verdict="PASS" if ok else "FAIL",
        )
    _emit(args, _single_object(args, report))
    return EXIT_OK if ok else EXIT_FAIL


def _round(x: float) -> float:
    x = round(float(x), 12)
    return 0.0 if x == 0 else x


def cmd_sum(args) -> int:
    field = _field(args)
    ring = ring_for(field)
    if args.n is None or args.n < 1:
        raise UsageError("sum needs --n >= 1")
    theta = _theta(args, field)
    if ring.q**args.n > args.max_work:
        raise ResourceError(f"q^n = {ring.q**args.n} exceeds --max-work {args.max_work}")
    brute = brute_sum(ring, theta, args.n)
    dec = decomposition_sum(ring, theta, args.n)
    delta = abs(brute - dec.value)
    tol = args.tol if args.tol is not None else EQ_TOL
    ok = delta <= tol
    report = _header(args, field)
    report.update(
        theta=theta.token(),
        n=args.n,
        approximation={"a": ring.token(dec.a), "g": ring.token(dec.g), "s": dec.s},
        brute=[_round(brute.real), _round(brute.imag)],
        decomposition=[_round(dec.value.real), _round(dec.value.imag)],
        abs=_round(abs(brute)),
        delta=delta,
        bound=bounds.theorem_bound(ring.q, args.n) if args.n >= 3 else None,
        verdict="PASS" if ok else "FAIL",
    )
    _emit(args, _single_object(args, report))
    return EXIT_OK if ok else EXIT_FAIL


# -- parser --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--q", default="2", help="field: q, p^k or p^k/m0,m1,..,mk")
    common.add_argument("--n", type=int, default=None, help="degree")
    common.add_argument("--format", choices=("csv", "json"), default=None)
    common.add_argument("--jobs", type=int, default=1, help="worker processes")
    common.add_argument("--seed", type=int, default=None, help="seed for sampled modes")
    common.add_argument("--max-work", type=int, default=MAX_SCAN_WORK, help="evaluation cap")
    common.add_argument("--tol", type=float, default=None, help="override tolerances")
    common.add_argument("--out", default=None, help="write the report here")
    common.add_argument("--timing", action="store_true", help="include runtimes in the report")

    parser = _Parser(prog="ffmobius", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("scan", parents=[common], help="max |S(theta)| over all truncations")
    p.add_argument("--sample", type=int, default=None, help="scan a seeded random subset")
    p.set_defaults(func=cmd_scan, default_format="csv")

    p = sub.add_parser("verify", parents=[common], help="run property suites")
    p.add_argument("--suite", choices=("all",) + verify.SUITES, default="all")
    p.add_argument("--s", type=int, default=None)
    p.add_argument("--g", default=None, help="modulus polynomial, constant term first")
    p.set_defaults(func=cmd_verify, default_format="csv")

    p = sub.add_parser("approx", parents=[common], help="rational approximation a/g of theta")
    p.add_argument("--theta", default=None, help="c1,c2,.. for sum c_i t^-i")
    p.set_defaults(func=cmd_approx, default_format="json")

    p = sub.add_parser("lfunc", parents=[common], help="L-polynomial of a Hayes character")
    p.add_argument("--s", type=int, default=None)
    p.add_argument("--g", default=None, help="modulus polynomial, constant term first")
    p.add_argument("--char", default=None, help="exponent vector e1,e2,..")
    p.set_defaults(func=cmd_lfunc, default_format="json")

    p = sub.add_parser("sum", parents=[common], help="S(theta) by brute force and by decomposition")
    p.add_argument("--theta", default=None, help="c1,c2,.. for sum c_i t^-i")
    p.set_defaults(func=cmd_sum, default_format="json")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.format is None:
        args.format = args.default_format
    del args.default_format
    try:
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"ffmobius: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceError as exc:
        print(f"ffmobius: resource guard: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (FieldError, PolyError, PrecisionError, ValueError) as exc:
        print(f"ffmobius: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except AssertionError as exc:
        print(f"ffmobius: internal check failed: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
