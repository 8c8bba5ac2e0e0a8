"""``starred`` command-line interface.

Exit codes: 0 success, 1 verification failures, 2 parse or usage error,
3 hbar on a pole, 4 signature mismatch.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .ambient import AmbientPoly, ambient_mul, ambient_poisson, ambient_wick_star
from .analytic import contour_coefficients, lift
from .core.combinatorics import SignatureError
from .core.hbar import OmegaError, Symbolic, in_omega, parse_hbar
from .reduced import ReducedPoly, ambient_to_reduced, eval_red, poisson_red, reduced_mul, star_red
from .serialize import DocumentError, from_document, to_document, validate_report
from .suites import DEFAULT_SEED, SUITES, UnknownSuiteError, run_suite
from .wickrot import rotate_ambient, rotate_reduced

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_OMEGA, EXIT_SIGNATURE = 0, 1, 2, 3, 4


class UsageError(ValueError):
    pass


def _read_docs(paths):
    texts = []
    if not paths or paths == ["-"]:
        texts.append(sys.stdin.read())
    else:
        for p in paths:
            if p == "-":
                texts.append(sys.stdin.read())
            else:
                with open(p, encoding="utf-8") as fh:
                    texts.append(fh.read())
    docs = []
    for t in texts:
        try:
            data = json.loads(t)
        except json.JSONDecodeError as exc:
            raise DocumentError(f"invalid JSON: {exc}") from None
        docs += data if isinstance(data, list) else [data]
    return [from_document(d) for d in docs]


def _hbar(text):
    try:
        return parse_hbar(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"cannot parse hbar {text!r}") from None


def _emit(args, f):
    if args.json:
        print(json.dumps(to_document(f), indent=2))
    else:
        print(f)


def _pairs(polys, what):
    if len(polys) < 2 or len(polys) % 2:
        raise UsageError(f"{what} needs an even number (>= 2) of documents, got {len(polys)}")
    return [(polys[i], polys[i + 1]) for i in range(0, len(polys), 2)]


def cmd_star(args):
    polys = _read_docs(args.docs)
    h = _hbar(args.hbar)
    total = None
    for f, g in _pairs(polys, "star"):
        if type(f) is not type(g):
            raise SignatureError("cannot mix ambient and fundamental documents")
        if isinstance(f, AmbientPoly):
            p = ambient_wick_star(f, g, h)
        else:
            if not in_omega(h):
                raise OmegaError(f"hbar={args.hbar} is a pole of the reduced star product")
            p = star_red(f, g, h)
        total = p if total is None else total + p
    _emit(args, total)


def _binary(op_red, op_amb, name):
    def run(args):
        f, g = _pairs(_read_docs(args.docs), name)[0]
        if type(f) is not type(g):
            raise SignatureError("cannot mix ambient and fundamental documents")
        _emit(args, (op_amb if isinstance(f, AmbientPoly) else op_red)(f, g))

    return run


def cmd_wick_rotate(args):
    for f in _read_docs(args.docs):
        _emit(args, rotate_ambient(f) if isinstance(f, AmbientPoly) else rotate_reduced(f))


def cmd_to_fundamental(args):
    for f in _read_docs(args.docs):
        if not isinstance(f, AmbientPoly):
            raise UsageError("to-fundamental expects an ambient document")
        _emit(args, ambient_to_reduced(f))


def _points(text, n):
    pts = []
    for chunk in text.split(";"):
        vals = [float(x) for x in chunk.split(",")]
        if len(vals) == 1:
            vals.append(0.0)
        if len(vals) != 2:
            raise UsageError(f"bad coordinate {chunk!r}; use re,im")
        pts.append(complex(vals[0], vals[1]))
    if len(pts) % n:
        raise UsageError(f"point needs {n} coordinates")
    return [tuple(pts[i : i + n]) for i in range(0, len(pts), n)]


def cmd_eval(args):
    (f,) = _read_docs(args.docs)[:1]
    if not isinstance(f, ReducedPoly):
        raise UsageError("eval expects a fundamental-basis document")
    h = None if args.hbar == "symbolic" else _hbar(args.hbar)
    out = []
    for w in _points(args.point, f.sig.n):
        try:
            out.append(eval_red(f, w, h))
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    if args.json:
        print(json.dumps([{"re": z.real, "im": z.imag} for z in out]))
    else:
        for z in out:
            print(f"{z.real:.15g}" if z.imag == 0 else f"{z.real:.15g}{z.imag:+.15g}j")


def cmd_seminorm(args):
    f = _read_docs(args.docs)[0]
    h = _hbar(args.hbar)
    if f.is_symbolic():
        if isinstance(h, Symbolic):
            raise UsageError("symbolic coefficients need a numeric --hbar")
        f = f.at_hbar(Fraction(h))
    r = Fraction(args.r)
    val = f.seminorm(r)
    print(json.dumps({"r": str(r), "seminorm": str(val)}) if args.json else str(val))


def cmd_coeffs_contour(args):
    f = _read_docs(args.docs)[0]
    if not isinstance(f, ReducedPoly):
        raise UsageError("coeffs-contour expects a fundamental-basis document")
    from .suites import _fundamental_keys

    deg = args.deg if args.deg is not None else f.degree()
    keys = _fundamental_keys(f.sig.n, deg)
    try:
        got = contour_coefficients(lift(f), keys, f.sig, args.radius, args.nodes)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    rows = [
        {"P": list(P), "Q": list(Q), "re": v.real, "im": v.imag}
        for (P, Q), v in got.items()
        if abs(v) > args.threshold
    ]
    if args.json:
        print(json.dumps(rows, indent=2))
    else:
        for r in rows:
            print(f"Z[{r['P']},{r['Q']}]: {complex(r['re'], r['im']):.12g}")


def cmd_verify(args):
    params = {
        "n": args.n, "s": args.s, "deg": args.deg, "cases": args.cases, "k": args.k,
        "order": args.order, "radius": args.radius, "nodes": args.nodes,
    }
    if args.hbar is not None:
        params["hbar"] = _hbar(args.hbar)
    try:
        report = run_suite(args.suite, seed=args.seed, **params)
    except UnknownSuiteError:
        raise UsageError(f"unknown suite {args.suite!r}; choose from {', '.join(SUITES)}") from None
    validate_report(report)
    if args.json:
        print(json.dumps(report, indent=2, default=str))
    else:
        status = "PASS" if report["passed"] else "FAIL"
        print(f"{status} {report['suite']}: {report['cases']} cases, "
              f"{len(report['failures'])} failures, {report['wall_time']:.2f}s")
        for note in report["notes"]:
            print(f"  note: {note}")
        for fail in report["failures"][:10]:
            print(f"  failed {fail['case']}: {fail['diff']}")
    return EXIT_OK if report["passed"] else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="starred", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_, docs=True):
        sp = sub.add_parser(name, help=help_)
        if docs:
            sp.add_argument("docs", nargs="*", help="JSON documents (default: stdin)")
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        sp.set_defaults(func=fn)
        return sp

    sp = add("star", cmd_star, "sum of doc1*doc2 + doc3*doc4 + ...")
    sp.add_argument("--hbar", default="symbolic")
    add("bracket", _binary(poisson_red, ambient_poisson, "bracket"), "Poisson bracket of two documents")
    add("pointwise", _binary(reduced_mul, ambient_mul, "pointwise"), "pointwise product")
    add("wick-rotate", cmd_wick_rotate, "rotate into the compact signature")
    add("to-fundamental", cmd_to_fundamental, "expand an invariant ambient document")
    sp = add("eval", cmd_eval, "evaluate at chart points")
    sp.add_argument("--point", required=True, help="re,im[;re,im...]")
    sp.add_argument("--hbar", default="symbolic")
    sp = add("seminorm", cmd_seminorm, "majorant seminorm sum |c| r^(|P|+|Q|)")
    sp.add_argument("--r", default="1")
    sp.add_argument("--hbar", default="symbolic")
    sp = add("coeffs-contour", cmd_coeffs_contour, "coefficients by contour quadrature")
    sp.add_argument("--radius", type=float, default=None)
    sp.add_argument("--nodes", type=int, default=64)
    sp.add_argument("--deg", type=int, default=None)
    sp.add_argument("--threshold", type=float, default=1e-10)
    sp = add("verify", cmd_verify, "run a verification suite", docs=False)
    sp.add_argument("suite")
    sp.add_argument("--seed", type=int, default=DEFAULT_SEED)
    sp.add_argument("--n", type=int)
    sp.add_argument("--s", type=int)
    sp.add_argument("--hbar")
    sp.add_argument("--deg", type=int)
    sp.add_argument("--cases", type=int)
    sp.add_argument("--k", type=int)
    sp.add_argument("--order", type=int)
    sp.add_argument("--radius", type=float)
    sp.add_argument("--nodes", type=int)
    return p


_VALUE_FLAGS = ("--hbar", "--point", "--r")


def _join_values(argv):
    # let values such as "-1/2" or "-0.3,0" follow a flag without "="
    out, it = [], iter(argv)
    for tok in it:
        if tok in _VALUE_FLAGS:
            nxt = next(it, None)
            out.append(tok if nxt is None else f"{tok}={nxt}")
        else:
            out.append(tok)
    return out


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    args = build_parser().parse_args(_join_values(argv))
    try:
        code = args.func(args)
    except OmegaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_OMEGA
    except SignatureError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SIGNATURE
    except (DocumentError, UsageError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    return code or EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
