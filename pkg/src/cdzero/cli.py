"""``cdzero`` command-line interface.

Payloads go to stdout, diagnostics to stderr.  Exit codes: 0 success,
1 verification failure, 2 usage or parse error, 3 level mismatch,
4 unmet precondition (e.g. an element that is not doubly pure),
5 certification failure, 6 spectral diagnostic failure.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys

from . import __version__
from .algebra import MAX_LEVEL, CDElement, conjugate, format_element, hat, multiply, parse_element, tilde
from .errors import (
    CertificationError, LevelMismatchError, ParseError, PreconditionError, SpectrumError,
)
from .operators import SCHEMA_VERSION
from .spectrum import spectrum
from .stiefel import SWEEP_KINDS, classify, sweep_stiefel_zero_divisors
from .verify import DEFAULT_DRAWS, reports_json, run_cases, summary_table
from .zerodiv import (
    annihilator, construct_orthogonal, construct_promote_pure, construct_spectral, construct_tilde_partner,
)

EXIT_CODES = [
    (ParseError, 2),
    (LevelMismatchError, 3),
    (PreconditionError, 4),
    (CertificationError, 5),
    (SpectrumError, 6),
]

log = logging.getLogger("cdzero")


class UsageError(Exception):
    pass


def _emit(obj: dict, dest: str | None = "-") -> None:
    text = json.dumps(obj, indent=2)
    if dest in (None, "-"):
        print(text)
    else:
        with open(dest, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")


def _elements(args, *texts: str, min_level: int = 0) -> list[CDElement]:
    """Parse at ``--level``, or at the smallest common level (at least ``min_level``)."""
    level = args.level
    if level is not None:
        _check_level(level, args.allow_large)
    elems = [parse_element(t, level) for t in texts]
    if level is None:
        top = max(min_level, *(e.level for e in elems))
        _check_level(top, args.allow_large)
        elems = [parse_element(t, top) for t in texts]
    return elems


def _check_level(level: int, allow_large: bool) -> None:
    if level > MAX_LEVEL and not allow_large:
        raise UsageError(f"level {level} exceeds {MAX_LEVEL}; pass --allow-large to proceed")
    if level > MAX_LEVEL:
        print(f"warning: level {level} operators have {4 ** level} entries", file=sys.stderr)


def _element_payload(op: str, elem: CDElement) -> dict:
    return {"schema_version": SCHEMA_VERSION, "op": op, "result": format_element(elem), **elem.to_json()}


def _unary(fn, name):
    def run(args):
        (x,) = _elements(args, args.x)
        out = fn(x)
        if args.json:
            _emit(_element_payload(name, out), args.json)
        else:
            print(format_element(out))
        return 0
    return run


def cmd_mul(args) -> int:
    a, b = _elements(args, args.lhs, args.rhs)
    out = multiply(a, b)
    if args.json:
        _emit(_element_payload("mul", out), args.json)
    else:
        print(format_element(out))
    return 0


def cmd_spectrum(args) -> int:
    (a,) = _elements(args, args.x, min_level=3)
    _emit(spectrum(a, args.tol).to_json(), args.json or "-")
    return 0


def cmd_annihilator(args) -> int:
    (a,) = _elements(args, args.x)
    _emit(annihilator(a).to_json(), args.json or "-")
    return 0


def cmd_construct(args) -> int:
    kind = args.kind
    if kind == "orthogonal":
        a, b = _elements(args, args.a, args.b, min_level=3)
        payload = construct_orthogonal(a, b).to_json()
    elif kind == "tilde-partner":
        texts = [args.a] + ([args.x] if args.x else [])
        elems = _elements(args, *texts, min_level=3)
        payload = construct_tilde_partner(elems[0], args.sign, elems[1] if args.x else None).to_json()
    elif kind == "spectral":
        texts = [args.a] + ([args.x] if args.x else [])
        elems = _elements(args, *texts, min_level=3)
        pair, alt = construct_spectral(elems[0], args.value, elems[1] if args.x else None, args.sign)
        payload = pair.to_json()
        payload["alternate_chi"] = format_element(alt.chi)
    else:
        (alpha,) = _elements(args, args.a, min_level=3)
        beta, pair = construct_promote_pure(alpha, args.value, args.sign)
        payload = pair.to_json()
        payload["beta"] = format_element(beta)
    _emit(payload, args.json or "-")
    return 0


def cmd_classify(args) -> int:
    a, b = _elements(args, args.a, args.b, min_level=3)
    _emit(classify(a, b).to_json(), args.json or "-")
    return 0


def cmd_verify(args) -> int:
    reports = run_cases(args.only, args.draws)
    if not reports:
        raise UsageError(f"no case matches {args.only}")
    payload = reports_json(reports)
    table = summary_table(reports)
    if args.json == "-":
        _emit(payload)
        print(table, file=sys.stderr)
    else:
        if args.json:
            _emit(payload, args.json)
        print(table)
    failed = payload["failed"]
    if failed:
        print("failing cases: " + ", ".join(failed), file=sys.stderr)
        return 1
    return 0


def cmd_sweep(args) -> int:
    if args.level is None:
        raise UsageError("sweep needs -n/--level")
    _check_level(args.level + 1, args.allow_large)
    report = sweep_stiefel_zero_divisors(args.level, args.count, args.seed, args.kind)
    _emit(report, args.json or "-")
    if report["failures"]:
        print(f"{len(report['failures'])} sampled Stiefel elements have a trivial annihilator", file=sys.stderr)
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-n", "--level", type=int, help="algebra level (dimension 2^n); inferred if omitted")
    common.add_argument("--tol", type=float, default=1e-8, help="floating tolerance (default 1e-8)")
    common.add_argument("--json", nargs="?", const="-", default=None, metavar="PATH",
                        help="write JSON to PATH, or to stdout when PATH is omitted")
    common.add_argument("--allow-large", action="store_true", help=f"allow levels above {MAX_LEVEL}")

    parser = argparse.ArgumentParser(prog="cdzero", description="Cayley-Dickson zero-divisor toolkit")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true", help="log diagnostics to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("mul", parents=[common], help="product of two elements")
    p.add_argument("lhs")
    p.add_argument("rhs")
    p.set_defaults(func=cmd_mul)

    for name, fn in (("conj", conjugate), ("tilde", tilde), ("hat", hat)):
        p = sub.add_parser(name, parents=[common], help=f"{name} of an element")
        p.add_argument("x")
        p.set_defaults(func=_unary(fn, name))

    p = sub.add_parser("spectrum", parents=[common], help="spectrum of a doubly pure element")
    p.add_argument("x")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("annihilator", parents=[common], help="kernel of left multiplication")
    p.add_argument("x")
    p.set_defaults(func=cmd_annihilator)

    p = sub.add_parser("construct", help="build a certified zero-divisor pair")
    csub = p.add_subparsers(dest="kind", required=True)
    c = csub.add_parser("orthogonal", parents=[common], help="(a, b) with b in H_a^perp, |a| = |b|")
    c.add_argument("a")
    c.add_argument("b")
    c = csub.add_parser("tilde-partner", parents=[common], help="(a, sign a~)")
    c.add_argument("a")
    c.add_argument("x", nargs="?", help="annihilator seed in H_a^perp (default: first basis projection)")
    c.add_argument("--sign", type=int, choices=(-1, 1), default=1)
    c = csub.add_parser("spectral", parents=[common], help="(a, sign sqrt(value)|a| e~0)")
    c.add_argument("a")
    c.add_argument("--value", type=float, required=True, help="nonzero spectral value of a")
    c.add_argument("--x", help="eigenvector (default: computed)")
    c.add_argument("--sign", type=int, choices=(-1, 1), default=1)
    c = csub.add_parser("promote", parents=[common], help="partner beta for a pure alpha")
    c.add_argument("a")
    c.add_argument("--value", type=float, default=None, help="spectral value for the rotated form")
    c.add_argument("--sign", type=int, choices=(-1, 1), default=-1)
    for c in csub.choices.values():
        c.set_defaults(func=cmd_construct)

    p = sub.add_parser("classify", parents=[common], help="Stiefel predicates for a pair")
    p.add_argument("a")
    p.add_argument("b")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("verify-paper", parents=[common], help="replay worked examples and identity checks")
    p.add_argument("--only", action="append", metavar="PREFIX", help="run cases whose id starts with PREFIX")
    p.add_argument("--draws", type=int, default=DEFAULT_DRAWS, help="random draws per level")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sweep", parents=[common], help="random Stiefel elements and their annihilators")
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--kind", choices=SWEEP_KINDS, default="stiefel")
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except tuple(cls for cls, _ in EXIT_CODES) as exc:
        code = next(c for cls, c in EXIT_CODES if isinstance(exc, cls))
        print(f"error: {exc}", file=sys.stderr)
        return code


if __name__ == "__main__":
    sys.exit(main())
