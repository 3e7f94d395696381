"""Command-line front end.

Exit codes: 0 success, 1 a verification failed, 2 usage error,
3 bad input data (unreadable or degenerate sequence file).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Sequence

from . import cobweb
from .operators import (
    OperatorError,
    abel,
    backward_difference,
    f_derivative,
    forward_difference,
    laguerre_op,
    translation,
)
from .poly import Polynomial, format_rational, parse_rational
from .sequences import FIBONACCI, SequenceError, SequenceSpec, fibonomial
from .umbral import (
    IdentityError,
    Violation,
    basic_sequence,
    bernoulli,
    bernoulli_operators,
    check_binomial_type,
    check_first_expansion,
    check_gf,
    check_lowering,
    check_rodrigues,
    check_s_inverse_expansion,
    check_second_expansion,
    check_sheffer_binomial,
    check_sheffer_gf,
    check_transfer,
    hermite,
    hermite_operators,
    laguerre_alpha,
    laguerre_operators,
    working_order,
)

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_USAGE = 2
EXIT_DATA = 3

DEFAULT_MAX_DEGREE = 8
DEFAULT_MAX_LEVEL = 8

BASIC_OPS = ("partial-f", "delta-f", "nabla-f", "abel", "laguerre")
FAMILIES = ("hermite", "laguerre-alpha", "bernoulli")
SUITES = ("binomial-type", "expansion", "gf", "sheffer-binomial", "second-expansion", "transfer")


class UsageError(Exception):
    pass


@dataclass
class RunResult:
    status: int = EXIT_OK
    out: list[str] = field(default_factory=list)
    err: list[str] = field(default_factory=list)


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an exact rational: {text!r}") from None


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError(f"must be non-negative: {text!r}")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--sequence-file",
        metavar="PATH",
        help="custom sequence, one non-negative integer per line starting at index 0 "
        "(default: Fibonacci)",
    )
    common.add_argument("--format", choices=("text", "structured", "dot"), default="text")

    parser = argparse.ArgumentParser(
        prog="fibonomial",
        description="Exact fibonomial operator calculus and cobweb poset tools.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("fibonomial", parents=[common], help="fibonomial coefficient")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--k", type=_positive, required=True)

    p = sub.add_parser("basic", parents=[common], help="basic sequence of a delta operator")
    p.add_argument("--op", choices=BASIC_OPS, required=True)
    p.add_argument("--a", type=_rational, help="Abel parameter")
    p.add_argument("--max-degree", type=_positive, default=DEFAULT_MAX_DEGREE)

    p = sub.add_parser("sheffer", parents=[common], help="Sheffer polynomial family")
    p.add_argument("--family", choices=FAMILIES, required=True)
    p.add_argument("--a", type=_rational, help="Hermite parameter")
    p.add_argument("--alpha", type=_rational, help="Laguerre order (integer >= -1)")
    p.add_argument("--max-degree", type=_positive, default=DEFAULT_MAX_DEGREE)

    p = sub.add_parser("verify", parents=[common], help="check an identity suite")
    p.add_argument("--suite", choices=SUITES, required=True)
    p.add_argument("--op", choices=BASIC_OPS, default="delta-f")
    p.add_argument("--family", choices=FAMILIES, default="bernoulli")
    p.add_argument("--a", type=_rational)
    p.add_argument("--alpha", type=_rational)
    p.add_argument("--y", type=_rational, default=Fraction(1))
    p.add_argument("--max-degree", type=_positive, default=DEFAULT_MAX_DEGREE)

    p = sub.add_parser("cobweb", parents=[common], help="cobweb poset tools")
    p.add_argument("--max-level", type=_positive, default=DEFAULT_MAX_LEVEL)
    p.add_argument("--build", action="store_true", help="level sizes and counts")
    p.add_argument("--export-dot", action="store_true", help="emit a DOT digraph")
    p.add_argument("--verify-realizer", action="store_true", help="check P = X intersect Y")
    p.add_argument("--check-admissible", action="store_true", help="regularity and admissibility of X")
    return parser


def _load_spec(args) -> SequenceSpec:
    if not args.sequence_file:
        return FIBONACCI
    try:
        return SequenceSpec.from_file(args.sequence_file)
    except OSError as exc:
        raise SequenceError(f"cannot read {args.sequence_file}: {exc.strerror}") from None


def _delta_operator(name: str, spec: SequenceSpec, order: int, a: Optional[Fraction]):
    if name == "partial-f":
        return f_derivative(spec, order)
    if name == "delta-f":
        return forward_difference(spec, order)
    if name == "nabla-f":
        return backward_difference(spec, order)
    if name == "abel":
        if a is None:
            raise UsageError("--op abel requires --a")
        return abel(spec, a, order)
    return laguerre_op(spec, order)


def _integer_alpha(alpha: Optional[Fraction]) -> int:
    if alpha is None:
        raise UsageError("--family laguerre-alpha requires --alpha")
    if alpha.denominator != 1 or alpha < -1:
        raise UsageError(f"--alpha must be an integer >= -1, got {format_rational(alpha)}")
    return int(alpha)


def _family(name: str, spec: SequenceSpec, n_max: int, a, alpha):
    """Closed-form family plus its ``(Q, S)`` operator pair."""
    order = working_order(n_max)
    if name == "hermite":
        if a is None:
            raise UsageError("--family hermite requires --a")
        return hermite(a, n_max, spec), hermite_operators(a, spec, order)
    if name == "laguerre-alpha":
        al = _integer_alpha(alpha)
        return laguerre_alpha(al, n_max, spec), laguerre_operators(al, spec, order)
    return bernoulli(n_max, spec), bernoulli_operators(spec, order)


def _emit_sequence(seq, fmt: str, res: RunResult) -> None:
    if fmt == "structured":
        res.out.append(json.dumps({"label": seq.label, "kind": seq.kind.value, "polys": seq.to_structured()}))
    else:
        res.out.append(seq.to_text())


def _cmd_fibonomial(args, spec, res: RunResult) -> None:
    value = fibonomial(spec, args.n, args.k)
    if args.format == "structured":
        v = Fraction(value)
        res.out.append(json.dumps({"n": args.n, "k": args.k, "value": [v.numerator, v.denominator]}))
    else:
        res.out.append(format_rational(Fraction(value)))


def _cmd_basic(args, spec, res: RunResult) -> None:
    Q = _delta_operator(args.op, spec, working_order(args.max_degree), args.a)
    _emit_sequence(basic_sequence(Q, args.max_degree, label=args.op), args.format, res)


def _cmd_sheffer(args, spec, res: RunResult) -> None:
    seq, (Q, _S) = _family(args.family, spec, args.max_degree, args.a, args.alpha)
    bad = check_lowering(seq, Q)
    if bad is not None:
        raise IdentityError(str(bad))
    _emit_sequence(seq, args.format, res)


def _suite_checks(args, spec) -> list[tuple[str, Callable[[], Optional[Violation]]]]:
    N = args.max_degree
    order = working_order(N)
    y = args.y

    def op():
        a = args.a if args.a is not None else Fraction(1)
        return _delta_operator(args.op, spec, order, a)

    def fam():
        return _family(args.family, spec, N, args.a if args.a is not None else Fraction(1), args.alpha)

    if args.suite == "binomial-type":
        return [
            (f"binomial-type ({args.op}, y={format_rational(y)})",
             lambda: check_binomial_type(basic_sequence(op(), N), y)),
            (f"Rodrigues forms ({args.op})", lambda: check_rodrigues(op(), N)),
        ]
    if args.suite == "expansion":
        def first():
            Q = op()
            basic = basic_sequence(Q, N)
            for T in (translation(spec, y, order), Q.plain()):
                bad = check_first_expansion(T, Q, basic)
                if bad is not None:
                    return bad
            return None

        def s_inverse():
            seq, (Q, S) = fam()
            return check_s_inverse_expansion(seq, Q, S)

        return [(f"first expansion ({args.op})", first), (f"S^-1 expansion ({args.family})", s_inverse)]
    if args.suite == "gf":
        def sheffer_gf():
            seq, (Q, S) = fam()
            return check_sheffer_gf(seq, Q, S)

        return [
            (f"generating function ({args.op})", lambda: check_gf(basic_sequence(op(), N), op())),
            (f"Sheffer generating function ({args.family})", sheffer_gf),
        ]
    if args.suite == "sheffer-binomial":
        def sb():
            seq, (Q, _S) = fam()
            return check_sheffer_binomial(seq, basic_sequence(Q, N), y)

        return [(f"Sheffer binomial ({args.family}, y={format_rational(y)})", sb)]
    if args.suite == "second-expansion":
        def second():
            seq, (Q, S) = fam()
            p = Polynomial([1] * (N + 1))
            return check_second_expansion(Q, S, seq, p, y)

        return [(f"second expansion ({args.family}, y={format_rational(y)})", second)]

    def transfer():
        Q = op()
        d = f_derivative(spec, order)
        return check_transfer(Q, basic_sequence(Q, N), d, basic_sequence(d, N))

    return [(f"umbral transfer ({args.op} from partial-f)", transfer)]


def _cmd_verify(args, spec, res: RunResult) -> None:
    records = []
    for name, check in _suite_checks(args, spec):
        bad = check()
        records.append((name, bad))
        if bad is not None:
            res.err.append(f"FAIL {name}: {bad}")
            res.status = EXIT_VERIFY
            break
    if args.format == "structured":
        res.out.append(json.dumps({
            "suite": args.suite,
            "max_degree": args.max_degree,
            "checks": [
                {"name": n, "ok": b is None, **({} if b is None else {"identity": b.identity, "index": b.index})}
                for n, b in records
            ],
        }))
    else:
        res.out.extend(f"{n}: OK (n <= {args.max_degree})" for n, b in records if b is None)


def _cmd_cobweb(args, spec, res: RunResult) -> None:
    p = cobweb.build(spec, args.max_level)
    want_dot = args.export_dot or args.format == "dot"
    if not (args.build or want_dot or args.verify_realizer or args.check_admissible):
        args.build = True
    doc: dict = {}
    text: list[str] = []
    if args.build:
        doc.update(cobweb.export_structured(p))
        text.append("levels: " + " ".join(map(str, p.level_sizes)))
        text.append(f"vertices: {len(p)}")
        text.append(f"edges: {p.edge_count()}")
    if args.check_admissible:
        regular = cobweb.is_regular(p)
        admissible = cobweb.is_admissible(p, cobweb.chain_x(p))
        doc["regular"] = regular
        doc["admissible_x"] = admissible
        for ok, what in ((regular, "regular"), (admissible, "admissible (chain X)")):
            if ok:
                text.append(f"{what} OK")
            else:
                res.err.append(f"FAIL {what}")
                res.status = EXIT_VERIFY
    if args.verify_realizer:
        ok = cobweb.verify_realizer(p)
        doc["realizer"] = ok
        if ok:
            text.append(f"realizer OK ({len(p)} vertices)")
        else:
            res.err.append(f"FAIL realizer: X intersect Y differs from the cobweb order ({len(p)} vertices)")
            res.status = EXIT_VERIFY
    if want_dot:
        doc["dot"] = cobweb.export_dot(p)
    if args.format == "structured":
        res.out.append(json.dumps(doc))
    elif args.format == "dot":
        res.out.append(cobweb.export_dot(p).rstrip("\n"))
    else:
        res.out.extend(text)
        if args.export_dot:
            res.out.append(cobweb.export_dot(p).rstrip("\n"))


_COMMANDS = {
    "fibonomial": _cmd_fibonomial,
    "basic": _cmd_basic,
    "sheffer": _cmd_sheffer,
    "verify": _cmd_verify,
    "cobweb": _cmd_cobweb,
}


_RATIONAL_OPTIONS = ("--a", "--alpha", "--y")


def _attach_negative_values(argv: Sequence[str]) -> list[str]:
    """Rewrite ``--y -2/3`` as ``--y=-2/3``; argparse only recognizes plain negative numbers."""
    out: list[str] = []
    it = iter(argv)
    for tok in it:
        if tok in _RATIONAL_OPTIONS:
            nxt = next(it, None)
            if nxt is not None and nxt[:1] == "-" and nxt[1:2].isdigit():
                out.append(f"{tok}={nxt}")
                continue
            out.append(tok)
            if nxt is not None:
                out.append(nxt)
            continue
        out.append(tok)
    return out


def run(argv: Sequence[str]) -> RunResult:
    """Parse ``argv`` and execute, collecting output instead of exiting."""
    parser = build_parser()
    res = RunResult()
    try:
        args = parser.parse_args(_attach_negative_values(argv))
    except SystemExit as exc:
        res.status = EXIT_USAGE if exc.code else EXIT_OK
        return res
    if args.format == "dot" and args.command != "cobweb":
        res.err.append("--format dot is only available for the cobweb command")
        res.status = EXIT_USAGE
        return res
    try:
        spec = _load_spec(args)
        _COMMANDS[args.command](args, spec, res)
    except UsageError as exc:
        res.err.append(f"usage error: {exc}")
        res.status = EXIT_USAGE
    except (SequenceError, OperatorError) as exc:
        res.err.append(f"input error: {exc}")
        res.status = EXIT_DATA
    except IdentityError as exc:
        res.err.append(f"FAIL {exc}")
        res.status = EXIT_VERIFY
    return res


def main(argv: Optional[Sequence[str]] = None) -> int:
    res = run(sys.argv[1:] if argv is None else argv)
    for line in res.out:
        print(line)
    for line in res.err:
        print(line, file=sys.stderr)
    return res.status


if __name__ == "__main__":
    sys.exit(main())
