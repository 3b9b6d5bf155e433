"""Command-line entry point: ``elnet <command> ...``.

Exit codes: 0 on success, 1 when a computation or verification fails,
2 on bad usage or input.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Sequence, TextIO

from .action import act_network, act_word, network_of_word, zero_response
from .errors import AlgorithmError, ElnetError, InputError, ParseError
from .exact import Mat, rat, rat_str
from .network import LocalMove, Network, apply_local_move, parse_site, response
from .perms import catalan, enumerate_efficient, length
from .suites import SUITES, Options, run_suite
from .symplectic import factorize_top_cell
from .words import GenWord, parse_letters

MOVE_CHOICES = ("series", "parallel", "loop", "pendant", "y_to_delta", "delta_to_y")


def format_decimal(q: Fraction, digits: int) -> str:
    """Round-half-even display of ``q`` with a fixed number of digits."""
    scaled = round(Fraction(q) * 10**digits)
    sign = "-" if scaled < 0 else ""
    whole, frac = divmod(abs(scaled), 10**digits)
    return f"{sign}{whole}.{frac:0{digits}d}" if digits else f"{sign}{whole}"


class Printer:
    def __init__(self, out: TextIO, digits: int | None):
        self.out = out
        self.digits = digits

    def num(self, q) -> str:
        return rat_str(q) if self.digits is None else format_decimal(q, self.digits)

    def matrix(self, m: Mat) -> None:
        obj = {"rows": m.rows, "cols": m.cols, "data": [[self.num(x) for x in r] for r in m.data]}
        self.json(obj)

    def network(self, net: Network) -> None:
        obj = net.to_json()
        for e in obj["edges"]:
            e["w"] = self.num(rat(e["w"]))
        self.json(obj)

    def json(self, obj) -> None:
        self.out.write(json.dumps(obj) + "\n")

    def line(self, text: str) -> None:
        self.out.write(text + "\n")


def _read_json(source: str, stdin: TextIO):
    try:
        if source == "-":
            text = stdin.read()
        else:
            with open(source, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        raise ParseError(f"{source}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{source}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def parse_network(source: str, stdin: TextIO | None = None) -> Network:
    """Read a network from a JSON file, or from stdin when ``source`` is ``-``."""
    return Network.from_json(_read_json(source, stdin or sys.stdin))


def parse_matrix(source: str, stdin: TextIO | None = None) -> Mat:
    return Mat.from_json(_read_json(source, stdin or sys.stdin))


def _rational(text: str) -> Fraction:
    try:
        return rat(text)
    except ParseError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="elnet", description="Exact computations with electrical networks and Lie groups."
    )
    parser.add_argument(
        "--decimal", type=int, metavar="K", help="show numbers rounded to K decimal places"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("response", help="response matrix of a network")
    p.add_argument("network", help="network JSON file, or - for stdin")

    p = sub.add_parser("transform", help="apply a local equivalence move")
    p.add_argument("network")
    p.add_argument("--move", required=True, choices=MOVE_CHOICES)
    p.add_argument("--at", required=True, help="interior id or comma-separated edge indices")

    p = sub.add_parser("act", help="act by a generator word")
    p.add_argument("word", help="comma-separated letters i:t, rightmost applied first")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--zero", type=int, metavar="N", help="start from the empty network on N+1 vertices")
    src.add_argument("--network", metavar="FILE", help="start from this network")
    p.add_argument("--emit", choices=("network", "matrix"), default="matrix")

    p = sub.add_parser("factorize", help="staircase parameters of a top-cell matrix")
    p.add_argument("matrix", help="matrix JSON file, or - for stdin")
    p.add_argument("-n", type=int, required=True)

    p = sub.add_parser("efficient", help="count or list efficient permutations")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--list", action="store_true")

    p = sub.add_parser("verify", help="run a seeded verification suite")
    p.add_argument("suite", choices=tuple(SUITES))
    p.add_argument("--tau", type=_rational)
    p.add_argument("--trials", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-n", type=int)
    return parser


def _run(args: argparse.Namespace, out: Printer, stdin: TextIO) -> int:
    if args.command == "response":
        out.matrix(response(parse_network(args.network, stdin)))
    elif args.command == "transform":
        net = parse_network(args.network, stdin)
        move = LocalMove(args.move, parse_site(args.move, args.at))
        out.network(apply_local_move(net, move))
    elif args.command == "act":
        letters = parse_letters(args.word)
        if args.zero is not None:
            word = GenWord(args.zero, letters)
            if args.emit == "network":
                out.network(network_of_word(word, args.zero))
            else:
                out.matrix(act_word(zero_response(args.zero), word))
        else:
            net = parse_network(args.network, stdin)
            word = GenWord(net.boundary_count - 1, letters)
            if args.emit == "network":
                out.network(act_network(net, word))
            else:
                out.matrix(act_word(response(net), word))
    elif args.command == "factorize":
        params = factorize_top_cell(parse_matrix(args.matrix, stdin), args.n)
        out.json([out.num(a) for a in params])
    elif args.command == "efficient":
        if args.n < 0:
            raise ParseError("-n must be nonnegative")
        perms = enumerate_efficient(args.n)
        if args.list:
            for w in perms:
                out.line(f"{' '.join(map(str, w))}  length={length(w)}")
        out.line(f"count={len(perms)} catalan={catalan(args.n + 1)}")
    elif args.command == "verify":
        lines = run_suite(args.suite, Options(args.seed, args.trials, args.tau, args.n))
        for line in lines:
            out.line(line.render())
        return 0 if all(line.ok for line in lines) else 1
    return 0


def main(argv: Sequence[str] | None = None, stdout: TextIO | None = None,
         stderr: TextIO | None = None, stdin: TextIO | None = None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.decimal is not None and args.decimal < 0:
        stderr.write("elnet: --decimal must be nonnegative\n")
        return 2
    try:
        return _run(args, Printer(stdout, args.decimal), stdin or sys.stdin)
    except InputError as exc:
        stderr.write(f"elnet: error: {exc}\n")
        return 2
    except AlgorithmError as exc:
        stderr.write(f"elnet: failed: {type(exc).__name__}: {exc}\n")
        return 1
    except ElnetError as exc:  # pragma: no cover - every error is one of the two kinds
        stderr.write(f"elnet: {exc}\n")
        return 1


def main_exit() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_exit()
