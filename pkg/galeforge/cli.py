#!/usr/bin/env python3
"""A command line application for polarized arrangements and their invariants."""
import argparse
import json
import logging
import re
import sys
from dataclasses import dataclass
from typing import List, Optional

import galeforge.exceptions as exceptions
from galeforge import category_o, invariants, oracle
from galeforge.arrangement import PolarizedArrangement, SignVector
from galeforge.cache import ResultCache, cache_key
from galeforge.contrib import graph as graphs
from galeforge.helpers import canonical_json, format_vector, parse_int_list, setup_logger
from galeforge.version import __version__

logger = logging.getLogger(__name__)

#: Options that do not change what a command prints.
_UNKEYED_OPTIONS = (
    "verbose", "logfile", "threads", "no_cache", "output", "json", "handler", "document_stdout",
)

#: Options whose value is a sign vector such as ``-+-``.
_SIGN_OPTIONS = ("--alpha", "--alpha1", "--alpha2", "--alpha-plus", "--alpha-minus")
_SIGN_PATTERN = re.compile(r"^[+-]+$")
#: Marks a sign vector value so argparse never reads it as an option or as ``--``.
_SIGN_PREFIX = "signs:"

#: Exit code of a verification run that found mismatching degrees.
EXIT_MISMATCH = 2


class ArgumentParser(argparse.ArgumentParser):
    """Reports usage errors with the invalid input exit code."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(exceptions.InvalidInput.exit_code, f"{self.prog}: error: {message}\n")


@dataclass(frozen=True)
class Output:
    """What a subcommand produced: text for stdout and an optional document."""

    text: str
    exit_code: int = 0
    document: Optional[str] = None

    def dumps(self) -> str:
        return json.dumps(
            {"text": self.text, "exit_code": self.exit_code, "document": self.document},
            sort_keys=True,
        )

    @classmethod
    def loads(cls, value: str) -> "Output":
        data = json.loads(value)
        return cls(data["text"], data["exit_code"], data["document"])


def main():
    """Command line application for polarized hyperplane arrangements."""
    sys.exit(run())


def run(argv: Optional[List[str]] = None) -> int:
    """Run one subcommand and return the process exit code."""
    parser = ArgumentParser(prog="galeforge", description=main.__doc__)
    argv = sys.argv[1:] if argv is None else list(argv)
    args = _parse_args(parser, _attach_sign_values(argv))
    if args.verbose:
        setup_logger(logging.DEBUG, log_filename=args.logfile)
        logger.debug(f"galeforge version: {__version__}")

    if not getattr(args, "handler", None):
        parser.print_help()
        return 1

    try:
        output = _execute(args)
    except exceptions.GaleforgeError as err:
        print(f"error: {err}", file=sys.stderr)
        return err.exit_code
    except OSError as err:
        print(f"error: {err}", file=sys.stderr)
        return exceptions.InvalidInput.exit_code

    if output.document is not None:
        target = getattr(args, "output", None) or getattr(args, "json", None)
        if target:
            with open(target, "w") as f:
                f.write(output.document)
            logger.debug("wrote %s", target)
        elif getattr(args, "document_stdout", True):
            sys.stdout.write(output.document)
    if output.text:
        print(output.text)
    return output.exit_code


def _attach_sign_values(argv: List[str]) -> List[str]:
    """Glue sign vector values to their option so ``-+`` and ``--`` survive argparse."""
    result = []
    i = 0
    while i < len(argv):
        token = argv[i]
        name, sep, value = token.partition("=")
        if name in _SIGN_OPTIONS and sep:
            token = f"{name}={_SIGN_PREFIX}{value}"
        elif token in _SIGN_OPTIONS and i + 1 < len(argv) and _SIGN_PATTERN.match(argv[i + 1]):
            token = f"{token}={_SIGN_PREFIX}{argv[i + 1]}"
            i += 1
        result.append(token)
        i += 1
    return result


def _execute(args: argparse.Namespace) -> Output:
    input_bytes = _input_bytes(args)
    result_cache = None if args.no_cache else ResultCache.from_env()
    key = None
    if result_cache is not None:
        key = cache_key(input_bytes, _command_signature(args))
        cached = result_cache.get(key)
        if cached is not None:
            return Output.loads(cached)
    output = args.handler(args, input_bytes)
    if result_cache is not None:
        result_cache.put(key, output.dumps())
    return output


def _input_bytes(args: argparse.Namespace) -> bytes:
    path = getattr(args, "file", None)
    if path is None:
        return b""
    with open(path, "rb") as f:
        return f.read()


def _command_signature(args: argparse.Namespace) -> str:
    options = {
        name: value
        for name, value in vars(args).items()
        if name not in _UNKEYED_OPTIONS and name != "file"
    }
    return json.dumps(options, sort_keys=True)


def _decode(input_bytes: bytes) -> str:
    try:
        return input_bytes.decode("utf-8")
    except UnicodeDecodeError:
        raise exceptions.InvalidInput("input file is not UTF-8 text")


def _load_arrangement(input_bytes: bytes) -> PolarizedArrangement:
    return PolarizedArrangement.loads(_decode(input_bytes))


def _load_json(text: str, what: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as err:
        raise exceptions.InvalidInput(f"{what} is not valid JSON: {err}")


def _signs(text: Optional[str]) -> Optional[SignVector]:
    if text is None:
        return None
    if text.startswith(_SIGN_PREFIX):
        text = text[len(_SIGN_PREFIX):]
    return SignVector.parse(text)


def _threads(args: argparse.Namespace) -> Optional[int]:
    if args.threads is not None:
        if args.threads < 1:
            raise exceptions.InvalidInput(f"--threads must be positive, got {args.threads}")
        return args.threads
    return invariants.threads_from_env()


def cmd_validate(args: argparse.Namespace, input_bytes: bytes) -> Output:
    report = _load_arrangement(input_bytes).validate()
    return Output(report.render(), 0 if report.passed else 1)


def cmd_chambers(args: argparse.Namespace, input_bytes: bytes) -> Output:
    A = _load_arrangement(input_bytes).validated()
    chambers = A.enumerate_chambers(args.filter, lattice=args.lattice)
    return Output("\n".join(chambers.as_strings()))


def cmd_bases(args: argparse.Namespace, input_bytes: bytes) -> Output:
    A = _load_arrangement(input_bytes).validated()
    lines = []
    for vertex in A.bases():
        labels = ",".join(A.edges[e] for e in vertex.b)
        lines.append(f"{{{labels}}} vertex {format_vector(vertex.vertex)} mu {A.mu(vertex)}")
    return Output("\n".join(lines))


def cmd_dual(args: argparse.Namespace, input_bytes: bytes) -> Output:
    A = _load_arrangement(input_bytes).validated()
    return Output("", document=canonical_json(A.gale_dual().to_json()))


def cmd_graph_build(args: argparse.Namespace, input_bytes: bytes) -> Output:
    data = _load_json(_decode(input_bytes), "graph file")
    if not isinstance(data, dict):
        raise exceptions.InvalidInput("graph JSON must be an object")
    graph = graphs.Graph.from_json(data)
    A = graphs.to_arrangement(graph, parse_int_list(args.eta), parse_int_list(args.zeta))
    return Output("", document=canonical_json(A.to_json()))


def cmd_abelianize(args: argparse.Namespace, input_bytes: bytes) -> Output:
    graph = graphs.abelianize(parse_int_list(args.ranks))
    return Output("", document=canonical_json(graph.to_json()))


def _render_series(series, empty: str) -> str:
    return series.render() if len(series) else empty


def cmd_upsilon(args: argparse.Namespace, input_bytes: bytes) -> Output:
    A = _load_arrangement(input_bytes).validated()
    twist = parse_int_list(args.twist) if args.twist is not None else None
    D = args.max_degree
    threads = _threads(args)
    empty = f"no terms up to degree {D}"
    series = {}
    if args.method in ("formula", "both"):
        series["formula"] = invariants.upsilon_formula(
            A, D, _signs(args.alpha_plus), _signs(args.alpha_minus), twist, threads
        )
    if args.method in ("oracle", "both"):
        series["oracle"] = invariants.upsilon_oracle(A, D, twist, threads)

    if args.method == "both":
        text = "\n".join(
            f"{name}:\n{_render_series(s, empty)}" for name, s in series.items()
        )
        document = {name: s.to_json() for name, s in series.items()}
    else:
        (only,) = series.values()
        text = _render_series(only, empty)
        document = only.to_json()
    return Output(text, document=canonical_json(document))


def cmd_verify(args: argparse.Namespace, input_bytes: bytes) -> Output:
    A = _load_arrangement(input_bytes).validated()
    report = invariants.verify(
        A,
        args.max_degree,
        _signs(args.alpha_plus),
        _signs(args.alpha_minus),
        threads=_threads(args),
    )
    return Output(report.render(), 0 if report.passed else EXIT_MISMATCH)


def cmd_euler(args: argparse.Namespace, input_bytes: bytes) -> Output:
    A = _load_arrangement(input_bytes).validated()
    counts = invariants.upsilon_euler(A, args.max_degree, threads=_threads(args))
    lines = [f"z^{format_vector(gamma)} : {count}" for gamma, count in counts.items()]
    return Output("\n".join(lines) or f"no terms up to degree {args.max_degree}")


def cmd_oracle(args: argparse.Namespace, input_bytes: bytes) -> Output:
    W = oracle.WeightedSpace.from_json(
        _load_json(args.weights, "--weights"), _load_json(args.eta, "--eta")
    )
    probe = parse_int_list(args.probe) if args.probe else None
    return Output(str(oracle.bb_poincare(W, probe)))


def cmd_ext(args: argparse.Namespace, input_bytes: bytes) -> Output:
    A = _load_arrangement(input_bytes).validated()
    alpha1, alpha2 = _signs(args.alpha1), _signs(args.alpha2)
    return Output(str(invariants.ext_poincare(A, alpha1, alpha2)))


def cmd_tilting(args: argparse.Namespace, input_bytes: bytes) -> Output:
    A = _load_arrangement(input_bytes).validated()
    report = category_o.tilting_filtration(A, _signs(args.alpha))
    lines = [f"T({A.nu(report.index)}) has {len(report.subquotients)} Verma subquotients"]
    for b, index in report.subquotients:
        labels = ",".join(A.edges[e] for e in b)
        lines.append(f"  {{{labels}}} V({index})")
    return Output("\n".join(lines))


def _add_file(parser: argparse.ArgumentParser, help: str = "Arrangement JSON file") -> None:
    parser.add_argument("file", help=help)


def _add_max_degree(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "-D",
        "--max-degree",
        type=int,
        required=True,
        help="Keep degrees gamma with |B gamma| at most this bound",
    )


def _add_chamber_overrides(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--alpha-plus", help="Chamber at the pole 0, as a string over '+' and '-'",
    )
    parser.add_argument(
        "--alpha-minus", help="Chamber at the pole infinity, as a string over '+' and '-'",
    )


def _parse_args(
    parser: argparse.ArgumentParser, args: Optional[List] = None
) -> argparse.Namespace:
    parser.add_argument(
        "--version", action="version", version="%(prog)s " + __version__,
    )
    parser.add_argument(
        "-v",
        "--verbose",
        action="store_true",
        dest="verbose",
        help="Set logger output to verbose output.",
    )
    parser.add_argument(
        "--logfile",
        action="store",
        help="logging debug and error messages into a log file",
    )
    parser.add_argument(
        "--threads",
        type=int,
        help="Worker threads for the invariants (default: GALEFORGE_THREADS or all cores)",
    )
    parser.add_argument(
        "--no-cache",
        action="store_true",
        help="Ignore the GALEFORGE_CACHE result cache",
    )
    commands = parser.add_subparsers(title="commands")

    validate = commands.add_parser("validate", help="Check the arrangement invariants")
    _add_file(validate)
    validate.set_defaults(handler=cmd_validate)

    chambers = commands.add_parser("chambers", help="List chambers in canonical order")
    _add_file(chambers)
    which = chambers.add_mutually_exclusive_group()
    for name in ("feasible", "bounded", "both"):
        which.add_argument(
            f"--{name}", action="store_const", const=name, dest="filter",
            help=f"Keep {name} chambers" if name != "both" else "Keep bounded feasible chambers",
        )
    chambers.add_argument(
        "--lattice", action="store_true", help="Use lattice feasibility",
    )
    chambers.set_defaults(handler=cmd_chambers, filter="both")

    bases = commands.add_parser("bases", help="List bases with their vertex and chamber")
    _add_file(bases)
    bases.set_defaults(handler=cmd_bases)

    dual = commands.add_parser("dual", help="Write the Gale dual arrangement")
    _add_file(dual)
    dual.add_argument("-o", "--output", help="Output file (default: stdout)")
    dual.set_defaults(handler=cmd_dual)

    graph = commands.add_parser("graph", help="Graph instances")
    graph_commands = graph.add_subparsers(title="graph commands")
    build = graph_commands.add_parser("build", help="Build the cographical arrangement")
    _add_file(build, help="Graph JSON file")
    build.add_argument("--eta", required=True, help="Comma separated character, one entry per non-framing vertex")
    build.add_argument("--zeta", required=True, help="Comma separated cocharacter lift, one entry per edge")
    build.add_argument("-o", "--output", help="Output file (default: stdout)")
    build.set_defaults(handler=cmd_graph_build)

    abelianize = commands.add_parser("abelianize", help="Abelianize a linear quiver")
    abelianize.add_argument("--ranks", required=True, help="Comma separated dimension vector")
    abelianize.add_argument("-o", "--output", help="Output file (default: stdout)")
    abelianize.set_defaults(handler=cmd_abelianize)

    upsilon = commands.add_parser("upsilon", help="Refined quasimap generating series")
    _add_file(upsilon)
    _add_max_degree(upsilon)
    method = upsilon.add_mutually_exclusive_group()
    for name in ("formula", "oracle", "both"):
        method.add_argument(
            f"--{name}", action="store_const", const=name, dest="method",
            help=f"Compute with the {name}" if name != "both" else "Compute both ways",
        )
    _add_chamber_overrides(upsilon)
    upsilon.add_argument("--twist", help="Comma separated twist m, one entry per edge")
    upsilon.add_argument("--json", help="Also write the series as JSON to this file")
    upsilon.set_defaults(handler=cmd_upsilon, method="formula", document_stdout=False)

    verify = commands.add_parser("verify", help="Compare the formula with the fixed-point oracle")
    _add_file(verify)
    _add_max_degree(verify)
    _add_chamber_overrides(verify)
    verify.set_defaults(handler=cmd_verify)

    euler = commands.add_parser("euler", help="Unrefined invariants")
    _add_file(euler)
    _add_max_degree(euler)
    euler.set_defaults(handler=cmd_euler)

    oracle_parser = commands.add_parser("oracle", help="Poincare polynomial of a toric quotient")
    oracle_parser.add_argument("--weights", required=True, help="JSON list of weights")
    oracle_parser.add_argument("--eta", required=True, help="JSON character")
    oracle_parser.add_argument("--probe", help="Comma separated positive probe")
    oracle_parser.set_defaults(handler=cmd_oracle)

    ext = commands.add_parser("ext", help="Poincare polynomial of a lagrangian intersection")
    _add_file(ext)
    ext.add_argument("--alpha1", required=True, help="First chamber")
    ext.add_argument("--alpha2", required=True, help="Second chamber")
    ext.set_defaults(handler=cmd_ext)

    tilting = commands.add_parser("tilting", help="Verma filtration of a tilting module")
    _add_file(tilting)
    tilting.add_argument("--alpha", required=True, help="Bounded feasible chamber")
    tilting.set_defaults(handler=cmd_tilting)

    return parser.parse_args(args)


if __name__ == "__main__":
    main()
