"""
Command-line interface.

Every subcommand reads a ``.gog`` file and prints ``KEY=VALUE`` records (or words, for
``enumerate``) on stdout; log lines go to stderr. The exit code is 0 when every check passes,
1 on a verification failure and 2 on invalid input or an exceeded cap.
"""

import argparse
import logging
import sys

from beartype.typing import List, Optional, Sequence

from gogauto import __version__
from gogauto.automata.serialization import export_dot, format_automaton
from gogauto.enums import Verdict
from gogauto.errors import CapacityError, ConstructionError, InputError
from gogauto.graph_of_groups import GraphOfGroups, validate_gog
from gogauto.normal_form import normalize_word, serialize
from gogauto.options import ExecutionOptions, StructureOptions
from gogauto.report import StructureReport
from gogauto.spec_file import load_spec
from gogauto.structure.constants import compute_constants
from gogauto.structure.departure import departure_empirical, departure_exact
from gogauto.structure.fellow_traveller import worst_trace
from gogauto.structure.language_fsa import build_language_fsa
from gogauto.structure.multiplier import build_multiplier, build_verified_multiplier, default_bounds
from gogauto.structure.verify import verify_structure
from gogauto.utils.data import format_word

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_INPUT = 2


def _write(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8") as out_file:
        out_file.write(text)
    logging.log(logging.INFO, f"  wrote {path}")


def _validate(gog: GraphOfGroups, args: argparse.Namespace) -> StructureReport:
    report = StructureReport(validate_gog(gog).records(), title=f"validate {args.file}")
    report.add("VALIDATE.STATUS", Verdict.PASS.value)
    return report


def _letters(gog: GraphOfGroups, args: argparse.Namespace) -> StructureReport:
    report = StructureReport(title=f"letters of {args.file}")
    for name, kind, image in gog.alphabet.table():
        report.add(f"LETTER.{name}", f"{kind} {image}")
    return report


def _normal_form(gog: GraphOfGroups, args: argparse.Namespace) -> StructureReport:
    word = gog.alphabet.parse_word(args.word)
    nf = normalize_word(gog, word)
    return StructureReport(
        [
            ("NF.WORD", format_word(serialize(gog, nf))),
            ("NF.SYLLABLES", format_word(nf.syllable_word())),
            ("NF.TAIL", format_word(nf.tail)),
            ("NF.LEVEL", str(nf.tree_level)),
        ],
        title=f"normal form of {format_word(word)}",
    )


def _build_fsa(gog: GraphOfGroups, args: argparse.Namespace) -> StructureReport:
    language = build_language_fsa(gog)
    report = StructureReport(((f"FSA.{kind}", str(count)) for kind, count in language.census().items()), title=f"language automaton of {args.file}")
    if args.dot:
        _write(args.dot, export_dot(language.fsa, "language"))
    if args.save:
        _write(args.save, format_automaton(language.fsa))
    return report


def _enumerate(gog: GraphOfGroups, args: argparse.Namespace) -> List[str]:
    language = build_language_fsa(gog)
    return [format_word(word) for word in language.enumerate(args.max_len, gog.options.enumeration_cap)]


def _constants(gog: GraphOfGroups, args: argparse.Namespace) -> StructureReport:
    constants = compute_constants(gog, build_language_fsa(gog), args.max_len)
    return StructureReport(constants.records(), title=f"constants of {args.file} up to length {args.max_len}")


def _departure(gog: GraphOfGroups, args: argparse.Namespace) -> StructureReport:
    language = build_language_fsa(gog)
    if args.exact:
        table = departure_exact(gog, language, args.rmax, args.exact_cap)
    else:
        table = departure_empirical(gog, language, args.rmax, args.max_len)
    report = StructureReport(table.records(), title=f"departure function of {args.file}")
    report.add("DEPARTURE.STATUS", Verdict.of(table.is_monotone()).value)
    return report


def _kappa(gog: GraphOfGroups, args: argparse.Namespace) -> StructureReport:
    constants = compute_constants(gog, build_language_fsa(gog), args.max_len)
    report = StructureReport(
        [(key, value) for key, value in constants.records() if key.startswith("KAPPA") or key in ("ETA", "ZETA")],
        title=f"fellow-traveller constant of {args.file} up to length {args.max_len}",
    )
    if args.trace:
        trace = worst_trace(gog, constants)
        if trace is not None:
            report.add("FELLOW_TRAVELLER.TRACE.STATUS", Verdict.of(trace.bounds_hold(constants)).value)
            for line in trace.describe():
                report.note(line)
    report.add("FELLOW_TRAVELLER.STATUS", Verdict.of(constants.stable).value)
    return report


def _multiplier(gog: GraphOfGroups, args: argparse.Namespace) -> StructureReport:
    language = build_language_fsa(gog)
    max_len = args.verify if args.verify is not None else gog.options.check_length
    constants = compute_constants(gog, language, max(max_len, 1))
    if args.verify is not None:
        multiplier, multiplier_report = build_verified_multiplier(gog, language, args.letter, constants, args.verify, K=args.K)
        report = StructureReport(multiplier_report.records())
    else:
        default_K, tau = default_bounds(gog, constants, args.letter)
        K = default_K if args.K is None else args.K
        multiplier = build_multiplier(gog, language, args.letter, K, min(tau, K))
        prefix = f"MULTIPLIER.{args.letter}"
        report = StructureReport([(f"{prefix}.K", str(K)), (f"{prefix}.TAU", str(multiplier.tau))])
        for class_name, count in multiplier.automaton.census().items():
            report.add(f"{prefix}.CLASS.{class_name}", str(count))
        report.add(f"{prefix}.SHAPE.STATUS", Verdict.of(multiplier.automaton.validate_shape().ok).value)
    report.title = f"multiplier of '{args.letter}' for {args.file}"
    if args.dot:
        _write(args.dot, export_dot(multiplier.automaton, f"multiplier_{args.letter}"))
    return report


def _verify(gog: GraphOfGroups, args: argparse.Namespace) -> StructureReport:
    return verify_structure(gog, args.max_len, ExecutionOptions())


def _non_negative(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text}")
    return value


def _positive(text: str) -> int:
    value = int(text)
    if value <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gogauto", description="Asynchronous automatic structures for graphs of groups")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--verbose", "-v", action="store_true", help="log progress to stderr")
    parser.add_argument("--cap", type=_positive, default=None, help="cap for every enumeration")
    commands = parser.add_subparsers(dest="command", required=True)

    def command(name: str, handler, help_text: str) -> argparse.ArgumentParser:
        sub = commands.add_parser(name, help=help_text)
        sub.add_argument("file", help=".gog file")
        sub.set_defaults(handler=handler)
        return sub

    command("validate", _validate, "check the graph-of-groups hypotheses")
    command("letters", _letters, "print the letters of A with their images")
    command("normal-form", _normal_form, "normal form of a word").add_argument("word", help="letters separated by spaces")

    sub = command("build-fsa", _build_fsa, "build the normal-form language automaton")
    sub.add_argument("--dot", metavar="PATH", help="write a Graphviz file")
    sub.add_argument("--save", metavar="PATH", help="write the automaton in the text format")

    command("enumerate", _enumerate, "accepted words in shortlex order").add_argument("--max-len", type=_non_negative, required=True)
    command("constants", _constants, "eta, zeta and kappa").add_argument("--max-len", type=_positive, required=True)

    sub = command("departure", _departure, "tabulate the departure function")
    sub.add_argument("--rmax", type=_positive, required=True)
    method = sub.add_mutually_exclusive_group(required=True)
    method.add_argument("--exact", action="store_true", help="search (state, difference) configurations")
    method.add_argument("--max-len", type=_non_negative, help="scan accepted words up to this length")
    sub.add_argument("--cap", dest="exact_cap", type=_positive, default=None, help="configuration ball radius of --exact")

    sub = command("kappa", _kappa, "measure the fellow-traveller constant")
    sub.add_argument("--max-len", type=_positive, required=True)
    sub.add_argument("--trace", action="store_true", help="print the anchors of the worst pair")

    sub = command("multiplier", _multiplier, "build the multiplier of a letter")
    sub.add_argument("--letter", required=True)
    sub.add_argument("--K", type=_non_negative, default=None, help="bound on the word difference")
    sub.add_argument("--verify", type=_non_negative, default=None, metavar="N", help="verify on accepted words up to length N")
    sub.add_argument("--dot", metavar="PATH", help="write a Graphviz file")

    command("verify", _verify, "run every check").add_argument("--max-len", type=_positive, required=True)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARN, format="%(levelname)s %(message)s", stream=sys.stderr)

    try:
        options = StructureOptions() if args.cap is None else StructureOptions().with_cap(args.cap)
        gog = load_spec(args.file, options, validate=args.command != "validate")
        result = args.handler(gog, args)
    except (InputError, CapacityError, OSError) as error:
        print(f"error: {error}", file=sys.stderr)
        return EXIT_INPUT
    except ConstructionError as error:
        print(f"verification failed: {error}", file=sys.stderr)
        return EXIT_FAIL

    if isinstance(result, list):
        print("\n".join(result))
        return EXIT_PASS
    print(result.to_text(summary=bool(result.summary)), end="")
    return EXIT_PASS if result.verdict else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
