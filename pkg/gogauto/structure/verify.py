import logging
from concurrent.futures import ProcessPoolExecutor

from beartype import beartype as typechecker
from beartype.typing import List, Optional, Tuple

from gogauto.enums import Verdict
from gogauto.errors import CapacityError
from gogauto.graph_of_groups import GraphOfGroups, validate_gog
from gogauto.options import ExecutionOptions
from gogauto.report import StructureReport
from gogauto.structure.constants import StructureConstants, compute_constants
from gogauto.structure.departure import departure_empirical, departure_exact
from gogauto.structure.fellow_traveller import worst_trace
from gogauto.structure.language_fsa import LanguageFSA, build_language_fsa
from gogauto.structure.multiplier import build_verified_multiplier
from gogauto.structure.sample import LanguageSample, sample_language
from gogauto.structure.verify_language import verify_language
from gogauto.structure.word_metric import word_metric
from gogauto.utils.tictoc import TicToc


def _multiplier_records(
    gog: GraphOfGroups, language: LanguageFSA, letter: str, constants: StructureConstants, max_len: int, sample: LanguageSample
) -> List[Tuple[str, str]]:
    _, report = build_verified_multiplier(gog, language, letter, constants, max_len, sample=sample)
    return report.records()


def _departure_records(gog: GraphOfGroups, language: LanguageFSA, max_len: int, sample: LanguageSample) -> List[Tuple[str, str]]:
    options = gog.options
    r_max = options.departure_radius
    empirical = departure_empirical(gog, language, r_max, max_len, sample)
    records = empirical.records("DEPARTURE.EMPIRICAL")
    try:
        exact = departure_exact(gog, language, r_max, options.departure_cap)
    except CapacityError as error:
        logging.log(logging.WARN, f"exact departure search skipped: {error}")
        records.append(("DEPARTURE.EXACT.METHOD", "skipped"))
        exact = empirical
    else:
        records += exact.records("DEPARTURE.EXACT")
    violations = exact.violations(gog, sample, word_metric(gog, r_max, options.ball_cap))
    records.append(("DEPARTURE.VIOLATIONS", str(len(violations))))
    if violations:
        records.append(("DEPARTURE.VIOLATION.EXAMPLE", violations[0]))
    ok = exact.dominates(empirical) and exact.is_monotone() and not violations
    records.append(("DEPARTURE.STATUS", Verdict.of(ok).value))
    return records


@typechecker
def verify_structure(gog: GraphOfGroups, max_len: int, execution_options: Optional[ExecutionOptions] = None) -> StructureReport:
    """
    Run every check of the asynchronous automatic structure up to ``max_len``.

    The graph of groups is validated, the language automaton is built and checked, the constants and
    both departure tables are computed, and a verified multiplier is built for every letter of A.
    Multipliers are built in parallel when more than one worker is configured.

    Args:
        gog: graph of groups
        max_len: check length N
        execution_options: worker and progress settings, ``GOGAUTO_NUM_WORKERS`` by default

    Returns:
        Report with one ``STATUS`` record per clause and an overall ``STRUCTURE.STATUS``.

    Raises:
        InputError: the model fails validation.
        CapacityError: an enumeration exceeded its cap.
    """
    execution_options = execution_options or ExecutionOptions()
    report = StructureReport(title=f"structure check up to length {max_len}")
    with TicToc.timed(f"Verifying the automatic structure up to length {max_len}...", execution_options.progress_level):
        diagnostics = validate_gog(gog)
        report.extend(diagnostics.records())
        language = build_language_fsa(gog)
        report.extend((f"FSA.{kind}", str(count)) for kind, count in language.census().items())
        sample = sample_language(gog, language, max_len)

        language_report = verify_language(gog, language, max_len, sample)
        report.extend(language_report.records())

        constants = compute_constants(gog, language, max_len, sample)
        report.extend(constants.records())
        trace = worst_trace(gog, constants)
        if trace is not None:
            report.add("FELLOW_TRAVELLER.TRACE.STATUS", Verdict.of(trace.bounds_hold(constants)).value)
        report.add("FELLOW_TRAVELLER.STATUS", Verdict.of(constants.stable).value)

        report.extend(_departure_records(gog, language, max_len, sample))

        letters = list(gog.alphabet.names)
        if execution_options.is_parallel:
            with ProcessPoolExecutor(max_workers=execution_options.num_workers) as pool:
                futures = [pool.submit(_multiplier_records, gog, language, letter, constants, max_len, sample) for letter in letters]
                results = [future.result() for future in futures]
        else:
            results = [_multiplier_records(gog, language, letter, constants, max_len, sample) for letter in letters]
        for records in results:
            report.extend(records)

        verdict = report.verdict
        report.add("STRUCTURE.STATUS", verdict.value)
        report.note(f"{len(letters)} multipliers, {language_report.num_words} accepted words up to length {max_len}")
        logging.log(execution_options.progress_level if verdict else logging.WARN, f"  structure check {verdict.value}")
    return report
