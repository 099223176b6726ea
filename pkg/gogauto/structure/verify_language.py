import logging
from dataclasses import dataclass, field

from beartype import beartype as typechecker
from beartype.typing import Dict, List, Optional, Set, Tuple

from gogauto.alphabet import transversal_letter
from gogauto.enums import Verdict
from gogauto.errors import ParameterError
from gogauto.graph_of_groups import GraphOfGroups
from gogauto.normal_form import normalize_word, serialize
from gogauto.structure.language_fsa import LanguageFSA
from gogauto.structure.sample import LanguageSample, sample_language
from gogauto.structure.word_metric import word_metric
from gogauto.utils.data import format_word
from gogauto.utils.tictoc import TicToc
from gogauto.utils.typing import Word
from gogauto.vertex_group import cayley_ball


@dataclass
class LanguageReport:
    max_len: int
    num_words: int = 0
    num_elements: int = 0
    counts_per_length: List[int] = field(default_factory=list)
    elements_per_level: Dict[int, int] = field(default_factory=dict)
    surjectivity_radius: int = 0
    checks: Dict[str, Verdict] = field(default_factory=dict)
    counterexamples: Dict[str, str] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def fail(self, check: str, counterexample: str) -> None:
        self.checks[check] = Verdict.FAIL
        self.counterexamples.setdefault(check, counterexample)

    def records(self) -> List[Tuple[str, str]]:
        records = [
            ("LANGUAGE.MAX_LEN", str(self.max_len)),
            ("LANGUAGE.WORDS", str(self.num_words)),
            ("LANGUAGE.ELEMENTS", str(self.num_elements)),
            ("LANGUAGE.COUNTS", ",".join(str(count) for count in self.counts_per_length)),
        ]
        records += [(f"LANGUAGE.LEVEL.{level}", str(count)) for level, count in sorted(self.elements_per_level.items())]
        for check, verdict in self.checks.items():
            records.append((f"LANGUAGE.{check}.STATUS", verdict.value))
            if check in self.counterexamples:
                records.append((f"LANGUAGE.{check}.COUNTEREXAMPLE", self.counterexamples[check]))
        records.append(("LANGUAGE.STATUS", Verdict.of(self.ok).value))
        return records


def tree_loops(gog: GraphOfGroups, max_len: int) -> List[Word]:
    """
    Reduced loops at the base vertex written as s_1 e_1 ... s_n e_n, of length at most ``max_len``.

    Generated by depth-first search over syllables, independently of the language automaton.
    """
    transversals = gog.transversals
    loops: List[Word] = []
    stack: List[Tuple[str, Optional[str], Word]] = [(gog.base, None, ())]
    while stack:
        vertex, last, word = stack.pop()
        if vertex == gog.base:
            loops.append(word)
        if len(word) + 2 > max_len:
            continue
        for edge in gog.directed_edges:
            if edge.source != vertex:
                continue
            for k in range(len(transversals[edge.name])):
                if k == 0 and last is not None and edge.name == gog.edge(last).reverse:
                    continue
                stack.append((edge.target, edge.name, word + (transversal_letter(edge.name, k), edge.name)))
    return loops


def geodesic_words(gog: GraphOfGroups, max_len: int) -> List[Word]:
    """All geodesic words over B up to ``max_len``, checked against breadth-first distances."""
    group = gog.base_group
    distances = cayley_ball(group, max_len, gog.options.ball_cap).distances
    words: List[Word] = []
    frontier = [((), group.identity)]
    for length in range(max_len + 1):
        words += [word for word, _ in frontier]
        if length == max_len:
            break
        frontier = [
            (word + (letter,), h)
            for word, element in frontier
            for letter in group.generators.letters
            for h in [group.multiply(element, (letter,))]
            if distances.get(h) == length + 1
        ]
    return words


@typechecker
def verify_language(
    gog: GraphOfGroups, language: LanguageFSA, max_len: int, sample: Optional[LanguageSample] = None, radius: Optional[int] = None
) -> LanguageReport:
    """
    Check the language automaton against an independent description of the normal forms.

    Up to ``max_len``: the accepted words equal the tree loops followed by geodesic B-words; every
    element of a ball has an accepted representative; and the fiber of every element has as many
    words as its tail has geodesic words.

    Args:
        gog: graph of groups
        language: automaton to check
        max_len: word length bound N
        sample: accepted words up to ``max_len``, enumerated when omitted
        radius: radius of the surjectivity ball, defaults to ``min(N // 2, metric_radius)``

    Returns:
        Report with one verdict per check and the first counterexample of each failing check.

    Raises:
        ParameterError: negative ``max_len``.
    """
    if max_len < 0:
        raise ParameterError(f"max_len must be non-negative, got {max_len}")
    report = LanguageReport(max_len)
    with TicToc.timed(f"Verifying the normal-form language up to length {max_len}..."):
        sample = sample or sample_language(gog, language, max_len)
        report.num_words = len(sample.words)
        report.num_elements = len(sample.fibers)
        report.counts_per_length = [0] * (max_len + 1)
        for word in sample.words:
            report.counts_per_length[len(word)] += 1
        for nf in sample.fibers:
            report.elements_per_level[nf.tree_level] = report.elements_per_level.get(nf.tree_level, 0) + 1

        accepted: Set[Word] = set(sample.words)
        geodesics = geodesic_words(gog, max_len)
        expected: Set[Word] = {loop + tail for loop in tree_loops(gog, max_len) for tail in geodesics if len(loop) + len(tail) <= max_len}
        report.checks["EQUIVALENCE"] = Verdict.PASS
        extra, missing = accepted - expected, expected - accepted
        if extra or missing:
            word = min(extra | missing, key=gog.alphabet.key)
            report.fail("EQUIVALENCE", f"{'accepted' if word in extra else 'rejected'}: {format_word(word)}")

        report.checks["FIBERS"] = Verdict.PASS
        for nf, fiber in sample.fibers.items():
            canonical = serialize(gog, nf)
            count = gog.base_group.geodesic_count(nf.tail)
            if len(fiber) != count or canonical not in fiber:
                report.fail("FIBERS", f"{nf.describe()}: {len(fiber)} words, {count} geodesic tails")
                break

        radius = min(max_len // 2, gog.options.metric_radius) if radius is None else radius
        report.surjectivity_radius = radius
        report.checks["SURJECTIVITY"] = Verdict.PASS
        for nf in word_metric(gog, radius, gog.options.ball_cap).dist:
            word = serialize(gog, nf)
            if not language.accepts(word) or normalize_word(gog, word) != nf:
                report.fail("SURJECTIVITY", f"{nf.describe()} has no accepted representative")
                break
        verdict = Verdict.of(report.ok)
        logging.log(logging.INFO if verdict else logging.WARN, f"  language check {verdict.value}: {report.num_words} words")
    return report
