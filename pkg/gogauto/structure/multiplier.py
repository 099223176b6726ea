"""
Multiplier automata.

The multiplier of a letter x accepts (W_L, W_R) exactly when both words are accepted by the language
automaton and π(W_L)·x = π(W_R). A state records the language states of both tapes, the word
difference δ = Ŵ_L(i)^-1 Ŵ_R(j) and a phase. While both tapes are open the left tape is read as long
as |δ| <= τ and the right tape otherwise; a finished tape hands over to the other one. Moves making
|δ| exceed K are dropped.
"""

import logging
from collections import deque
from dataclasses import dataclass, field
from enum import Enum

from beartype import beartype as typechecker
from beartype.typing import Dict, List, Optional, Set, Tuple

from gogauto.automata.async_automaton import DOLLAR, AsyncAutomaton, async_validate_shape
from gogauto.enums import AsyncStateClass, Verdict
from gogauto.errors import ParameterError
from gogauto.graph_of_groups import GraphOfGroups
from gogauto.normal_form import NormalForm, identity_form, nf_append, normalize_word, serialize
from gogauto.structure.constants import StructureConstants
from gogauto.structure.language_fsa import LanguageFSA
from gogauto.structure.sample import LanguageSample, sample_language
from gogauto.structure.word_metric import WordMetric, word_metric
from gogauto.utils.data import format_word
from gogauto.utils.tictoc import TicToc
from gogauto.utils.typing import Word

END_STATE = "s$"


class Phase(Enum):
    BOTH = "both"
    LEFT_DONE = "left_done"
    RIGHT_DONE = "right_done"


State = Tuple[str, str, NormalForm, Phase]


def state_name(gog: GraphOfGroups, state: State) -> str:
    left, right, delta, phase = state
    return f"{left}|{right}|{','.join(serialize(gog, delta)) or 'ε'}|{phase.value}"


@dataclass
class Multiplier:
    """
    Args:
        letter: the letter x
        automaton: the asynchronous automaton
        K: bound on |δ| along accepted runs
        tau: schedule threshold, the left tape is read while |δ| <= tau
    """

    letter: str
    automaton: AsyncAutomaton
    K: int
    tau: int

    def accepts(self, left: Word, right: Word) -> bool:
        return self.automaton.accept_pair(left, right)


def default_bounds(gog: GraphOfGroups, constants: StructureConstants, letter: str) -> Tuple[int, int]:
    """Starting (K, tau): K = kappa + 2*eta + |x| + 1, tau = the per-letter fellow-traveller constant."""
    norm = 0 if normalize_word(gog, (letter,)) == identity_form(gog) else 1
    K = constants.kappa_empirical + 2 * constants.eta + norm + 1
    tau = constants.per_letter.get(letter, constants.kappa_empirical)
    return K, tau


def _class_of(state: State, metric: WordMetric, tau: int) -> AsyncStateClass:
    phase = state[3]
    if phase is Phase.LEFT_DONE:
        return AsyncStateClass.RIGHT_DOLLAR
    if phase is Phase.RIGHT_DONE:
        return AsyncStateClass.LEFT_DOLLAR
    return AsyncStateClass.LEFT if metric.dist[state[2]] <= tau else AsyncStateClass.RIGHT


@typechecker
def build_multiplier(
    gog: GraphOfGroups, language: LanguageFSA, letter: str, K: int, tau: Optional[int] = None, metric: Optional[WordMetric] = None
) -> Multiplier:
    """
    Build the multiplier automaton of ``letter``.

    Args:
        gog: graph of groups
        language: trimmed normal-form language automaton
        letter: the letter x of A
        K: bound on |δ|, at least d_A(1, π(x))
        tau: schedule threshold, defaults to K - 1
        metric: word-metric ball of radius at least K

    Returns:
        The multiplier, trimmed to states from which the final state is reachable.

    Raises:
        InputError: ``letter`` is not in A.
        ParameterError: ``K`` below d_A(1, π(x)) or a negative ``tau``.
    """
    gog.alphabet.check_word((letter,))
    if K < 0:
        raise ParameterError(f"K must be non-negative, got {K}")
    tau = max(K - 1, 0) if tau is None else tau
    if tau < 0:
        raise ParameterError(f"tau must be non-negative, got {tau}")
    if metric is None or metric.radius != K:
        metric = word_metric(gog, K, gog.options.ball_cap)
    target = normalize_word(gog, (letter,))
    if target not in metric:
        raise ParameterError(f"K={K} is below d_A(1, {letter})")

    with TicToc.timed(f"Building the multiplier of '{letter}' with K={K}, tau={tau}..."):
        start: State = (language.initial, language.initial, metric.identity, Phase.BOTH)
        edges: List[Tuple[State, str, object]] = []
        seen: Set[State] = {start}
        discovered: List[State] = [start]
        queue = deque([start])
        while queue:
            state = queue.popleft()
            left, right, delta, phase = state
            cls = _class_of(state, metric, tau)
            moves: List[Tuple[str, object]] = []
            if cls.reads_left():
                for symbol, nxt in language.moves[left].items():
                    image = metric.left_multiply(symbol, delta)
                    if image is not None:
                        moves.append((symbol, (nxt, right, image, phase)))
                if language.is_final(left):
                    if phase is Phase.BOTH:
                        moves.append((DOLLAR, (left, right, delta, Phase.LEFT_DONE)))
                    elif delta == target:
                        moves.append((DOLLAR, END_STATE))
            else:
                for symbol, nxt in language.moves[right].items():
                    image = metric.right[delta].get(symbol)
                    if image is not None:
                        moves.append((symbol, (left, nxt, image, phase)))
                if language.is_final(right):
                    if phase is Phase.BOTH:
                        moves.append((DOLLAR, (left, right, delta, Phase.RIGHT_DONE)))
                    elif delta == target:
                        moves.append((DOLLAR, END_STATE))
            for symbol, successor in moves:
                edges.append((state, symbol, successor))
                if successor != END_STATE and successor not in seen:
                    seen.add(successor)
                    discovered.append(successor)
                    queue.append(successor)

        # keep the states from which s$ is reachable
        parents: Dict[object, List[object]] = {}
        for source, _, successor in edges:
            parents.setdefault(successor, []).append(source)
        live = {END_STATE}
        queue = deque([END_STATE])
        while queue:
            for parent in parents.get(queue.popleft(), ()):
                if parent not in live:
                    live.add(parent)
                    queue.append(parent)
        live.add(start)

        names = {END_STATE: END_STATE}
        classes: Dict[str, AsyncStateClass] = {}
        order = [start] + [state for state in discovered[1:] if state in live]
        for state in order:
            names[state] = state_name(gog, state)
            classes[names[state]] = _class_of(state, metric, tau)
        classes[END_STATE] = AsyncStateClass.END
        kept = tuple((names[s], symbol, names[t]) for s, symbol, t in edges if s in live and t in live)
        automaton = AsyncAutomaton(gog.alphabet.names, classes, names[start], kept, name=f"multiplier[{letter}]")
        logging.log(logging.INFO, f"  {len(classes)} states ({len(seen) + 1} before trimming), {len(kept)} transitions")
    return Multiplier(letter, automaton, K, tau)


@dataclass
class MultiplierReport:
    letter: str
    K: int
    tau: int
    max_len: int
    num_states: int = 0
    shape: Verdict = Verdict.PASS
    pairs_checked: int = 0
    false_accepts: List[Tuple[Word, Word]] = field(default_factory=list)
    false_rejects: List[Tuple[Word, Word]] = field(default_factory=list)
    escalations: int = 0

    @property
    def ok(self) -> bool:
        return bool(self.shape) and not self.false_accepts and not self.false_rejects

    @property
    def verdict(self) -> Verdict:
        return Verdict.of(self.ok)

    def records(self) -> List[Tuple[str, str]]:
        prefix = f"MULTIPLIER.{self.letter}"
        records = [
            (f"{prefix}.K", str(self.K)),
            (f"{prefix}.TAU", str(self.tau)),
            (f"{prefix}.STATES", str(self.num_states)),
            (f"{prefix}.SHAPE", self.shape.value),
            (f"{prefix}.PAIRS", str(self.pairs_checked)),
            (f"{prefix}.FALSE_ACCEPTS", str(len(self.false_accepts))),
            (f"{prefix}.FALSE_REJECTS", str(len(self.false_rejects))),
            (f"{prefix}.ESCALATIONS", str(self.escalations)),
        ]
        for name, pairs in (("FALSE_ACCEPT", self.false_accepts), ("FALSE_REJECT", self.false_rejects)):
            if pairs:
                left, right = pairs[0]
                records.append((f"{prefix}.{name}.EXAMPLE", f"{format_word(left)} / {format_word(right)}"))
        records.append((f"{prefix}.STATUS", self.verdict.value))
        return records


def _right_words(multiplier: Multiplier, left: Word, max_len: int) -> Set[Word]:
    # all right tapes up to max_len accepted together with the fixed left tape
    automaton = multiplier.automaton
    found: Set[Word] = set()
    if automaton.initial is None:
        return found
    tape = left + (DOLLAR,)
    queue = deque([(automaton.initial, 0, ())])
    seen = {(automaton.initial, 0, ())}
    while queue:
        state, i, right = queue.popleft()
        cls = automaton.classes[state]
        if cls is AsyncStateClass.END:
            if i == len(tape):
                found.add(right[:-1])
            continue
        successors = []
        if cls.reads_left():
            if i < len(tape) and (state, tape[i]) in automaton.delta:
                successors.append((automaton.delta[(state, tape[i])], i + 1, right))
        else:
            for symbol in automaton.alphabet + (DOLLAR,):
                target = automaton.delta.get((state, symbol))
                if target is None or (right and right[-1] == DOLLAR):
                    continue
                if symbol != DOLLAR and len(right) >= max_len:
                    continue
                successors.append((target, i, right + (symbol,)))
        for successor in successors:
            if successor not in seen:
                seen.add(successor)
                queue.append(successor)
    return found


@typechecker
def verify_multiplier(
    gog: GraphOfGroups,
    language: LanguageFSA,
    multiplier: Multiplier,
    max_len: int,
    sample: Optional[LanguageSample] = None,
    exhaustive: bool = False,
) -> MultiplierReport:
    """
    Compare the multiplier with π(W_L)·x = π(W_R) on all accepted words up to ``max_len``.

    For every left word the right tape is driven through the automaton and the accepted right words
    are compared with the fiber of π(W_L)·x. With ``exhaustive`` every pair is run through the shuffle
    search instead.

    Args:
        gog: graph of groups
        language: normal-form language automaton
        multiplier: automaton under test
        max_len: length bound N
        sample: accepted words up to ``max_len``, enumerated when omitted
        exhaustive: check all pairs with ``accept_pair``

    Returns:
        Report with the shape verdict and all false accepts and false rejects.
    """
    if max_len < 0:
        raise ParameterError(f"max_len must be non-negative, got {max_len}")
    sample = sample or sample_language(gog, language, max_len)
    report = MultiplierReport(multiplier.letter, multiplier.K, multiplier.tau, max_len, num_states=len(multiplier.automaton.classes))
    report.shape = Verdict.of(async_validate_shape(multiplier.automaton).ok)
    letter = multiplier.letter
    for left in sample.words:
        expected = set(sample.fibers.get(nf_append(gog, sample.forms[left], letter), ()))
        if exhaustive:
            accepted = {right for right in sample.words if multiplier.accepts(left, right)}
            report.pairs_checked += len(sample.words)
        else:
            accepted = _right_words(multiplier, left, max_len)
            report.pairs_checked += len(expected | accepted)
        report.false_accepts += [(left, right) for right in sorted(accepted - expected, key=gog.alphabet.key)]
        report.false_rejects += [(left, right) for right in sorted(expected - accepted, key=gog.alphabet.key)]
    level = logging.INFO if report.ok else logging.WARN
    logging.log(
        level,
        f"  multiplier '{letter}': {report.verdict.value}, {len(report.false_accepts)} false accepts, {len(report.false_rejects)} false rejects",
    )
    return report


@typechecker
def build_verified_multiplier(
    gog: GraphOfGroups,
    language: LanguageFSA,
    letter: str,
    constants: StructureConstants,
    max_len: int,
    K: Optional[int] = None,
    sample: Optional[LanguageSample] = None,
) -> Tuple[Multiplier, MultiplierReport]:
    """
    Build and verify a multiplier, raising K and tau together after false rejects.

    At most ``options.max_escalations`` retries are made, and only when
    ``options.retry_false_rejects`` is set. False accepts are never retried.

    Returns:
        The last multiplier built and its report.
    """
    options = gog.options
    default_K, tau = default_bounds(gog, constants, letter)
    K = default_K if K is None else K
    tau = min(tau, K)
    sample = sample or sample_language(gog, language, max_len)
    escalations = 0
    while True:
        multiplier = build_multiplier(gog, language, letter, K, tau)
        report = verify_multiplier(gog, language, multiplier, max_len, sample)
        report.escalations = escalations
        if report.ok or report.false_accepts or not options.retry_false_rejects or escalations >= options.max_escalations:
            return multiplier, report
        escalations += 1
        K, tau = K + 1, tau + 1
        logging.log(logging.WARN, f"multiplier '{letter}' missed {len(report.false_rejects)} pairs; retrying with K={K}, tau={tau}")
