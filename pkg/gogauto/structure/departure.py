"""
Departure function of the normal-form language.

D(r) is such that any subword of length at least D(r) of an accepted word moves the path at least
distance r. The exact method searches configurations (automaton state, image of the subword read so
far) inside a word-metric ball; the empirical method scans the subwords of the accepted words up to a
length bound and is a lower bound for the exact table.
"""

import logging
from collections import deque
from dataclasses import dataclass, field

from beartype import beartype as typechecker
from beartype.typing import Dict, List, Optional, Set, Tuple

from gogauto.enums import DepartureMethod
from gogauto.errors import DepartureViolationError, ParameterError
from gogauto.graph_of_groups import GraphOfGroups
from gogauto.normal_form import NormalForm, identity_form, nf_append
from gogauto.structure.language_fsa import LanguageFSA
from gogauto.structure.sample import LanguageSample, sample_language
from gogauto.structure.word_metric import WordMetric, word_metric
from gogauto.utils.data import format_word
from gogauto.utils.tictoc import TicToc
from gogauto.utils.typing import Word

Configuration = Tuple[str, NormalForm]


@dataclass
class DepartureTable:
    """
    Args:
        values: r to D(r) for 1 <= r <= r_max
        method: how the table was obtained
        caps: search bounds used (``radius`` for the exact method, ``max_len`` for the empirical one)
    """

    values: Dict[int, int]
    method: DepartureMethod
    caps: Dict[str, int] = field(default_factory=dict)

    def __getitem__(self, r: int) -> int:
        return self.values[r]

    @property
    def r_max(self) -> int:
        return max(self.values, default=0)

    def is_monotone(self) -> bool:
        ordered = [self.values[r] for r in sorted(self.values)]
        return all(a <= b for a, b in zip(ordered, ordered[1:]))

    def dominates(self, other: "DepartureTable") -> bool:
        """True when every entry is at least the corresponding entry of ``other``."""
        return all(self.values[r] >= value for r, value in other.values.items() if r in self.values)

    def violations(self, gog: GraphOfGroups, sample: LanguageSample, metric: WordMetric, limit: int = 10) -> List[str]:
        """
        Subwords of sampled words that are at least D(r) long but move less than r.

        Only distances below ``metric.radius + 1`` can be certified, so r is limited by the radius.
        """
        found: List[str] = []
        images = _subword_images(gog)
        for word in sample.words:
            for s in range(len(word)):
                for end in range(s + 1, len(word) + 1):
                    norm = metric.norm(images(word[s:end]))
                    if norm is None:
                        continue
                    t = end - s
                    for r, value in self.values.items():
                        if t >= value and norm < r:
                            found.append(f"r={r}: '{format_word(word)}' moves {norm} over positions {s}..{end}")
                            if len(found) >= limit:
                                return found
        return found

    def records(self, prefix: str = "DEPARTURE") -> List[Tuple[str, str]]:
        records = [(f"{prefix}.METHOD", self.method.value)]
        records += [(f"{prefix}.CAP.{name.upper()}", str(value)) for name, value in self.caps.items()]
        records += [(f"{prefix}.{r}", str(value)) for r, value in sorted(self.values.items())]
        return records


def _subword_images(gog: GraphOfGroups):
    # memoised π(subword) shared by all words of a scan
    cache: Dict[Word, NormalForm] = {(): identity_form(gog)}

    def image(subword: Word) -> NormalForm:
        if subword not in cache:
            cache[subword] = nf_append(gog, image(subword[:-1]), subword[-1])
        return cache[subword]

    return image


@typechecker
def departure_empirical(
    gog: GraphOfGroups, language: LanguageFSA, r_max: int, max_len: int, sample: Optional[LanguageSample] = None
) -> DepartureTable:
    """
    D(r) = 1 + the longest subword of an accepted word up to ``max_len`` that moves less than r.

    Args:
        gog: graph of groups
        language: normal-form language automaton
        r_max: largest tabulated r
        max_len: length bound N of the scanned words, at least 1
        sample: accepted words up to ``max_len``, enumerated when omitted

    Returns:
        Empirical table, a lower bound for the exact one.

    Raises:
        ParameterError: ``r_max`` or ``max_len`` below 1.
    """
    if r_max < 1 or max_len < 1:
        raise ParameterError(f"r_max and max_len must be at least 1, got {r_max} and {max_len}")
    with TicToc.timed(f"Scanning departure up to r={r_max} on words of length <= {max_len}..."):
        sample = sample or sample_language(gog, language, max_len)
        metric = word_metric(gog, r_max - 1, gog.options.ball_cap)
        image = _subword_images(gog)
        longest = {r: 0 for r in range(1, r_max + 1)}
        for word in sample.words:
            for s in range(len(word)):
                for end in range(s + 1, len(word) + 1):
                    norm = metric.norm(image(word[s:end]))
                    if norm is None:
                        continue
                    for r in range(norm + 1, r_max + 1):
                        longest[r] = max(longest[r], end - s)
        table = DepartureTable({r: 1 + t for r, t in longest.items()}, DepartureMethod.EMPIRICAL, {"max_len": max_len})
    return table


def _reachable_configurations(language: LanguageFSA, metric: WordMetric) -> Tuple[Dict[Configuration, List[Configuration]], Set[Configuration]]:
    # forward closure of (q, 1) for every state q, inside the ball; escapes are moves leaving it
    identity = metric.identity
    successors: Dict[Configuration, List[Configuration]] = {}
    escapes: Set[Configuration] = set()
    queue = deque((state, identity) for state in language.states)
    seen = set(queue)
    while queue:
        config = queue.popleft()
        state, delta = config
        moves = []
        for letter, target in language.moves[state].items():
            image = metric.right[delta][letter]
            if image is None:
                escapes.add(config)
                continue
            successor = (target, image)
            moves.append(successor)
            if successor not in seen:
                seen.add(successor)
                queue.append(successor)
        successors[config] = moves
    return successors, escapes


def _longest_paths(
    successors: Dict[Configuration, List[Configuration]], relevant: Set[Configuration], targets: Set[Configuration], user_supplied: bool
) -> Dict[Configuration, int]:
    # iterative depth-first search; a configuration met again on the active path closes a cycle
    longest: Dict[Configuration, int] = {}
    on_path: Set[Configuration] = set()
    for root in relevant:
        if root in longest:
            continue
        stack = [(root, iter(successors[root]))]
        on_path.add(root)
        while stack:
            config, children = stack[-1]
            advanced = False
            for child in children:
                if child not in relevant:
                    continue
                if child in on_path:
                    origin = "the supplied automaton" if user_supplied else "an automaton built by gogauto"
                    raise DepartureViolationError(
                        f"departure property violated: a loop of {origin} returns to the same configuration",
                        f"state {child[0]}, difference {child[1].describe()}",
                    )
                if child not in longest:
                    stack.append((child, iter(successors[child])))
                    on_path.add(child)
                    advanced = True
                    break
            if advanced:
                continue
            stack.pop()
            on_path.discard(config)
            best = 0 if config in targets else -1
            for child in successors[config]:
                if child in relevant and longest.get(child, -1) >= 0:
                    best = max(best, 1 + longest[child])
            longest[config] = best
    return longest


@typechecker
def departure_exact(
    gog: GraphOfGroups, language: LanguageFSA, r_max: int, cap: Optional[int] = None, user_supplied: bool = False
) -> DepartureTable:
    """
    Exact departure table from a search over (state, difference) configurations.

    A configuration (q, g) is reached by reading a word from some state with image g. For each r the
    configurations that can still reach an image of norm below r are kept, and D(r) is one more than
    the longest such path starting at an image of 1. When a kept configuration has a move leaving the
    ball of radius ``cap`` the search is not exhaustive and the table is tagged empirical.

    Args:
        gog: graph of groups
        language: trimmed normal-form language automaton
        r_max: largest tabulated r, at least 1
        cap: radius of the configuration ball, defaults to ``options.departure_cap``
        user_supplied: the automaton was not built by ``build_language_fsa``; only changes the error text

    Returns:
        Departure table tagged exact, or empirical after a downgrade.

    Raises:
        ParameterError: ``r_max`` below 1 or ``cap`` below ``r_max``.
        DepartureViolationError: infinitely many subwords move less than r.
    """
    cap = gog.options.departure_cap if cap is None else cap
    if r_max < 1 or cap < r_max:
        raise ParameterError(f"need 1 <= r_max <= cap, got r_max={r_max}, cap={cap}")
    method = DepartureMethod.EXACT
    values: Dict[int, int] = {}
    with TicToc.timed(f"Searching departure configurations up to r={r_max} in a ball of radius {cap}..."):
        metric = word_metric(gog, cap, gog.options.ball_cap)
        successors, escapes = _reachable_configurations(language, metric)
        predecessors: Dict[Configuration, List[Configuration]] = {config: [] for config in successors}
        for config, children in successors.items():
            for child in children:
                predecessors[child].append(config)
        for r in range(1, r_max + 1):
            targets = {config for config in successors if metric.dist[config[1]] < r}
            relevant = set(targets)
            queue = deque(targets)
            while queue:
                for parent in predecessors[queue.popleft()]:
                    if parent not in relevant:
                        relevant.add(parent)
                        queue.append(parent)
            if method is DepartureMethod.EXACT and relevant & escapes:
                method = DepartureMethod.EMPIRICAL
                logging.log(logging.WARN, f"departure search left the ball of radius {cap} at r={r}; table downgraded to empirical")
            longest = _longest_paths(successors, relevant, targets, user_supplied)
            starts = [longest[config] for config in relevant if config[1] == metric.identity]
            values[r] = 1 + max(starts, default=0)
    return DepartureTable(values, method, {"radius": cap})
