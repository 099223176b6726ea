import logging
from dataclasses import dataclass, field
from functools import cached_property

import networkx as nx
from beartype import beartype as typechecker
from beartype.typing import Dict, FrozenSet, List, Optional, Sequence, Set, Tuple

from gogauto.errors import CapacityError, InputError
from gogauto.utils.data import letter_order
from gogauto.utils.typing import Word

Edge = Tuple[str, str, str]


@dataclass(frozen=True)
class FSA:
    """
    Finite state automaton over a finite alphabet, possibly nondeterministic.

    An automaton without states (``initial`` is ``None``) accepts nothing.

    Args:
        alphabet: letter names, in the order used for shortlex enumeration
        states: state names
        initial: initial state
        finals: accepting states
        edges: ``(source, label, target)`` triples
    """

    alphabet: Tuple[str, ...]
    states: Tuple[str, ...]
    initial: Optional[str]
    finals: FrozenSet[str]
    edges: Tuple[Edge, ...]
    name: str = field(default="fsa", compare=False)

    def __post_init__(self):
        known = set(self.states)
        letters = set(self.alphabet)
        if self.initial is not None and self.initial not in known:
            raise InputError(f"initial state '{self.initial}' is not a state")
        if self.initial is None and self.states:
            raise InputError("automaton with states needs an initial state")
        if not self.finals <= known:
            raise InputError(f"final states {sorted(self.finals - known)} are not states")
        for source, label, target in self.edges:
            if source not in known or target not in known:
                raise InputError(f"edge {source} -{label}-> {target} uses an unknown state")
            if label not in letters:
                raise InputError(f"edge {source} -{label}-> {target} has a label outside the alphabet")

    @classmethod
    def empty(cls, alphabet: Sequence[str], name: str = "fsa") -> "FSA":
        return cls(tuple(alphabet), (), None, frozenset(), (), name)

    @cached_property
    def delta(self) -> Dict[str, Dict[str, Tuple[str, ...]]]:
        table: Dict[str, Dict[str, List[str]]] = {state: {} for state in self.states}
        for source, label, target in self.edges:
            table[source].setdefault(label, []).append(target)
        return {state: {label: tuple(targets) for label, targets in moves.items()} for state, moves in table.items()}

    @cached_property
    def is_deterministic(self) -> bool:
        return all(len(targets) == 1 for moves in self.delta.values() for targets in moves.values())

    @cached_property
    def letter_positions(self) -> Dict[str, int]:
        return letter_order(self.alphabet)

    def step(self, states: FrozenSet[str], letter: str) -> FrozenSet[str]:
        return frozenset(target for state in states for target in self.delta[state].get(letter, ()))

    def run(self, word: Sequence[str]) -> FrozenSet[str]:
        """States reachable from the initial state by reading ``word``."""
        for position, letter in enumerate(word):
            if letter not in self.letter_positions:
                raise InputError(f"letter '{letter}' at position {position} is not in the automaton alphabet")
        if self.initial is None:
            return frozenset()
        current = frozenset([self.initial])
        for letter in word:
            current = self.step(current, letter)
            if not current:
                break
        return current

    def accepts(self, word: Sequence[str]) -> bool:
        return bool(self.run(word) & self.finals)

    def graph(self) -> nx.MultiDiGraph:
        graph = nx.MultiDiGraph()
        graph.add_nodes_from(self.states)
        for source, label, target in self.edges:
            graph.add_edge(source, target, key=label)
        return graph

    def trim(self) -> "FSA":
        """Keep the states that are both accessible and live; the language is unchanged."""
        if self.initial is None:
            return self
        graph = self.graph()
        accessible = nx.descendants(graph, self.initial) | {self.initial}
        live: Set[str] = set(self.finals)
        for final in self.finals:
            live |= nx.ancestors(graph, final)
        keep = accessible & live
        if self.initial not in keep:
            return FSA.empty(self.alphabet, self.name)
        states = tuple(state for state in self.states if state in keep)
        edges = tuple(edge for edge in self.edges if edge[0] in keep and edge[2] in keep)
        return FSA(self.alphabet, states, self.initial, self.finals & keep, edges, self.name)

    def enumerate(self, max_len: int, cap: int = 200_000) -> List[Word]:
        """
        Accepted words of length at most ``max_len`` in shortlex order.

        Args:
            max_len: maximum word length
            cap: maximum number of words returned

        Returns:
            List of words.

        Raises:
            CapacityError: more than ``cap`` words.
        """
        if max_len < 0:
            raise InputError(f"max_len must be non-negative, got {max_len}")
        if self.initial is None:
            return []
        words: List[Word] = []
        level: List[Tuple[Word, FrozenSet[str]]] = [((), frozenset([self.initial]))]
        for length in range(max_len + 1):
            for word, states in level:
                if states & self.finals:
                    words.append(word)
                    if len(words) > cap:
                        raise CapacityError(f"more than {cap} accepted words up to length {max_len}")
            if length == max_len:
                break
            # extending a shortlex-sorted level letter by letter keeps the next level sorted
            next_level = []
            for word, states in level:
                for letter in self.alphabet:
                    nxt = self.step(states, letter)
                    if nxt:
                        next_level.append((word + (letter,), nxt))
            if len(next_level) > cap * 4:
                raise CapacityError(f"enumeration frontier exceeds {cap * 4} words at length {length + 1}")
            level = next_level
        logging.log(logging.DEBUG, f"  {len(words)} accepted words up to length {max_len}")
        return words

    def determinize(self) -> "FSA":
        """Subset construction over the reachable subsets; states are named ``{a,b,...}``."""
        if self.initial is None:
            return self

        def subset_name(subset: FrozenSet[str]) -> str:
            return "{" + ",".join(sorted(subset)) + "}"

        start = frozenset([self.initial])
        seen = {start: subset_name(start)}
        order = [start]
        edges = []
        index = 0
        while index < len(order):
            subset = order[index]
            index += 1
            for letter in self.alphabet:
                target = self.step(subset, letter)
                if not target:
                    continue
                if target not in seen:
                    seen[target] = subset_name(target)
                    order.append(target)
                edges.append((seen[subset], letter, seen[target]))
        finals = frozenset(seen[subset] for subset in order if subset & self.finals)
        return FSA(self.alphabet, tuple(seen[s] for s in order), seen[start], finals, tuple(edges), self.name)


@typechecker
def fsa_accept(m: FSA, word: Sequence[str]) -> bool:
    return m.accepts(word)


@typechecker
def fsa_trim(m: FSA) -> FSA:
    return m.trim()


@typechecker
def fsa_enumerate(m: FSA, max_len: int, cap: int = 200_000) -> List[Word]:
    return m.enumerate(max_len, cap)


def fsa_determinize(m: FSA) -> FSA:
    return m.determinize()
