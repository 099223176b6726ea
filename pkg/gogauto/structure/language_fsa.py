"""
The automaton recognising the normal-form language.

A word of the language is U_T U_B: U_T = s_1 e_1 ... s_n e_n is a loop at the base vertex c in the
Bass-Serre tree written with tagged transversal letters, with s_i != 1 whenever e_i reverses
e_{i-1}, and U_B is a geodesic word over B. U_T is read by the syllable states, U_B by the cone
types of the base vertex group.
"""

import logging
from dataclasses import dataclass
from functools import cached_property

from beartype import beartype as typechecker
from beartype.typing import Dict, List, Optional, Sequence, Tuple

from gogauto.alphabet import transversal_letter
from gogauto.automata.fsa import FSA
from gogauto.cone_types import ConeTypeTable, build_geodesic_recognizer
from gogauto.enums import LanguageStateKind
from gogauto.graph_of_groups import GraphOfGroups
from gogauto.utils.tictoc import TicToc
from gogauto.utils.typing import Word

ORIGIN = "o"


def origin_syllable_state(letter: str, edge: str) -> str:
    return f"(o,{letter},{edge})"


def syllable_state(letter: str, edge: str) -> str:
    return f"({letter},{edge})"


def turn_state(edge: str, letter: str, next_edge: str) -> str:
    return f"({edge},{letter},{next_edge})"


def cone_state(cone_class: int) -> str:
    return f"CT[{cone_class}]"


@dataclass(frozen=True)
class LanguageFSA:
    """
    Args:
        fsa: trimmed deterministic automaton over A
        kinds: state name to state kind
        cone_types: cone-type automaton of the base vertex group
        cone_classes: cone class of every ``CT[i]`` state
    """

    fsa: FSA
    kinds: Dict[str, LanguageStateKind]
    cone_types: ConeTypeTable
    cone_classes: Dict[str, int]

    @property
    def alphabet(self) -> Tuple[str, ...]:
        return self.fsa.alphabet

    @property
    def initial(self) -> Optional[str]:
        return self.fsa.initial

    @property
    def states(self) -> Tuple[str, ...]:
        return self.fsa.states

    def is_final(self, state: str) -> bool:
        return state in self.fsa.finals

    @cached_property
    def moves(self) -> Dict[str, Dict[str, str]]:
        """Deterministic transition table: state to letter to state."""
        return {state: {letter: targets[0] for letter, targets in table.items()} for state, table in self.fsa.delta.items()}

    def step(self, state: Optional[str], letter: str) -> Optional[str]:
        if state is None:
            return None
        return self.moves[state].get(letter)

    def accepts(self, word: Sequence[str]) -> bool:
        return self.fsa.accepts(word)

    def enumerate(self, max_len: int, cap: int = 200_000) -> List[Word]:
        return self.fsa.enumerate(max_len, cap)

    def census(self) -> Dict[str, int]:
        return fsa_census(self)


@typechecker
def build_language_fsa(gog: GraphOfGroups, enforce_backtrack_rule: bool = True) -> LanguageFSA:
    """
    Build the normal-form language automaton of a validated graph of groups.

    Args:
        gog: graph of groups with finite-index edge subgroups
        enforce_backtrack_rule: forbid s' = 1 when e' reverses e; switching this off gives an
            automaton with non-unique representatives, used as a negative control

    Returns:
        Trimmed deterministic automaton together with its state census data.

    Raises:
        ConstructionError: the cone types of the base vertex group fail their check.
    """
    with TicToc.timed("Building the normal-form language automaton..."):
        cone_types = build_geodesic_recognizer(gog.base_group, gog.options.check_length)
        alphabet = gog.alphabet.names
        base = gog.base
        transversals = gog.transversals

        states: List[str] = [ORIGIN]
        kinds: Dict[str, LanguageStateKind] = {ORIGIN: LanguageStateKind.ORIGIN}
        finals = {ORIGIN}
        edges: List[Tuple[str, str, str]] = []

        def add_state(name: str, kind: LanguageStateKind, final: bool = False) -> str:
            if name not in kinds:
                states.append(name)
                kinds[name] = kind
                if final:
                    finals.add(name)
            return name

        cone_classes: Dict[str, int] = {}
        for cone_class in range(cone_types.num_classes):
            name = add_state(cone_state(cone_class), LanguageStateKind.CONE_TYPE, final=True)
            cone_classes[name] = cone_class

        def enter_cone_types(state: str) -> None:
            for letter, cone_class in cone_types.successors(cone_types.start):
                edges.append((state, letter, cone_state(cone_class)))

        directed = gog.directed_edges
        for edge in directed:
            for k in range(len(transversals[edge.name])):
                closing = edge.target == base
                add_state(syllable_state(transversal_letter(edge.name, k), edge.name), LanguageStateKind.SYLLABLE, final=closing)

        for edge in directed:
            if edge.source != base:
                continue
            for k in range(len(transversals[edge.name])):
                letter = transversal_letter(edge.name, k)
                state = add_state(origin_syllable_state(letter, edge.name), LanguageStateKind.ORIGIN_SYLLABLE)
                edges.append((ORIGIN, letter, state))
                edges.append((state, edge.name, syllable_state(letter, edge.name)))

        for edge in directed:
            for k in range(len(transversals[edge.name])):
                source = syllable_state(transversal_letter(edge.name, k), edge.name)
                for following in directed:
                    if following.source != edge.target:
                        continue
                    for k_next in range(len(transversals[following.name])):
                        if enforce_backtrack_rule and k_next == 0 and following.name == edge.reverse:
                            continue
                        letter = transversal_letter(following.name, k_next)
                        state = add_state(turn_state(edge.name, letter, following.name), LanguageStateKind.TURN)
                        edges.append((source, letter, state))
                        edges.append((state, following.name, syllable_state(letter, following.name)))
                if edge.target == base:
                    enter_cone_types(source)

        enter_cone_types(ORIGIN)
        for cone_class in range(cone_types.num_classes):
            for letter, target in cone_types.successors(cone_class):
                edges.append((cone_state(cone_class), letter, cone_state(target)))

        # an edge is added once per (source, letter), but the turn states are shared
        unique_edges = tuple(dict.fromkeys(edges))
        fsa = FSA(alphabet, tuple(states), ORIGIN, frozenset(finals), unique_edges, name="language").trim()
        kept = set(fsa.states)
        language = LanguageFSA(
            fsa,
            {state: kind for state, kind in kinds.items() if state in kept},
            cone_types,
            {state: cone_class for state, cone_class in cone_classes.items() if state in kept},
        )
        logging.log(logging.INFO, f"  {len(fsa.states)} states, {len(fsa.edges)} transitions")
    return language


def fsa_census(language: LanguageFSA) -> Dict[str, int]:
    """Number of states per kind, keyed by the kind's display name."""
    counts = {kind.value: 0 for kind in LanguageStateKind}
    for kind in language.kinds.values():
        counts[kind.value] += 1
    return counts
