"""Cone types of vertex groups and the geodesic-word recognizer built from them."""

import logging
from dataclasses import dataclass, field

from beartype import beartype as typechecker
from beartype.typing import Dict, Iterator, List, Optional, Sequence, Tuple

from gogauto.errors import ConstructionError
from gogauto.utils.data import format_word
from gogauto.utils.typing import Word
from gogauto.vertex_group import FiniteGroupOracle, FreeGroupOracle, VertexGroupOracle, cayley_ball


@dataclass
class ConeTypeTable:
    """
    Deterministic automaton over B whose states are cone types.

    Every state is accepting; a missing transition rejects. The start class is the cone type of the
    empty word and classes are numbered by the shortlex order of their least representative.
    """

    letters: Tuple[str, ...]
    start: int
    representatives: List[Word]
    transitions: Dict[Tuple[int, str], int] = field(repr=False)

    @property
    def num_classes(self) -> int:
        return len(self.representatives)

    def step(self, cone_class: Optional[int], letter: str) -> Optional[int]:
        if cone_class is None:
            return None
        return self.transitions.get((cone_class, letter))

    def class_of(self, word: Sequence[str]) -> Optional[int]:
        """Cone type reached by ``word``, ``None`` if the word is not geodesic."""
        current = self.start
        for letter in word:
            current = self.step(current, letter)
            if current is None:
                return None
        return current

    def accepts(self, word: Sequence[str]) -> bool:
        return self.class_of(word) is not None

    def successors(self, cone_class: int) -> Iterator[Tuple[str, int]]:
        for letter in self.letters:
            target = self.transitions.get((cone_class, letter))
            if target is not None:
                yield letter, target


def _free_cone_types(oracle: FreeGroupOracle) -> ConeTypeTable:
    # the cone type of a reduced word is determined by its last letter
    letters = oracle.generators.letters
    moving = oracle.generators.moving_letters
    representatives: List[Word] = [()] + [(letter,) for letter in moving]
    class_of_last = {letter: i + 1 for i, letter in enumerate(moving)}
    transitions = {}
    for letter in moving:
        transitions[(0, letter)] = class_of_last[letter]
        for nxt in moving:
            if nxt != oracle.generators.inverse(letter):
                transitions[(class_of_last[letter], nxt)] = class_of_last[nxt]
    return ConeTypeTable(letters, 0, representatives, transitions)


def _finite_cone_types(oracle: FiniteGroupOracle) -> ConeTypeTable:
    # Moore refinement of the automaton g -b-> gb (iff the distance grows), all states accepting
    letters = oracle.generators.letters
    table = oracle.table
    n = oracle.order
    distance = [len(word) for word in oracle.elements()]
    successor: List[Dict[str, int]] = []
    for g in range(n):
        moves = {}
        for letter in oracle.generators.moving_letters:
            h = int(table[g, oracle.letter_index(letter)])
            if distance[h] == distance[g] + 1:
                moves[letter] = h
        successor.append(moves)

    partition = [0] * n
    num_blocks = 1
    while True:
        signatures = {}
        refined = []
        for g in range(n):
            signature = (partition[g],) + tuple(partition[successor[g][letter]] if letter in successor[g] else -1 for letter in letters)
            refined.append(signatures.setdefault(signature, len(signatures)))
        partition = refined
        if len(signatures) == num_blocks:
            break
        num_blocks = len(signatures)

    # renumber by least element index, i.e. shortlex order of representatives
    renumber: Dict[int, int] = {}
    representatives: List[Word] = []
    for g in range(n):
        if partition[g] not in renumber:
            renumber[partition[g]] = len(renumber)
            representatives.append(oracle.element_at(g))
    transitions = {}
    for g in range(n):
        for letter, h in successor[g].items():
            transitions[(renumber[partition[g]], letter)] = renumber[partition[h]]
    return ConeTypeTable(letters, renumber[partition[0]], representatives, transitions)


@typechecker
def build_geodesic_recognizer(oracle: VertexGroupOracle, check_length: int = 6) -> ConeTypeTable:
    """
    Build the cone-type automaton of a vertex group and verify it against breadth-first distances.

    Args:
        oracle: vertex group
        check_length: every word over B up to this length is checked

    Returns:
        Automaton accepting exactly the geodesic words.

    Raises:
        ConstructionError: a word up to ``check_length`` is misclassified.
    """
    if isinstance(oracle, FreeGroupOracle):
        cone_types = _free_cone_types(oracle)
    elif isinstance(oracle, FiniteGroupOracle):
        cone_types = _finite_cone_types(oracle)
    else:
        raise NotImplementedError(f"cone types are not available for {type(oracle).__name__}")
    verify_geodesic_recognizer(oracle, cone_types, check_length)
    logging.log(logging.INFO, f"  {cone_types.num_classes} cone types")
    return cone_types


def verify_geodesic_recognizer(oracle: VertexGroupOracle, cone_types: ConeTypeTable, check_length: int) -> None:
    """
    Exhaustive check over all words up to ``check_length``: accepted iff length equals d_B.

    Raises:
        ConstructionError: with the first misclassified word.
    """
    ball = cayley_ball(oracle, check_length)
    # depth-first over words, carrying the element and the cone class
    stack: List[Tuple[Word, tuple, Optional[int]]] = [((), oracle.identity, cone_types.start)]
    while stack:
        word, element, cone_class = stack.pop()
        geodesic = ball.distances[element] == len(word)
        if geodesic != (cone_class is not None):
            raise ConstructionError("geodesic recognizer disagrees with breadth-first distances", format_word(word))
        if len(word) == check_length:
            continue
        for letter in oracle.generators.letters:
            stack.append((word + (letter,), oracle.multiply(element, (letter,)), cone_types.step(cone_class, letter)))
