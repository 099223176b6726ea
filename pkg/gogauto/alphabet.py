"""
The generating set A of the fundamental group.

A' consists of the directed edges, the generating set B of the base vertex group and one letter
per transversal representative; A adds the inverse of every letter of A' (B is already symmetric).
Transversal letters are named ``<edge>.<k>`` with ``k`` the shortlex position of the representative,
so a transversal letter determines its edge.
"""

from dataclasses import dataclass
from functools import cached_property

from beartype import beartype as typechecker
from beartype.typing import Dict, Iterator, List, Optional, Sequence, Tuple

from gogauto.enums import LetterKind
from gogauto.errors import InputError
from gogauto.utils.checks import check_unique_names
from gogauto.utils.data import format_word, invert_letter, letter_order, shortlex_key, split_word
from gogauto.utils.typing import Element, Word


@dataclass(frozen=True)
class Letter:
    """
    One letter of A.

    ``vertex`` is where the letter is read: the start of the traversed edge for edge letters, the
    vertex carrying ``element`` otherwise. ``edge`` is the traversed edge (edge letters) or the
    edge of the transversal (transversal letters).
    """

    name: str
    kind: LetterKind
    inverse: str
    vertex: str
    edge: Optional[str] = None
    index: Optional[int] = None
    element: Element = ()

    @property
    def is_identity(self) -> bool:
        return self.kind is not LetterKind.EDGE and not self.element

    def image(self) -> str:
        if self.kind is LetterKind.EDGE:
            return f"edge {self.edge}"
        return f"{format_word(self.element)} @ {self.vertex}"


class StructureAlphabet:
    """Ordered letter table of A; the order is the shortlex order used throughout."""

    def __init__(self, letters: Sequence[Letter]):
        check_unique_names([letter.name for letter in letters], "structure alphabet")
        self.letters: Tuple[Letter, ...] = tuple(letters)
        self._by_name: Dict[str, Letter] = {letter.name: letter for letter in letters}
        for letter in letters:
            if letter.inverse not in self._by_name:
                raise InputError(f"letter '{letter.name}' has no inverse in the alphabet")

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[Letter]:
        return iter(self.letters)

    def __contains__(self, name: str) -> bool:
        return name in self._by_name

    def __getitem__(self, name: str) -> Letter:
        try:
            return self._by_name[name]
        except KeyError:
            raise InputError(f"unknown letter '{name}'") from None

    @cached_property
    def names(self) -> Tuple[str, ...]:
        return tuple(letter.name for letter in self.letters)

    @cached_property
    def order(self) -> Dict[str, int]:
        return letter_order(self.names)

    def key(self, word: Word):
        return shortlex_key(word, self.order)

    def letters_of_kind(self, kind: LetterKind) -> List[Letter]:
        return [letter for letter in self.letters if letter.kind is kind]

    def invert_word(self, word: Sequence[str]) -> Word:
        return tuple(self[name].inverse for name in reversed(word))

    def check_word(self, word: Sequence[str]) -> Word:
        for position, name in enumerate(word):
            if name not in self._by_name:
                raise InputError(f"unknown letter '{name}' at position {position}")
        return tuple(word)

    def parse_word(self, text: str) -> Word:
        """Whitespace separated letter names, inverses with a trailing apostrophe; ``ε`` is the empty word."""
        return self.check_word(split_word(text))

    def table(self) -> List[Tuple[str, str, str]]:
        """(name, kind, image) rows for display."""
        return [(letter.name, letter.kind.value, letter.image()) for letter in self.letters]


def transversal_letter(edge: str, index: int) -> str:
    return f"{edge}.{index}"


@typechecker
def build_alphabet(gog) -> StructureAlphabet:
    """
    Build A for a graph of groups whose transversals are available.

    Args:
        gog: ``GraphOfGroups``

    Returns:
        Letters in the order: edge letters, base letters, transversal letters; every letter of A'
        is followed by its inverse, base letters keep the order of B.

    Raises:
        NotLocallyFiniteError: an edge subgroup of infinite index.
    """
    letters: List[Letter] = []
    for edge in gog.directed_edges:
        letters.append(Letter(edge.name, LetterKind.EDGE, invert_letter(edge.name), edge.source, edge.name))
        letters.append(Letter(invert_letter(edge.name), LetterKind.EDGE, edge.name, edge.target, edge.reverse))

    base_group = gog.base_group
    for name in base_group.generators.letters:
        letters.append(Letter(name, LetterKind.BASE, base_group.generators.inverse(name), gog.base, element=base_group.letter_element(name)))

    for edge in gog.directed_edges:
        group = gog.vertex_group(edge.source)
        for k, representative in enumerate(gog.transversals[edge.name]):
            name = transversal_letter(edge.name, k)
            letters.append(Letter(name, LetterKind.TRANSVERSAL, invert_letter(name), edge.source, edge.name, k, representative))
            letters.append(
                Letter(invert_letter(name), LetterKind.TRANSVERSAL, name, edge.source, edge.name, k, group.inverse(representative))
            )
    return StructureAlphabet(letters)
