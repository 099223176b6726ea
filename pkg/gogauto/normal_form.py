"""
Normal forms of elements of the fundamental group.

Every element has a unique expression s_1 e_1 ... s_n e_n h where e_1 ... e_n is a reduced
edge path from the base vertex c, s_i is a transversal representative of the edge subgroup of e_i
with s_i != 1 whenever e_{i-1} is the reverse of e_i, and h lies in the vertex group at the end of
the path. Loop-type forms end at c; path-type forms may end anywhere.

Words are rewritten on a stack holding the alternating path g_0 e_1 g_1 ... e_m g_m. Pushing the
reverse of the last edge pinches it when the element between them lies in the edge subgroup.
Closing the path factors each g_{i-1} as s_i times a subgroup element and pushes the latter across
e_i to the right.
"""

from dataclasses import dataclass

from beartype import beartype as typechecker
from beartype.typing import List, Optional, Sequence, Tuple

from gogauto.alphabet import transversal_letter
from gogauto.enums import LetterKind
from gogauto.errors import InputError
from gogauto.graph_of_groups import GraphOfGroups, reverse_name
from gogauto.utils.data import format_word
from gogauto.utils.typing import Element, Word


@dataclass(frozen=True)
class NormalForm:
    """
    Args:
        syllables: (transversal index, directed edge) per syllable
        tail: canonical element of the vertex group at ``end_vertex``
        end_vertex: end of the edge path, the base vertex for loop-type forms
    """

    syllables: Tuple[Tuple[int, str], ...]
    tail: Element
    end_vertex: str

    @property
    def tree_level(self) -> int:
        return len(self.syllables)

    @property
    def edges(self) -> Tuple[str, ...]:
        return tuple(edge for _, edge in self.syllables)

    def syllable_word(self) -> Word:
        """The edge-path part s_1 e_1 ... s_n e_n as a word over A."""
        word: List[str] = []
        for k, edge in self.syllables:
            word += [transversal_letter(edge, k), edge]
        return tuple(word)

    def describe(self) -> str:
        return f"{format_word(self.syllable_word())} | {format_word(self.tail)} @ {self.end_vertex}"


class _PathStack:
    def __init__(self, gog: GraphOfGroups):
        self.gog = gog
        self.elements: List[Element] = [()]
        self.edges: List[str] = []

    @classmethod
    def of(cls, gog: GraphOfGroups, nf: NormalForm) -> "_PathStack":
        stack = cls(gog)
        stack.elements = [gog.transversals[edge][k] for k, edge in nf.syllables] + [nf.tail]
        stack.edges = list(nf.edges)
        return stack

    @property
    def vertex(self) -> str:
        return self.gog.edge(self.edges[-1]).target if self.edges else self.gog.base

    def travel_to(self, vertex: str) -> None:
        for edge in self.gog.tree_path(self.vertex, vertex):
            self.push_edge(edge)

    def push_edge(self, edge: str) -> None:
        top = self.elements[-1]
        if self.edges and self.edges[-1] == reverse_name(edge) and self.gog.subgroup(edge).contains(top):
            self.edges.pop()
            self.elements.pop()
            below = self.gog.edge(edge).target
            self.elements[-1] = self.gog.vertex_group(below).product(self.elements[-1], self.gog.transfer(edge, top))
        else:
            self.edges.append(edge)
            self.elements.append(())

    def read(self, name: str) -> None:
        letter = self.gog.alphabet[name]
        if letter.kind is LetterKind.EDGE:
            self.travel_to(letter.vertex)
            self.push_edge(letter.edge)
        elif letter.element:
            self.travel_to(letter.vertex)
            group = self.gog.vertex_group(letter.vertex)
            self.elements[-1] = group.product(self.elements[-1], letter.element)

    def close(self, end_vertex: str) -> NormalForm:
        self.travel_to(end_vertex)
        elements = list(self.elements)
        syllables = []
        for i, edge in enumerate(self.edges):
            k, h = self.gog.subgroup(edge).coset_of(elements[i])
            syllables.append((k, edge))
            if h:
                target_group = self.gog.vertex_group(self.gog.edge(edge).target)
                elements[i + 1] = target_group.product(self.gog.transfer(edge, h), elements[i + 1])
        return NormalForm(tuple(syllables), elements[-1], end_vertex)


@typechecker
def normalize_path(gog: GraphOfGroups, word: Sequence[str], end_vertex: str) -> NormalForm:
    """
    Normal form of π(word) followed by the tree path from the base vertex to ``end_vertex``.

    Args:
        gog: graph of groups
        word: word over A
        end_vertex: where the edge path of the result ends

    Returns:
        Path-type normal form; loop-type when ``end_vertex`` is the base vertex.

    Raises:
        InputError: unknown letter or vertex.
    """
    if end_vertex not in gog.vertices:
        raise InputError(f"unknown vertex '{end_vertex}'")
    stack = _PathStack(gog)
    for name in word:
        stack.read(name)
    return stack.close(end_vertex)


@typechecker
def normalize_word(gog: GraphOfGroups, word: Sequence[str]) -> NormalForm:
    """
    Normal form s_1 e_1 ... s_n e_n h of π(word).

    Args:
        gog: graph of groups
        word: word over A

    Returns:
        The unique loop-type normal form of the element.

    Raises:
        InputError: a letter outside A.
    """
    return normalize_path(gog, word, gog.base)


def nf_append(gog: GraphOfGroups, nf: NormalForm, letter: str) -> NormalForm:
    """Normal form of π(nf)·π(letter); agrees with normalizing ``serialize(nf) + letter``."""
    stack = _PathStack.of(gog, nf)
    stack.read(letter)
    return stack.close(nf.end_vertex)


def tree_level(nf: NormalForm) -> int:
    """Distance in the Bass-Serre tree between c~ and g·c~."""
    return nf.tree_level


def serialize(gog: GraphOfGroups, nf: NormalForm) -> Word:
    """
    The word s_1 e_1 ... s_n e_n U_h over A, with U_h the canonical geodesic word of the tail.

    Raises:
        InputError: for a path-type form whose tail is not in the base vertex group.
    """
    if nf.end_vertex != gog.base and nf.tail:
        raise InputError(f"tail at vertex '{nf.end_vertex}' cannot be written over the base generators")
    return nf.syllable_word() + tuple(nf.tail)


def identity_form(gog: GraphOfGroups) -> NormalForm:
    return NormalForm((), (), gog.base)


def nf_inverse(gog: GraphOfGroups, nf: NormalForm) -> NormalForm:
    return normalize_word(gog, gog.alphabet.invert_word(serialize(gog, nf)))


def nf_multiply(gog: GraphOfGroups, first: NormalForm, second: NormalForm) -> NormalForm:
    return normalize_word(gog, serialize(gog, first) + serialize(gog, second))


def difference(gog: GraphOfGroups, first: NormalForm, second: NormalForm) -> NormalForm:
    """Normal form of π(first)^-1 π(second)."""
    return normalize_word(gog, gog.alphabet.invert_word(serialize(gog, first)) + serialize(gog, second))


def prefix_images(gog: GraphOfGroups, word: Sequence[str], start: Optional[NormalForm] = None) -> List[NormalForm]:
    """Normal forms of all prefixes of ``word``, the empty prefix first."""
    current = start or identity_form(gog)
    images = [current]
    for letter in word:
        current = nf_append(gog, current, letter)
        images.append(current)
    return images
