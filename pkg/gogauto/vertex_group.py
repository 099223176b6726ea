"""
Vertex-group oracles.

Two kinds of computable groups are supported: free groups given by a list of free generators
and finite groups given by a Cayley table or by permutation generators. Elements are always
passed around in canonical form, a tuple of letter names: the freely reduced word for free
groups and the shortlex-least word for finite groups. The identity is the empty tuple.
"""

import logging
import re
from abc import ABC, abstractmethod
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property

import networkx as nx
import numpy as np
from beartype import beartype as typechecker
from beartype.typing import Dict, List, Optional, Sequence, Tuple
from sympy.combinatorics import Permutation

from gogauto.enums import VertexGroupKind
from gogauto.errors import CapacityError, InputError
from gogauto.utils.checks import check_letters, check_name, check_unique_names
from gogauto.utils.data import format_word, invert_letter, letter_order, shortlex_key
from gogauto.utils.typing import CAYLEY_TABLE, DISTANCE_MAP, INDEX_ARRAY, Element, Word

IDENTITY_LETTER = "1"
MAX_FINITE_ORDER = 5000


@dataclass(frozen=True)
class GeneratorSet:
    """
    Symmetric generating set B: the identity letter followed by every generator and its inverse.

    The letter order (generator declaration order, each inverse right after its generator) is the
    order used for every shortlex comparison.
    """

    generators: Tuple[str, ...]
    identity_letter: str = IDENTITY_LETTER

    def __post_init__(self):
        check_unique_names(self.generators, "generator list")
        for name in self.generators:
            check_name(name, "generator")
            if name == self.identity_letter:
                raise InputError(f"generator name '{name}' is reserved for the identity letter")

    @cached_property
    def letters(self) -> Tuple[str, ...]:
        letters = [self.identity_letter]
        for name in self.generators:
            letters += [name, invert_letter(name)]
        return tuple(letters)

    @cached_property
    def moving_letters(self) -> Tuple[str, ...]:
        """All letters except the identity letter."""
        return self.letters[1:]

    @cached_property
    def order(self) -> Dict[str, int]:
        return letter_order(self.letters)

    def inverse(self, letter: str) -> str:
        if letter == self.identity_letter:
            return letter
        return invert_letter(letter)

    def invert_word(self, word: Word) -> Word:
        return tuple(self.inverse(letter) for letter in reversed(word))

    def key(self, word: Word):
        return shortlex_key(word, self.order)

    def __contains__(self, letter: str) -> bool:
        return letter in self.order


@typechecker
def free_reduce(word: Sequence[str], generators: Optional[GeneratorSet] = None) -> Word:
    """
    Freely reduce a word: cancel adjacent inverse pairs and drop identity letters.

    Args:
        word: word over free generators and their inverses
        generators: when given, every letter is checked against it

    Returns:
        The unique reduced word representing the same element.

    Raises:
        InputError: if ``generators`` is given and a letter is unknown.
    """
    if generators is not None:
        check_letters(word, generators, "free group")
    stack: List[str] = []
    for letter in word:
        if letter == IDENTITY_LETTER:
            continue
        if stack and stack[-1] == invert_letter(letter):
            stack.pop()
        else:
            stack.append(letter)
    return tuple(stack)


class VertexGroupOracle(ABC):
    """
    Interface of a computable vertex group with symmetric generating set B.

    ``hyperbolicity_radius`` is reserved for vertex kinds whose cone types must be identified from a
    bounded tail; the shipped kinds compute cone types exactly and leave it ``None``.
    """

    kind: VertexGroupKind
    identity: Element = ()
    hyperbolicity_radius: Optional[int] = None

    def __init__(self, generators: GeneratorSet):
        self.generators = generators

    @abstractmethod
    def multiply(self, g: Element, word: Sequence[str]) -> Element:
        """Canonical form of g·π(word)."""

    @abstractmethod
    def inverse(self, g: Element) -> Element:
        pass

    @abstractmethod
    def word_length(self, g: Element) -> int:
        """d_B(1, g)."""

    @abstractmethod
    def geodesic_count(self, g: Element) -> int:
        """Number of geodesic words over B representing g."""

    @property
    def is_finite(self) -> bool:
        return self.kind is VertexGroupKind.FINITE

    def canonical(self, word: Sequence[str]) -> Element:
        return self.multiply(self.identity, word)

    def product(self, g: Element, h: Element) -> Element:
        return self.multiply(g, h)

    def letter_element(self, letter: str) -> Element:
        return self.canonical((letter,))

    def check_word(self, word: Sequence[str]) -> None:
        check_letters(word, self.generators, f"{self.kind.value} vertex group")

    def describe(self) -> dict:
        return {"kind": self.kind.value, "generators": list(self.generators.generators)}


class FreeGroupOracle(VertexGroupOracle):
    kind = VertexGroupKind.FREE

    def __init__(self, generators: GeneratorSet):
        if len(generators.generators) == 0:
            raise InputError("free vertex group needs rank >= 1")
        super().__init__(generators)

    @classmethod
    def of_rank(cls, rank: int, names: Optional[Sequence[str]] = None) -> "FreeGroupOracle":
        if rank <= 0:
            raise InputError(f"free group rank must be positive, got {rank}")
        if names is None:
            names = [f"x{i + 1}" for i in range(rank)]
        if len(names) != rank:
            raise InputError(f"free group of rank {rank} declared with {len(names)} generators")
        return cls(GeneratorSet(tuple(names)))

    @property
    def rank(self) -> int:
        return len(self.generators.generators)

    def multiply(self, g: Element, word: Sequence[str]) -> Element:
        self.check_word(word)
        return free_reduce(tuple(g) + tuple(word))

    def inverse(self, g: Element) -> Element:
        return self.generators.invert_word(g)

    def word_length(self, g: Element) -> int:
        return len(g)

    def geodesic_count(self, g: Element) -> int:
        # reduced words are the unique geodesics
        return 1

    def describe(self) -> dict:
        return {**super().describe(), "rank": self.rank}


def validate_cayley_table(table: np.ndarray) -> None:
    """
    Check that ``table`` is the multiplication table of a group with identity at index 0.

    Raises:
        InputError: naming the first failed group axiom.
    """
    if table.ndim != 2 or table.shape[0] != table.shape[1] or table.shape[0] == 0:
        raise InputError(f"group table must be a non-empty square matrix, got shape {table.shape}")
    n = table.shape[0]
    if table.min() < 0 or table.max() >= n:
        raise InputError(f"group table entries must lie in 0..{n - 1}")
    idx = np.arange(n)
    if not (np.array_equal(table[0], idx) and np.array_equal(table[:, 0], idx)):
        raise InputError("group table must have the identity at index 0")
    for axis in (0, 1):
        if not np.all(np.sort(table, axis=axis) == (idx[:, None] if axis == 0 else idx[None, :])):
            raise InputError("group table is not a Latin square")
    for a in range(n):
        # (ab)c == a(bc) for all b, c at once
        left = table[table[a]]
        right = table[a][table]
        if not np.array_equal(left, right):
            b, c = np.argwhere(left != right)[0]
            raise InputError(f"group table is not associative at ({a}, {b}, {c})")


def parse_cycles(text: str) -> List[List[int]]:
    """Parse cycle notation such as ``(0 1)(2 3 4)``; ``()`` is the identity."""
    stripped = text.strip()
    if not re.fullmatch(r"(\(\s*[\d\s,]*\))+", stripped):
        raise InputError(f"malformed cycle notation '{text}'")
    cycles = []
    for body in re.findall(r"\(([^)]*)\)", stripped):
        points = [int(token) for token in re.split(r"[\s,]+", body.strip()) if token]
        if len(set(points)) != len(points):
            raise InputError(f"repeated point in cycle '({body})'")
        if points:
            cycles.append(points)
    return cycles


class FiniteGroupOracle(VertexGroupOracle):
    """
    Finite group stored as a Cayley table indexed in shortlex order of the canonical words.

    Index 0 is the identity. Elements are exchanged with callers as their shortlex-least words.
    """

    kind = VertexGroupKind.FINITE

    def __init__(self, generators: GeneratorSet, table: CAYLEY_TABLE, generator_elements: Sequence[int], source: Optional[dict] = None):
        super().__init__(generators)
        table = np.asarray(table, dtype=np.int64)
        validate_cayley_table(table)
        if len(generator_elements) != len(generators.generators):
            raise InputError(f"expected {len(generators.generators)} generator elements, got {len(generator_elements)}")
        n = table.shape[0]
        for element in generator_elements:
            if not 0 <= element < n:
                raise InputError(f"generator element {element} outside the table 0..{n - 1}")
        self.source = source or {"table": table.tolist(), "elements": list(generator_elements)}

        raw_inverse = np.argmin(table, axis=1)
        raw_letters = {generators.identity_letter: 0}
        for name, element in zip(generators.generators, generator_elements):
            raw_letters[name] = int(element)
            raw_letters[invert_letter(name)] = int(raw_inverse[element])

        # breadth-first relabelling in letter order gives shortlex-least words
        order = [0]
        words: List[Word] = [()]
        seen = {0: 0}
        queue = deque([0])
        while queue:
            current = queue.popleft()
            for letter in generators.moving_letters:
                nxt = int(table[order[current], raw_letters[letter]])
                if nxt not in seen:
                    seen[nxt] = len(order)
                    order.append(nxt)
                    words.append(words[current] + (letter,))
                    queue.append(seen[nxt])
        if len(order) != n:
            raise InputError(f"generators reach {len(order)} of the {n} table elements")

        position = np.empty(n, dtype=np.int64)
        position[order] = np.arange(n)
        self._table = position[table[np.ix_(order, order)]]
        self._words = words
        self._index = {word: i for i, word in enumerate(words)}
        self._letter_index = {letter: int(position[raw]) for letter, raw in raw_letters.items()}
        self._inverse = np.argmin(self._table, axis=1)
        self._distances = np.array([len(word) for word in words], dtype=np.int64)

    @classmethod
    def from_table(cls, generators: Sequence[str], table: Sequence[Sequence[int]], generator_elements: Sequence[int]) -> "FiniteGroupOracle":
        table = np.asarray(table, dtype=np.int64)
        source = {"table": table.tolist(), "elements": list(generator_elements)}
        return cls(GeneratorSet(tuple(generators)), table, generator_elements, source)

    @classmethod
    def from_permutations(cls, generators: Sequence[str], permutations: Dict[str, str]) -> "FiniteGroupOracle":
        """
        Close permutation generators (cycle notation, one per generator) under multiplication.

        Args:
            generators: generator names in declaration order
            permutations: cycle notation string per generator name

        Returns:
            Oracle whose table is built by closure.

        Raises:
            InputError: malformed cycle notation or a missing permutation.
            CapacityError: the closure exceeds ``MAX_FINITE_ORDER`` elements.
        """
        missing = [name for name in generators if name not in permutations]
        if missing:
            raise InputError(f"missing permutation for generator(s) {', '.join(missing)}")
        cycles = {name: parse_cycles(permutations[name]) for name in generators}
        size = 1 + max([point for name in generators for cycle in cycles[name] for point in cycle], default=0)
        perms = [Permutation(cycles[name], size=size) for name in generators]

        identity = Permutation(size - 1) if size > 0 else Permutation([])
        elements = [tuple(identity.array_form)]
        index = {elements[0]: 0}
        queue = deque([0])
        while queue:
            current = Permutation(list(elements[queue.popleft()]))
            for perm in perms + [p**-1 for p in perms]:
                nxt = tuple((current * perm).array_form)
                if nxt not in index:
                    if len(elements) >= MAX_FINITE_ORDER:
                        raise CapacityError(f"permutation group closure exceeds {MAX_FINITE_ORDER} elements")
                    index[nxt] = len(elements)
                    elements.append(nxt)
                    queue.append(index[nxt])

        arrays = np.array(elements, dtype=np.int64)
        n = len(elements)
        table = np.zeros((n, n), dtype=np.int64)
        for a in range(n):
            # sympy composes left to right: (p*q)(i) = q(p(i))
            products = arrays[:, arrays[a]]
            table[a] = [index[tuple(row)] for row in products]
        generator_elements = [index[tuple(p.array_form)] for p in perms]
        source = {"permutations": {name: permutations[name] for name in generators}}
        return cls(GeneratorSet(tuple(generators)), table, generator_elements, source)

    @property
    def order(self) -> int:
        return len(self._words)

    @property
    def table(self) -> CAYLEY_TABLE:
        return self._table

    @property
    def distances(self) -> INDEX_ARRAY:
        """Word length of every element, indexed like ``elements()``."""
        return self._distances

    @property
    def inverse_indices(self) -> INDEX_ARRAY:
        return self._inverse

    def elements(self) -> List[Element]:
        """All elements in shortlex order of their canonical words."""
        return list(self._words)

    def element_index(self, g: Element) -> int:
        try:
            return self._index[tuple(g)]
        except KeyError:
            raise InputError(f"'{format_word(g)}' is not a canonical element of this finite group") from None

    def element_at(self, index: int) -> Element:
        return self._words[index]

    def letter_index(self, letter: str) -> int:
        return self._letter_index[letter]

    def multiply(self, g: Element, word: Sequence[str]) -> Element:
        self.check_word(word)
        current = self.element_index(g)
        for letter in word:
            current = self._table[current, self._letter_index[letter]]
        return self._words[current]

    def product(self, g: Element, h: Element) -> Element:
        return self._words[self._table[self.element_index(g), self.element_index(h)]]

    def inverse(self, g: Element) -> Element:
        return self._words[self.inverse_indices[self.element_index(g)]]

    def word_length(self, g: Element) -> int:
        return len(g)

    @cached_property
    def _geodesic_counts(self) -> np.ndarray:
        counts = np.zeros(self.order, dtype=object)
        counts[0] = 1
        # indices are sorted by distance, so one forward pass suffices
        for current in range(self.order):
            for letter in self.generators.moving_letters:
                nxt = self._table[current, self._letter_index[letter]]
                if self.distances[nxt] == self.distances[current] + 1:
                    counts[nxt] += counts[current]
        return counts

    def geodesic_count(self, g: Element) -> int:
        return int(self._geodesic_counts[self.element_index(g)])

    def describe(self) -> dict:
        return {**super().describe(), "order": self.order, **self.source}


@dataclass
class CayleyBall:
    """Exact d_B distances on a ball together with its labelled Cayley graph."""

    radius: int
    distances: DISTANCE_MAP
    graph: nx.MultiDiGraph = field(repr=False)

    def sphere_sizes(self) -> List[int]:
        sizes = [0] * (self.radius + 1)
        for distance in self.distances.values():
            sizes[distance] += 1
        return sizes


@typechecker
def cayley_ball(oracle: VertexGroupOracle, radius: int, cap: int = 500_000) -> CayleyBall:
    """
    Breadth-first ball of radius ``radius`` in the Cayley graph of a vertex group.

    Args:
        oracle: vertex group
        radius: ball radius, at least 0
        cap: maximum number of elements

    Returns:
        Distances to the identity and the ball graph, with edges keyed by letter.

    Raises:
        CapacityError: when the ball has more than ``cap`` elements.
    """
    if radius < 0:
        raise InputError(f"ball radius must be non-negative, got {radius}")
    distances = {oracle.identity: 0}
    graph = nx.MultiDiGraph()
    graph.add_node(oracle.identity)
    frontier = [oracle.identity]
    for distance in range(1, radius + 1):
        next_frontier = []
        for element in frontier:
            for letter in oracle.generators.moving_letters:
                neighbour = oracle.multiply(element, (letter,))
                if neighbour not in distances:
                    distances[neighbour] = distance
                    next_frontier.append(neighbour)
                    if len(distances) > cap:
                        raise CapacityError(f"Cayley ball of radius {radius} exceeds {cap} elements")
                graph.add_edge(element, neighbour, key=letter)
        frontier = next_frontier
    logging.log(logging.DEBUG, f"  Cayley ball of radius {radius}: {len(distances)} elements")
    return CayleyBall(radius, distances, graph)
