"""
Subgroups of vertex groups generated by the images of an edge group.

A handle answers membership, expresses members as words over the edge-group generators and
enumerates left coset representatives. Finite ambient groups use closure over the Cayley table;
free ambient groups use Stallings folding with edge labels in the free group on the edge-group
generators, so that reading a member along the folded graph also spells its preimage.
"""

import logging
from abc import ABC, abstractmethod
from collections import deque

import numpy as np
from beartype import beartype as typechecker
from beartype.typing import Dict, List, Optional, Sequence, Tuple

from gogauto.errors import IndexNotEstablishedError, InputError, NotLocallyFiniteError
from gogauto.utils.data import format_word
from gogauto.utils.typing import Element, Word
from gogauto.vertex_group import FiniteGroupOracle, FreeGroupOracle, GeneratorSet, VertexGroupOracle, free_reduce


class SubgroupHandle(ABC):
    """
    Subgroup H of ``ambient`` generated by ``images`` of abstract generators ``generators``.

    Args:
        ambient: the vertex group
        generators: edge-group generator names
        images: one ambient word per generator
        name: label used in error messages (usually the directed edge)
    """

    def __init__(self, ambient: VertexGroupOracle, generators: GeneratorSet, images: Sequence[Word], name: str):
        if len(images) != len(generators.generators):
            raise InputError(f"{name}: {len(generators.generators)} generators but {len(images)} images")
        for image in images:
            ambient.check_word(image)
        self.ambient = ambient
        self.generators = generators
        self.images = {gen: ambient.canonical(image) for gen, image in zip(generators.generators, images)}
        self.name = name
        # words over the edge-group generators found to be trivial in the ambient group
        self.relations: List[Word] = []

    def evaluate(self, word: Sequence[str]) -> Element:
        """Image in the ambient group of a word over the edge-group generators."""
        element = self.ambient.identity
        for letter in word:
            if letter == self.generators.identity_letter:
                continue
            if letter.endswith("'"):
                element = self.ambient.product(element, self.ambient.inverse(self.images[letter[:-1]]))
            else:
                element = self.ambient.product(element, self.images[letter])
        return element

    @property
    @abstractmethod
    def index(self) -> Optional[int]:
        """Index [ambient : H], ``None`` when infinite."""

    @abstractmethod
    def contains(self, g: Element) -> bool:
        pass

    @abstractmethod
    def express(self, g: Element) -> Word:
        """A word over the edge-group generators evaluating to ``g``."""

    @abstractmethod
    def coset_transversal(self) -> List[Element]:
        """Shortlex-least representative of each left coset gH, identity first, sorted shortlex."""

    @abstractmethod
    def coset_of(self, g: Element) -> Tuple[int, Element]:
        """Position k in the transversal and h in H with g = s_k·h."""


class FiniteSubgroup(SubgroupHandle):
    def __init__(self, ambient: FiniteGroupOracle, generators: GeneratorSet, images: Sequence[Word], name: str, cap: int = 1_000_000):
        super().__init__(ambient, generators, images, name)
        table = ambient.table
        gen_index = {letter: ambient.element_index(self.evaluate((letter,))) for letter in generators.moving_letters}

        # closure with witness words over the edge-group generators
        witness: Dict[int, Word] = {0: ()}
        queue = deque([0])
        while queue:
            current = queue.popleft()
            for letter in generators.moving_letters:
                nxt = int(table[current, gen_index[letter]])
                if nxt not in witness:
                    witness[nxt] = witness[current] + (letter,)
                    queue.append(nxt)
                    if len(witness) > cap:
                        raise IndexNotEstablishedError(f"{name}: subgroup closure exceeds {cap} elements")
        self._witness = witness
        members = np.array(sorted(witness), dtype=np.int64)

        # left cosets gH, scanned in shortlex order so each representative is the least word
        coset_id = np.full(ambient.order, -1, dtype=np.int64)
        representatives = []
        for g in range(ambient.order):
            if coset_id[g] < 0:
                coset_id[table[g, members]] = len(representatives)
                representatives.append(g)
        self._coset_id = coset_id
        self._representatives = representatives

    @property
    def index(self) -> Optional[int]:
        return len(self._representatives)

    @property
    def order(self) -> int:
        return len(self._witness)

    def contains(self, g: Element) -> bool:
        return self.ambient.element_index(g) in self._witness

    def express(self, g: Element) -> Word:
        try:
            return self._witness[self.ambient.element_index(g)]
        except KeyError:
            raise InputError(f"'{format_word(g)}' is not in the subgroup of {self.name}") from None

    def coset_transversal(self) -> List[Element]:
        return [self.ambient.element_at(g) for g in self._representatives]

    def coset_of(self, g: Element) -> Tuple[int, Element]:
        index = self.ambient.element_index(g)
        k = int(self._coset_id[index])
        representative = self.ambient.element_at(self._representatives[k])
        return k, self.ambient.product(self.ambient.inverse(representative), g)

    def members(self) -> List[Element]:
        return [self.ambient.element_at(g) for g in sorted(self._witness)]


class UnionFind:
    """Vertex merging for the folding process; ``merge(z, y)`` always keeps ``y`` as root."""

    def __init__(self):
        self.parent: List[int] = []

    def insert(self) -> int:
        self.parent.append(len(self.parent))
        return len(self.parent) - 1

    def root(self, x: int) -> int:
        while self.parent[x] != x:
            # path halving
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def merge(self, z: int, y: int) -> None:
        self.parent[self.root(z)] = self.root(y)


class FreeSubgroup(SubgroupHandle):
    """
    Subgroup of a free group given by a folded, labelled Stallings graph.

    Each edge carries a reduced word over the edge-group generators. Along any closed path at the base
    vertex the product of the labels evaluates to the ambient word read along the path.
    """

    BASE = 0

    def __init__(self, ambient: FreeGroupOracle, generators: GeneratorSet, images: Sequence[Word], name: str, cap: int = 1_000_000):
        super().__init__(ambient, generators, images, name)
        self._vertices = UnionFind()
        self._vertices.insert()
        # [source, positive letter, target, label]
        self._edges: List[list] = []
        for gen in generators.generators:
            self._add_petal(gen, self.images[gen])
            if len(self._vertices.parent) > cap:
                raise IndexNotEstablishedError(f"{name}: subgroup graph exceeds {cap} vertices")
        self._fold()
        self._finalise()

    def _inverse(self, word: Word) -> Word:
        return self.generators.invert_word(word)

    def _reduce(self, word: Sequence[str]) -> Word:
        return free_reduce(word)

    def _add_petal(self, gen: str, image: Word) -> None:
        if not image:
            self.relations.append((gen,))
            return
        current = self.BASE
        for position, letter in enumerate(image):
            target = self.BASE if position == len(image) - 1 else self._vertices.insert()
            label = (gen,) if position == 0 else ()
            if letter.endswith("'"):
                self._edges.append([target, letter[:-1], current, self._inverse(label)])
            else:
                self._edges.append([current, letter, target, label])
            current = target

    def _half_edges(self):
        """Yield (vertex, letter, target, label, edge id) for both directions of every live edge."""
        root = self._vertices.root
        for edge_id, edge in enumerate(self._edges):
            if edge is None:
                continue
            source, letter, target, label = edge
            yield root(source), letter, root(target), label, edge_id
            yield root(target), letter + "'", root(source), self._inverse(label), edge_id

    def _find_fold(self):
        seen = {}
        for half in self._half_edges():
            key = (half[0], half[1])
            if key in seen:
                return seen[key], half
            seen[key] = half
        return None

    def _conjugate(self, vertex: int, c: Word) -> None:
        root = self._vertices.root
        c_inverse = self._inverse(c)
        for edge in self._edges:
            if edge is None:
                continue
            if root(edge[0]) == vertex:
                edge[3] = self._reduce(c + tuple(edge[3]))
            if root(edge[2]) == vertex:
                edge[3] = self._reduce(tuple(edge[3]) + c_inverse)

    def _fold(self) -> None:
        while True:
            fold = self._find_fold()
            if fold is None:
                break
            (p, _, q1, label1, _), (_, _, q2, label2, edge2) = fold
            if q1 == q2:
                relation = self._reduce(tuple(label1) + self._inverse(label2))
                if relation:
                    self.relations.append(relation)
                self._edges[edge2] = None
                continue
            # never conjugate the base vertex; prefer keeping p fixed as well
            if q1 == self.BASE or (q2 != self.BASE and q2 != p):
                keep, keep_label, merge, merge_label = q1, label1, q2, label2
            else:
                keep, keep_label, merge, merge_label = q2, label2, q1, label1
            c = self._reduce(self._inverse(keep_label) + tuple(merge_label))
            if c:
                self._conjugate(merge, c)
            self._vertices.merge(merge, keep)

    def _finalise(self) -> None:
        self._out: Dict[int, Dict[str, Tuple[int, Word]]] = {}
        for vertex, letter, target, label, _ in self._half_edges():
            self._out.setdefault(vertex, {})[letter] = (target, label)
            self._out.setdefault(target, {})
        self._out.setdefault(self.BASE, {})
        letters = self.ambient.generators.moving_letters
        self._complete = all(letter in moves for moves in self._out.values() for letter in letters)

        self._coset_position: Dict[int, int] = {}
        self._representatives: List[Word] = []
        if not self._complete:
            return
        # distance to the base; the graph is symmetric so a forward search suffices
        distance = {self.BASE: 0}
        queue = deque([self.BASE])
        while queue:
            vertex = queue.popleft()
            for letter in letters:
                target = self._out[vertex][letter][0]
                if target not in distance:
                    distance[target] = distance[vertex] + 1
                    queue.append(target)
        words = {}
        for vertex in self._out:
            word, current = [], vertex
            while current != self.BASE:
                for letter in letters:
                    target = self._out[current][letter][0]
                    if distance[target] == distance[current] - 1:
                        word.append(letter)
                        current = target
                        break
            words[vertex] = tuple(word)
        ordered = sorted(words, key=lambda v: self.ambient.generators.key(words[v]))
        for position, vertex in enumerate(ordered):
            self._coset_position[vertex] = position
            self._representatives.append(words[vertex])

    @property
    def num_vertices(self) -> int:
        return len(self._out)

    @property
    def is_complete(self) -> bool:
        return self._complete

    @property
    def index(self) -> Optional[int]:
        return len(self._out) if self._complete else None

    def _read(self, word: Sequence[str]) -> Tuple[Optional[int], Word]:
        vertex, label = self.BASE, []
        for letter in word:
            move = self._out[vertex].get(letter)
            if move is None:
                return None, ()
            vertex = move[0]
            label.extend(move[1])
        return vertex, self._reduce(label)

    def contains(self, g: Element) -> bool:
        return self._read(g)[0] == self.BASE

    def express(self, g: Element) -> Word:
        vertex, label = self._read(g)
        if vertex != self.BASE:
            raise InputError(f"'{format_word(g)}' is not in the subgroup of {self.name}")
        return label

    def coset_transversal(self) -> List[Element]:
        if not self._complete:
            raise NotLocallyFiniteError(self.name)
        return list(self._representatives)

    def coset_of(self, g: Element) -> Tuple[int, Element]:
        if not self._complete:
            raise NotLocallyFiniteError(self.name)
        vertex, _ = self._read(self.ambient.inverse(g))
        k = self._coset_position[vertex]
        h = self.ambient.product(self.ambient.inverse(self._representatives[k]), g)
        return k, h


@typechecker
def build_subgroup(
    ambient: VertexGroupOracle, generators: Sequence[str], images: Sequence[Word], name: str, cap: int = 1_000_000
) -> SubgroupHandle:
    """
    Build the membership structure of the subgroup generated by ``images``.

    Args:
        ambient: vertex group containing the subgroup
        generators: abstract generator names (edge-group generators)
        images: ambient word for each generator
        name: label for messages
        cap: maximum closure or graph size

    Returns:
        A finite-kind or free-kind subgroup handle.
    """
    generator_set = GeneratorSet(tuple(generators))
    if isinstance(ambient, FiniteGroupOracle):
        handle = FiniteSubgroup(ambient, generator_set, images, name, cap)
    elif isinstance(ambient, FreeGroupOracle):
        handle = FreeSubgroup(ambient, generator_set, images, name, cap)
    else:
        raise NotImplementedError(f"subgroups of {type(ambient).__name__} are not supported")
    logging.log(logging.DEBUG, f"  subgroup {name}: index {handle.index if handle.index is not None else 'infinite'}")
    return handle


def subgroup_membership(handle: SubgroupHandle, word: Sequence[str]) -> bool:
    """True iff the ambient word evaluates into the subgroup."""
    return handle.contains(handle.ambient.canonical(word))


def coset_transversal(handle: SubgroupHandle) -> List[Element]:
    return handle.coset_transversal()
