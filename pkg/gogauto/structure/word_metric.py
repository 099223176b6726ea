import logging
from dataclasses import dataclass, field

from beartype import beartype as typechecker
from beartype.typing import Dict, List, Optional

from gogauto.errors import CapacityError
from gogauto.graph_of_groups import GraphOfGroups
from gogauto.normal_form import NormalForm, difference, identity_form, nf_append, nf_inverse


@dataclass
class WordMetric:
    """
    Ball of radius ``radius`` around 1 in the Cayley graph of the fundamental group over A.

    ``right[g][a]`` is the normal form of g·a when it lies in the ball, ``None`` otherwise, and
    ``inverse[g]`` is the normal form of g^-1 (the ball is closed under inversion).
    """

    gog: GraphOfGroups
    radius: int
    dist: Dict[NormalForm, int]
    right: Dict[NormalForm, Dict[str, Optional[NormalForm]]] = field(repr=False)
    inverse: Dict[NormalForm, NormalForm] = field(repr=False)
    saturated: bool = False

    @property
    def identity(self) -> NormalForm:
        return identity_form(self.gog)

    def __len__(self) -> int:
        return len(self.dist)

    def __contains__(self, g: NormalForm) -> bool:
        return g in self.dist

    def norm(self, g: NormalForm) -> Optional[int]:
        """d_A(1, g), ``None`` beyond the radius."""
        return self.dist.get(g)

    def bounded_norm(self, g: NormalForm) -> int:
        """d_A(1, g), or ``radius + 1`` beyond the radius."""
        value = self.dist.get(g)
        if value is None:
            self._saturate()
            return self.radius + 1
        return value

    def distance(self, x: NormalForm, y: NormalForm) -> Optional[int]:
        return self.norm(difference(self.gog, x, y))

    def bounded_distance(self, x: NormalForm, y: NormalForm) -> int:
        return self.bounded_norm(difference(self.gog, x, y))

    def left_multiply(self, letter: str, g: NormalForm) -> Optional[NormalForm]:
        """Normal form of π(letter)^-1·g, computed inside the ball."""
        inverse = self.right[self.inverse[g]].get(letter)
        return None if inverse is None else self.inverse[inverse]

    def sphere_sizes(self) -> List[int]:
        sizes = [0] * (self.radius + 1)
        for value in self.dist.values():
            sizes[value] += 1
        return sizes

    def _saturate(self) -> None:
        if not self.saturated:
            self.saturated = True
            logging.log(logging.WARN, f"word-metric ball of radius {self.radius} saturated; distances beyond it are reported as {self.radius + 1}")


@typechecker
def word_metric(gog: GraphOfGroups, radius: int, cap: int = 500_000) -> WordMetric:
    """
    Breadth-first ball of the Cayley graph over A, realised through ``nf_append``.

    Args:
        gog: graph of groups
        radius: ball radius
        cap: maximum number of elements

    Returns:
        The ball with distances, right adjacency and inverses.

    Raises:
        CapacityError: the ball has more than ``cap`` elements.
    """
    letters = gog.alphabet.names
    start = identity_form(gog)
    dist: Dict[NormalForm, int] = {start: 0}
    right: Dict[NormalForm, Dict[str, Optional[NormalForm]]] = {}
    frontier = [start]
    for level in range(radius + 1):
        next_frontier = []
        for g in frontier:
            moves: Dict[str, Optional[NormalForm]] = {}
            for letter in letters:
                h = nf_append(gog, g, letter)
                if h not in dist:
                    if level == radius:
                        moves[letter] = None
                        continue
                    dist[h] = level + 1
                    next_frontier.append(h)
                    if len(dist) > cap:
                        raise CapacityError(f"word-metric ball of radius {radius} exceeds {cap} elements")
                moves[letter] = h
            right[g] = moves
        frontier = next_frontier
    inverse = {g: nf_inverse(gog, g) for g in dist}
    logging.log(logging.DEBUG, f"  word-metric ball of radius {radius}: {len(dist)} elements")
    return WordMetric(gog, radius, dist, right, inverse)
