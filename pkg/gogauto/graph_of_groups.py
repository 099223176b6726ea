"""
Graph-of-groups model: vertex groups, edge groups with their two embeddings, the base vertex
and a spanning tree.

Every declared edge ``e: u -> v`` gives two directed edges, ``e`` from u to v and its reverse
``e~`` from v to u. The embedding of the edge group into the start vertex of ``e`` is ``fwd``,
into the start vertex of ``e~`` it is ``bwd``. The edge letters satisfy
``i_reverse(g) = e^-1 i_e(g) e`` and spanning-tree edges evaluate to the identity.
"""

import logging
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property

import networkx as nx
from beartype import beartype as typechecker
from beartype.typing import Dict, List, Optional, Sequence, Tuple

from gogauto.errors import EmbeddingError, InputError, NotLocallyFiniteError
from gogauto.options import StructureOptions
from gogauto.subgroups import FiniteSubgroup, SubgroupHandle, build_subgroup
from gogauto.utils.checks import check_name, check_unique_names
from gogauto.utils.data import format_word, invert_letter
from gogauto.utils.typing import Element, Word
from gogauto.vertex_group import VertexGroupOracle

REVERSE_SUFFIX = "~"


def reverse_name(edge: str) -> str:
    return edge[: -len(REVERSE_SUFFIX)] if edge.endswith(REVERSE_SUFFIX) else edge + REVERSE_SUFFIX


@dataclass(frozen=True)
class DirectedEdge:
    name: str
    source: str
    target: str
    declared: str

    @property
    def reverse(self) -> str:
        return reverse_name(self.name)

    @property
    def is_reversed(self) -> bool:
        return self.name != self.declared


@dataclass
class EdgeGroup:
    """Edge group of a declared edge: abstract generators and their images on both sides."""

    name: str
    generators: Tuple[str, ...] = ()
    fwd: Tuple[Word, ...] = ()
    bwd: Tuple[Word, ...] = ()

    def __post_init__(self):
        check_unique_names(self.generators, f"generators of edge '{self.name}'")
        for gen in self.generators:
            check_name(gen, "edge-group generator")
        if len(self.fwd) != len(self.generators) or len(self.bwd) != len(self.generators):
            raise InputError(f"edge '{self.name}' needs one fwd and one bwd image per generator")


class GraphOfGroups:
    """
    Finite connected graph of groups with a base vertex.

    Args:
        vertices: vertex name to vertex group, in declaration order
        edges: ``(name, source, target)`` per declared edge
        edge_groups: edge group per declared edge; missing entries mean a trivial edge group
        base: base vertex c
        options: caps used when building the edge subgroups
    """

    def __init__(
        self,
        vertices: Dict[str, VertexGroupOracle],
        edges: Sequence[Tuple[str, str, str]],
        base: str,
        edge_groups: Optional[Dict[str, EdgeGroup]] = None,
        options: Optional[StructureOptions] = None,
    ):
        self.options = options or StructureOptions()
        if not vertices:
            raise InputError("graph of groups needs at least one vertex")
        for name in vertices:
            check_name(name, "vertex")
        self.vertices = dict(vertices)
        if base not in self.vertices:
            raise InputError(f"base vertex '{base}' is not declared")
        self.base = base

        self.edge_groups: Dict[str, EdgeGroup] = {}
        self._edges: Dict[str, DirectedEdge] = {}
        declared = []
        for name, source, target in edges:
            check_name(name, "edge")
            if name.endswith(REVERSE_SUFFIX) or "." in name:
                raise InputError(f"edge name '{name}' may not contain '.' or end with '{REVERSE_SUFFIX}'")
            for endpoint in (source, target):
                if endpoint not in self.vertices:
                    raise InputError(f"edge '{name}' uses undeclared vertex '{endpoint}'")
            declared.append(name)
            self._edges[name] = DirectedEdge(name, source, target, name)
            self._edges[reverse_name(name)] = DirectedEdge(reverse_name(name), target, source, name)
        check_unique_names(declared, "edge declarations")
        clash = set(self.vertices) & set(self._edges)
        if clash:
            raise InputError(f"names used for both a vertex and an edge: {', '.join(sorted(clash))}")
        self.declared_edges: Tuple[str, ...] = tuple(declared)

        edge_groups = edge_groups or {}
        for name in edge_groups:
            if name not in self._edges or self._edges[name].is_reversed:
                raise InputError(f"edge group given for undeclared edge '{name}'")
        for name in declared:
            self.edge_groups[name] = edge_groups.get(name, EdgeGroup(name))

    @property
    def base_group(self) -> VertexGroupOracle:
        return self.vertices[self.base]

    @property
    def directed_edges(self) -> List[DirectedEdge]:
        """E+ in the fixed order e, e~ per declared edge."""
        return list(self._edges.values())

    def edge(self, name: str) -> DirectedEdge:
        try:
            return self._edges[name]
        except KeyError:
            raise InputError(f"unknown edge '{name}'") from None

    def vertex_group(self, vertex: str) -> VertexGroupOracle:
        return self.vertices[vertex]

    def edge_images(self, name: str) -> Tuple[Tuple[str, ...], Tuple[Word, ...]]:
        """Edge-group generators and their images in the start vertex group of directed edge ``name``."""
        edge = self.edge(name)
        group = self.edge_groups[edge.declared]
        return group.generators, (group.bwd if edge.is_reversed else group.fwd)

    @cached_property
    def _subgroups(self) -> Dict[str, SubgroupHandle]:
        handles = {}
        for edge in self.directed_edges:
            generators, images = self.edge_images(edge.name)
            handles[edge.name] = build_subgroup(self.vertices[edge.source], generators, images, edge.name, self.options.coset_cap)
        return handles

    def subgroup(self, edge: str) -> SubgroupHandle:
        """i_edge(edge group) as a subgroup of the start vertex group of ``edge``."""
        return self._subgroups[edge]

    def transfer(self, edge: str, h: Element) -> Element:
        """Move h in i_edge(edge group) across the edge: i_reverse(i_edge^-1(h))."""
        return self._subgroups[reverse_name(edge)].evaluate(self._subgroups[edge].express(h))

    @cached_property
    def transversals(self) -> Dict[str, List[Element]]:
        transversals = {}
        for edge in self.directed_edges:
            transversals[edge.name] = self._subgroups[edge.name].coset_transversal()
        return transversals

    @cached_property
    def _tree(self) -> Tuple[List[str], Dict[str, List[str]]]:
        root_paths: Dict[str, List[str]] = {self.base: []}
        tree: List[str] = []
        queue = deque([self.base])
        while queue:
            vertex = queue.popleft()
            for edge in self.directed_edges:
                if edge.source == vertex and edge.target not in root_paths:
                    root_paths[edge.target] = root_paths[vertex] + [edge.name]
                    tree.append(edge.declared)
                    queue.append(edge.target)
        if len(root_paths) != len(self.vertices):
            missing = [v for v in self.vertices if v not in root_paths]
            raise InputError(f"graph is not connected: {', '.join(missing)} unreachable from base '{self.base}'")
        return tree, root_paths

    @property
    def spanning_tree(self) -> List[str]:
        return list(self._tree[0])

    def tree_path(self, start: str, end: str) -> List[str]:
        """Directed edges of the spanning-tree path from ``start`` to ``end``."""
        root_paths = self._tree[1]
        to_start, to_end = root_paths[start], root_paths[end]
        common = 0
        while common < min(len(to_start), len(to_end)) and to_start[common] == to_end[common]:
            common += 1
        return [reverse_name(e) for e in reversed(to_start[common:])] + to_end[common:]

    @cached_property
    def alphabet(self):
        from gogauto.alphabet import build_alphabet

        return build_alphabet(self)

    def underlying_graph(self) -> nx.MultiGraph:
        graph = nx.MultiGraph()
        graph.add_nodes_from(self.vertices)
        for name in self.declared_edges:
            edge = self._edges[name]
            graph.add_edge(edge.source, edge.target, key=name)
        return graph

    def describe(self) -> dict:
        """Plain-data view of the model, used for round-trip comparisons."""
        return {
            "base": self.base,
            "vertices": {name: group.describe() for name, group in self.vertices.items()},
            "edges": {
                name: {
                    "source": self._edges[name].source,
                    "target": self._edges[name].target,
                    "generators": list(self.edge_groups[name].generators),
                    "fwd": [list(w) for w in self.edge_groups[name].fwd],
                    "bwd": [list(w) for w in self.edge_groups[name].bwd],
                }
                for name in self.declared_edges
            },
        }


@typechecker
def choose_spanning_tree(gog: GraphOfGroups) -> List[str]:
    """Breadth-first spanning tree from the base vertex, edges scanned in declaration order."""
    return gog.spanning_tree


@dataclass
class GogDiagnostics:
    connected: bool
    involution_ok: bool
    indices: Dict[str, int] = field(default_factory=dict)
    injectivity_radius: int = 0
    spanning_tree: List[str] = field(default_factory=list)
    tree_diameter: int = 0

    def records(self) -> List[Tuple[str, str]]:
        records = [("CONNECTED", str(self.connected).lower()), ("INVOLUTION", "ok" if self.involution_ok else "broken")]
        records += [(f"INDEX.{edge}", str(index)) for edge, index in self.indices.items()]
        records += [
            ("INJECTIVITY.RADIUS", str(self.injectivity_radius)),
            ("SPANNING_TREE", ",".join(self.spanning_tree) if self.spanning_tree else "-"),
            ("TREE_DIAMETER", str(self.tree_diameter)),
        ]
        return records


def _edge_group_words(generators: Sequence[str], radius: int) -> List[Word]:
    letters = [letter for gen in generators for letter in (gen, gen + "'")]
    words: List[Word] = [()]
    frontier: List[Word] = [()]
    for _ in range(radius):
        frontier = [word + (letter,) for word in frontier for letter in letters if not word or word[-1] != invert_letter(letter)]
        words += frontier
    return words


def check_edge_embeddings(gog: GraphOfGroups, declared: str, radius: int) -> None:
    """
    Check that the two embeddings of an edge group identify isomorphic subgroups.

    Words over the edge-group generators up to ``radius`` must be equal on one side exactly when
    they are equal on the other. Relations found while folding free-kind subgroups and, for finite
    vertex groups, the whole closure of image pairs are checked as well.

    Raises:
        EmbeddingError: with the offending pair of words.
    """
    forward, backward = gog.subgroup(declared), gog.subgroup(reverse_name(declared))
    generators = gog.edge_groups[declared].generators
    seen_forward: Dict[Element, Tuple[Element, Word]] = {}
    seen_backward: Dict[Element, Tuple[Element, Word]] = {}
    for word in _edge_group_words(generators, radius):
        f, b = forward.evaluate(word), backward.evaluate(word)
        for seen, key, value in ((seen_forward, f, b), (seen_backward, b, f)):
            if key in seen and seen[key][0] != value:
                raise EmbeddingError(
                    f"embeddings of edge '{declared}' disagree on '{format_word(seen[key][1])}' and '{format_word(word)}'",
                    (seen[key][1], word),
                )
            seen.setdefault(key, (value, word))

    for handle, other in ((forward, backward), (backward, forward)):
        for relation in handle.relations:
            if other.evaluate(relation) != other.ambient.identity:
                raise EmbeddingError(
                    f"relation '{format_word(relation)}' holds in {handle.name} but not in {other.name}", (relation, None)
                )

    if isinstance(forward, FiniteSubgroup) and isinstance(backward, FiniteSubgroup):
        pairs = {(forward.ambient.identity, backward.ambient.identity)}
        queue = deque(pairs)
        letters = [letter for gen in generators for letter in (gen, gen + "'")]
        while queue:
            f, b = queue.popleft()
            for letter in letters:
                pair = (forward.ambient.product(f, forward.evaluate((letter,))), backward.ambient.product(b, backward.evaluate((letter,))))
                if pair not in pairs:
                    pairs.add(pair)
                    queue.append(pair)
        if not len(pairs) == forward.order == backward.order:
            raise EmbeddingError(
                f"embeddings of edge '{declared}' do not define an isomorphism ({forward.order} vs {backward.order} elements, {len(pairs)} pairs)"
            )


@typechecker
def validate_gog(gog: GraphOfGroups, radius: Optional[int] = None) -> GogDiagnostics:
    """
    Check the hypotheses the structure builder relies on.

    Args:
        gog: parsed graph of groups
        radius: radius for the embedding injectivity check, defaults to ``options.validation_radius``

    Returns:
        Diagnostics listing connectivity, indices, the spanning tree and its diameter.

    Raises:
        InputError: disconnected graph or broken edge involution.
        NotLocallyFiniteError: an edge subgroup of infinite index.
        EmbeddingError: an embedding pair that is not an isomorphism on the checked ball.
    """
    radius = gog.options.validation_radius if radius is None else radius
    graph = gog.underlying_graph()
    connected = nx.is_connected(graph)
    if not connected:
        raise InputError("graph is not connected")
    involution_ok = all(gog.edge(gog.edge(e.name).reverse).reverse == e.name and e.reverse != e.name for e in gog.directed_edges)
    if not involution_ok:
        raise InputError("edge reversal is not a fixed-point-free involution")

    indices = {}
    for edge in gog.directed_edges:
        index = gog.subgroup(edge.name).index
        if index is None:
            raise NotLocallyFiniteError(edge.name)
        indices[edge.name] = index
    for declared in gog.declared_edges:
        check_edge_embeddings(gog, declared, radius)

    tree = gog.spanning_tree
    tree_graph = nx.Graph()
    tree_graph.add_nodes_from(gog.vertices)
    for name in tree:
        tree_graph.add_edge(gog.edge(name).source, gog.edge(name).target)
    diameter = nx.diameter(tree_graph) if tree_graph.number_of_nodes() > 1 else 0
    logging.log(logging.INFO, f"  graph of groups: {len(gog.vertices)} vertices, {len(gog.declared_edges)} edges, tree diameter {diameter}")
    return GogDiagnostics(connected, involution_ok, indices, radius, tree, diameter)
