"""
Reader and writer of ``.gog`` graph-of-groups files.

A file has a ``[graph]`` section declaring vertices, edges and the base vertex, and optional
``[vertex NAME]`` and ``[edge NAME]`` sections::

    [graph]
    vertex u: finite a
    vertex v: finite b
    e: u -> v
    base = u

    [vertex u]
    perm a = (0 1)

    [vertex v]
    perm b = (0 1 2)

A free vertex lists its generators or gives ``rank = k`` (generators x1 ... xk). A finite vertex gives
``perm`` lines, or ``table = <row>; <row>; ...`` (or ``table_file = <path>``) with one
``element <gen> = <index>`` per generator. An ``[edge NAME]`` section gives ``generators = ...`` and
one ``fwd <gen> = <word>`` and ``bwd <gen> = <word>`` per generator, words in the vertex groups at the
start and at the end of the edge. An edge without a section has the trivial edge group.
"""

import os
import re
from dataclasses import dataclass, field

import numpy as np
from beartype import beartype as typechecker
from beartype.typing import Dict, List, Optional, Tuple

from gogauto.enums import VertexGroupKind
from gogauto.errors import InputError, SpecSyntaxError
from gogauto.graph_of_groups import EdgeGroup, GraphOfGroups, validate_gog
from gogauto.options import StructureOptions
from gogauto.utils.data import format_word, split_word
from gogauto.vertex_group import FiniteGroupOracle, FreeGroupOracle, VertexGroupOracle

_SECTION = re.compile(r"^\[\s*(graph|vertex|edge)(?:\s+(\S+))?\s*\]$")
_VERTEX = re.compile(r"^vertex\s+(\S+?)\s*:\s*(\S+)(.*)$")
_EDGE = re.compile(r"^(\S+?)\s*:\s*(\S+)\s*->\s*(\S+)$")
_BASE = re.compile(r"^base\s*(?:=\s*)?(\S+)$")
_ASSIGNMENT = re.compile(r"^(\S+)(?:\s+(\S+))?\s*=\s*(.*)$")


@dataclass
class _Line:
    number: int
    text: str
    column: int

    def error(self, message: str, token: Optional[str] = None) -> SpecSyntaxError:
        column = self.column
        if token is not None and token in self.text:
            column += self.text.index(token)
        return SpecSyntaxError(message, self.number, column)


@dataclass
class _VertexDeclaration:
    line: _Line
    kind: VertexGroupKind
    generators: List[str]
    settings: Dict[str, Tuple[_Line, str]] = field(default_factory=dict)
    perms: Dict[str, Tuple[_Line, str]] = field(default_factory=dict)
    elements: Dict[str, Tuple[_Line, str]] = field(default_factory=dict)


@dataclass
class _EdgeDeclaration:
    line: _Line
    source: str
    target: str
    generators: Optional[Tuple[_Line, List[str]]] = None
    fwd: Dict[str, Tuple[_Line, str]] = field(default_factory=dict)
    bwd: Dict[str, Tuple[_Line, str]] = field(default_factory=dict)


def _lines(text: str) -> List[_Line]:
    lines = []
    for number, raw in enumerate(text.splitlines(), start=1):
        content = raw.split("#", 1)[0].rstrip()
        stripped = content.lstrip()
        if stripped:
            lines.append(_Line(number, stripped, len(content) - len(stripped) + 1))
    return lines


def _parse_table(line: _Line, text: str, base_dir: Optional[str], from_file: bool) -> np.ndarray:
    if from_file:
        path = text if os.path.isabs(text) or base_dir is None else os.path.join(base_dir, text)
        try:
            return np.loadtxt(path, dtype=np.int64, ndmin=2)
        except (OSError, ValueError) as error:
            raise line.error(f"cannot read table file '{text}': {error}", text) from None
    try:
        rows = [[int(value) for value in row.split()] for row in text.split(";") if row.strip()]
        return np.array(rows, dtype=np.int64)
    except ValueError:
        raise line.error("table rows must be integers separated by ';'", text) from None


def _build_vertex(name: str, declaration: _VertexDeclaration, base_dir: Optional[str]) -> VertexGroupOracle:
    line = declaration.line
    if declaration.kind is VertexGroupKind.FREE:
        generators = declaration.generators
        if "rank" in declaration.settings:
            rank_line, value = declaration.settings["rank"]
            try:
                rank = int(value)
            except ValueError:
                raise rank_line.error(f"rank must be an integer, got '{value}'", value) from None
            if rank <= 0:
                raise rank_line.error(f"rank must be positive, got {rank}", value)
            if generators and len(generators) != rank:
                raise rank_line.error(f"vertex '{name}' lists {len(generators)} generators but has rank {rank}", value)
            generators = generators or [f"x{i + 1}" for i in range(rank)]
        if not generators:
            raise line.error(f"free vertex '{name}' needs generators or a rank")
        try:
            return FreeGroupOracle.of_rank(len(generators), generators)
        except InputError as error:
            raise line.error(str(error)) from None

    generators = declaration.generators
    if not generators:
        raise line.error(f"finite vertex '{name}' needs at least one generator")
    try:
        if declaration.perms:
            return FiniteGroupOracle.from_permutations(generators, {gen: text for gen, (_, text) in declaration.perms.items()})
        for key in ("table", "table_file"):
            if key in declaration.settings:
                table_line, value = declaration.settings[key]
                table = _parse_table(table_line, value, base_dir, key == "table_file")
                break
        else:
            raise line.error(f"finite vertex '{name}' needs perm lines or a table")
        missing = [gen for gen in generators if gen not in declaration.elements]
        if missing:
            raise table_line.error(f"missing 'element' line for generator(s) {', '.join(missing)}")
        elements = []
        for gen in generators:
            element_line, value = declaration.elements[gen]
            try:
                elements.append(int(value))
            except ValueError:
                raise element_line.error(f"element index must be an integer, got '{value}'", value) from None
        return FiniteGroupOracle.from_table(generators, table.tolist(), elements)
    except SpecSyntaxError:
        raise
    except InputError as error:
        raise line.error(f"invalid finite vertex '{name}': {error}") from None


@typechecker
def parse_spec(text: str, options: Optional[StructureOptions] = None, base_dir: Optional[str] = None, validate: bool = True) -> GraphOfGroups:
    """
    Parse a ``.gog`` text into a graph of groups.

    Args:
        text: file contents
        options: options attached to the model
        base_dir: directory that ``table_file`` paths are relative to
        validate: run ``validate_gog`` on the result

    Returns:
        The graph of groups.

    Raises:
        SpecSyntaxError: syntax errors and undeclared or duplicate names, with their location.
        NotLocallyFiniteError: an edge subgroup of infinite index.
        EmbeddingError: an edge group whose two embeddings disagree.
    """
    section: Optional[Tuple[str, Optional[str]]] = None
    graph_line: Optional[_Line] = None
    base: Optional[Tuple[_Line, str]] = None
    vertices: Dict[str, _VertexDeclaration] = {}
    edges: Dict[str, _EdgeDeclaration] = {}
    seen_sections: Dict[Tuple[str, Optional[str]], _Line] = {}

    for line in _lines(text):
        header = _SECTION.match(line.text)
        if header:
            kind, name = header.group(1), header.group(2)
            if (kind == "graph") != (name is None):
                raise line.error(f"section [{kind}] {'takes no name' if kind == 'graph' else 'needs a name'}")
            section = (kind, name)
            if section in seen_sections:
                raise line.error(f"duplicate section (first at line {seen_sections[section].number})")
            seen_sections[section] = line
            if kind == "graph":
                graph_line = line
            elif kind == "vertex" and name not in vertices:
                raise line.error(f"undeclared vertex '{name}'", name)
            elif kind == "edge" and name not in edges:
                raise line.error(f"undeclared edge '{name}'", name)
            continue
        if section is None:
            raise line.error("content before the first section")

        kind, name = section
        if kind == "graph":
            vertex = _VERTEX.match(line.text)
            edge = _EDGE.match(line.text)
            base_match = _BASE.match(line.text)
            if vertex:
                vertex_name, vertex_kind, rest = vertex.groups()
                if vertex_name in vertices:
                    raise line.error(f"duplicate vertex '{vertex_name}' (first at line {vertices[vertex_name].line.number})", vertex_name)
                try:
                    group_kind = VertexGroupKind.parse(vertex_kind)
                except ValueError as error:
                    raise line.error(str(error), vertex_kind) from None
                vertices[vertex_name] = _VertexDeclaration(line, group_kind, rest.split())
            elif base_match:
                if base is not None:
                    raise line.error(f"base vertex declared twice (first at line {base[0].number})")
                base = (line, base_match.group(1))
            elif edge:
                edge_name, source, target = edge.groups()
                if edge_name in edges:
                    raise line.error(f"duplicate edge '{edge_name}' (lines {edges[edge_name].line.number} and {line.number})", edge_name)
                for endpoint in (source, target):
                    if endpoint not in vertices:
                        raise line.error(f"undeclared vertex '{endpoint}'", endpoint)
                edges[edge_name] = _EdgeDeclaration(line, source, target)
            else:
                raise line.error(f"cannot parse '{line.text}'")
            continue

        assignment = _ASSIGNMENT.match(line.text)
        if not assignment:
            raise line.error(f"expected '<key> [<name>] = <value>', got '{line.text}'")
        key, subject, value = assignment.group(1), assignment.group(2), assignment.group(3).strip()
        if kind == "vertex":
            declaration = vertices[name]
            if key in ("perm", "element"):
                if subject is None or subject not in declaration.generators:
                    raise line.error(f"'{key}' needs a declared generator of vertex '{name}'", subject)
                target = declaration.perms if key == "perm" else declaration.elements
                target[subject] = (line, value)
            elif key in ("rank", "table", "table_file") and subject is None:
                declaration.settings[key] = (line, value)
            else:
                raise line.error(f"unknown vertex setting '{key}'", key)
        else:
            declaration = edges[name]
            if key == "generators" and subject is None:
                declaration.generators = (line, value.split())
            elif key in ("fwd", "bwd"):
                if declaration.generators is None or subject not in declaration.generators[1]:
                    raise line.error(f"'{key}' needs a generator declared in 'generators' of edge '{name}'", subject)
                (declaration.fwd if key == "fwd" else declaration.bwd)[subject] = (line, value)
            else:
                raise line.error(f"unknown edge setting '{key}'", key)

    if graph_line is None:
        raise SpecSyntaxError("missing [graph]", 1)
    if base is None:
        raise graph_line.error("missing base vertex")
    if base[1] not in vertices:
        raise base[0].error(f"undeclared vertex '{base[1]}'", base[1])

    base_dir = base_dir or "."
    groups = {name: _build_vertex(name, declaration, base_dir) for name, declaration in vertices.items()}
    edge_groups = {}
    for name, declaration in edges.items():
        if declaration.generators is None:
            if declaration.fwd or declaration.bwd:
                raise declaration.line.error(f"edge '{name}' has embeddings but no generators")
            continue
        generators_line, generators = declaration.generators
        images: Dict[str, List[Tuple[str, ...]]] = {"fwd": [], "bwd": []}
        for side, table, vertex in (("fwd", declaration.fwd, declaration.source), ("bwd", declaration.bwd, declaration.target)):
            for gen in generators:
                if gen not in table:
                    raise generators_line.error(f"missing '{side} {gen}' for edge '{name}'", gen)
                word_line, text = table[gen]
                word = split_word(text)
                try:
                    groups[vertex].check_word(word)
                except InputError as error:
                    raise word_line.error(str(error), text or None) from None
                images[side].append(word)
        try:
            edge_groups[name] = EdgeGroup(name, tuple(generators), tuple(images["fwd"]), tuple(images["bwd"]))
        except InputError as error:
            raise generators_line.error(str(error)) from None

    try:
        gog = GraphOfGroups(
            groups, [(name, d.source, d.target) for name, d in edges.items()], base[1], edge_groups, options or StructureOptions()
        )
    except InputError as error:
        raise graph_line.error(str(error)) from None
    if validate:
        validate_gog(gog)
    return gog


@typechecker
def load_spec(path: str, options: Optional[StructureOptions] = None, validate: bool = True) -> GraphOfGroups:
    with open(path, "r", encoding="utf-8") as spec_file:
        text = spec_file.read()
    return parse_spec(text, options, os.path.dirname(os.path.abspath(path)), validate)


@typechecker
def format_spec(gog: GraphOfGroups) -> str:
    """Write a model back in the ``.gog`` format; ``parse_spec(format_spec(g))`` describes the same model."""
    description = gog.describe()
    lines = ["[graph]"]
    for name, vertex in description["vertices"].items():
        lines.append(f"vertex {name}: {vertex['kind']} {' '.join(vertex['generators'])}")
    for name, edge in description["edges"].items():
        lines.append(f"{name}: {edge['source']} -> {edge['target']}")
    lines.append(f"base = {description['base']}")

    for name, vertex in description["vertices"].items():
        if vertex["kind"] != VertexGroupKind.FINITE.value:
            continue
        lines += ["", f"[vertex {name}]"]
        if "permutations" in vertex:
            lines += [f"perm {gen} = {cycles}" for gen, cycles in vertex["permutations"].items()]
        else:
            lines.append("table = " + "; ".join(" ".join(str(value) for value in row) for row in vertex["table"]))
            lines += [f"element {gen} = {element}" for gen, element in zip(vertex["generators"], vertex["elements"])]

    for name, edge in description["edges"].items():
        if not edge["generators"]:
            continue
        lines += ["", f"[edge {name}]", f"generators = {' '.join(edge['generators'])}"]
        lines += [f"fwd {gen} = {format_word(word)}" for gen, word in zip(edge["generators"], edge["fwd"])]
        lines += [f"bwd {gen} = {format_word(word)}" for gen, word in zip(edge["generators"], edge["bwd"])]
    return "\n".join(lines) + "\n"
