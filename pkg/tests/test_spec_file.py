import os
import unittest

import pytest
from deepdiff import DeepDiff

from gogauto.errors import EmbeddingError, NotLocallyFiniteError, SpecSyntaxError
from gogauto.options import StructureOptions
from gogauto.spec_file import format_spec, load_spec, parse_spec
from gogauto.vertex_group import FiniteGroupOracle, FreeGroupOracle
from tests.fixture_oracles import FIXTURES_DIR, fixture_path

MODULAR = """
[graph]
vertex u: finite a
vertex v: finite b
e: u -> v
base = u

[vertex u]
perm a = (0 1)

[vertex v]
perm b = (0 1 2)
"""


class TestParseSpec(unittest.TestCase):
    def test_modular(self):
        gog = parse_spec(MODULAR)
        self.assertEqual(list(gog.vertices), ["u", "v"])
        self.assertEqual(gog.base, "u")
        self.assertIsInstance(gog.vertex_group("v"), FiniteGroupOracle)
        self.assertEqual(gog.vertex_group("v").order, 3)

    def test_options_are_attached(self):
        options = StructureOptions(check_length=3)
        self.assertIs(parse_spec(MODULAR, options).options, options)

    def test_free_vertex_by_rank(self):
        gog = parse_spec("[graph]\nvertex c: free\nbase c\n[vertex c]\nrank = 3\n")
        self.assertIsInstance(gog.base_group, FreeGroupOracle)
        self.assertEqual(gog.base_group.generators.generators, ("x1", "x2", "x3"))

    def test_comments_and_table(self):
        gog = parse_spec("# header\n[graph]  # the graph\nvertex c: finite s\nbase = c\n[vertex c]\ntable = 0 1; 1 0\nelement s = 1\n")
        self.assertEqual(gog.base_group.order, 2)

    def test_table_file(self):
        gog = load_spec(fixture_path("trivial.gog"))
        self.assertEqual(gog.base_group.order, 1)

    def test_edge_group(self):
        gog = load_spec(fixture_path("bs12.gog"))
        self.assertEqual(gog.edge_groups["t"].fwd, (("a",),))
        self.assertEqual(gog.edge_groups["t"].bwd, (("a", "a"),))


def test_table_file_relative_to_spec(tmp_path):
    with open(os.path.join(tmp_path, "z2.txt"), "w") as table_file:
        table_file.write("0 1\n1 0\n")
    spec = os.path.join(tmp_path, "z2.gog")
    with open(spec, "w") as spec_file:
        spec_file.write("[graph]\nvertex c: finite s\nbase c\n[vertex c]\ntable_file = z2.txt\nelement s = 1\n")
    assert load_spec(spec).base_group.order == 2


@pytest.mark.parametrize(
    "text, line, message",
    [
        ("vertex c: free x\n", 1, "content before the first section"),
        ("[vertex c]\n", 1, "undeclared vertex 'c'"),
        ("[graph]\nvertex c: free x\ne: c -> c\ne: c -> c\nbase c\n", 4, "duplicate edge 'e' (lines 3 and 4)"),
        ("[graph]\nvertex c: free x\ne: c -> d\nbase c\n", 3, "undeclared vertex 'd'"),
        ("[graph]\nvertex c: free x\nbase d\n", 3, "undeclared vertex 'd'"),
        ("[graph]\nvertex c: free x\nvertex c: free y\n", 3, "duplicate vertex 'c'"),
        ("[graph]\nvertex c: cyclic x\n", 2, "unknown vertex group kind"),
        ("[graph]\nvertex c: free\nbase c\n[vertex c]\nrank = 0\n", 5, "rank must be positive"),
        ("[graph]\nvertex c: finite s\nbase c\n[vertex c]\nperm s = (0 1\n", 2, "invalid finite vertex 'c'"),
        ("[graph]\nvertex c: free x\n", 1, "missing base vertex"),
        ("[graph]\nvertex c: free x\nbase c\n[graph]\n", 4, "duplicate section"),
        ("[graph]\nvertex c: free x\nbase c\n[vertex c]\ncolour = red\n", 5, "unknown vertex setting 'colour'"),
        ("[graph]\nvertex c: free x\nt: c -> c\nbase c\n[edge t]\nfwd g = x\n", 6, "'fwd' needs a generator"),
        ("[graph]\nvertex c: free x\nt: c -> c\nbase c\n[edge t]\ngenerators = g\nfwd g = x\n", 6, "missing 'bwd g'"),
        ("[graph]\nvertex c: free x\nt: c -> c\nbase c\n[edge t]\ngenerators = g\nfwd g = x\nbwd g = y\n", 8, "unknown letter 'y'"),
    ],
)
def test_syntax_errors_are_located(text, line, message):
    with pytest.raises(SpecSyntaxError) as error:
        parse_spec(text)
    assert error.value.line == line
    assert message in error.value.reason


def test_missing_graph_section():
    with pytest.raises(SpecSyntaxError, match="missing \\[graph\\]"):
        parse_spec("# nothing\n")


def test_column_points_at_the_token():
    with pytest.raises(SpecSyntaxError) as error:
        parse_spec("[graph]\nvertex c: free x\ne: c -> dd\nbase c\n")
    assert error.value.column == 9


def test_validation_runs_by_default():
    text = "[graph]\nvertex c: free a\nt: c -> c\nbase c\n"
    with pytest.raises(NotLocallyFiniteError):
        parse_spec(text)
    assert parse_spec(text, validate=False).declared_edges == ("t",)


def test_inconsistent_embeddings():
    text = MODULAR + "\n[edge e]\ngenerators = g\nfwd g = a\nbwd g = b\n"
    with pytest.raises(EmbeddingError):
        parse_spec(text)


@pytest.mark.parametrize("name", sorted(name for name in os.listdir(FIXTURES_DIR) if name.endswith(".gog")))
def test_format_spec_keeps_the_model(name):
    gog = load_spec(fixture_path(name))
    again = parse_spec(format_spec(gog))
    assert not DeepDiff(gog.describe(), again.describe())


def test_format_spec_text():
    assert format_spec(parse_spec(MODULAR)) == (
        "[graph]\n"
        "vertex u: finite a\n"
        "vertex v: finite b\n"
        "e: u -> v\n"
        "base = u\n"
        "\n"
        "[vertex u]\n"
        "perm a = (0 1)\n"
        "\n"
        "[vertex v]\n"
        "perm b = (0 1 2)\n"
    )


if __name__ == "__main__":
    pytest.main([__file__])
