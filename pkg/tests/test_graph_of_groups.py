import logging
import unittest

import pytest
from testfixtures import LogCapture

from gogauto.enums import LetterKind
from gogauto.errors import EmbeddingError, InputError, NotLocallyFiniteError
from gogauto.graph_of_groups import EdgeGroup, GraphOfGroups, choose_spanning_tree, reverse_name, validate_gog
from gogauto.spec_file import load_spec
from gogauto.vertex_group import FiniteGroupOracle, FreeGroupOracle
from tests.fixture_oracles import fixture_path


def _free_product():
    return GraphOfGroups(
        {
            "u": FiniteGroupOracle.from_permutations(["a"], {"a": "(0 1)"}),
            "v": FiniteGroupOracle.from_permutations(["b"], {"b": "(0 1 2)"}),
        },
        [("e", "u", "v")],
        "u",
    )


def test_reverse_name():
    assert reverse_name("e") == "e~"
    assert reverse_name("e~") == "e"


class TestModularGroup(unittest.TestCase):
    def setUp(self):
        self.gog = load_spec(fixture_path("modular.gog"))

    def test_directed_edges(self):
        self.assertEqual([edge.name for edge in self.gog.directed_edges], ["e", "e~"])
        self.assertEqual(self.gog.edge("e~").source, "v")
        self.assertTrue(self.gog.edge("e~").is_reversed)

    def test_transversals(self):
        self.assertEqual(self.gog.transversals["e"], [(), ("a",)])
        self.assertEqual(self.gog.transversals["e~"], [(), ("b",), ("b'",)])

    def test_spanning_tree(self):
        self.assertEqual(choose_spanning_tree(self.gog), ["e"])
        self.assertEqual(self.gog.tree_path("u", "v"), ["e"])
        self.assertEqual(self.gog.tree_path("v", "u"), ["e~"])
        self.assertEqual(self.gog.tree_path("u", "u"), [])

    def test_alphabet_order(self):
        self.assertEqual(
            self.gog.alphabet.names,
            ("e", "e'", "e~", "e~'", "1", "a", "a'", "e.0", "e.0'", "e.1", "e.1'", "e~.0", "e~.0'", "e~.1", "e~.1'", "e~.2", "e~.2'"),
        )
        self.assertEqual(len(self.gog.alphabet.letters_of_kind(LetterKind.TRANSVERSAL)), 10)

    def test_letter_table(self):
        rows = {name: (kind, image) for name, kind, image in self.gog.alphabet.table()}
        self.assertEqual(rows["e'"], ("edge", "edge e~"))
        self.assertEqual(rows["a"], ("base", "a @ u"))
        self.assertEqual(rows["e~.2"], ("transversal", "b' @ v"))
        self.assertEqual(rows["e~.2'"], ("transversal", "b @ v"))

    def test_words_are_checked(self):
        self.assertEqual(self.gog.alphabet.parse_word("e.1 e"), ("e.1", "e"))
        self.assertEqual(self.gog.alphabet.parse_word("ε"), ())
        with self.assertRaises(InputError):
            self.gog.alphabet.parse_word("e b")
        self.assertEqual(self.gog.alphabet.invert_word(("e.1", "e")), ("e'", "e.1'"))

    def test_diagnostics(self):
        diagnostics = validate_gog(self.gog)
        self.assertEqual(
            diagnostics.records(),
            [
                ("CONNECTED", "true"),
                ("INVOLUTION", "ok"),
                ("INDEX.e", "2"),
                ("INDEX.e~", "3"),
                ("INJECTIVITY.RADIUS", "3"),
                ("SPANNING_TREE", "e"),
                ("TREE_DIAMETER", "1"),
            ],
        )


def test_validation_logs_summary():
    gog = _free_product()
    with LogCapture(level=logging.INFO) as log:
        validate_gog(gog)
    log.check(("root", "INFO", "  graph of groups: 2 vertices, 1 edges, tree diameter 1"))


class TestLoops(unittest.TestCase):
    def setUp(self):
        self.gog = load_spec(fixture_path("bs12.gog"))

    def test_indices(self):
        self.assertEqual(self.gog.subgroup("t").index, 1)
        self.assertEqual(self.gog.subgroup("t~").index, 2)
        self.assertEqual(self.gog.spanning_tree, [])

    def test_transfer_across_the_loop(self):
        self.assertEqual(self.gog.transfer("t", ("a",)), ("a", "a"))
        self.assertEqual(self.gog.transfer("t~", ("a'", "a'")), ("a'",))

    def test_alphabet_size(self):
        self.assertEqual(len(self.gog.alphabet), 13)
        self.assertIn("t~.1'", self.gog.alphabet)

    def test_edge_images(self):
        self.assertEqual(self.gog.edge_images("t~"), (("g",), (("a", "a"),)))


def test_trivial_edge_group_on_free_vertex_is_not_locally_finite():
    gog = GraphOfGroups({"c": FreeGroupOracle.of_rank(1, ["a"])}, [("t", "c", "c")], "c")
    with pytest.raises(NotLocallyFiniteError) as error:
        validate_gog(gog)
    assert error.value.edge == "t"


def test_embeddings_must_be_isomorphic():
    gog = GraphOfGroups(
        {
            "u": FiniteGroupOracle.from_permutations(["a"], {"a": "(0 1)"}),
            "v": FiniteGroupOracle.from_permutations(["b"], {"b": "(0 1 2)"}),
        },
        [("e", "u", "v")],
        "u",
        {"e": EdgeGroup("e", ("g",), (("a",),), (("b",),))},
    )
    with pytest.raises(EmbeddingError, match="disagree"):
        validate_gog(gog)


def test_relation_on_one_side_only():
    gog = GraphOfGroups(
        {"c": FreeGroupOracle.of_rank(2, ["x", "y"])},
        [("t", "c", "c")],
        "c",
        {"t": EdgeGroup("t", ("g", "h", "k"), (("x",), ("y",), ("x", "x")), (("x",), ("y",), ("y",)))},
    )
    with pytest.raises(EmbeddingError):
        validate_gog(gog)


@pytest.mark.parametrize(
    "edges, message",
    [
        ([("e", "u", "w")], "undeclared vertex 'w'"),
        ([("e", "u", "u"), ("e", "u", "u")], "duplicate name 'e'"),
        ([("e.1", "u", "u")], "may not contain"),
        ([("u", "u", "u")], "both a vertex and an edge"),
    ],
)
def test_malformed_graphs(edges, message):
    with pytest.raises(InputError, match=message):
        GraphOfGroups({"u": FreeGroupOracle.of_rank(1, ["a"])}, edges, "u")


def test_disconnected_graph():
    gog = GraphOfGroups(
        {"u": FiniteGroupOracle.from_permutations(["a"], {"a": "(0 1)"}), "v": FiniteGroupOracle.from_permutations(["b"], {"b": "(0 1)"})},
        [],
        "u",
    )
    with pytest.raises(InputError, match="not connected"):
        validate_gog(gog)


def test_describe():
    description = _free_product().describe()
    assert description["base"] == "u"
    assert description["edges"]["e"] == {"source": "u", "target": "v", "generators": [], "fwd": [], "bwd": []}
    assert description["vertices"]["v"]["order"] == 3


if __name__ == "__main__":
    pytest.main([__file__])
