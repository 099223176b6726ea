import unittest

import pytest

from gogauto.automata import (
    FSA,
    AsyncAutomaton,
    Shuffle,
    async_accept_pair,
    async_validate_shape,
    dot_census,
    export_dot,
    format_automaton,
    fsa_determinize,
    fsa_enumerate,
    fsa_trim,
    parse_automaton,
)
from gogauto.enums import AsyncStateClass
from gogauto.errors import CapacityError, InputError, SpecSyntaxError


def even_a() -> FSA:
    return FSA(
        ("a", "b"),
        ("even", "odd"),
        "even",
        frozenset({"even"}),
        (("even", "a", "odd"), ("odd", "a", "even"), ("even", "b", "even"), ("odd", "b", "odd")),
        name="even_a",
    )


def diagonal() -> AsyncAutomaton:
    """Accepts exactly the pairs (w, w) over {a}, alternating the tapes."""
    return AsyncAutomaton(
        ("a",),
        {"p": AsyncStateClass.LEFT, "q": AsyncStateClass.RIGHT, "r": AsyncStateClass.RIGHT_DOLLAR, "f": AsyncStateClass.END},
        "p",
        (("p", "a", "q"), ("q", "a", "p"), ("p", "$", "r"), ("r", "$", "f")),
    )


class TestFSA(unittest.TestCase):
    def test_accepts(self):
        self.assertTrue(even_a().accepts(("a", "b", "a")))
        self.assertFalse(even_a().accepts(("a",)))
        self.assertTrue(even_a().is_deterministic)

    def test_unknown_letter(self):
        with self.assertRaises(InputError):
            even_a().accepts(("c",))

    def test_enumerate_in_shortlex_order(self):
        self.assertEqual(fsa_enumerate(even_a(), 2), [(), ("b",), ("a", "a"), ("b", "b")])

    def test_enumerate_cap(self):
        with self.assertRaises(CapacityError):
            even_a().enumerate(4, cap=3)

    def test_trim_drops_dead_and_unreachable_states(self):
        fsa = FSA(
            ("a",),
            ("s", "dead", "lost"),
            "s",
            frozenset({"s", "lost"}),
            (("s", "a", "s"), ("s", "a", "dead"), ("lost", "a", "s")),
        )
        trimmed = fsa_trim(fsa)
        self.assertEqual(trimmed.states, ("s",))
        self.assertEqual(trimmed.edges, (("s", "a", "s"),))

    def test_trim_of_empty_language(self):
        fsa = FSA(("a",), ("s",), "s", frozenset(), (("s", "a", "s"),))
        self.assertIsNone(fsa.trim().initial)
        self.assertEqual(fsa.trim().enumerate(3), [])

    def test_determinize(self):
        ends_with_a = FSA(("a", "b"), ("0", "1"), "0", frozenset({"1"}), (("0", "a", "0"), ("0", "b", "0"), ("0", "a", "1")))
        self.assertFalse(ends_with_a.is_deterministic)
        dfa = fsa_determinize(ends_with_a)
        self.assertEqual(dfa.states, ("{0}", "{0,1}"))
        self.assertEqual(dfa.finals, frozenset({"{0,1}"}))
        self.assertTrue(dfa.is_deterministic)
        self.assertEqual(dfa.enumerate(2), ends_with_a.enumerate(2))

    def test_malformed_edges(self):
        with self.assertRaises(InputError):
            FSA(("a",), ("s",), "s", frozenset(), (("s", "b", "s"),))
        with self.assertRaises(InputError):
            FSA(("a",), ("s",), "s", frozenset({"t"}), ())


class TestAsyncAutomaton(unittest.TestCase):
    def test_accepts_the_diagonal(self):
        m = diagonal()
        self.assertTrue(async_accept_pair(m, ("a", "a"), ("a", "a")))
        self.assertTrue(m.accept_pair((), ()))
        self.assertFalse(m.accept_pair(("a",), ("a", "a")))
        self.assertFalse(m.accept_pair(("a", "a"), ("a",)))

    def test_accepting_shuffle(self):
        shuffle = diagonal().accepting_shuffle(("a",), ("a",))
        self.assertEqual(shuffle.describe(), "a/L a/R $/L $/R")
        self.assertEqual(shuffle.left, ("a",))
        self.assertEqual(shuffle.right, ("a",))
        self.assertTrue(shuffle.is_valid())
        self.assertIsNone(diagonal().accepting_shuffle(("a",), ()))

    def test_census_and_final(self):
        self.assertEqual(diagonal().census(), {"S_L": 1, "S_L$": 0, "S_R": 1, "S_R$": 1, "s$": 1})
        self.assertEqual(diagonal().final, "f")

    def test_shape(self):
        self.assertTrue(async_validate_shape(diagonal()).ok)
        m = diagonal()
        broken = AsyncAutomaton(m.alphabet, m.classes, m.initial, m.edges + (("f", "a", "p"), ("r", "a", "q")))
        diagnostics = broken.validate_shape()
        self.assertEqual(
            diagnostics.describe(),
            ["f -a-> p: no edge may leave s$", "r -a-> q: letters from S_R$ must stay in S_R$"],
        )

    def test_dollar_must_change_class(self):
        m = AsyncAutomaton(("a",), {"p": AsyncStateClass.LEFT, "q": AsyncStateClass.LEFT_DOLLAR}, "p", (("p", "$", "q"),))
        self.assertEqual(m.validate_shape().describe(), ["p -$-> q: '$' from S_L must land in S_R$"])

    def test_invalid_automata(self):
        classes = {"p": AsyncStateClass.LEFT, "f": AsyncStateClass.END, "g": AsyncStateClass.END}
        with self.assertRaises(InputError):
            AsyncAutomaton(("a",), classes, "p", ())
        with self.assertRaises(InputError):
            AsyncAutomaton(("a",), {"p": AsyncStateClass.LEFT}, "p", (("p", "a", "p"), ("p", "a", "p")))
        with self.assertRaises(InputError):
            AsyncAutomaton(("a", "$"), {"p": AsyncStateClass.LEFT}, "p", ())
        with self.assertRaises(InputError):
            diagonal().accept_pair(("b",), ())


def test_shuffle_tags_are_checked():
    with pytest.raises(InputError):
        Shuffle(("a",), ("X",))
    assert not Shuffle(("a", "$"), ("L", "L")).is_valid()


def test_format_async_automaton():
    assert format_automaton(diagonal()) == (
        "async\n"
        "alphabet a\n"
        "state p initial class=S_L\n"
        "state q class=S_R\n"
        "state r class=S_R$\n"
        "state f final class=s$\n"
        "edge p a q\n"
        "edge q a p\n"
        "edge p $ r\n"
        "edge r $ f\n"
    )


def test_parse_restores_the_automaton():
    assert parse_automaton(format_automaton(even_a())) == even_a()
    assert parse_automaton(format_automaton(diagonal())) == diagonal()


@pytest.mark.parametrize(
    "text, line",
    [
        ("automaton\n", 1),
        ("fsa\nalphabet a\nstate s initial\nedge s a\n", 4),
        ("async\nalphabet a\nstate p initial\n", 3),
        ("fsa\nstate s initial bold\n", 2),
        ("fsa\n# comment\nvertex s\n", 3),
    ],
)
def test_parse_errors_are_located(text, line):
    with pytest.raises(SpecSyntaxError) as error:
        parse_automaton(text)
    assert error.value.line == line


def test_export_dot():
    text = export_dot(diagonal(), "diagonal")
    assert text.startswith('digraph "diagonal" {\n')
    assert '  "p" [shape=circle, initial=true, class="S_L"];' in text
    assert '  "f" [shape=doublecircle, class="s$"];' in text
    assert '  "r" -> "f" [label="$"];' in text
    assert dot_census(text) == (4, 4)
    assert dot_census(export_dot(even_a())) == (2, 4)


if __name__ == "__main__":
    pytest.main([__file__])
