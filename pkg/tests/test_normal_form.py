import random
import unittest

import pytest

from gogauto.errors import InputError
from gogauto.normal_form import (
    NormalForm,
    difference,
    identity_form,
    nf_append,
    nf_inverse,
    nf_multiply,
    normalize_path,
    normalize_word,
    prefix_images,
    serialize,
    tree_level,
)
from gogauto.spec_file import load_spec
from tests.fixture_oracles import ORACLES, fixture_path, words_up_to


@pytest.mark.parametrize("fixture, max_len", [("f2.gog", 3), ("modular.gog", 3), ("bs12.gog", 3), ("f2xz.gog", 3)])
def test_normal_forms_are_unique_and_sound(fixture, max_len):
    gog = load_spec(fixture_path(fixture))
    oracle = ORACLES[fixture]()
    form_of_value = {}
    value_of_form = {}
    for word in words_up_to(gog.alphabet.names, max_len):
        nf = normalize_word(gog, word)
        value = oracle.evaluate(word)
        # equal elements get equal forms and distinct elements distinct forms
        assert form_of_value.setdefault(value, nf) == nf, word
        assert value_of_form.setdefault(nf, value) == value, word
        assert oracle.evaluate(serialize(gog, nf)) == value, word


def _sample_words(alphabet, length, count, seed=8):
    rng = random.Random(seed)
    return [tuple(rng.choice(alphabet) for _ in range(length)) for _ in range(count)]


@pytest.mark.parametrize("fixture", ["modular.gog", "bs12.gog"])
def test_long_words_are_unique_and_sound(fixture):
    gog = load_spec(fixture_path(fixture))
    oracle = ORACLES[fixture]()
    form_of_value = {}
    value_of_form = {}
    for word in _sample_words(gog.alphabet.names, 8, 400):
        nf = normalize_word(gog, word)
        value = oracle.evaluate(word)
        assert form_of_value.setdefault(value, nf) == nf, word
        assert value_of_form.setdefault(nf, value) == value, word
        normal_word = serialize(gog, nf)
        assert oracle.evaluate(normal_word) == value, word
        assert normalize_word(gog, normal_word) == nf, word
        assert prefix_images(gog, word)[-1] == nf, word


@pytest.mark.parametrize("fixture", ["modular.gog", "bs12.gog", "f2xz.gog"])
def test_normal_forms_never_backtrack(fixture):
    gog = load_spec(fixture_path(fixture))
    for word in _sample_words(gog.alphabet.names, 8, 400, seed=3):
        syllables = normalize_word(gog, word).syllables
        for (_, edge), (k, following) in zip(syllables, syllables[1:]):
            # a trivial transversal may not undo the previous edge
            assert not (k == 0 and following == gog.edge(edge).reverse), word


@pytest.mark.parametrize("fixture", ["modular.gog", "bs12.gog", "f2xz.gog"])
def test_inverse_keeps_the_tree_level(fixture):
    gog = load_spec(fixture_path(fixture))
    for word in _sample_words(gog.alphabet.names, 8, 200, seed=5):
        nf = normalize_word(gog, word)
        inverse = nf_inverse(gog, nf)
        assert tree_level(inverse) == tree_level(nf), word
        assert nf_multiply(gog, nf, inverse) == identity_form(gog), word


@pytest.mark.parametrize("fixture", ["modular.gog", "bs12.gog"])
def test_append_agrees_with_normalize(fixture):
    gog = load_spec(fixture_path(fixture))
    for word in words_up_to(gog.alphabet.names, 3):
        assert prefix_images(gog, word)[-1] == normalize_word(gog, word)


class TestBaumslagSolitar(unittest.TestCase):
    def setUp(self):
        self.gog = load_spec(fixture_path("bs12.gog"))

    def test_conjugation_squares(self):
        nf = normalize_word(self.gog, ("t'", "a", "t"))
        self.assertEqual(nf.tree_level, 0)
        self.assertEqual(nf.tail, ("a", "a"))
        self.assertEqual(serialize(self.gog, nf), ("a", "a"))

    def test_stable_letter(self):
        nf = normalize_word(self.gog, ("t",))
        self.assertEqual(nf.syllables, ((0, "t"),))
        self.assertEqual(tree_level(nf), 1)
        self.assertEqual(nf.describe(), "t.0 t | ε @ c")
        self.assertEqual(nf_inverse(self.gog, nf).syllables, ((0, "t~"),))

    def test_odd_power_needs_nontrivial_transversal(self):
        # t a t^-1 has no square root of a to move across the loop
        nf = normalize_word(self.gog, ("t", "a", "t'"))
        self.assertEqual(nf.syllable_word(), ("t.0", "t", "t~.1", "t~"))
        self.assertEqual(nf.tail, ())

    def test_products(self):
        t = normalize_word(self.gog, ("t",))
        a = normalize_word(self.gog, ("a",))
        self.assertEqual(nf_multiply(self.gog, t, nf_inverse(self.gog, t)), identity_form(self.gog))
        self.assertEqual(difference(self.gog, a, a), identity_form(self.gog))
        self.assertEqual(difference(self.gog, identity_form(self.gog), t), t)
        self.assertEqual(nf_append(self.gog, a, "a'"), identity_form(self.gog))


class TestModularPaths(unittest.TestCase):
    def setUp(self):
        self.gog = load_spec(fixture_path("modular.gog"))

    def test_vertex_group_element_away_from_base(self):
        nf = normalize_word(self.gog, ("e~.1",))
        self.assertEqual(nf.syllables, ((0, "e"), (1, "e~")))
        self.assertEqual(serialize(self.gog, nf), ("e.0", "e", "e~.1", "e~"))

    def test_tree_edges_are_trivial(self):
        self.assertEqual(normalize_word(self.gog, ("e", "e~", "e'")), identity_form(self.gog))

    def test_path_type_forms(self):
        nf = normalize_path(self.gog, ("e~.1",), "v")
        self.assertEqual(nf, NormalForm(((0, "e"),), ("b",), "v"))
        with self.assertRaises(InputError):
            serialize(self.gog, nf)
        self.assertEqual(serialize(self.gog, normalize_path(self.gog, (), "v")), ("e.0", "e"))

    def test_unknown_input(self):
        with self.assertRaises(InputError):
            normalize_word(self.gog, ("b",))
        with self.assertRaises(InputError):
            normalize_path(self.gog, (), "w")

    def test_prefix_images(self):
        images = prefix_images(self.gog, ("a", "e~.1"))
        self.assertEqual(len(images), 3)
        self.assertEqual(images[0], identity_form(self.gog))
        self.assertEqual(images[1].tail, ("a",))


if __name__ == "__main__":
    pytest.main([__file__])
