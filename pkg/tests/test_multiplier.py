import logging
import unittest

import pytest
from testfixtures import LogCapture

from gogauto.enums import Verdict
from gogauto.errors import InputError, ParameterError
from gogauto.options import StructureOptions
from gogauto.spec_file import load_spec
from gogauto.structure.constants import StructureConstants, compute_constants
from gogauto.structure.language_fsa import build_language_fsa
from gogauto.structure.multiplier import build_multiplier, build_verified_multiplier, default_bounds, verify_multiplier
from gogauto.structure.sample import sample_language
from tests.fixture_oracles import fixture_path


class TestFreeGroupMultipliers(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        cls.gog = load_spec(fixture_path("f2.gog"))
        cls.language = build_language_fsa(cls.gog)
        cls.constants = compute_constants(cls.gog, cls.language, 3)

    def test_default_bounds(self):
        self.assertEqual(default_bounds(self.gog, self.constants, "x"), (3, 1))
        self.assertEqual(default_bounds(self.gog, self.constants, "1"), (2, 0))

    def test_every_letter_passes(self):
        for letter in self.gog.alphabet.names:
            multiplier, report = build_verified_multiplier(self.gog, self.language, letter, self.constants, 3)
            self.assertTrue(report.ok, letter)
            self.assertEqual(report.escalations, 0)
            self.assertEqual(dict(report.records())[f"MULTIPLIER.{letter}.STATUS"], "PASS")
            self.assertTrue(multiplier.automaton.validate_shape().ok)

    def test_accepted_pairs(self):
        multiplier = build_multiplier(self.gog, self.language, "x", 3, 1)
        self.assertTrue(multiplier.accepts(("x'",), ()))
        self.assertTrue(multiplier.accepts(("y", "y"), ("y", "y", "x")))
        self.assertFalse(multiplier.accepts(("y",), ("y",)))
        self.assertFalse(multiplier.accepts(("x", "x'"), ("x",)))
        self.assertEqual(multiplier.automaton.census()["s$"], 1)

    def test_exhaustive_check_agrees(self):
        multiplier = build_multiplier(self.gog, self.language, "y", 3, 1)
        report = verify_multiplier(self.gog, self.language, multiplier, 2, exhaustive=True)
        self.assertTrue(report.ok)
        self.assertEqual(report.pairs_checked, 17 * 17)

    def test_bounds_are_checked(self):
        with self.assertRaises(ParameterError):
            build_multiplier(self.gog, self.language, "x", 0)
        with self.assertRaises(ParameterError):
            build_multiplier(self.gog, self.language, "x", 2, -1)
        with self.assertRaises(InputError):
            build_multiplier(self.gog, self.language, "z", 2)

    def test_identity_multiplier_is_the_diagonal(self):
        multiplier = build_multiplier(self.gog, self.language, "1", 1)
        self.assertTrue(multiplier.accepts(("x", "y"), ("x", "y")))
        self.assertFalse(multiplier.accepts(("x", "y"), ("y", "x")))


@pytest.fixture(scope="module", params=["modular.gog", "bs12.gog", "f2xz.gog"])
def structure(request):
    gog = load_spec(fixture_path(request.param))
    language = build_language_fsa(gog)
    sample = sample_language(gog, language, 5)
    return gog, language, sample, compute_constants(gog, language, 5, sample)


def test_every_letter_passes_at_length_five(structure):
    gog, language, sample, constants = structure
    for letter in gog.alphabet.names:
        multiplier, report = build_verified_multiplier(gog, language, letter, constants, 5, sample=sample)
        records = dict(report.records())
        assert report.ok, letter
        assert records[f"MULTIPLIER.{letter}.SHAPE"] == "PASS"
        assert records[f"MULTIPLIER.{letter}.STATUS"] == "PASS"
        assert multiplier.automaton.validate_shape().ok


@pytest.mark.parametrize("fixture, letter, max_len", [("modular.gog", "a", 5), ("bs12.gog", "1", 3), ("bs12.gog", "t", 3)])
def test_accepted_pairs_grow_with_the_bound(fixture, letter, max_len):
    gog = load_spec(fixture_path(fixture))
    language = build_language_fsa(gog)
    words = language.enumerate(max_len)
    previous = None
    for K in range(1, 5):
        multiplier = build_multiplier(gog, language, letter, K, 1)
        accepted = {(left, right) for left in words for right in words if multiplier.accepts(left, right)}
        if previous is not None:
            assert previous <= accepted, K
        previous = accepted


def _loop_group(**options):
    gog = load_spec(fixture_path("bs12.gog"), StructureOptions(**options))
    constants = StructureConstants(eta=1, zeta=5, kappa_empirical=2, check_length=3)
    return gog, build_language_fsa(gog), constants


def test_too_small_bound_gives_false_rejects():
    gog, language, constants = _loop_group(retry_false_rejects=False)
    multiplier, report = build_verified_multiplier(gog, language, "1", constants, 2, K=0)
    assert multiplier.K == 0
    assert not report.ok
    assert report.false_rejects
    assert not report.false_accepts
    assert report.escalations == 0
    records = dict(report.records())
    assert records["MULTIPLIER.1.STATUS"] == Verdict.FAIL.value
    assert "MULTIPLIER.1.FALSE_REJECT.EXAMPLE" in records


def test_false_rejects_escalate_the_bound():
    gog, language, constants = _loop_group(max_escalations=1)
    with LogCapture(level=logging.WARN) as log:
        multiplier, report = build_verified_multiplier(gog, language, "1", constants, 2, K=0)
    assert report.escalations == 1
    assert (multiplier.K, multiplier.tau) == (1, 1)
    assert report.false_rejects
    messages = [record.getMessage() for record in log.records]
    assert any(message.endswith("retrying with K=1, tau=1") for message in messages)


def test_negative_length_is_rejected():
    gog, language, _ = _loop_group()
    multiplier = build_multiplier(gog, language, "1", 0)
    with pytest.raises(ParameterError):
        verify_multiplier(gog, language, multiplier, -1)


if __name__ == "__main__":
    pytest.main([__file__])
