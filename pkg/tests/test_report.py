import os
import unittest

import pytest

from gogauto.enums import Verdict
from gogauto.report import StructureReport


def _report():
    report = StructureReport([("ETA", "0"), ("LANGUAGE.STATUS", "PASS")], title="f2")
    report.add("MULTIPLIER.x.STATUS", Verdict.PASS.value)
    report.note("5 multipliers")
    return report


class TestStructureReport(unittest.TestCase):
    def test_verdict(self):
        report = _report()
        self.assertIs(report.verdict, Verdict.PASS)
        report.add("DEPARTURE.STATUS", "FAIL")
        self.assertEqual(report.failures, ["DEPARTURE.STATUS"])
        self.assertIs(report.verdict, Verdict.FAIL)

    def test_to_text(self):
        self.assertEqual(
            _report().to_text(),
            "ETA=0\nLANGUAGE.STATUS=PASS\nMULTIPLIER.x.STATUS=PASS\n\n# f2: PASS\n# 5 multipliers\n",
        )
        self.assertEqual(_report().to_text(summary=False), "ETA=0\nLANGUAGE.STATUS=PASS\nMULTIPLIER.x.STATUS=PASS\n")

    def test_from_text(self):
        parsed = StructureReport.from_text(_report().to_text())
        self.assertEqual(list(parsed.records.items()), list(_report().records.items()))
        self.assertEqual(StructureReport.from_text("NF.TAIL=a=b\n")["NF.TAIL"], "a=b")

    def test_invalid_keys(self):
        with self.assertRaises(ValueError):
            _report().add("BAD KEY", "1")
        with self.assertRaises(ValueError):
            _report().add("A=B", "1")

    def test_values_stay_on_one_line(self):
        report = StructureReport()
        report.add("NOTE", "two\nlines")
        self.assertEqual(report["NOTE"], "two lines")

    def test_merge(self):
        merged = _report().merge(StructureReport([("ETA", "2"), ("ZETA", "9")]))
        self.assertEqual(merged["ETA"], "2")
        self.assertIn("ZETA", merged)
        self.assertEqual(merged.summary, ["5 multipliers"])
        self.assertEqual(merged.title, "f2")


def test_get_diff():
    first, second = _report(), _report()
    assert not first.get_diff(second)
    second.add("ETA", "1")
    second.add("KAPPA", "1")
    diff = first.get_diff(second)
    assert diff["values_changed"]["root['ETA']"]["new_value"] == "1"
    assert "root['KAPPA']" in diff["dictionary_item_added"]
    assert not first.get_diff(second, exclude_keys=["ETA", "KAPPA"])


def test_save_and_load(tmp_path):
    path = os.path.join(tmp_path, "report.json")
    _report().save(path)
    loaded = StructureReport.load(path)
    assert loaded.title == "f2"
    assert loaded.summary == ["5 multipliers"]
    assert not loaded.get_diff(_report())


if __name__ == "__main__":
    pytest.main([__file__])
