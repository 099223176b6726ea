import os
from unittest.mock import patch

import pytest

from gogauto import __version__
from gogauto.cli import EXIT_FAIL, EXIT_INPUT, EXIT_PASS, main
from gogauto.report import StructureReport
from tests.fixture_oracles import fixture_path


def _run(capsys, *argv):
    code = main([str(arg) for arg in argv])
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_validate(capsys):
    code, out, _ = _run(capsys, "validate", fixture_path("modular.gog"))
    assert code == EXIT_PASS
    records = StructureReport.from_text(out)
    assert records["CONNECTED"] == "true"
    assert records["VALIDATE.STATUS"] == "PASS"


def test_validate_rejects_infinite_index(capsys, tmp_path):
    path = os.path.join(tmp_path, "loop.gog")
    with open(path, "w") as spec_file:
        spec_file.write("[graph]\nvertex c: free a\nt: c -> c\nbase c\n")
    code, out, err = _run(capsys, "validate", path)
    assert code == EXIT_INPUT
    assert out == ""
    assert "tree not locally finite" in err


def test_missing_file(capsys):
    code, _, err = _run(capsys, "letters", "no/such/file.gog")
    assert code == EXIT_INPUT
    assert err.startswith("error: ")


def test_letters(capsys):
    code, out, _ = _run(capsys, "letters", fixture_path("f2.gog"))
    assert code == EXIT_PASS
    assert out == "LETTER.1=base ε @ c\nLETTER.x=base x @ c\nLETTER.x'=base x' @ c\nLETTER.y=base y @ c\nLETTER.y'=base y' @ c\n"


def test_normal_form(capsys):
    code, out, _ = _run(capsys, "normal-form", fixture_path("f2.gog"), "x y y' x")
    assert code == EXIT_PASS
    assert out == "NF.WORD=x x\nNF.SYLLABLES=ε\nNF.TAIL=x x\nNF.LEVEL=0\n"

    _, out, _ = _run(capsys, "normal-form", fixture_path("modular.gog"), "e~.1")
    records = StructureReport.from_text(out)
    assert records["NF.WORD"] == "e.0 e e~.1 e~"
    assert records["NF.LEVEL"] == "2"


def test_normal_form_of_unknown_letter(capsys):
    code, _, err = _run(capsys, "normal-form", fixture_path("f2.gog"), "x z")
    assert code == EXIT_INPUT
    assert "unknown letter 'z'" in err


def test_enumerate(capsys):
    code, out, _ = _run(capsys, "enumerate", fixture_path("modular.gog"), "--max-len", 0)
    assert code == EXIT_PASS
    assert out == "ε\n"
    _, out, _ = _run(capsys, "enumerate", fixture_path("f2.gog"), "--max-len", 1)
    assert out.splitlines() == ["ε", "x", "x'", "y", "y'"]


def test_build_fsa_writes_files(capsys, tmp_path):
    dot, saved = os.path.join(tmp_path, "f2.dot"), os.path.join(tmp_path, "f2.fsa")
    code, out, _ = _run(capsys, "build-fsa", fixture_path("f2.gog"), "--dot", dot, "--save", saved)
    assert code == EXIT_PASS
    records = StructureReport.from_text(out)
    assert (records["FSA.o"], records["FSA.CT"]) == ("1", "4")
    with open(dot) as dot_file:
        assert dot_file.read().startswith("digraph")
    assert os.path.getsize(saved) > 0


def test_departure(capsys):
    code, out, _ = _run(capsys, "departure", fixture_path("f2.gog"), "--rmax", 2, "--exact", "--cap", 3)
    assert code == EXIT_PASS
    records = StructureReport.from_text(out)
    assert records["DEPARTURE.METHOD"] == "exact"
    assert (records["DEPARTURE.1"], records["DEPARTURE.2"]) == ("1", "2")

    _, out, _ = _run(capsys, "departure", fixture_path("modular.gog"), "--rmax", 1, "--max-len", 5)
    records = StructureReport.from_text(out)
    assert records["DEPARTURE.METHOD"] == "empirical"
    assert records["DEPARTURE.1"] == "3"


def test_departure_needs_a_method(capsys):
    with pytest.raises(SystemExit) as error:
        main(["departure", fixture_path("f2.gog"), "--rmax", "2"])
    assert error.value.code == 2


def test_kappa(capsys):
    code, out, _ = _run(capsys, "kappa", fixture_path("f2.gog"), "--max-len", 3, "--trace")
    assert code == EXIT_PASS
    records = StructureReport.from_text(out)
    assert records["ETA"] == "0"
    assert records["KAPPA"] == "1"
    assert records["FELLOW_TRAVELLER.TRACE.STATUS"] == "PASS"
    assert "# max anchor distance" in out


def test_exceeded_trace_bounds_fail_kappa(capsys):
    with patch("gogauto.structure.fellow_traveller.FellowTravellerTrace.bounds_hold", return_value=False):
        code, out, _ = _run(capsys, "kappa", fixture_path("f2.gog"), "--max-len", 3, "--trace")
    assert code == EXIT_FAIL
    records = StructureReport.from_text(out)
    assert records["FELLOW_TRAVELLER.TRACE.STATUS"] == "FAIL"
    assert records["FELLOW_TRAVELLER.STATUS"] == "PASS"
    assert "# failed: FELLOW_TRAVELLER.TRACE.STATUS" in out


def test_unstable_kappa_fails(capsys):
    code, out, _ = _run(capsys, "kappa", fixture_path("f2.gog"), "--max-len", 1)
    assert code == EXIT_FAIL
    assert "FELLOW_TRAVELLER.STATUS=FAIL" in out


def test_multiplier(capsys, tmp_path):
    dot = os.path.join(tmp_path, "x.dot")
    code, out, _ = _run(capsys, "multiplier", fixture_path("f2.gog"), "--letter", "x", "--verify", 2, "--dot", dot)
    assert code == EXIT_PASS
    assert StructureReport.from_text(out)["MULTIPLIER.x.STATUS"] == "PASS"
    assert os.path.exists(dot)


def test_verify(capsys):
    code, out, _ = _run(capsys, "verify", fixture_path("f2.gog"), "--max-len", 3)
    assert code == EXIT_PASS
    records = StructureReport.from_text(out)
    assert records["STRUCTURE.STATUS"] == "PASS"
    assert records["LANGUAGE.STATUS"] == "PASS"


def test_version(capsys):
    with pytest.raises(SystemExit) as error:
        main(["--version"])
    assert error.value.code == 0
    assert capsys.readouterr().out.strip() == f"gogauto {__version__}"


if __name__ == "__main__":
    pytest.main([__file__])
