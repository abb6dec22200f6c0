import io
import subprocess
import sys

import pytest

from comonad_workbench.cli import main
from comonad_workbench.fixtures import fixture_path
from comonad_workbench.wbformat import load, parse

KZ2 = str(fixture_path("kz2.wb"))


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out)
    return code, out.getvalue()


@pytest.mark.parametrize("name, code", [
    ("ground.wb", 0), ("kz2.wb", 0), ("kz2xz2.wb", 0), ("broken-counit.wb", 1)])
def test_validate_exit_codes(name, code):
    assert run("validate", str(fixture_path(name)))[0] == code


def test_validate_names_the_failing_axiom():
    code, text = run("validate", str(fixture_path("broken-counit.wb")))
    assert code == 1
    assert "kz2_broken (bialgebra): FAIL" in text
    assert "counit multiplicative" in text
    assert text.rstrip().endswith("summary: 2 declarations, 1 failed")


def test_missing_file(tmp_path, capsys):
    assert run("validate", str(tmp_path / "absent.wb"))[0] == 2
    assert "cannot read" in capsys.readouterr().err


def test_parse_error_exits_2(tmp_path, capsys):
    bad = tmp_path / "bad.wb"
    bad.write_text("wb 1\ncoalgebra k 1\n  map comult 1 1\n    entry 0 0 1/0\n")
    assert run("validate", str(bad))[0] == 2
    assert "1/0" in capsys.readouterr().err


def test_conv_prints_pointwise_functions():
    code, text = run("compute", KZ2, "conv", "kz2", "ground")
    assert code == 0
    (alg,) = parse(text).of_kind("algebra")
    assert alg.value.dim == 2
    # the indicator functions of 1 and g multiply pointwise
    assert [list(alg.value.mult.column(j)) for j in range(4)] == [[1, 0], [0, 0], [0, 0], [0, 1]]
    assert "# check: associativity and unit of the convolution product: ok" in text


def test_tensor_unit_prints_v_verbatim():
    code, text = run("compute", KZ2, "tensor", "unit", "V")
    assert code == 0
    assert parse(text).declarations["V"].value == load(KZ2).declarations["V"].value


def test_kelly_roundtrip():
    code, text = run("compute", KZ2, "kelly", "roundtrip", "adj", "b")
    assert code == 0 and text.startswith("identity: yes\n")


@pytest.mark.parametrize("args", [
    ("tensor", "V", "R"), ("hom", "V", "R"), ("enriched", "R", "V"), ("lift", "b", "V"),
    ("kelly", "lax", "adj", "b"), ("kelly", "oplax", "adj", "bhat"), ("adjoint", "adj", "b", "V"),
    ("factor", "adj", "b"), ("transfer", "D", "cofreeX"),
])
def test_compute_verbs_certify_and_reparse(args):
    code, text = run("compute", KZ2, *args)
    assert code == 0
    assert "FAIL" not in text and "# check:" in text
    parse(text)


def test_unknown_operand_and_kind_mismatch(capsys):
    assert run("compute", KZ2, "tensor", "V", "nothing")[0] == 2
    assert run("compute", KZ2, "lift", "V", "V")[0] == 2
    assert "wb:" in capsys.readouterr().err


def test_output_is_deterministic():
    first = run("compute", KZ2, "hom", "V", "R")
    assert run("compute", KZ2, "hom", "V", "R") == first


def test_report_lists_criteria():
    code, text = run("report", KZ2, "--cases", "1")
    assert code == 0
    assert text.startswith("# seed ")
    assert text.rstrip().endswith("criteria: 0 failed")
    assert text.count("[PASS]") >= 9


def test_console_script_subprocess():
    proc = subprocess.run([sys.executable, "-m", "comonad_workbench.cli", "validate", KZ2],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert proc.stdout.rstrip().endswith("0 failed")
