import json

import pytest

from src.constants import EXIT_FAILURE, EXIT_OK, EXIT_USAGE
from src.main import run


@pytest.fixture
def bad_datum(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"I": ["1"], "dot": [[4]], "parity": [1]}), encoding="utf-8")
    return str(path)


def test_help_exits_cleanly():
    assert run(["--help"]) == EXIT_OK


def test_unknown_command_is_usage_error():
    assert run(["nonsense"]) == EXIT_USAGE


def test_ell_prime_ell_needs_odd_ell():
    assert run(["datum", "--osp", "1", "--ell", "4", "--ell-prime", "ell"]) == EXIT_USAGE


def test_frobenius_refuses_excluded_pair():
    assert run(["frobenius", "--osp", "2", "--ell", "2"]) == EXIT_USAGE


def test_verify_qpi_is_deterministic(tmp_path):
    path = tmp_path / "qpi.json"
    args = ["verify-qpi", "--ell", "2", "--range", "6", "--pi", "plus", "--out", str(path)]
    assert run(args) == EXIT_OK
    first = path.read_text(encoding="utf-8")
    assert json.loads(first)["passed"] is True
    assert run(args) == EXIT_OK
    assert path.read_text(encoding="utf-8") == first


def test_verify_qpi_csv(tmp_path):
    path = tmp_path / "qpi.csv"
    args = ["verify-qpi", "--ell", "3", "--range", "4", "--pi", "minus", "--format", "csv", "--out", str(path)]
    assert run(args) == EXIT_OK
    assert path.read_text(encoding="utf-8").startswith("suite,checked,failures,passed")


def test_smallu_dimension_table(tmp_path):
    path = tmp_path / "smallu.json"
    assert run(["smallu", "--osp", "1", "--ell", "3", "--pi", "plus", "--out", str(path)]) == EXIT_OK
    data = json.loads(path.read_text(encoding="utf-8"))
    dims = [t for t in data["tables"] if "formula" in t]
    assert dims[0]["formula"] == 108
    assert dims[0]["match"] is True


def test_datum_reports_invalid_file(bad_datum, tmp_path):
    out = str(tmp_path / "datum.json")
    assert run(["datum", "--datum", bad_datum, "--out", out]) == EXIT_FAILURE
    assert json.loads(open(out, encoding="utf-8").read())["reports"][0]["valid"] is False


def test_dims_rejects_invalid_file(bad_datum):
    assert run(["dims", "--datum", bad_datum]) == EXIT_USAGE
