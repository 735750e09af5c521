import json

import pytest

from src.models import DimensionTable, IdentityReport
from src.output import RunResult, render_csv, render_json, render_text, summary_frame, table_frame, write_result


def _result(ok: bool = True) -> RunResult:
    report = IdentityReport("qpi-binomial", {"ell": 3})
    report.record(True, n=1)
    report.record(ok, n=2)
    table = DimensionTable("kf", 2, {(0, 0): 1, (1, 0): 1, (1, 1): 2})
    return RunResult("dims", {"command": "dims", "ell": 3}, [report.to_dict()], [table.to_dict()])


def test_passed_follows_reports_and_tables():
    assert _result().passed
    assert not _result(ok=False).passed
    mismatch = RunResult("smallu", {}, tables=[{"name": "dim", "match": False}])
    assert not mismatch.passed


def test_json_is_sorted_and_stable():
    text = render_json(_result())
    assert text.endswith("\n")
    assert text == render_json(_result())
    data = json.loads(text)
    assert list(data) == sorted(data)
    assert data["reports"][0]["checked"] == 2
    assert data["passed"] is True


def test_table_frame_columns():
    frame = table_frame(_result().tables[0])
    assert list(frame.columns) == ["nu_1", "nu_2", "dim"]
    assert frame["dim"].sum() == 4


def test_summary_frame_counts_failures():
    frame = summary_frame(_result(ok=False))
    assert list(frame.columns) == ["suite", "checked", "failures", "passed"]
    row = frame.iloc[0]
    assert row["suite"] == "qpi-binomial"
    assert row["failures"] == 1
    assert not row["passed"]


def test_csv_starts_with_summary():
    text = render_csv(_result())
    assert text.startswith("suite,checked,failures,passed")
    assert "# kf" in text
    assert "nu_1,nu_2,dim" in text


def test_text_mentions_status_and_skips():
    result = _result()
    result.reports[0]["skipped"] = ["rank two"]
    text = render_text(result)
    assert "PASSED" in text
    assert "skipped: rank two" in text


def test_write_result_to_file(tmp_path):
    path = tmp_path / "report.json"
    text = write_result(_result(), "json", str(path))
    assert path.read_text(encoding="utf-8") == text


def test_write_result_rejects_unknown_format():
    with pytest.raises(ValueError):
        write_result(_result(), "yaml")
