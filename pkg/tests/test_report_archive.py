import json

from commands.paper_checks import verify_paper
from commands.reports import Report
from utilities.report_archive import archive_report, load_reports

from tests.conftest import FIXTURES


def archive_url(tmp_path) -> str:
    return f"sqlite:///{tmp_path / 'nested' / 'archive.db'}"


def test_archive_round_trip(tmp_path):
    url = archive_url(tmp_path)
    report = Report(command="classify", input_digest="abc", result={"verdict": "Good"})
    first = archive_report(report, url=url)
    second = archive_report(Report(command="hilbert", result={"coefficients": [1]}), url=url, status="fail")
    assert second > first

    rows = load_reports(url)
    assert [(r.command, r.status) for r in rows] == [("classify", "ok"), ("hilbert", "fail")]
    assert json.loads(rows[0].payload)["result"] == {"verdict": "Good"}
    assert rows[0].input_digest == "abc"
    assert [r.command for r in load_reports(url, command_name="hilbert")] == ["hilbert"]


def test_recorded_checks_are_archived(tmp_path):
    target = tmp_path / "fixtures"
    target.mkdir()
    (target / "u1_w1.json").write_text((FIXTURES / "u1_w1.json").read_text(encoding="utf-8"), encoding="utf-8")
    entries = [
        {"anchor": "recorded verdict", "kind": "classify", "theory": "u1_w1.json",
         "mode": "recorded", "expected": {"verdict": "Ugly or Bad"}},
    ]
    (target / "paper_checks.json").write_text(json.dumps(entries), encoding="utf-8")
    url = archive_url(tmp_path)

    report = verify_paper(target, archive_url=url)
    assert report.passed
    assert [line.status for line in report.lines] == ["recorded"]
    rows = load_reports(url)
    assert [(r.command, r.status) for r in rows] == [("verify-paper", "recorded")]
    assert json.loads(rows[0].payload)["result"]["recorded"][0]["computed"] == {"verdict": "Ugly"}
