import json
import shutil

import pytest

from app import main
from commands.hilbert_cli import UNCERTIFIED_MARKER
from config import settings
from utilities.report_archive import load_reports

from tests.conftest import FIXTURES, write_theory


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def report_of(out: str) -> dict:
    return json.loads(out)


def test_classify(capsys):
    code, out, _ = run(capsys, "classify", FIXTURES / "a2_11.json")
    assert code == 0
    report = report_of(out)
    assert report["command"] == "classify"
    assert report["result"]["verdict"] == "Ugly"
    assert report["result"]["min_value"] == 1
    assert report["conventions"] == settings.CONVENTIONS
    assert "timing" not in report


def test_classify_is_deterministic(capsys):
    _, first, _ = run(capsys, "classify", FIXTURES / "a2_21.json")
    _, second, _ = run(capsys, "classify", FIXTURES / "a2_21.json")
    assert first == second
    assert report_of(first)["result"]["verdict"] == "Bad"


def test_classify_brute_force(capsys):
    code, out, _ = run(capsys, "classify", FIXTURES / "u1_w3.json", "--brute-force", 3)
    assert code == 0
    assert report_of(out)["result"]["min_value"] == 3


def test_timing_flag(capsys):
    _, out, _ = run(capsys, "classify", FIXTURES / "u1_w1.json", "--timing")
    assert report_of(out)["timing"]["wall_seconds"] >= 0


def test_delta(capsys):
    code, out, _ = run(capsys, "delta", FIXTURES / "a2_21.json", "--charge", "1,0;0")
    assert code == 0
    result = report_of(out)["result"]
    assert result["two_delta"] == -1
    assert result["closed_form"] == -1


def test_roots_tsv(capsys):
    code, out, _ = run(capsys, "roots", "--kind", "a", "--rank", 2)
    assert code == 0
    assert out.splitlines() == ["1,0\tReal\t1", "0,1\tReal\t1", "1,1\tReal\t2"]


def test_roots_affine_json(capsys):
    code, out, _ = run(capsys, "roots", "--kind", "affine-a", "--rank", 1, "--bound", "2,2", "--json")
    assert code == 0
    rows = {tuple(r["root"]): r["tag"] for r in report_of(out)["result"]["roots"]}
    assert rows[(1, 1)] == "Imaginary"
    assert rows[(2, 2)] == "Imaginary"
    assert rows[(2, 1)] == "Real"
    assert len(rows) == 6


def test_roots_needs_input(capsys):
    code, _, err = run(capsys, "roots")
    assert code == 2
    assert err.startswith("error:")


def test_roots_rejects_bad_bound(capsys):
    code, _, _ = run(capsys, "roots", "--kind", "affine-a", "--rank", 1, "--bound", "2,x")
    assert code == 2


def test_ci(capsys):
    code, out, _ = run(capsys, "ci", FIXTURES / "a2_22.json")
    assert code == 0
    result = report_of(out)["result"]
    assert result["is_ci"] is False
    assert result["violation"]["parts"] == [[1, 1], [1, 1]]
    _, out, _ = run(capsys, "ci", FIXTURES / "a1_framed_22.json", "--method", "fast")
    assert report_of(out)["result"]["method"] == "fast-path-finite"


def test_strata(capsys):
    code, out, _ = run(capsys, "strata", FIXTURES / "a1_framed_12.json")
    assert code == 0
    result = report_of(out)["result"]
    assert result["coulomb"]["elements"] == [[0], [1]]
    assert result["bijection"]["is_anti_isomorphism"] is True
    _, out, _ = run(capsys, "strata", FIXTURES / "jordan_2.json", "--dot", "--side", "higgs")
    assert out.splitlines()[0] == "digraph higgs {"


def test_hilbert_tsv(capsys):
    code, out, _ = run(capsys, "hilbert", FIXTURES / "u1_w3.json", "--cutoff", 4)
    assert code == 0
    assert out.splitlines() == ["0\t1", "1\t0", "2\t1", "3\t2", "4\t1"]


def test_hilbert_expectations(capsys):
    theory = FIXTURES / "u1_w3.json"
    code, out, _ = run(capsys, "hilbert", theory, "--cutoff", 12, "--expect", "(1+t^3)/((1-t^2)(1-t^3))", "--json")
    assert code == 0
    assert report_of(out)["result"]["matches"] is True
    code, _, _ = run(capsys, "hilbert", theory, "--cutoff", 12, "--expect", "1/(1-t)^2")
    assert code == 1


def test_hilbert_with_radius_is_marked(capsys):
    code, out, _ = run(capsys, "hilbert", FIXTURES / "u1_w1.json", "--cutoff", 3, "--radius", 5)
    assert code == 0
    assert out.splitlines()[0] == UNCERTIFIED_MARKER


def test_hilbert_of_bad_theory_fails(capsys):
    code, _, err = run(capsys, "hilbert", FIXTURES / "a2_21.json", "--cutoff", 4)
    assert code == 2
    assert "diverges" in err


def test_sl2(capsys):
    code, out, _ = run(capsys, "sl2", "--flavors", 2)
    assert code == 0
    result = report_of(out)["result"]
    assert result["classification"]["verdict"] == "Bad"
    assert result["surface"]["strata_count"] == result["higgs"]["higgs_strata_count"] == 3
    assert report_of(out)["input_digest"] == "flavors=2"


def test_malformed_theory_file(capsys, tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{", encoding="utf-8")
    code, _, err = run(capsys, "classify", path)
    assert code == 2
    assert err.startswith("error:")


def test_invalid_theory_names_the_rule(capsys, tmp_path):
    path = write_theory(tmp_path, "framed_mod_center.json", {
        "vertices": ["1"], "edges": [], "v": {"1": 1}, "w": {"1": 1}, "group": "prod-gl-mod-center",
    })
    code, _, err = run(capsys, "classify", path)
    assert code == 2
    assert "mod-center-requires-unframed" in err


def test_missing_file(capsys, tmp_path):
    code, _, _ = run(capsys, "classify", tmp_path / "absent.json")
    assert code == 2


def test_usage_errors(capsys):
    assert run(capsys, "no-such-command")[0] == 2
    assert run(capsys)[0] == 2
    assert run(capsys, "hilbert", FIXTURES / "u1_w1.json")[0] == 2


def test_archive_flag(capsys, tmp_path, monkeypatch):
    url = f"sqlite:///{tmp_path / 'archive.db'}"
    monkeypatch.setattr(settings, "ARCHIVE_URL", url)
    code, out, _ = run(capsys, "classify", FIXTURES / "a2_11.json", "--archive")
    assert code == 0
    rows = load_reports(url)
    assert [(r.command, r.status) for r in rows] == [("classify", "ok")]
    assert json.loads(rows[0].payload) == report_of(out)


def test_verify_paper_missing_directory(capsys, tmp_path):
    code, _, err = run(capsys, "verify-paper", "--fixtures", tmp_path / "nowhere")
    assert code == 2
    assert "does not exist" in err


def _fixture_copy(tmp_path, entries):
    target = tmp_path / "fixtures"
    shutil.copytree(FIXTURES, target)
    (target / "paper_checks.json").write_text(json.dumps(entries), encoding="utf-8")
    return target


def test_verify_paper_reports_the_failing_anchor(capsys, tmp_path):
    entries = [
        {"anchor": "u1 weight three is good", "kind": "classify", "theory": "u1_w3.json",
         "expected": {"verdict": "Good", "min_value": 3}},
        {"anchor": "u1 weight one claimed good", "kind": "classify", "theory": "u1_w1.json",
         "expected": {"verdict": "Good"}},
    ]
    code, out, _ = run(capsys, "verify-paper", "--fixtures", _fixture_copy(tmp_path, entries), "--table")
    assert code == 1
    lines = out.splitlines()
    assert lines == ["PASS\tu1 weight three is good", "FAIL\tu1 weight one claimed good", "overall\tfail"]


def test_verify_paper_unknown_kind(capsys, tmp_path):
    entries = [{"anchor": "mystery", "kind": "no-such-check", "expected": None}]
    code, _, err = run(capsys, "verify-paper", "--fixtures", _fixture_copy(tmp_path, entries))
    assert code == 2
    assert "mystery" in err


def test_verify_paper_skips_gated_entries(capsys, tmp_path):
    entries = [
        {"anchor": "gated", "kind": "classify", "theory": "u1_w1.json", "gate": "e6",
         "mode": "recorded", "expected": {"verdict": "Ugly or Bad"}},
    ]
    code, out, _ = run(capsys, "verify-paper", "--fixtures", _fixture_copy(tmp_path, entries))
    assert code == 0
    assert report_of(out)["result"] == {"passed": True, "lines": []}


@pytest.mark.slow
def test_verify_paper_on_shipped_fixtures(capsys):
    code, out, _ = run(capsys, "verify-paper", "--table")
    assert code == 0
    assert out.splitlines()[-1] == "overall\tpass"
