import json
import subprocess
import sys

import pytest

from conftest import SHI3_LABELS, word
from shiish import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def lines(text):
    return [json.loads(l) for l in text.splitlines()]


def test_labels_json(capsys):
    code, out, _ = run(capsys, "labels", "--n", "3", "--x", "2", "--format", "json")
    assert code == 0
    recs = lines(out)
    summary = recs.pop()["summary"]
    assert {word(r["label"]) for r in recs} == SHI3_LABELS
    assert summary["regions"] == summary["distinct"] == 16 and summary["bijective"]


def test_verify_conjecture(capsys):
    code, out, _ = run(capsys, "verify-conjecture", "--n", "3")
    recs = lines(out)
    assert code == 0
    assert recs[-1]["summary"]["verdict"] == "equal"
    assert [r["by_length"] for r in recs[:-1]] == [[4, 6, 6], [4, 6, 6]]


def test_verify_conjecture_falsified(capsys, monkeypatch):
    from shiish.centers import DistributionVector, SweepReport

    def fake(n, **kw):
        return SweepReport(n, {(): DistributionVector((4, 6, 6)), (2,): DistributionVector((5, 5, 6))})

    monkeypatch.setattr(cli, "conjecture_sweep", fake)
    code, out, _ = run(capsys, "verify-conjecture", "--n", "3")
    assert code == 1
    assert lines(out)[-1]["summary"]["verdict"] == "differ"


def test_burn_trace(capsys):
    code, out, _ = run(capsys, "burn", "--n", "3", "--x", "", "--a", "0,2,2", "--trace")
    s = lines(out)[-1]["summary"]
    assert code == 0
    assert s["burnt_vertices"] == [0, 1, 3, 2]
    assert [1, 3, 2] in s["tree_edges"]
    assert s["fits"] is True


def test_charpoly_and_laplacian(capsys):
    _, out, _ = run(capsys, "charpoly", "--n", "4", "--shi")
    s = lines(out)[-1]["summary"]
    assert s["pretty"] == "q^4 - 12q^3 + 48q^2 - 64q"
    assert (s["regions"], s["bounded"]) == (125, 27)
    _, out, _ = run(capsys, "laplacian", "--n", "3", "--x", "")
    recs = lines(out)
    assert recs[1]["row"] == [0, 3, -1, -2]
    assert recs[-1]["summary"]["reduced_determinant"] == 16


def test_regions_witnesses_are_exact(capsys):
    _, out, _ = run(capsys, "regions", "--n", "3", "--shi")
    recs = lines(out)
    assert recs[-1]["summary"] == {"n": 3, "x": [2], "regions": 16, "bounded": 4}
    for r in recs[:-1]:
        assert all(isinstance(v, str) and "." not in v for v in r["witness"])


def test_counts(capsys):
    _, out, _ = run(capsys, "arborescences", "--n", "4", "--x", "2", "--count")
    assert lines(out) == [{"summary": {"n": 4, "x": [2], "arborescences": 125}}]
    _, out, _ = run(capsys, "parking", "--n", "3", "--x", "", "--list")
    recs = lines(out)
    assert len(recs) == 17 and recs[-1]["summary"]["parking_functions"] == 16


def test_centers(capsys):
    _, out, _ = run(capsys, "center", "--b", "3,1,2")
    assert lines(out)[0]["summary"]["center"] == [2, 3]
    _, out, _ = run(capsys, "reverse-center", "--a", "2,0,1")
    assert lines(out)[0]["summary"]["reverse_center"] == [2]


def test_distribution(capsys):
    _, out, _ = run(capsys, "distribution", "--n", "4")
    recs = lines(out)
    assert recs[0]["by_length"] == recs[1]["by_length"] == [27, 38, 36, 24]
    assert recs[-1]["summary"]["equal"] is True
    _, out, _ = run(capsys, "distribution", "--n", "4", "--x", "2")
    assert lines(out)[-1]["summary"]["by_length"] == [27, 38, 36, 24]


def test_shi_commands(capsys):
    _, out, _ = run(capsys, "shi", "label", "--w", "5,2,1,7,6,9,3,4,8", "--intervals", "1-4,2-7,4-9")
    assert lines(out)[-1]["summary"]["label"] == [2, 1, 4, 6, 0, 2, 0, 4, 1]
    _, out, _ = run(capsys, "shi", "label", "--w", "5,2,1,7,6,9,3,4,8", "--intervals",
                    "1-4,2-7,4-9", "--style", "lambda")
    assert lines(out)[-1]["summary"]["label"] == [2, 3, 0, 0, 7, 2, 3, 0, 3]
    code, _, err = run(capsys, "shi", "invert", "--a", "2,1,4,6,0,2,0,4,1", "--n", "9")
    assert code == 2 and "allow-large" in err
    code, out, _ = run(capsys, "shi", "invert", "--a", "2,1,4,6,0,2,0,4,1", "--n", "9", "--allow-large")
    s = lines(out)[-1]["summary"]
    assert code == 0 and s["w"] == [5, 2, 1, 7, 6, 9, 3, 4, 8]
    assert s["intervals"] == [[1, 4], [2, 7], [4, 9]]


def test_formats(capsys):
    _, out, _ = run(capsys, "distribution", "--n", "3", "--format", "csv")
    assert out.splitlines()[:3] == ["kind,by_length,zero_length,total",
                                   "pf_center,4 6 6,0,16", "ipf_reverse_center,4 6 6,0,16"]
    _, out, _ = run(capsys, "center", "--b", "3,1,2", "--format", "pretty")
    assert "center : 2 3" in out


def test_output_file(capsys, tmp_path):
    path = tmp_path / "out.jsonl"
    code, out, _ = run(capsys, "center", "--b", "1,1,1", "-o", str(path))
    assert code == 0 and out == ""
    assert json.loads(path.read_text())["summary"]["length"] == 3


@pytest.mark.parametrize("argv", [
    ["bogus"],
    ["labels", "--n", "3", "--x", "2", "--frobnicate"],
    ["labels", "--n", "3"],
    ["labels", "--n", "3", "--x", "a,b"],
    ["labels", "--n", "3", "--x", "7"],
    ["labels", "--n", "3", "--x", "2", "--shi"],
    ["center", "--b", "0,1,1"],
    ["labels", "--n", "8", "--shi"],
    ["shi", "label", "--w", "2,1", "--intervals", "1-2"],
    ["labels", "--n", "3", "--shi", "--jobs", "0"],
])
def test_usage_errors(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        sys.exit(cli.main(argv))
    assert exc.value.code == 2


def test_jobs_do_not_change_output(capsys):
    _, one, _ = run(capsys, "labels", "--n", "4", "--x", "3", "--jobs", "1")
    _, two, _ = run(capsys, "labels", "--n", "4", "--x", "3", "--jobs", "2")
    assert one == two


def test_console_script_is_deterministic():
    cmd = [sys.executable, "-m", "shiish.cli", "regions", "--n", "3", "--x", ""]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and a.count(b"\n") == 17
