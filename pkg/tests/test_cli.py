import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from mwdrw.cli import emit, format_text, main
from mwdrw.errors import JobParseError
from mwdrw.suites import SUITES, Job, Report, parse_job, run

JOBS = Path(__file__).resolve().parent.parent / "jobs"


def write_job(tmp_path, doc, name="job.json"):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return str(path)


def run_cli(args, capsysbinary):
    code = main(args)
    out = capsysbinary.readouterr().out
    return code, out


@pytest.mark.parametrize(
    "doc",
    [
        {"suite": "nope"},
        {"p": 2},
        {"suite": "homotopy", "p": 4},
        {"suite": "homotopy", "N": 0},
        {"suite": "homotopy", "seed": "x"},
        {"suite": "homotopy", "cases": True},
        {"suite": "homotopy", "cases": -1},
        {"suite": "homotopy", "p": 2, "N": 70},
        [1, 2],
    ],
)
def test_bad_jobs(doc, tmp_path, capsys):
    with pytest.raises(JobParseError):
        parse_job(doc)
    assert main(["run", "--job", write_job(tmp_path, doc)]) == 2
    assert "JobParseError" in capsys.readouterr().err


def test_unreadable_job(tmp_path, capsys):
    assert main(["run", "--job", str(tmp_path / "missing.json")]) == 2
    with pytest.raises(JobParseError):
        parse_job("{not json")


def test_homotopy_job(capsysbinary):
    code, out = run_cli(["run", "--job", str(JOBS / "homotopy.json")], capsysbinary)
    doc = json.loads(out)
    assert code == 0
    assert doc["schema"] == 1 and doc["status"] == "pass"
    assert len(doc["cases"]) == 50
    assert all(c["status"] == "pass" and c["precision"] == 4 for c in doc["cases"])
    worked = next(f for f in doc["fixtures"] if f["id"] == "homotopy-worked")
    assert worked["details"]["H(dx)"] == "(3*x)"


def test_cohomology_job_table():
    job = parse_job({"suite": "cohomology", "p": 2, "N": 3, "geometry": "A1", "window": 8, "cases": 5})
    doc = run(job).to_json()
    orders = dict(map(tuple, doc["tables"]["H1_orders"]))
    assert [orders[m] for m in range(1, 9)] == [1, 2, 1, 4, 1, 2, 1, 8]
    assert doc["status"] == "pass"
    text = format_text(doc)
    assert "H^1 block orders: 1:1 2:2 3:1 4:4 5:1 6:2 7:1 8:8" in text
    assert "H^1 [8]" in text and "2^3" in text


def test_cohomology_sample_jobs(capsysbinary):
    for name in ("cohomology_a1.json", "cohomology_gm.json"):
        code, out = run_cli(["cohomology", "--job", str(JOBS / name)], capsysbinary)
        doc = json.loads(out)
        assert code == 0, name
        li = next(f for f in doc["fixtures"] if f["id"] == "cohomology-lift-independence")
        assert li["details"]["ok"]
    wit = {f["id"]: f["details"] for f in json.loads(run_cli(["run", "--job", str(JOBS / "cohomology_a1.json")], capsysbinary)[1])["fixtures"] if "witness" in f["id"]}
    assert wit["cohomology-witness-0"]["status"] == "not_exact"
    assert wit["cohomology-witness-0"]["order"] == "2^1"
    assert wit["cohomology-witness-0"]["primitive"] == "(1*T^2)"


def test_deterministic_bytes(tmp_path):
    for suite in SUITES:
        job = parse_job({"suite": suite, "p": 3, "N": 2, "seed": 5, "cases": 4})
        assert emit(run(job)) == emit(run(job))
        assert emit(run(job), "text") == emit(run(job), "text")


def test_deterministic_across_processes(tmp_path):
    path = write_job(tmp_path, {"suite": "all", "p": 2, "N": 2, "seed": 11, "cases": 3})
    outs = []
    for _ in range(2):
        proc = subprocess.run(
            [sys.executable, "-m", "mwdrw", "run", "--job", path],
            capture_output=True,
            env={**os.environ, "PYTHONHASHSEED": str(len(outs) + 1)},
        )
        assert proc.returncode == 0, proc.stderr
        outs.append(proc.stdout)
    assert outs[0] == outs[1]
    assert emit(run(parse_job(Path(path).read_text()))) == outs[0]


def test_seed_changes_cases_and_override(tmp_path, capsysbinary):
    path = write_job(tmp_path, {"suite": "witt-laws", "p": 2, "N": 2, "seed": 1, "cases": 3})
    a = run_cli(["run", "--job", path], capsysbinary)[1]
    b = run_cli(["run", "--job", path, "--seed", "2"], capsysbinary)[1]
    assert json.loads(b)["job"]["seed"] == 2
    assert a != b


def test_timing_flag(tmp_path, capsysbinary):
    path = write_job(tmp_path, {"suite": "overconvergence", "p": 2, "N": 2, "cases": 2})
    plain = json.loads(run_cli(["run", "--job", path], capsysbinary)[1])
    timed = json.loads(run_cli(["run", "--job", path, "--timing"], capsysbinary)[1])
    assert "timing_seconds" not in plain and timed["timing_seconds"] >= 0
    timed.pop("timing_seconds")
    assert timed == plain


def test_out_and_report_dir(tmp_path, monkeypatch, capsysbinary):
    path = write_job(tmp_path, {"suite": "functoriality", "p": 3, "N": 2, "seed": 4, "cases": 2})
    out = tmp_path / "sub" / "r.txt"
    assert main(["run", "--job", path, "--format", "text", "--out", str(out)]) == 0
    assert out.read_text().startswith("suite functoriality")
    monkeypatch.setenv("MWDRW_REPORT_DIR", str(tmp_path / "reports"))
    assert main(["run", "--job", path]) == 0
    assert json.loads((tmp_path / "reports" / "functoriality-seed4.json").read_text())["status"] == "pass"
    assert capsysbinary.readouterr().out == b""


def test_stdin_job(monkeypatch, capsysbinary):
    import io

    monkeypatch.setattr(sys, "stdin", io.StringIO('{"suite": "overconvergence", "cases": 1}'))
    code, out = run_cli(["run", "--job", "-"], capsysbinary)
    assert code == 0 and json.loads(out)["suite"] == "overconvergence"


def test_empty_report():
    doc = json.loads(emit(Report("homotopy", Job("homotopy", cases=0).to_json())))
    assert doc["summary"] == {"total": 0, "passed": 0, "failed": 0}
    assert doc["cases"] == [] and doc["fixtures"] == [] and doc["status"] == "pass"
    assert emit(Report("homotopy", {}), "text").startswith(b"suite homotopy")


def test_forced_failure_reports_counterexample(tmp_path, capsysbinary):
    doc = {
        "suite": "homotopy",
        "p": 3,
        "N": 2,
        "cases": 0,
        "pairs": [{"psi1": ["x^2"], "psi2": ["x^2+x"], "forms": ["dx"]}],
    }
    code, out = run_cli(["run", "--job", write_job(tmp_path, doc)], capsysbinary)
    rep = json.loads(out)
    assert code == 1 and rep["status"] == "fail"
    bad = next(f for f in rep["fixtures"] if f["status"] == "fail")
    assert bad["id"] == "homotopy-pair-0"
    assert "NotCongruentModP" in bad["details"]["error"]
    assert "1*x^2+1*x" in bad["details"]["error"]
    text = emit(run(parse_job(doc)), "text").decode()
    assert "homotopy-pair-0" in text and "fail" in text


def test_all_suite_nests_children():
    rep = run(parse_job({"suite": "all", "p": 2, "N": 2, "cases": 1}))
    doc = rep.to_json()
    assert [c["suite"] for c in doc["suites"]] == list(SUITES)
    assert doc["summary"]["total"] == sum(c["summary"]["total"] for c in doc["suites"])
    assert rep.ok


@pytest.mark.parametrize("suite", SUITES)
def test_each_suite_passes_small(suite):
    for p in (2, 3):
        rep = run(parse_job({"suite": suite, "p": p, "N": 3, "seed": 2, "cases": 5}))
        assert rep.ok, [c for c in rep.to_json()["cases"] + rep.to_json()["fixtures"] if c["status"] == "fail"]
        assert len(rep.cases) == 5


def test_tools(capsysbinary):
    code, out = run_cli(["homotopy-check", "--job", str(JOBS / "homotopy_check.json")], capsysbinary)
    doc = json.loads(out)
    assert code == 0
    forms = doc["fixtures"][0]["details"]["forms"]
    assert forms[0]["form"] == "dx" and forms[0]["verified"]
    code, out = run_cli(["tf-map", "--job", str(JOBS / "tf_map.json")], capsysbinary)
    assert code == 0 and len(json.loads(out)["fixtures"]) == 2
    code, out = run_cli(["overconv-profile", "--job", str(JOBS / "overconv.json"), "--format", "text"], capsysbinary)
    assert code == 0 and b"overconv-profile-0" in out


def test_tf_map_rejects_non_frobenius(tmp_path, capsysbinary):
    path = write_job(tmp_path, {"p": 3, "N": 2, "n": 2, "f": ["x^3+x"], "inputs": ["x"]})
    code, out = run_cli(["tf-map", "--job", path], capsysbinary)
    assert code == 1
    assert "NotDivisible" in json.loads(out)["fixtures"][0]["details"]["error"]
