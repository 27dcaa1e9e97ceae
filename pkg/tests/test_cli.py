import json
import subprocess
import sys

import pytest

from conftest import SAMPLES
from multinet.cli import main


def run_cli(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def sample(name):
    return str(SAMPLES / name)


def test_check_exit_codes(capsys):
    code, out, _ = run_cli(capsys, "check", sample("modex_s1.json"), "--require", "net")
    assert code == 0 and json.loads(out)["net"] is True
    code, out, _ = run_cli(capsys, "check", sample("modex_s3.json"), "--require", "component")
    data = json.loads(out)
    assert code == 1
    assert sorted(data["component_witness"]["unreached"]) == ["a2", "a3"]
    assert "switching" in data["witness"]


def test_check_is_stable(capsys):
    first = run_cli(capsys, "check", sample("extest.json"), "--witness")
    second = run_cli(capsys, "check", sample("extest.json"), "--witness")
    assert first == second


def test_behavior_and_tests(capsys):
    code, out, _ = run_cli(capsys, "behavior", sample("extest.json"))
    assert code == 0 and len(json.loads(out)["members"]) == 4
    code, out, _ = run_cli(capsys, "tests", sample("extest.json"))
    assert code == 0 and len(json.loads(out)) == 4


def test_switching_bound_flag(capsys):
    code, _, err = run_cli(capsys, "--bound-switchings", "2", "behavior", sample("extest.json"))
    assert code == 2 and "bound" in err
    code, _, _ = run_cli(capsys, "behavior", sample("extest.json"), "--bound-switchings", "2")
    assert code == 2
    code, _, _ = run_cli(capsys, "behavior", sample("extest.json"))
    assert code == 0


def test_expand(tmp_path, capsys):
    host = tmp_path / "host.json"
    guest = tmp_path / "guest.json"
    host.write_text(json.dumps({"edges": [{"id": "p", "type": "par", "inputs": ["a", "b"], "outputs": ["c"]}]}))
    guest.write_text(json.dumps({"edges": [{"id": "x", "type": "ax", "inputs": [], "outputs": ["x1", "x2"]}]}))
    code, out, _ = run_cli(capsys, "expand", "--host", host, "--guest", guest, "--glue", "a=x1,b=x2")
    data = json.loads(out)
    assert code == 0 and data["expands"] and data["composite"]["edges"]
    code, out, _ = run_cli(
        capsys, "expand", "--host", host, "--guest", guest, "--glue", "a=x1,b=x2", "--one-sided"
    )
    assert code == 1 and json.loads(out)["failed_condition"] == "c"
    code, _, err = run_cli(capsys, "expand", "--host", host, "--guest", guest, "--glue", "a")
    assert code == 2 and "glue" in err


def test_run(capsys):
    code, out, _ = run_cli(capsys, "run", sample("concurrent_ex.mn"))
    data = json.loads(out)
    assert code == 0 and data["status"] == "solved" and data["goal"] == ["a"]
    assert data["solutions"][0]["depth"] == 3 and data["solutions"][0]["component"]
    code, out, _ = run_cli(capsys, "run", sample("concurrent_ex.mn"), "--depth", "2")
    assert code == 1 and json.loads(out)["status"] == "bound"
    code, out, _ = run_cli(capsys, "run", sample("concurrent_ex.mn"), "--format", "dot", "--unicode")
    assert code == 0 and out.startswith('digraph "solution1"')


def test_connective_and_probe(capsys):
    code, out, _ = run_cli(capsys, "connective", "G", "2", "2")
    assert code == 0 and json.loads(out)["name"] == "G_2_2"
    code, _, err = run_cli(capsys, "connective", "G", "2", "4")
    assert code == 2 and "prime" in err
    code, out, _ = run_cli(capsys, "probe", "--formula", "a*(b|c)")
    assert code == 0 and json.loads(out)["found"]


def test_export(capsys):
    code, out, _ = run_cli(capsys, "export", sample("choice.mn"), "--method", "Want")
    assert code == 0 and "G_2_2" in out
    code, out, _ = run_cli(capsys, "export", "a*b", "--formula", "--format", "dot", "--unicode")
    assert code == 0 and "⊗" in out
    code, _, err = run_cli(capsys, "export", sample("choice.mn"), "--method", "Nope")
    assert code == 2


def test_input_errors(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    assert run_cli(capsys, "check", bad)[0] == 2
    assert run_cli(capsys, "check", tmp_path / "missing.json")[0] == 2
    prog = tmp_path / "p.mn"
    prog.write_text("F: a :- (b)")
    code, _, err = run_cli(capsys, "run", prog)
    assert code == 2 and "1:12" in err
    with pytest.raises(SystemExit) as exc:
        main(["nosuchverb"])
    assert exc.value.code == 2


def test_module_entry_point():
    done = subprocess.run(
        [sys.executable, "-m", "multinet", "check", sample("modex_s1.json")],
        capture_output=True,
        text=True,
    )
    assert done.returncode == 0 and json.loads(done.stdout)["correct"]
