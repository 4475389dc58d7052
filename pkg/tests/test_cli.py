import json
import subprocess
import sys

import pytest

from ncdiv.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def pairing_file(tmp_path):
    p = tmp_path / "pairing.json"
    p.write_text(json.dumps({"generators": ["u", "v", "w"], "skew": True,
                             "values": {"u,v": "1"}}))
    return str(p)


def test_table1(capsys):
    code, out, _ = run(capsys, "table1")
    assert code == 0
    assert out.strip().endswith("table1: PASS")
    code, out, _ = run(capsys, "table1", "--format", "json")
    data = json.loads(out)
    assert data["passed"] and len(data["rows"]) == 13


def test_delta_words_default_surface(capsys):
    code, out, _ = run(capsys, "delta", "--words", "st", "st")
    assert code == 0
    terms = [line for line in out.splitlines() if not line.startswith("#")]
    assert terms == ["1 1 (x) stst", "-2 sstt (x) 1", "-2 st (x) st", "3 stst (x) 1"]


def test_delta_with_pairing(capsys, pairing_file):
    code, out, _ = run(capsys, "divk", "--pairing", pairing_file, "--words", "uvw")
    assert code == 0
    assert out.splitlines()[1:] == ["-1 1 (x) w", "1 w (x) 1"]


def test_delta_with_derivations(capsys, tmp_path):
    f = tmp_path / "f.json"
    f.write_text(json.dumps({"values": {"u": "uvu"}}))
    code, out, _ = run(capsys, "delta", "--generators", "uv", "--derivations", str(f),
                       "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["value"]["terms"] == [["-1", "1 (x) uv"], ["-1", "uv (x) 1"]]


def test_ribbon(capsys, pairing_file):
    code, out, _ = run(capsys, "ribbon", "--graph", "L1", "--pairing", pairing_file,
                       "--words", "uvw")
    assert code == 0
    assert out.splitlines()[1:] == ["1 1 (x) w", "-1 w (x) 1"]


def test_invalid_graph_exit_1(capsys, tmp_path, pairing_file):
    g = tmp_path / "g.json"
    g.write_text(json.dumps({"vertices": [[0, 1]], "edges": [[0, 0]]}))
    code, out, _ = run(capsys, "ribbon", "--graph", str(g), "--pairing", pairing_file,
                       "--words", "uv")
    assert code == 1
    assert "invalid graph" in out


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "fuks", "--k", "1", "--trials", "6")
    assert code == 0 and "fuks: PASS" in out
    code, out, _ = run(capsys, "verify", "ribbon-equivalence", "--k", "2", "--trials", "5",
                       "--format", "json")
    assert code == 0 and json.loads(out)["passed"]


def test_deterministic(capsys):
    first = run(capsys, "verify", "cocycle", "--k", "1", "--trials", "4", "--seed", "3")
    second = run(capsys, "verify", "cocycle", "--k", "1", "--trials", "4", "--seed", "3")
    assert first == second


def test_experiment(capsys):
    code, out, _ = run(capsys, "experiment-symmetric-connection", "--pairs", "ab,ab")
    assert code == 0
    assert out.startswith("delta2(ab, ab)")


@pytest.mark.parametrize("argv", [
    ["verify", "nonsense"],
    ["delta", "--words", "zz"],
    ["delta", "--generators", "uv"],
    ["ribbon", "--graph", "missing.json", "--pairing", "missing.json", "--words", "u"],
])
def test_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert err.startswith("ncdiv: error:")


def test_argparse_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["verify"])
    assert exc.value.code == 2


def test_missing_data_dir(capsys, monkeypatch, tmp_path):
    monkeypatch.setenv("NCDIV_DATA", str(tmp_path))
    code, _, err = run(capsys, "table1")
    assert code == 2 and "not found" in err


def test_malformed_json(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    code, _, err = run(capsys, "delta", "--bracket", str(bad), "--words", "a")
    assert code == 2 and "malformed" in err


def test_entry_point():
    proc = subprocess.run([sys.executable, "-m", "ncdiv.cli", "verify", "fuks", "--k", "1",
                           "--trials", "3"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert "fuks: PASS" in proc.stdout
