import csv
import io
import json
import math
import subprocess
import sys

import pytest

from hardylorentz.cli import main

W3 = 4 * math.pi / 3


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_norm_psi_weak(capsys):
    code, out, _ = run(capsys, "norm", "--builtin", "psi", "--n", "3", "--p", "2", "--q", "inf",
                       "--which", "target")
    assert code == 0
    row = rows(out)[0]
    assert float(row["value"]) == pytest.approx(W3 ** (1 / 6), rel=1e-14)
    assert row["q"] == "inf"


def test_norm_json(capsys):
    code, out, _ = run(capsys, "norm", "--builtin", "cap", "--q", "4", "--which", "gradient",
                       "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["which"] == "gradient" and data["q"] == 4.0 and data["value"] > 0


def test_sweep(capsys):
    code, out, _ = run(capsys, "sweep", "--n", "3", "--p", "2", "--q", "4",
                       "--eps", "1e-2,1e-4,1e-6")
    assert code == 0
    data = rows(out)
    assert len(data) == 3
    errs = [float(r["rel_err"]) for r in data]
    assert errs[0] > errs[1] > errs[2]
    assert float(data[0]["limit"]) == pytest.approx(W3 ** (1 / 3) / 2, rel=1e-15)


def test_hardy_cap(capsys):
    code, out, _ = run(capsys, "hardy", "--builtin", "cap", "--n", "3", "--p", "2")
    assert code == 0
    row = rows(out)[0]
    assert float(row["ratio"]) == pytest.approx(0.25, abs=1e-10)
    assert row["holds"] == "true" and row["inequality_id"] == "H_p"


def test_embed_v_eps(capsys):
    code, out, _ = run(capsys, "embed", "--builtin", "v_eps:0.1", "--q", "4")
    assert code == 0
    assert rows(out)[0]["holds"] == "true"


def test_attain_weak_and_strong(capsys):
    code, out, _ = run(capsys, "attain")
    assert code == 0
    assert all(abs(float(r["margin"])) < 1e-8 for r in rows(out))
    code, out, _ = run(capsys, "attain", "--q", "4")
    assert code == 0
    assert all(float(r["margin"]) > 0 for r in rows(out))


def test_profile_inline_and_file(capsys, tmp_path):
    text = json.dumps({"segments": [{"c": -1, "alpha": 1, "d": 1, "lo": 0, "hi": 1},
                                    {"c": 0, "alpha": 0, "d": 0, "lo": 1, "hi": "inf"}]})
    code, out_inline, _ = run(capsys, "hardy", "--profile", text)
    assert code == 0
    path = tmp_path / "cap.json"
    path.write_text(text)
    code, out_file, _ = run(capsys, "hardy", "--profile", str(path))
    assert code == 0 and out_file == out_inline


def test_out_file(capsys, tmp_path):
    target = tmp_path / "report.csv"
    code, out, _ = run(capsys, "hardy", "--builtin", "cap", "--out", str(target))
    assert code == 0 and out == ""
    assert rows(target.read_text())[0]["holds"] == "true"


@pytest.mark.parametrize("argv", [
    ["norm", "--builtin", "nope"],
    ["norm", "--builtin", "psi", "--q", "0.5"],
    ["norm", "--builtin", "psi", "--q", "abc"],
    ["norm", "--builtin", "psi", "--p", "3"],
    ["norm", "--builtin", "v_eps:0.9"],
    ["sweep", "--q", "inf"],
    ["sweep", "--q", "4", "--eps", "x"],
    ["hardy", "--builtin", "cap", "--p", "1"],
    ["norm"],
    ["frobnicate"],
])
def test_usage_errors(capsys, argv):
    with pytest.raises(SystemExit) as info:
        sys.exit(main(argv))
    assert info.value.code == 1


def test_malformed_profile_names_segment(capsys):
    bad = json.dumps({"segments": [{"c": 1, "alpha": -0.5, "d": 0, "lo": 0, "hi": 1},
                                   {"c": 0, "alpha": 0, "d": 1, "lo": 2, "hi": 3}]})
    code, _, err = run(capsys, "norm", "--profile", bad)
    assert code == 1
    assert "(segment 1)" in err


def test_missing_file(capsys, tmp_path):
    code, _, err = run(capsys, "norm", "--profile", str(tmp_path / "absent.json"))
    assert code == 1 and "cannot read" in err


def test_divergence_exit(capsys):
    code, out, err = run(capsys, "norm", "--builtin", "psi", "--q", "4")
    assert code == 2 and out == "" and "divergent" in err
    code, _, err = run(capsys, "embed", "--builtin", "psi", "--q", "4")
    assert code == 2 and "[lhs]" in err


def test_violation_exit(capsys, monkeypatch):
    from hardylorentz import checks

    monkeypatch.setattr(checks, "run_all",
                        lambda: [checks.CheckResult("forced", False, 1, "bad")])
    code, out, _ = run(capsys, "props")
    assert code == 3
    assert rows(out)[0]["passed"] == "false"


def test_deterministic_output(capsys):
    first = run(capsys, "embed", "--builtin", "v_eps:0.05", "--q", "3", "--format", "json")
    second = run(capsys, "embed", "--builtin", "v_eps:0.05", "--q", "3", "--format", "json")
    assert first == second
    value = json.loads(first[1])["ratio"]
    assert repr(value) in first[1] or ("%.17g" % value) in first[1]


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "hardylorentz", "hardy", "--builtin", "cap"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert rows(proc.stdout)[0]["ratio"].startswith("0.2500000000")
