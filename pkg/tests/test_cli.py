import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from oagspine.cli import main

GOLDEN = Path(__file__).parent / "golden"
GROUPS = ("Z", "Q", "ZZ", "QZ", "xi", "omega_const", "omega_growing", "multrat")

CASES = {"check_roster": ["check", "@roster"]}
for g in GROUPS:
    CASES[f"describe_{g}"] = ["describe", "@roster", g]
    CASES[f"distal_{g}"] = ["distal", "@roster", g, "--acgz"]
    for p in (2, 3):
        CASES[f"spine_{g}_{p}"] = ["spine", "@roster", g, "--prime", str(p)]
CASES.update(
    {
        "spine_xi_2pow2": ["spine", "@roster", "xi", "--prime", "2", "--pow", "2"],
        "sval_zz": ["sval", "@roster", "ZZ", "--n", "2", "--elem", "{a=3, b=4}"],
        "sval_xi": ["sval", "@roster", "xi", "--n", "4", "--elem", "{a=4, b=2}"],
        "tval_omega": ["tval", "@roster", "omega_const", "--prime", "2", "--elem", "{tail[3]=2, head=1}"],
        "eval_modeq": ["eval", "@roster", "Z", "--formula", "modeq(2,1; x)", "--let", "x={a=5}"],
        "eval_sp": [
            "eval", "@roster", "ZZ", "--formula", "sp(2^1,x) < sp(2^1,y)", "--let", "x={a=1}", "--let", "y={b=1}",
        ],
        "eval_d": ["eval", "@roster", "xi", "--formula", "D(2,1,3; x) and not tp(2, x) = tplus(2, x)", "--let", "x={b=2}"],
        "verify_isosceles": ["verify", "--lemma", "isosceles", "--seed", "42", "--iters", "25"],
        "verify_group": ["verify", "--group", "ZZ", "--seed", "1", "--iters", "10"],
    }
)


def run(capsys, argv):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("name", sorted(CASES))
def test_golden_jsonl(capsys, name):
    code, out, _ = run(capsys, ["--format", "jsonl"] + CASES[name])
    assert code == 0
    for line in out.splitlines():
        rec = json.loads(line)
        assert all(k == k.lower() for k in rec)
    path = GOLDEN / f"{name}.jsonl"
    if os.environ.get("OAG_REGEN_GOLDEN") == "1":
        path.write_text(out, encoding="utf-8")
    assert out == path.read_text(encoding="utf-8")


def test_spec_examples(capsys):
    _, out, _ = run(capsys, ["--format", "jsonl"] + CASES["spine_xi_2"])
    rec = json.loads(out)
    assert [e["size"] for e in rec["entries"]] == ["2", "4", "inf"]
    _, out, _ = run(capsys, ["--format", "jsonl"] + CASES["spine_omega_growing_2"])
    assert json.loads(out)["entries"][0]["law"] == "2^(i+1)"
    _, out, _ = run(capsys, ["--format", "jsonl"] + CASES["spine_Q_2"])
    assert json.loads(out)["entries"] == []
    for case, expected in (("eval_modeq", True), ("eval_sp", True)):
        _, out, _ = run(capsys, ["--format", "jsonl"] + CASES[case])
        assert json.loads(out)["value"] is expected


def test_exit_codes(capsys, tmp_path):
    bad = tmp_path / "bad.oag"
    bad.write_text("group g { segment a : MultPrimes(0); }")
    code, _, err = run(capsys, ["check", str(bad)])
    assert code == 2 and "k must be >= 1" in err and "^" in err
    assert run(capsys, ["check", str(tmp_path / "missing.oag")])[0] == 3
    assert run(capsys, ["spine", "@roster", "nope", "--prime", "2"])[0] == 2
    assert run(capsys, ["spine", "@roster", "Z", "--prime", "4"])[0] == 2
    assert run(capsys, ["distal", "@roster", "nope"])[0] == 2
    code, _, err = run(capsys, ["eval", "@roster", "Z", "--formula", "keq(0; x)", "--let", "x={a=1}"])
    assert code == 2 and "^" in err
    assert run(capsys, ["eval", "@roster", "Z", "--formula", "x < y", "--let", "x={a=1}"])[0] == 2
    assert run(capsys, ["eval", "@roster", "Z", "--formula", "x <", "--let", "x={a=1}"])[0] == 2
    assert run(capsys, ["eval", "@roster", "Z", "--formula", "x = x", "--let", "x={a=1/2}"])[0] == 2
    assert run(capsys, ["verify", "--lemma", "bogus"])[0] == 2
    assert run(capsys, ["verify", str(tmp_path / "missing.oag")])[0] == 3
    assert run(capsys, ["frobnicate"])[0] == 2


def test_verify_failure_exit_code(capsys, monkeypatch):
    from oagspine import laws as L

    monkeypatch.setattr(L, "s_val", lambda n, a: L.EMPTY)
    code, out, _ = run(capsys, ["--format", "jsonl", "verify", "--lemma", "oracle_sval", "--group", "ZZ", "--iters", "50"])
    assert code == 1
    rec = json.loads(out)
    assert rec["status"] == "fail" and "counterexample" in rec


def test_user_spec_file(capsys, tmp_path):
    spec = tmp_path / "g.oag"
    spec.write_text("group h { segment a : MultPrimes(3); segment b : omega Q; }\n")
    assert run(capsys, ["check", str(spec)])[0] == 0
    code, out, _ = run(capsys, ["--format", "jsonl", "spine", str(spec), "h", "--prime", "5"])
    assert code == 0 and json.loads(out)["entries"] == [{"cut": "below(a)", "size": "125"}]


def test_human_output_no_color(capsys, monkeypatch):
    monkeypatch.setenv("OAG_COLOR", "0")
    code, out, _ = run(capsys, ["distal", "@roster", "multrat"])
    assert code == 0 and "\033[" not in out and "not distal" in out


def test_modeq_warning_on_stderr(capsys):
    code, out, err = run(capsys, ["eval", "@roster", "Z", "--formula", "modeq(2, 3; x)", "--let", "x={a=5}"])
    assert code == 0 and "normalized" in err and "true" in out


def test_console_script_subprocess():
    proc = subprocess.run(
        [sys.executable, "-m", "oagspine.cli", "--format", "jsonl", "distal", "@roster", "Z"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout) == {"group": "Z", "distal": True, "witness": None}
