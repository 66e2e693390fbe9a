from __future__ import annotations

import json
import subprocess
import sys

import pytest

from c13tamagawa.cli import main


def test_curve_e2(capsys):
    assert main(["curve", "--t", "2"]) == 0
    out = capsys.readouterr().out.strip().splitlines()
    assert out[-1] == "c_E = 169, v13(c_E) = 2"
    assert "Q(sqrt(17))" in out[1]


def test_curve_json(capsys):
    assert main(["curve", "--t", "-1/2", "--json"]) == 0
    rec = json.loads(capsys.readouterr().out)
    assert rec["t"] == "-1/2" and rec["v13"] == 4 and rec["flags"] == "ok"


def test_curve_degenerate(capsys):
    assert main(["curve", "--t", "0"]) == 0
    assert "degenerate" in capsys.readouterr().out


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["curve", "--t", "x"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == 2
    assert main(["sweep", "--max-height", "0"]) == 2
    assert main(["search-v13-4"]) == 2
    assert main(["verify-parity", "--in", "/nonexistent/file.jsonl"]) == 2


def test_sweep_then_verify(tmp_path, capsys):
    out = tmp_path / "h5.jsonl"
    assert main(["sweep", "--max-height", "5", "--out", str(out)]) == 0
    assert main(["verify-parity", "--in", str(out)]) == 0
    assert main(["unique-v13-2", "--in", str(out)]) == 0
    text = capsys.readouterr().out
    assert "parity:" in text and "PASS" in text


def test_verify_detects_corruption(tmp_path, capsys):
    out = tmp_path / "h2.jsonl"
    assert main(["sweep", "--max-height", "2", "--out", str(out)]) == 0
    lines = out.read_text().splitlines()
    rec = json.loads(lines[0])
    rec["v13"] = 3
    lines[0] = json.dumps(rec)
    out.write_text("\n".join(lines) + "\n")
    assert main(["verify-parity", "--in", str(out)]) == 1


def test_search_special(capsys):
    assert main(["search-v13-4", "--special189"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert len(lines) == 6 and all("v13 = 4" in line for line in lines)


def test_selftest(capsys):
    assert main(["selftest"]) == 0
    assert "FAIL" not in capsys.readouterr().out


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "c13tamagawa", "curve", "--t", "1/2"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.strip().endswith("c_E = 169, v13(c_E) = 2")


def test_env_budget(monkeypatch, capsys):
    monkeypatch.setenv("C13_FACTOR_BUDGET", "5000")
    assert main(["curve", "--t", "3"]) == 0
    assert capsys.readouterr().out.strip().endswith("v13(c_E) = 4")
