import json
import os
import subprocess
import sys

import pytest

from rvdw.cli import run_command


def run(args, capsys):
    code = run_command(args)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_enumerate(capsys):
    code, out, _ = run(["enumerate", "--n", "5", "--q", "3"], capsys)
    assert code == 0
    assert out.splitlines() == ["first,diff,length", "1,1,3", "1,2,3", "2,1,3", "3,1,3"]


def test_decide_exit_codes(capsys):
    code, out, _ = run(["decide", "--n", "9", "--lengths", "3,3"], capsys)
    assert code == 20 and json.loads(out)["payload"]["decision"] == "not_colorable"
    code, out, _ = run(["decide", "--n", "8", "--lengths", "3,3"], capsys)
    env = json.loads(out)
    assert code == 0 and env["exit_status"] == 0 and env["payload"]["coloring"] is not None
    assert env["tool"] == "rvdw" and env["mode"] == "decide"
    code, _, _ = run(["decide", "--n", "60", "--lengths", "3,3", "--budget", "1"], capsys)
    assert code == 30


def test_decide_random_and_explicit(capsys):
    code, out, _ = run(["decide", "--n", "100", "--lengths", "4,3", "--c", "0.5", "--seed", "3"], capsys)
    assert code in (0, 20)
    code2, out2, _ = run(["decide", "--n", "100", "--lengths", "4,3", "--c", "0.5", "--seed", "3"], capsys)
    assert json.loads(out)["payload"] == json.loads(out2)["payload"]
    code, out, _ = run(["decide", "--n", "10", "--lengths", "3,3", "--elements", "1,2,3"], capsys)
    assert code == 0


@pytest.mark.parametrize("argv", [
    ["decide", "--bogus"],
    ["decide", "--n", "9"],
    ["decide", "--n", "9", "--lengths", "3,4"],
    ["decide", "--n", "9", "--lengths", "3,3", "--p", "0.5", "--c", "1"],
    ["decide", "--n", "9", "--lengths", "3,3", "--p", "1.5"],
    ["decide", "--n", "9", "--lengths", "3,3", "--elements", "0,3"],
    ["isolate", "--n", "9", "--lengths", "3,3"],
    ["sweep", "--ns", "64", "--lengths", "3,3", "--cs", "1", "--trials", "0"],
    [],
])
def test_usage_errors(argv, capsys):
    code, _, err = run(argv, capsys)
    assert code == 2


def test_certify_verify_round_trip(tmp_path, capsys):
    cert = tmp_path / "c.json"
    code, _, _ = run(["certify", "--n", "9", "--lengths", "3,3", "--out", str(cert)], capsys)
    assert code == 0 and cert.exists()
    code, out, _ = run(["verify", "--cert", str(cert)], capsys)
    assert code == 0 and json.loads(out)["valid"] is True
    raw = json.loads(cert.read_text())
    raw["edges"] = raw["edges"][:1]
    raw["auxiliary"] = {k: v for k, v in raw["auxiliary"].items()}
    if "path" in raw["auxiliary"]:
        raw["auxiliary"]["path"] = raw["auxiliary"]["path"][:1]
    cert.write_text(json.dumps(raw))
    code, out, _ = run(["verify", "--cert", str(cert)], capsys)
    assert code == 20 and json.loads(out)["valid"] is False
    # colourable input: no certificate, decision exit code
    code, out, _ = run(["certify", "--n", "8", "--lengths", "3,3"], capsys)
    assert code == 0 and json.loads(out)["payload"]["certificate"] is None


def test_census_and_isolate(capsys):
    code, out, _ = run(["census", "--n", "40", "--lengths", "3,3", "--p", "0.3", "--max-len", "3"], capsys)
    assert code == 0 and "special_cycles" in json.loads(out)["payload"]
    code, out, _ = run(["isolate", "--n", "4096", "--lengths", "4,3", "--c", "0.5"], capsys)
    payload = json.loads(out)["payload"]
    assert code == 0 and payload["delta"] == pytest.approx(1 / 16)


def test_sweep_config_file_and_plot(tmp_path, capsys):
    cfg = tmp_path / "run.ini"
    cfg.write_text("[DEFAULT]\nseed = 11\n\n[sweep]\nns = 64,128\nlengths = 3,3\ncs = 0.5,4\ntrials = 8\n")
    csv1, csv2 = tmp_path / "a.csv", tmp_path / "b.csv"
    details = tmp_path / "d.json"
    assert run(["sweep", "--config", str(cfg), "--out", str(csv1), "--details", str(details)], capsys)[0] == 0
    assert run(["sweep", "--config", str(cfg), "--out", str(csv2), "--workers", "2"], capsys)[0] == 0
    assert csv1.read_bytes() == csv2.read_bytes()
    lines = csv1.read_text().splitlines()
    assert lines[0].startswith("n,q1,q2,r,c,p") and len(lines) == 5
    assert all(line.endswith(",11") for line in lines[1:])
    assert len(json.loads(details.read_text())) == 4
    # flags override the file
    code, out, _ = run(["sweep", "--config", str(cfg), "--trials", "2", "--ns", "64"], capsys)
    assert code == 0 and len(out.splitlines()) == 3 and ",2," in out.splitlines()[1]
    svg = tmp_path / "p.svg"
    assert run(["plot", "--csv", str(csv1), "--out", str(svg)], capsys)[0] == 0
    assert svg.read_text().startswith("<svg")
    bad = tmp_path / "bad.ini"
    bad.write_text("[sweep]\nfrobnicate = 1\n")
    assert run(["sweep", "--config", str(bad)], capsys)[0] == 2


def test_console_script_entry_point():
    out = subprocess.run([sys.executable, "-m", "rvdw.cli", "decide", "--n", "9", "--lengths", "3,3"],
                         capture_output=True, text=True)
    assert out.returncode == 20
    out = subprocess.run([sys.executable, "-m", "rvdw.cli", "--version"], capture_output=True, text=True)
    assert out.returncode == 0 and "rvdw" in out.stdout
