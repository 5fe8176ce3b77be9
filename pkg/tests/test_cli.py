import json
import subprocess
import sys

import pytest

from eprop.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def write_measure(tmp_path, name, space, points, weights):
    p = tmp_path / name
    p.write_text(json.dumps({"space": space, "points": points, "weights": weights}))
    return str(p)


def test_fm(capsys, tmp_path):
    mu = write_measure(tmp_path, "mu.json", "circle", ["0/1"], ["1/1"])
    nu = write_measure(tmp_path, "nu.json", "circle", ["1/2"], ["1/1"])
    assert run(capsys, "fm", "--mu", mu, "--nu", nu)[:2] == (0, "1.0\n")
    assert run(capsys, "fm", "--mu", mu, "--nu", mu)[:2] == (0, "0.0\n")
    code, out, _ = run(capsys, "fm", "--mu", mu, "--nu", nu, "--witness")
    assert code == 0 and json.loads(out)["points"] == ["0/1", "1/2"]


def test_fm_bad_weight(capsys, tmp_path):
    bad = write_measure(tmp_path, "bad.json", "circle", ["0/1"], ["1/0"])
    code, _, err = run(capsys, "fm", "--mu", bad, "--nu", bad)
    assert code == 2 and "weights[0]" in err


def test_fm_missing_file(capsys, tmp_path):
    code, _, err = run(capsys, "fm", "--mu", str(tmp_path / "none.json"), "--nu", str(tmp_path / "none.json"))
    assert code == 2 and "cannot read" in err


def test_iterate(capsys):
    assert run(capsys, "iterate", "--x", "5/8", "--steps", "3")[:2] == (0, "delta at 0/1 with weight 1/1\n")
    code, out, _ = run(capsys, "iterate", "--example", "ex2", "--x", "-3/2", "--steps", "1", "--emit", "csv")
    assert out == "point,weight\n1/1,1/1\n"
    code, out, _ = run(capsys, "iterate", "--x", "1/3", "--steps", "2", "--emit", "json")
    assert json.loads(out)["weights"] == ["1/2", "1/2"]


def test_iterate_rejects_points_off_the_space(capsys):
    assert run(capsys, "iterate", "--example", "ex2", "--x", "-1/2")[0] == 2
    assert run(capsys, "iterate", "--x", "3/2")[0] == 2


def test_eprobe_modulus(capsys):
    code, out, _ = run(capsys, "eprobe", "--z", "1/2", "--mmax", "3", "--nmax", "8", "--emit", "json")
    assert code == 0
    assert [e["modulus"] for e in json.loads(out)["approach"]] == ["0.5"] * 3
    code, out, _ = run(
        capsys, "eprobe", "--example", "ex2", "--z", "0", "--f", "coord", "--approach", "halving", "--nmax", "16", "--emit", "json"
    )
    assert [e["modulus"] for e in json.loads(out)["approach"]] == ["1.0"] * 8


def test_eprobe_witness(capsys):
    code, out, _ = run(capsys, "eprobe", "--z", "7/8", "--mode", "witness", "--mmax", "2")
    assert out == "n,value\n1,1/8\n2,1/8\n"
    code, out, _ = run(
        capsys, "eprobe", "--example", "ex2", "--depth", "3", "--z", "-2", "--f", "coord", "--mode", "witness"
    )
    assert out == "x,T,n0,value\n-123/64,1/3,1,2/3\n"


def test_eprobe_non_dyadic_approach_fails(capsys):
    code, _, err = run(capsys, "eprobe", "--z", "1/3", "--approach", "dyadic")
    assert code == 2 and "dyadic" in err


def test_stability(capsys):
    code, out, _ = run(capsys, "stability", "--x", "1/2", "--nmax", "2")
    assert out == "n,distance\n0,1.0\n1,0.0\n2,0.0\n"


def test_basin(capsys):
    code, out, _ = run(
        capsys, "basin", "--example", "ex2", "--f", "coord", "--center", "3/4", "--radius", "1/8", "--eps", "1e-6", "--n-from", "5", "--nmax", "10"
    )
    assert code == 0 and json.loads(out)["ok"] is True


def test_svc_and_t_eval(capsys):
    code, out, _ = run(capsys, "svc", "--depth", "1")
    assert json.loads(out)["levels"][1]["removed"] == [["-13/8", "-11/8"]]
    code, out, _ = run(capsys, "svc", "--depth", "1", "--emit", "csv")
    assert "1,removed,1,-13/8,-11/8" in out
    code, out, _ = run(capsys, "t-eval", "--x", "-3/2")
    rep = json.loads(out)
    assert (rep["value"], rep["status"], rep["level"]) == ("1/1", "removed", 1)
    assert run(capsys, "t-eval", "--x", "0")[0] == 2
    assert run(capsys, "svc", "--depth", "0")[0] == 2


def test_lipapprox(capsys):
    code, out, _ = run(capsys, "lipapprox", "--grid", "200", "--r", "0.05", "--eps", "0.1", "--sample", "5", "--seed", "3")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "x,f,L,bound" and len(lines) == 6
    assert run(capsys, "lipapprox", "--grid", "200", "--r", "0.5", "--eps", "0.05")[0] == 2


def test_remark1(capsys):
    assert run(capsys, "remark1", "--m", "3")[:2] == (0, "1.0\n")
    assert run(capsys, "remark1", "--z", "1/3", "--m", "10")[:2] == (0, "1.0\n")


def test_out_file(capsys, tmp_path):
    out = tmp_path / "r.txt"
    assert run(capsys, "remark1", "--m", "2", "--out", str(out))[:2] == (0, "")
    assert out.read_text() == "1.0\n"


def test_console_runs_are_byte_identical():
    cmd = [sys.executable, "-m", "eprop.cli", "eprobe", "--z", "1/3", "--approach", "truncation", "--nmax", "12"]
    first = subprocess.run(cmd, capture_output=True, check=True).stdout
    second = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert first == second and first.startswith(b"m,x,n,value,modulus\n")
