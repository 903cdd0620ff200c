import json

import pytest

from cmcompanion.cli import main
from golden import F, H19, H59, as_list


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture()
def files(tmp_path, capsys):
    f = tmp_path / "f.json"
    h = tmp_path / "h19.json"
    assert run(capsys, "synth", "--disc", -8, "--u", 2, "--bound", 25, "--out", f)[0] == 0
    assert run(capsys, "synth", "--disc", -8, "--u", 18, "--bound", 25, "--out", h)[0] == 0
    return tmp_path, f, h


def _coeffs(path):
    return [int(v) for _, v in json.loads(path.read_text())["coeffs"]]


def test_classgroup(capsys):
    code, out, _ = run(capsys, "classgroup", "--disc", -20, "--json")
    data = json.loads(out)
    assert code == 0 and data["h"] == 2 and data["forms"] == [[1, 0, 5], [2, 2, 3]]
    for D in (-8, -7):
        code, out, _ = run(capsys, "classgroup", "--disc", D, "--json")
        assert json.loads(out)["h"] == 1
    assert run(capsys, "classgroup", "--disc", -12)[0] == 2


def test_synth(files, capsys):
    _, f, h = files
    assert _coeffs(f) == as_list(F)
    assert _coeffs(h) == as_list(H19)
    code, out, _ = run(capsys, "synth", "--disc", -8, "--u", 2, "--bound", 10, "--json")
    assert json.loads(out)["nebentypus_conductor"] == 8
    code, _, err = run(capsys, "synth", "--disc", -8, "--u", 3, "--bound", 10)
    assert code == 2 and "psi_inf(-1) != (-1)^3" in err


def test_companion(files, capsys):
    tmp, f, _ = files
    out_path, rep_path = tmp / "c.json", tmp / "rep.json"
    code, out, _ = run(capsys, "companion", "--form", f, "--modulus", 33, "--bound", 25,
                       "--out", out_path, "--report", rep_path, "--json")
    assert code == 0 and json.loads(out)["weight"] == 19
    assert json.loads(rep_path.read_text())["congruence"]["pass"]
    code, out, _ = run(capsys, "companion", "--form", f, "--modulus", 99, "--bound", 25, "--out", out_path)
    assert code == 0 and _coeffs(out_path) == as_list(H59)
    code, _, err = run(capsys, "companion", "--form", f, "--modulus", 25)
    assert code == 2 and "ordinarity" in err


def test_verify(files, capsys):
    tmp, f, h = files
    assert run(capsys, "verify", "--f", f, "--h", h, "--k", 3, "--modulus", 33, "--bound", 25)[0] == 0
    data = json.loads(h.read_text())
    data["coeffs"][16][1] = str(int(data["coeffs"][16][1]) + 1)
    bad = tmp / "bad.json"
    bad.write_text(json.dumps(data))
    code, out, _ = run(capsys, "verify", "--f", f, "--h", bad, "--k", 3, "--modulus", 33, "--bound", 25)
    assert code == 1 and "n = 17" in out
    assert run(capsys, "verify", "--f", f, "--h", tmp / "missing.json", "--k", 3, "--modulus", 33)[0] == 2


def test_thin_wrappers(files, capsys):
    tmp, f, _ = files
    code, out, _ = run(capsys, "weight", "--k", 3, "--modulus", 51)
    assert code == 0 and out.strip() == "31"
    code, out, _ = run(capsys, "weight", "--k", 2, "--p", 5, "--m", 2, "--json")
    assert json.loads(out)["k_prime"] == 20
    code, out, _ = run(capsys, "ordinary", "--form", f, "--p", 17)
    assert code == 0 and out.strip() == "true"
    assert run(capsys, "ordinary", "--form", f, "--p", 5)[0] == 1
    big = tmp / "f500.json"
    run(capsys, "synth", "--disc", -8, "--u", 2, "--bound", 500, "--out", big)
    code, out, _ = run(capsys, "detect-cm", "--form", big, "--disc", -8, "--bound", 500)
    assert code == 0 and out.strip() == "true"
    code, out, _ = run(capsys, "detect-cm", "--form", f, "--disc", -4, "--json")
    assert code == 1 and json.loads(out)["witness"] == 3


def test_residue_pipeline(tmp_path, capsys):
    f, h = tmp_path / "f.json", tmp_path / "h.json"
    assert run(capsys, "synth", "--disc", -23, "--u", 2, "--bound", 80, "--residue-modulus", 13, "--out", f)[0] == 0
    assert run(capsys, "companion", "--form", f, "--modulus", 13, "--bound", 80, "--out", h)[0] == 0
    assert run(capsys, "verify", "--f", f, "--h", h, "--k", 3, "--modulus", 13)[0] == 0
    assert run(capsys, "synth", "--disc", -23, "--u", 2, "--bound", 10)[0] == 2


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as e:
        main(["companion"])
    assert e.value.code == 2
    assert run(capsys, "weight", "--k", 3)[0] == 2
