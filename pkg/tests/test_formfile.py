import json

import pytest

from cmcompanion.classgroup import class_group
from cmcompanion.formfile import FormFile, FormFileError, from_expansion, read_form, write_form
from cmcompanion.heckechar import hecke_char_new, trivial_finite_type
from cmcompanion.qexpansion import synthesize
from cmcompanion.quadfield import QuadField
from cmcompanion.residue import residue_system


def _roundtrip(F, tmp_path):
    path = tmp_path / "form.json"
    ff = write_form(path, F)
    back = read_form(path)
    assert back == ff
    assert FormFile.loads(back.dumps()) == back
    return back


def test_roundtrip_large_integers(K8, tmp_path):
    h59 = synthesize(hecke_char_new(K8, trivial_finite_type(K8), 58, class_group(K8)), 25)
    back = _roundtrip(h59, tmp_path)
    G = back.expansion()
    assert G.coeffs == h59.coeffs
    assert G[25] == 34694469519536141888238489627838134765625
    text = (tmp_path / "form.json").read_text()
    assert '"34694469519536141888238489627838134765625"' in text and "e+" not in text


def test_roundtrip_character(psi20, tmp_path):
    F = synthesize(hecke_char_new(psi20.K, psi20.finite_type, 2, psi20.class_group, [1]), 50)
    back = _roundtrip(F, tmp_path)
    psi = back.character()
    assert psi.d == (1,) and synthesize(psi, 50).coeffs == F.coeffs


def test_roundtrip_residue(tmp_path):
    K = QuadField.from_disc(-23)
    psi = hecke_char_new(K, trivial_finite_type(K), 2, class_group(K, coprime_to=13), [1])
    S = residue_system(K, 13, class_exponent=3)
    F = synthesize(psi, 40, S)
    back = _roundtrip(F, tmp_path)
    G = back.expansion()
    assert G.ring == S and all(a == b for a, b in zip(G.coeffs, F.coeffs))


def test_deterministic_output(f25, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    write_form(a, f25)
    write_form(b, f25)
    assert a.read_bytes() == b.read_bytes()


def test_rejects_bad_files(f25, tmp_path):
    data = from_expansion(f25).to_json()
    bad = dict(data, schema_version=2)
    with pytest.raises(FormFileError):
        FormFile.from_json(bad)
    bad = dict(data, coeffs=data["coeffs"][:-1])
    with pytest.raises(FormFileError):
        FormFile.from_json(bad)
    p = tmp_path / "junk.json"
    p.write_text("{not json")
    with pytest.raises(FormFileError):
        read_form(p)
    no_char = dict(data, finite_type=None)
    with pytest.raises(FormFileError):
        FormFile.from_json(json.loads(json.dumps(no_char))).character()
