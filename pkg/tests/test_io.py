import json

import pytest

from conftest import cleft_corpus, group_example, valid_systems
from homhopf import io
from homhopf.linalg import GF


def roundtrip(doc, tmp_path, name="doc.json"):
    p = tmp_path / name
    io.write(doc, p)
    return io.load(p)


def test_hopf_roundtrip(tmp_path, s3a3):
    h = s3a3.group_algebra
    kind, back = roundtrip(io.hopf_doc(h), tmp_path)
    assert kind == "hom_hopf"
    assert back.algebra.mult == h.algebra.mult
    assert back.coalgebra.comult == h.coalgebra.comult
    assert back.antipode == h.antipode
    assert back.space.labels == h.space.labels


def test_algebra_roundtrip(tmp_path, s3a3):
    kind, back = roundtrip(io.algebra_doc(s3a3.algebra), tmp_path)
    assert kind == "hom_algebra"
    assert back.mult == s3a3.algebra.mult and back.unit == s3a3.algebra.unit


@pytest.mark.parametrize("name", sorted(valid_systems()))
def test_crossed_roundtrip(tmp_path, name):
    s = valid_systems()[name]
    kind, back = roundtrip(io.crossed_doc(s), tmp_path)
    assert kind == "crossed_system"
    assert back.action.act == s.action.act
    assert back.sigma == s.sigma
    assert back.hopf.alpha == s.hopf.alpha


def test_cleft_roundtrip_with_references(tmp_path, s3a3):
    io.write(io.hopf_doc(s3a3.hopf), tmp_path / "hopf.json")
    io.write(io.hopf_doc(s3a3.group_algebra), tmp_path / "ga.json")
    io.write(io.comodule_doc(s3a3.comodule, "hopf.json", "ga.json"), tmp_path / "comod.json")
    io.write(io.cleft_doc(s3a3.cleft, "comod.json"), tmp_path / "cleft.json")
    kind, cd = io.load(tmp_path / "cleft.json")
    assert kind == "cleft"
    assert cd.gamma == s3a3.cleft.gamma
    assert cd.comod.rho == s3a3.comodule.rho


def test_group_roundtrip(tmp_path):
    hg = group_example("Q8/Z rot").hom_group
    kind, back = roundtrip(io.group_doc(hg), tmp_path)
    assert kind == "group"
    assert back.group.table == hg.group.table and back.auto == hg.auto


def test_cleft_corpus_entry_roundtrip(tmp_path):
    cd = cleft_corpus()["identity:Z3 inv"]
    kind, back = roundtrip(io.cleft_doc(cd), tmp_path)
    assert back.gamma == cd.gamma and back.gamma_inv == cd.gamma_inv


def test_dumps_is_deterministic(s3a3):
    a = io.dumps(io.crossed_doc(s3a3.system))
    b = io.dumps(io.crossed_doc(s3a3.system))
    assert a == b and a.endswith("\n")
    assert json.loads(a)["schema_version"] == io.SCHEMA_VERSION


def test_field_override(tmp_path, s3a3):
    p = tmp_path / "h.json"
    io.write(io.hopf_doc(s3a3.hopf), p)
    _, h = io.load(p, GF(5))
    assert h.field == GF(5)


def test_kind_inferred_from_keys():
    assert io.document_kind({"table": []}) == "group"
    assert io.document_kind({"mult": 0}) == "hom_algebra"
    assert io.document_kind({"mult": 0, "comult": 0, "antipode": 0}) == "hom_hopf"
    with pytest.raises(io.ParseError):
        io.document_kind({"foo": 1})


# -- errors -----------------------------------------------------------------

def test_empty_basis(tmp_path, s3a3):
    doc = io.algebra_doc(s3a3.algebra)
    doc["basis"] = []
    p = tmp_path / "empty.json"
    io.write(doc, p)
    with pytest.raises(io.ParseError) as err:
        io.load(p)
    assert err.value.where == f"{p}:basis"


def test_invalid_json(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{\n  nope")
    with pytest.raises(io.ParseError, match="line 2"):
        io.load_document(p)


def test_missing_file(tmp_path):
    with pytest.raises(io.ParseError):
        io.load(tmp_path / "absent.json")


def test_missing_field(tmp_path, s3a3):
    doc = io.algebra_doc(s3a3.algebra)
    del doc["unit"]
    p = tmp_path / "a.json"
    io.write(doc, p)
    with pytest.raises(io.ParseError, match="unit"):
        io.load(p)


def test_wrong_shape_names_location(tmp_path, s3a3):
    doc = io.algebra_doc(s3a3.algebra)
    doc["alpha"] = doc["alpha"][:-1]
    p = tmp_path / "a.json"
    io.write(doc, p)
    with pytest.raises(io.ParseError, match="alpha"):
        io.load(p)
