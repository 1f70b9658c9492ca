import json

import pytest
from click.testing import CliRunner

from homhopf import corpus, io
from homhopf.cli import main
from homhopf.homgroup import HomGroup, catalog_group, hom_group_algebra
from homhopf.linalg import QQ


def run(*args):
    return CliRunner().invoke(main, [str(a) for a in args])


def machine(*args):
    res = run(*args, "--format", "machine")
    return res.exit_code, json.loads(res.output)


@pytest.fixture(scope="module")
def s3dir(tmp_path_factory):
    d = tmp_path_factory.mktemp("s3")
    assert run("example", "S3/A3 conj:(12)", "--out", d).exit_code == 0
    return d


def write(tmp_path, doc, name="doc.json"):
    p = tmp_path / name
    io.write(doc, p)
    return p


# -- verify -------------------------------------------------------------------

def test_verify_s3_group_algebra(s3dir):
    res = run("verify", s3dir / "group_algebra.json")
    assert res.exit_code == 0
    assert res.output.rstrip().endswith("PASS")


def test_verify_group_file(s3dir):
    code, doc = machine("verify", s3dir / "group.json", "--anti")
    assert code == 0
    assert [r["structure"] for r in doc["reports"]] == ["hom_group", "group_algebra"]


def test_verify_broken_coassociativity(tmp_path):
    doc = io.hopf_doc(hom_group_algebra(HomGroup(catalog_group("Z3"), (0, 1, 2)), QQ))
    doc["comult"][1] = [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "0"]]
    p = write(tmp_path, doc)
    res = run("verify", p)
    assert res.exit_code == 1
    assert "[FAIL] coalgebra.hom_coassociativity  at (1)" in res.output


def test_verify_empty_basis(tmp_path, s3a3):
    doc = io.algebra_doc(s3a3.algebra)
    doc["basis"] = []
    p = write(tmp_path, doc)
    code, out = machine("verify", p)
    assert code == 1
    assert out["errors"][0]["error"] == "ParseError"
    assert f"{p}:basis" in out["errors"][0]["message"]


def test_verify_shape_error_has_location(tmp_path, s3a3):
    doc = io.algebra_doc(s3a3.algebra)
    doc["mult"] = doc["mult"][:1]
    p = write(tmp_path, doc)
    res = run("verify", p)
    assert res.exit_code == 1
    assert f"{p}:mult" in res.output


def test_verify_over_finite_field(s3dir):
    code, doc = machine("verify", s3dir / "group_algebra.json", "--field", "Fp:7")
    assert code == 0
    assert doc["field"] == {"Fp": 7}


def test_bad_field_option(s3dir):
    res = run("verify", s3dir / "group_algebra.json", "--field", "Fp:6")
    assert res.exit_code == 2


# -- crossed ------------------------------------------------------------------

def test_crossed_s3(s3dir, tmp_path):
    code, doc = machine("crossed", s3dir / "system.json", "--out", tmp_path)
    assert code == 0
    assert doc["facts"]["verdicts_agree"] is True
    assert doc["facts"]["product_dim"] == 6
    kind, prod = io.load(tmp_path / "crossed_product.json")
    assert kind == "hom_algebra" and prod.dim == 6


@pytest.fixture(scope="module")
def orbit(tmp_path_factory):
    d = tmp_path_factory.mktemp("orbit")
    assert run("example", "mutant-sigma-orbit", "--out", d).exit_code == 0
    return d / "system.json"


def test_crossed_broken_cocycle_without_force(orbit, tmp_path):
    code, doc = machine("crossed", orbit, "--out", tmp_path)
    assert code == 1
    assert doc["errors"][0]["error"] == "ConditionsViolated"
    assert not (tmp_path / "crossed_product.json").exists()


def test_crossed_broken_cocycle_with_force(orbit, tmp_path):
    code, doc = machine("crossed", orbit, "--out", tmp_path, "--force")
    assert code == 1
    assert (tmp_path / "crossed_product.json").exists()
    prod = next(r for r in doc["reports"] if r["structure"] == "crossed_product")
    bad = [r for r in prod["axioms"] if not r["passed"]]
    assert bad[0]["axiom"] == "hom_associativity"
    assert len(bad[0]["counterexample"]) == 3


def test_crossed_rejects_other_kinds(s3dir):
    code, doc = machine("crossed", s3dir / "hopf.json")
    assert code == 1 and doc["errors"][0]["error"] == "ParseError"


# -- cleft --------------------------------------------------------------------

def test_cleft_s3(s3dir, tmp_path):
    code, doc = machine("cleft", s3dir / "cleft.json", "--out", tmp_path)
    assert code == 0
    assert doc["facts"]["coinvariant_dim"] == 3
    kind, s = io.load(tmp_path / "crossed_system.json")
    assert kind == "crossed_system" and s.sigma == corpus.group_example("S3/A3 conj:(12)").system.sigma


def test_cleft_normalization_missing(tmp_path):
    cd = corpus.identity_cleft("Z2", "id")
    doc = io.cleft_doc(cd)
    doc["gamma"] = [["0", "1"], ["1", "0"]]
    code, out = machine("cleft", write(tmp_path, doc))
    assert code == 1
    assert out["errors"][0]["error"] == "NormalizationMissing"


# -- galois -------------------------------------------------------------------

def test_galois_classical_z2(tmp_path):
    p = write(tmp_path, io.comodule_doc(corpus.identity_cleft("Z2", "id").comod))
    code, doc = machine("galois", p)
    assert code == 0
    assert doc["facts"]["bijective"] is True
    assert doc["facts"]["phi_rank"] == 4
    assert doc["seed"] == 0


def test_galois_accepts_cleft_file(s3dir):
    code, doc = machine("galois", s3dir / "cleft.json", "--seed", 17)
    assert code == 0
    assert doc["facts"]["relative_tensor_dim"] == 12
    assert doc["seed"] == 17


def test_galois_same_seed_same_bytes(s3dir):
    a = run("galois", s3dir / "comodule.json", "--seed", 5, "--format", "machine").output
    b = run("galois", s3dir / "comodule.json", "--seed", 5, "--format", "machine").output
    assert a == b


# -- roundtrip ----------------------------------------------------------------

@pytest.mark.parametrize("fname", ["system.json", "cleft.json"])
def test_roundtrip_s3(s3dir, fname):
    code, doc = machine("roundtrip", s3dir / fname)
    assert code == 0
    assert doc["facts"]["isomorphisms_confirmed"] == 3
    assert [r["structure"] for r in doc["reports"]] == [
        "crossed_cleft_crossed", "cleft_crossed_cleft", "galois_cleft_crossed"]


def test_roundtrip_refuses_mutant(orbit):
    code, doc = machine("roundtrip", orbit)
    assert code == 1
    assert doc["errors"][0]["error"] == "ConditionsViolated"


# -- example ------------------------------------------------------------------

def test_example_z4_inversion_has_no_section(tmp_path):
    code, doc = machine("example", "Z4/{0,2} inv", "--out", tmp_path)
    assert code == 1
    assert doc["errors"][0]["error"] == "NoSection"
    assert doc["errors"][0]["searched"] == ["[1]"]


def test_example_z2_is_classical(tmp_path):
    assert run("example", "Z2", "--out", tmp_path).exit_code == 0
    _, h = io.load(tmp_path / "group_algebra.json")
    assert h.alpha.is_identity() and h.dim == 2
    _, s = io.load(tmp_path / "system.json")
    assert s.hopf.dim == 2 and s.algebra.dim == 1


def test_example_named_system(tmp_path):
    code, doc = machine("example", "scalar-z3-inv", "--out", tmp_path)
    assert code == 0
    assert sorted(p.rsplit("/", 1)[1] for p in doc["outputs"]) == ["algebra.json", "hopf.json", "system.json"]
    assert run("crossed", tmp_path / "system.json", "--out", tmp_path).exit_code == 0


def test_unknown_example(tmp_path):
    assert run("example", "A5", "--out", tmp_path).exit_code == 1


def test_machine_report_schema(s3dir):
    _, doc = machine("verify", s3dir / "hopf.json")
    assert doc["schema_version"] == io.SCHEMA_VERSION
    assert set(doc) >= {"command", "target", "field", "passed", "reports", "facts", "errors", "outputs"}
