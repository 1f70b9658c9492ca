import pytest

from conftest import as_label_dict, classical_pairs, cleft_corpus, group_example, valid_systems
from homhopf import corpus
from homhopf.cleft import (
    CleftData,
    ComoduleAlgebra,
    NormalizationMissing,
    ValueEscapesCoinvariants,
    check_cleft,
    check_cleft_to_crossed,
    check_comodule_algebra,
    cleft_to_crossed,
    closed_form_gamma_inverse,
    coinvariants,
    crossed_comodule,
    crossed_to_cleft,
    lemma42_check,
    solver_agrees_with_closed_form,
)
from homhopf.crossed import build_crossed_product
from homhopf.homstruct import check_hom_algebra, convolution_unit
from homhopf.linalg import QQ, LinMap, kron, tensor_map

CORPUS = sorted(cleft_corpus())


def identity_z(n="Z3", aname="inv"):
    return corpus.identity_cleft(n, aname)


# -- comodule algebras -------------------------------------------------------

def test_hopf_over_itself_is_comodule_algebra():
    assert check_comodule_algebra(identity_z("Z2", "id").comod).passed


def test_crossed_product_coaction_is_comodule_algebra(s3a3):
    assert check_comodule_algebra(crossed_comodule(s3a3.system)).passed


def test_sign_flip_breaks_multiplicativity():
    c = identity_z("Z3", "id").comod
    cols = list(c.rho.columns())
    cols[1] = tuple(-x for x in cols[1])
    bad = ComoduleAlgebra(c.algebra, c.hopf, LinMap.from_columns(c.rho.dom, c.rho.cod, cols, QQ))
    r = check_comodule_algebra(bad).result("coaction_multiplicative")
    assert not r.passed
    assert r.counterexample is not None and len(r.counterexample) == 2


def test_coinvariant_dimensions(s3a3):
    assert coinvariants(identity_z("Z2", "id").comod).dim == 1
    B = crossed_comodule(s3a3.system)
    co = coinvariants(B)
    assert co.dim == s3a3.algebra.dim == 3
    assert co.algebra.space.labels == ("e⊗[e]", "(123)⊗[e]", "(132)⊗[e]")


def test_trivial_coaction_has_everything_coinvariant():
    h = identity_z("Z3", "inv").hopf
    A = corpus.function_algebra("Z3", "inv")
    binv = A.alpha_power(-1)
    rho = LinMap.from_function(A.space, A.space.tensor(h.space), lambda i: kron(binv.column(i), h.unit), QQ)
    c = ComoduleAlgebra(A, h, rho)
    assert check_comodule_algebra(c).passed
    assert coinvariants(c).dim == 3


# -- cleft data -----------------------------------------------------------

def test_crossed_product_gamma_is_cleft(s3a3):
    assert check_cleft(crossed_to_cleft(s3a3.system)).passed


def test_identity_cleft_inverse_is_antipode():
    cd = identity_z("Z3", "inv").with_inverse()
    assert check_cleft(cd).passed
    assert cd.gamma_inv == cd.hopf.antipode


def test_unit_counit_is_not_a_comodule_map(s3a3):
    comod = s3a3.comodule
    cd = CleftData(comod, convolution_unit(s3a3.hopf.coalgebra, comod.algebra))
    rep = check_cleft(cd)
    assert not rep.result("gamma_comodule_map").passed
    with pytest.raises(ValueEscapesCoinvariants):
        cleft_to_crossed(cd)


def test_gamma_must_be_normalized():
    cd = identity_z("Z2", "id")
    swap = LinMap(cd.gamma.dom, cd.gamma.cod, [[0, 1], [1, 0]], QQ)
    with pytest.raises(NormalizationMissing):
        CleftData(cd.comod, swap)


def test_cleft_identities_examples(s3a3):
    assert lemma42_check(identity_z("Z2", "id")).passed
    assert lemma42_check(crossed_to_cleft(s3a3.system)).passed


def test_wrong_gamma_inverse_breaks_cleft_identities():
    cd = identity_z("Z3", "id")
    wrong = CleftData(cd.comod, cd.gamma, LinMap.identity(cd.hopf.space, QQ))
    assert not check_cleft(wrong).passed
    assert not lemma42_check(wrong).result("coaction_of_gamma_inverse").passed


# -- cleft to crossed --------------------------------------------------------

def test_identity_cleft_gives_trivial_system():
    cd = identity_z("Z2", "id")
    res = cleft_to_crossed(cd)
    s = res.system
    assert s.algebra.dim == 1
    one = s.algebra.unit
    assert all(col == one for col in s.sigma.columns())
    assert all(col == one for col in s.action.act.columns())
    assert check_cleft_to_crossed(cd, res).passed


@pytest.mark.parametrize("name", corpus.VALID_GROUP_EXAMPLES)
def test_group_cleft_recovers_coset_formulas(name):
    ex = group_example(name)
    s = cleft_to_crossed(ex.cleft).system
    assert s.sigma == ex.system.sigma
    assert s.action.act == ex.system.action.act


def test_s3_group_algebra_is_crossed_product(s3a3):
    cd = s3a3.cleft
    res = cleft_to_crossed(cd)
    assert res.phi.dom.dim == res.phi.cod.dim == 6
    assert check_cleft_to_crossed(cd, res).passed


@pytest.mark.parametrize("name", sorted(valid_systems()))
def test_crossed_cleft_crossed_round_trip(name):
    s = valid_systems()[name]
    cd = crossed_to_cleft(s)
    res = cleft_to_crossed(cd)
    rep = check_cleft_to_crossed(cd, res)
    assert rep.passed, rep.format_text()
    back = res.system
    assert back.sigma.rows == s.sigma.rows
    if s.hopf.alpha.is_identity():
        assert back.action.act.rows == s.action.act.rows


def test_round_trip_action_is_alpha_inverse_twisted():
    s = valid_systems()["hom-smash-z3-inv"]
    back = cleft_to_crossed(crossed_to_cleft(s)).system
    H = s.hopf
    twisted = s.action.act @ tensor_map(H.algebra.alpha_power(-1), LinMap.identity(s.algebra.space, QQ))
    assert back.action.act.rows == twisted.rows
    assert back.action.act.rows != s.action.act.rows


# -- crossed to cleft --------------------------------------------------------

def test_trivial_sigma_gamma_inverse():
    """σ = ηε collapses the closed form to 1#S(α⁻¹h), which is 1#S(h) when α = id."""
    for name in ("smash-z3", "hom-smash-z3-inv"):
        s = valid_systems()[name]
        A, H = s.algebra, s.hopf
        g = closed_form_gamma_inverse(s)
        for h in range(H.dim):
            assert g.column(h) == kron(A.unit, H.S(H.pow(-1, H.e(h))))
            if name == "smash-z3":
                assert g.column(h) == kron(A.unit, H.S(H.e(h)))


@pytest.mark.parametrize("name", sorted(valid_systems()))
def test_closed_form_matches_solver(name):
    assert solver_agrees_with_closed_form(crossed_to_cleft(valid_systems()[name])).passed


@pytest.mark.parametrize("idx", range(len(classical_pairs())), ids=[p[0] for p in classical_pairs()])
def test_gamma_inverse_matches_classical(idx):
    name, s, oracle = classical_pairs()[idx]
    g = closed_form_gamma_inverse(s)
    for h, hl in enumerate(s.hopf.space.labels):
        ours = as_label_dict(g.column(h), g.cod)
        theirs = {f"{a}⊗{q}": v for (a, q), v in oracle.gamma_inverse(hl).items() if v}
        assert ours == theirs, (name, hl)


# -- the whole corpus --------------------------------------------------------

@pytest.mark.parametrize("key", CORPUS)
def test_corpus_cleft(key):
    cd = cleft_corpus()[key]
    assert check_comodule_algebra(cd.comod).passed
    assert check_cleft(cd).passed
    assert lemma42_check(cd).passed
    res = cleft_to_crossed(cd)
    assert check_cleft_to_crossed(cd, res).passed


def test_product_of_recovered_system_is_hom_algebra(s3a3):
    res = cleft_to_crossed(s3a3.cleft)
    assert check_hom_algebra(build_crossed_product(res.system)).passed

