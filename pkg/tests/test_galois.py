import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import as_label_dict, classical_pairs, cleft_corpus, valid_systems
from homhopf import corpus
from homhopf.cleft import (
    ComoduleAlgebra,
    check_cleft_to_crossed,
    cleft_to_crossed,
    closed_form_gamma_inverse,
    crossed_comodule,
    crossed_to_cleft,
)
from homhopf.galois import (
    NormalBasisWitness,
    VerificationFailed,
    check_galois_inverse,
    check_normal_basis,
    cleft_galois_inverse,
    galois_formula,
    galois_map,
    galois_nb_to_cleft,
    normal_basis_search,
    relative_tensor,
)
from homhopf.linalg import QQ, LinMap, kron

CORPUS = sorted(cleft_corpus())


def trivial_coaction(gname="Z3", aname="inv"):
    H = corpus.identity_cleft(gname, aname).hopf
    A = corpus.function_algebra(gname, aname)
    binv = A.alpha_power(-1)
    rho = LinMap.from_function(A.space, A.space.tensor(H.space), lambda i: kron(binv.column(i), H.unit), QQ)
    return ComoduleAlgebra(A, H, rho)


def witness(theta):
    return NormalBasisWitness(theta, 0, 0, 0, True)


def crossed_theta(c, rows=None):
    """a⊗h ↦ β(a)#α(h) on a crossed product, whose coinvariants are A#1.

    This is a·γ(h) with γ(h) = 1#α⁻¹h."""
    AH = c.coinvariants.algebra.space.tensor(c.hopf.space)
    return LinMap(AH, c.algebra.space, rows or c.algebra.alpha.rows, QQ)


# -- relative tensor -----------------------------------------------------------

def test_relative_tensor_over_everything():
    c = trivial_coaction()
    assert relative_tensor(c).dim == c.algebra.dim


def test_relative_tensor_over_ground_field():
    rt = relative_tensor(corpus.identity_cleft("Z2", "id").comod)
    assert rt.dim == 4
    assert rt.relation_rank == 0


def test_relative_tensor_s3(s3a3):
    rt = relative_tensor(crossed_comodule(s3a3.system))
    assert rt.dim == 12
    assert rt.relation_rank == 24


# -- Galois map ----------------------------------------------------------------

def test_z2_galois_map_bijective():
    c = corpus.identity_cleft("Z2", "id").comod
    v = galois_map(c, relative_tensor(c))
    assert v.bijective and v.rank == 4


def test_s3_galois_map_bijective(s3a3):
    c = crossed_comodule(s3a3.system)
    v = galois_map(c, relative_tensor(c))
    assert v.bijective and v.rank == 12


def test_trivial_coaction_not_galois():
    c = trivial_coaction()
    v = galois_map(c, relative_tensor(c))
    assert not v.bijective
    assert v.codomain_dim > v.domain_dim


@pytest.mark.parametrize("idx", range(len(classical_pairs())), ids=[p[0] for p in classical_pairs()])
def test_galois_formula_matches_classical(idx):
    name, s, oracle = classical_pairs()[idx]
    c = crossed_comodule(s)
    phi = galois_formula(c)
    B = c.algebra.space
    nb = B.dim
    for x, xl in enumerate(B.labels):
        a, h = xl.split("⊗")
        for y, yl in enumerate(B.labels):
            b, k = yl.split("⊗")
            ours = as_label_dict(phi.column(x * nb + y), phi.cod)
            theirs = {f"{al}⊗{ql}⊗{yy}": v for ((al, ql), yy), v in oracle.galois(a, h, b, k).items() if v}
            assert ours == theirs, (name, xl, yl)


# -- ψ -------------------------------------------------------------------------

@pytest.mark.parametrize("key", ["identity:Z2", "crossed:smash-z3", "crossed:S3/A3 conj:(12)"])
def test_cleft_galois_inverse(key):
    cd = cleft_corpus()[key]
    rt = relative_tensor(cd.comod)
    v = galois_map(cd.comod, rt)
    psi = cleft_galois_inverse(cd, rt)
    rep = check_galois_inverse(v, psi)
    assert rep.passed
    assert psi == v.phi_inv


# -- normal bases --------------------------------------------------------------

def test_crossed_theta_is_normal_basis(s3a3):
    c = crossed_comodule(s3a3.system)
    assert check_normal_basis(c, c.coinvariants, crossed_theta(c)).passed


def test_untwisted_theta_is_not_left_linear(s3a3):
    c = crossed_comodule(s3a3.system)
    plain = crossed_theta(c, LinMap.identity(c.algebra.space, QQ).rows)
    rep = check_normal_basis(c, c.coinvariants, plain)
    assert rep.result("theta_invertible").passed
    assert not rep.result("theta_left_linear").passed


def test_dimension_mismatch_has_no_witness():
    c = trivial_coaction()
    w = normal_basis_search(c)
    assert not w.found
    assert w.reason == "dimension mismatch"


def test_phi_of_group_cleft_is_normal_basis(s3a3):
    cd = s3a3.cleft
    res = cleft_to_crossed(cd)
    assert check_normal_basis(cd.comod, cd.coinvariants, res.phi).passed
    w = normal_basis_search(cd.comod, seed=0)
    assert w.found and w.normalized


@settings(max_examples=10)
@given(st.integers(0, 2**64 - 1))
def test_search_is_reproducible(seed):
    c = corpus.group_example("Q8/Z rot").comodule
    w1 = normal_basis_search(c, seed=seed)
    w2 = normal_basis_search(c, seed=seed)
    assert w1.found
    assert w1.theta == w2.theta and w1.trials == w2.trials


# -- Galois + normal basis → cleft ---------------------------------------------

def test_reconstruction_from_crossed_theta(s3a3):
    s = s3a3.system
    c = crossed_comodule(s)
    rt = relative_tensor(c)
    rec = galois_nb_to_cleft(c, c.coinvariants, rt, galois_map(c, rt), witness(crossed_theta(c)))
    expect = crossed_to_cleft(s)
    assert rec.gamma.rows == expect.gamma.rows
    assert rec.mu.rows == closed_form_gamma_inverse(s).rows


def test_reconstruction_classical_z2():
    cd = corpus.identity_cleft("Z2", "id")
    c = cd.comod
    rt = relative_tensor(c)
    rec = galois_nb_to_cleft(c, c.coinvariants, rt, galois_map(c, rt), witness(crossed_theta(c)))
    assert rec.gamma.is_identity()
    assert rec.mu.rows == c.hopf.antipode.rows


def test_non_colinear_theta_fails():
    c = corpus.identity_cleft("Z3", "id").comod
    rt = relative_tensor(c)
    AH = c.coinvariants.algebra.space.tensor(c.hopf.space)
    swap = LinMap(AH, c.algebra.space, [[1, 0, 0], [0, 0, 1], [0, 1, 0]], QQ)
    assert not check_normal_basis(c, c.coinvariants, swap).result("theta_colinear").passed
    with pytest.raises(VerificationFailed) as err:
        galois_nb_to_cleft(c, c.coinvariants, rt, galois_map(c, rt), witness(swap))
    assert not err.value.report.result("gamma_comodule_map").passed


# -- the whole corpus ----------------------------------------------------------

@pytest.mark.parametrize("key", CORPUS)
def test_corpus_galois_chain(key):
    cd = cleft_corpus()[key]
    c = cd.comod
    rt = relative_tensor(c)
    v = galois_map(c, rt)
    assert v.bijective
    assert rt.dim == c.algebra.dim * c.hopf.dim
    psi = cleft_galois_inverse(cd, rt)
    assert check_galois_inverse(v, psi).passed
    assert psi == v.phi_inv
    w = normal_basis_search(c, seed=0)
    assert w.found
    rec = galois_nb_to_cleft(c, c.coinvariants, rt, v, w)
    assert rec.report.passed
    res = cleft_to_crossed(rec.cleft)
    assert check_cleft_to_crossed(rec.cleft, res).passed


def test_crossed_product_coinvariants_have_dim_a():
    s = valid_systems()["S3/A3 conj:(12)"]
    assert crossed_comodule(s).coinvariants.dim == 3
