from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from homhopf.homgroup import HomGroup, automorphism_by_name, catalog_group, hom_group_algebra
from homhopf.linalg import (
    GF,
    K,
    QQ,
    LinMap,
    Mod,
    NoSolution,
    ShapeMismatch,
    Singular,
    Space,
    Subspace,
    compose,
    field_from_spec,
    flip,
    image,
    invert,
    kernel,
    kron,
    quotient_by,
    rank,
    solve,
    tensor_map,
    unit_vec,
)


def space(n, prefix="e"):
    return Space(tuple(f"{prefix}{i}" for i in range(n)))


def mat(rows, dom=None, cod=None, field=QQ):
    rows = [[field(x) for x in r] for r in rows]
    dom = dom or space(len(rows[0]))
    cod = cod or space(len(rows), "f")
    return LinMap(dom, cod, rows, field)


def s3_alpha():
    g = catalog_group("S3")
    return hom_group_algebra(HomGroup(g, automorphism_by_name(g, "conj:(12)")), QQ).alpha


# -- scalars -----------------------------------------------------------------

def test_rationals_lowest_terms():
    assert QQ.parse("6/4") == Fraction(3, 2)
    assert QQ.format(Fraction(-6, 4)) == "-3/2"
    assert QQ.format(QQ(5)) == "5/1"
    assert QQ.parse("7") == 7


def test_prime_field_arithmetic():
    f = GF(7)
    assert f(3) * f(5) == f(1)
    assert f(1) / f(3) == f(5)
    assert f(-1) == f(6)
    assert f.format(f(-1)) == "6"
    assert isinstance(f(2), Mod)


def test_prime_field_rejects_composite():
    with pytest.raises(ValueError):
        GF(6)


def test_field_spec_roundtrip():
    assert field_from_spec("Q") == QQ
    assert field_from_spec({"Fp": 5}) == GF(5)
    assert field_from_spec(GF(5).spec()) == GF(5)


# -- compose, tensor, flip ---------------------------------------------------

def test_compose_identity_laws():
    f = mat([[1, 2, 3], [4, 5, 6]])
    assert compose(LinMap.identity(f.cod, QQ), f) == f
    assert compose(f, LinMap.identity(f.dom, QQ)) == f


def test_swap_is_involution():
    s = space(2)
    swap = LinMap(s, s, [[0, 1], [1, 0]], QQ)
    assert (swap @ swap).is_identity()


def test_compose_shape_mismatch():
    f = mat([[1, 2]])
    with pytest.raises(ShapeMismatch):
        compose(f, f)


def test_tensor_identity():
    a, b = space(2), space(3, "x")
    t = tensor_map(LinMap.identity(a, QQ), LinMap.identity(b, QQ))
    assert t.is_identity()
    assert t.dom.labels[1] == "e0⊗x1"
    assert t.dom.labels[3] == "e1⊗x0"


def test_tensor_on_basis_pairs():
    f = mat([[1, 2], [0, 3]])
    g = mat([[1, -1, 0], [2, 0, 5]])
    t = tensor_map(f, g)
    for i in range(2):
        for j in range(3):
            v = t(kron(unit_vec(2, i, QQ), unit_vec(3, j, QQ)))
            assert v == kron(f.column(i), g.column(j))


def test_tensor_square_of_s3_alpha_is_kronecker():
    a = s3_alpha()
    t = tensor_map(a, a)
    n = a.dom.dim
    for r in range(n * n):
        for c in range(n * n):
            assert t.rows[r][c] == a.rows[r // n][c // n] * a.rows[r % n][c % n]


def test_flip_ground_is_identity():
    assert flip(K, K, QQ).is_identity()
    assert flip(K, K, QQ).shape == (1, 1)


def test_flip_involution_and_labels():
    a, b = space(2, "a"), space(3, "b")
    f = flip(a, b, QQ)
    assert (flip(b, a, QQ) @ f).is_identity()
    ab, ba = a.tensor(b), b.tensor(a)
    for c, lab in enumerate(ab.labels):
        x, y = lab.split("⊗")
        assert f.column(c) == unit_vec(ba.dim, ba.index(f"{y}⊗{x}"), QQ)


# -- kernel, solve, invert ---------------------------------------------------

def test_kernel_examples():
    s = space(3)
    assert kernel(LinMap.identity(s, QQ)).dim == 0
    assert kernel(LinMap.zero(s, s, QQ)).dim == 3
    k = kernel(mat([[1, 1], [1, 1]]))
    assert k.dim == 1
    assert k.contains((QQ(1), QQ(-1)))
    assert not k.contains((QQ(1), QQ(1)))


def test_solve_examples():
    s = space(3)
    v = (QQ(1), Fraction(2, 3), QQ(-4))
    assert solve(LinMap.identity(s, QQ), v) == v
    with pytest.raises(NoSolution):
        solve(LinMap.zero(s, s, QQ), v)
    assert solve(mat([[2]]), (QQ(1),)) == (Fraction(1, 2),)


def test_solve_free_variables_zero():
    assert solve(mat([[1, 1]]), (QQ(3),)) == (QQ(3), QQ(0))


def test_invert_examples():
    s = space(4)
    assert invert(LinMap.identity(s, QQ)).is_identity()
    a = s3_alpha()
    assert invert(a) == a
    assert (a @ a).is_identity()
    with pytest.raises(Singular):
        invert(mat([[1, 1], [1, 1]]))


def test_invert_over_prime_field():
    f = GF(5)
    m = mat([[2, 1], [1, 1]], field=f)
    m = LinMap(m.dom, m.dom, m.rows, f)
    assert (m @ invert(m)).is_identity()


# -- quotients, rank ---------------------------------------------------------

def test_quotient_by_zero_and_full():
    s = space(3)
    q0 = quotient_by(s, Subspace.zero_space(s, QQ))
    assert q0.dim == 3
    assert q0.project.rows == LinMap.identity(s, QQ).rows
    qf = quotient_by(s, Subspace.span(s, [unit_vec(3, i, QQ) for i in range(3)], QQ))
    assert qf.dim == 0


def test_quotient_diagonal_collapse():
    s = space(2)
    q = quotient_by(s, Subspace.span(s, [(QQ(1), QQ(-1))], QQ))
    assert q.dim == 1
    assert q.project(unit_vec(2, 0, QQ)) == q.project(unit_vec(2, 1, QQ))
    assert (q.project @ q.lift).is_identity()


def test_rank_examples():
    s = space(4)
    assert rank(LinMap.identity(s, QQ)) == 4
    assert rank(LinMap.zero(s, s, QQ)) == 0


# -- properties --------------------------------------------------------------

small = st.integers(min_value=-3, max_value=3)


@st.composite
def matrices(draw, rows=None, cols=None):
    r = rows or draw(st.integers(1, 4))
    c = cols or draw(st.integers(1, 4))
    entries = draw(st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r))
    return mat(entries)


@given(matrices())
def test_rank_nullity(f):
    assert kernel(f).dim + rank(f) == f.dom.dim
    for v in kernel(f).basis:
        assert not any(f(v))


@given(matrices())
def test_image_contains_columns(f):
    im = image(f)
    assert im.dim == rank(f)
    assert all(im.contains(c) for c in f.columns())


@given(matrices(3, 3))
def test_invert_is_two_sided_or_singular(f):
    f = LinMap(f.dom, f.dom, f.rows, QQ)
    if rank(f) < 3:
        with pytest.raises(Singular):
            invert(f)
    else:
        g = invert(f)
        assert (f @ g).is_identity() and (g @ f).is_identity()


@given(st.lists(st.lists(small, min_size=4, max_size=4), min_size=0, max_size=3),
       st.lists(small, min_size=4, max_size=4))
def test_quotient_invariants(gens, v):
    s = space(4)
    x = Subspace.span(s, [tuple(QQ(a) for a in g) for g in gens], QQ)
    q = quotient_by(s, x)
    assert q.dim == 4 - x.dim
    if q.dim:
        assert (q.project @ q.lift).is_identity()
    assert kernel(q.project) == x
    v = tuple(QQ(a) for a in v)
    assert (not any(q.project(v))) == x.contains(v)


@given(matrices(2, 3), matrices(3, 2), matrices(2, 2), matrices(2, 2))
def test_tensor_functorial(f, f2, g, g2):
    f2 = LinMap(f2.dom, f.dom, f2.rows, QQ)
    g2 = LinMap(g2.dom, g.dom, g2.rows, QQ)
    lhs = tensor_map(f @ f2, g @ g2)
    rhs = tensor_map(f, g) @ tensor_map(f2, g2)
    assert lhs.rows == rhs.rows
