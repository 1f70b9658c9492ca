"""Hopf-Galois extensions: the relative tensor product, the Galois map and normal bases.

For a comodule algebra B with coinvariants A,

* ``B⊗_A B`` is ``B⊗B`` modulo ``X = span{ma⊗n − β(m)⊗aβ⁻¹(n)}``, with m, n
  over a basis of B and a over a basis of A;
* the Galois map is ``φ(a⊗b) = β⁻¹(a) b0 ⊗ α(b1)`` and B is H-Galois when
  it is bijective on the quotient;
* a normal basis is an invertible θ: A⊗H → B that is left A-linear for
  ``a·(b#h) = β⁻¹(a)b # α(h)``, right H-colinear for
  ``ρ(a#h) = Σ β⁻¹(a)#h1 ⊗ α(h2)`` and (by default) satisfies
  ``θ∘(β⊗α) = β∘θ``.

A cleft extension is Galois with explicit inverse
``ψ(b⊗h) = Σ β⁻¹(b)γ⁻¹(h1) ⊗ γ(α(h2))``, and a Galois extension with a
normal basis is cleft with ``γ(h) = θ(1⊗α⁻¹(h))``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .cleft import CleftData, ComoduleAlgebra, Coinvariants, NormalizationMissing, crossed_coaction_formula
from .homstruct import (
    AxiomReport,
    AxiomResult,
    compare_maps,
    convolution_unit,
    convolve,
)
from .linalg import (
    Accumulator,
    LinMap,
    NoSolution,
    QuotientSpace,
    Singular,
    Space,
    Subspace,
    compose,
    invert,
    kron,
    nullspace,
    quotient_by,
    rank,
    solve_system,
    split_tensor,
    tensor_map,
)


class NotWellDefined(ValueError):
    pass


class VerificationFailed(ValueError):
    def __init__(self, msg, report: AxiomReport | None = None):
        super().__init__(msg)
        self.report = report


# ---------------------------------------------------------------------------
# B ⊗_A B


@dataclass(frozen=True, eq=False)
class RelTensor:
    comod: ComoduleAlgebra
    coinv: Coinvariants
    relations: Subspace
    quotient: QuotientSpace

    @property
    def dim(self) -> int:
        return self.quotient.dim

    @property
    def relation_rank(self) -> int:
        return self.relations.dim


def relation_generators(c: ComoduleAlgebra, a: Coinvariants) -> list:
    B = c.algebra
    out = []
    avecs = [a.embed(a.algebra.e(k)) for k in range(a.dim)]
    for m in range(B.dim):
        em = B.e(m)
        bm = B.pow(1, em)
        for n in range(B.dim):
            en = B.e(n)
            binv_n = B.pow(-1, en)
            for av in avecs:
                left = kron(B.mul(em, av), en)
                right = kron(bm, B.mul(av, binv_n))
                out.append(tuple(x - y for x, y in zip(left, right)))
    return out


def relative_tensor(c: ComoduleAlgebra, a: Coinvariants | None = None) -> RelTensor:
    a = a or c.coinvariants
    BB = c.algebra.space.tensor(c.algebra.space)
    x = Subspace.span(BB, relation_generators(c, a), c.field)
    return RelTensor(c, a, x, quotient_by(BB, x))


# ---------------------------------------------------------------------------
# the Galois map


@dataclass(frozen=True, eq=False)
class GaloisVerdict:
    phi: LinMap               # B⊗_A B → B⊗H
    rank: int
    domain_dim: int
    codomain_dim: int
    phi_inv: LinMap | None = None

    @property
    def bijective(self) -> bool:
        return self.rank == self.domain_dim == self.codomain_dim


def galois_formula(c: ComoduleAlgebra) -> LinMap:
    """``a⊗b ↦ β⁻¹(a) b0 ⊗ α(b1)`` on ``B⊗B``."""
    B, H = c.algebra, c.hopf
    nb = B.dim
    BB = B.space.tensor(B.space)

    def col(idx):
        i, j = divmod(idx, nb)
        left = B.pow(-1, B.e(i))
        acc = Accumulator(nb * H.dim, B.field)
        for coef, b0, b1 in c.coact(B.e(j)):
            acc.add(kron(B.mul(left, b0), H.pow(1, b1)), coef)
        return acc.vector()

    return LinMap.from_function(BB, B.space.tensor(H.space), col, B.field)


def galois_map(c: ComoduleAlgebra, rt: RelTensor) -> GaloisVerdict:
    full = galois_formula(c)
    for x in rt.relations.basis:
        if any(full(x)):
            raise NotWellDefined("the Galois map does not vanish on the relations")
    phi = compose(full, rt.quotient.lift)
    r = rank(phi)
    inv = None
    if r == phi.dom.dim == phi.cod.dim:
        inv = invert(phi)
    return GaloisVerdict(phi, r, phi.dom.dim, phi.cod.dim, inv)


def cleft_galois_inverse(cd: CleftData, rt: RelTensor) -> LinMap:
    """``ψ(b⊗h) = Σ β⁻¹(b)γ⁻¹(h1) ⊗ γ(α(h2))``, landing in ``B⊗_A B``."""
    cd = cd.with_inverse()
    B, H = cd.algebra, cd.hopf
    nh = H.dim
    g, gi = cd.gamma, cd.gamma_inv

    def col(idx):
        b, h = divmod(idx, nh)
        left = B.pow(-1, B.e(b))
        acc = Accumulator(B.dim * B.dim, B.field)
        for coef, h1, h2 in H.split(H.e(h)):
            acc.add(kron(B.mul(left, gi(h1)), g(H.pow(1, h2))), coef)
        return rt.quotient.project(acc.vector())

    return LinMap.from_function(B.space.tensor(H.space), rt.quotient.space, col, B.field)


def check_galois_inverse(v: GaloisVerdict, psi: LinMap) -> AxiomReport:
    f = v.phi.field
    rep = AxiomReport("galois_inverse")
    rep.add(compare_maps("phi_psi_identity", compose(v.phi, psi),
                         LinMap.identity(v.phi.cod, f), [v.phi.cod]))
    rep.add(compare_maps("psi_phi_identity", compose(psi, v.phi),
                         LinMap.identity(v.phi.dom, f), [v.phi.dom]))
    return rep


# ---------------------------------------------------------------------------
# normal basis


@dataclass(frozen=True, eq=False)
class NormalBasisWitness:
    theta: LinMap | None
    constraint_dim: int
    trials: int
    seed: int
    normalized: bool
    reason: str = ""

    @property
    def found(self) -> bool:
        return self.theta is not None


def _vec_index(r: int, col: int, ncols: int) -> int:
    return r * ncols + col


def normal_basis_constraints(c: ComoduleAlgebra, a: Coinvariants, intertwine: bool = True) -> list:
    """Linear equations on the row-major entries of θ: A⊗H → B."""
    B, H = c.algebra, c.hopf
    A = a.algebra
    f = B.field
    na, nh, nb = A.dim, H.dim, B.dim
    n = na * nh
    rows = []

    def theta_of(vec, coef_rows, sign=1):
        # adds Σ_y vec[y] θ[r][y] into coef_rows[r]
        for y, x in enumerate(vec):
            if x:
                for r in range(nb):
                    k = _vec_index(r, y, n)
                    coef_rows[r][k] = coef_rows[r][k] + sign * x

    # left A-linearity: θ(a·x) = a θ(x)
    for ai in range(na):
        aemb = a.embed(A.e(ai))
        lmul = B.left_mult(aemb).rows
        ainv = A.pow(-1, A.e(ai))
        for x in range(n):
            b, h = divmod(x, nh)
            ax = kron(A.mul(ainv, A.e(b)), H.pow(1, H.e(h)))
            eq = [[f.zero] * (nb * n) for _ in range(nb)]
            theta_of(ax, eq)
            for r in range(nb):
                for k in range(nb):
                    y = lmul[r][k]
                    if y:
                        idx = _vec_index(k, x, n)
                        eq[r][idx] = eq[r][idx] - y
            rows.extend(eq)

    # right H-colinearity: (θ⊗id)ρ(x) = ρ_B(θ(x))
    rho_b = c.rho.rows
    for x in range(n):
        b, h = divmod(x, nh)
        binv = A.pow(-1, A.e(b))
        eq = [[f.zero] * (nb * n) for _ in range(nb * nh)]
        for coef, h1, h2 in H.split(H.e(h)):
            v = kron(kron(binv, h1), H.pow(1, h2))
            for coef2, (y, j) in split_tensor(v, [n, nh]):
                cc = coef * coef2
                for r in range(nb):
                    k = _vec_index(r, y, n)
                    eq[r * nh + j][k] = eq[r * nh + j][k] + cc
        for rj in range(nb * nh):
            row = rho_b[rj]
            for k in range(nb):
                y = row[k]
                if y:
                    idx = _vec_index(k, x, n)
                    eq[rj][idx] = eq[rj][idx] - y
        rows.extend(eq)

    if intertwine:
        ba = tensor_map(A.alpha, H.alpha)
        beta = B.alpha.rows
        for x in range(n):
            eq = [[f.zero] * (nb * n) for _ in range(nb)]
            theta_of(ba.column(x), eq)
            for r in range(nb):
                for k in range(nb):
                    y = beta[r][k]
                    if y:
                        idx = _vec_index(k, x, n)
                        eq[r][idx] = eq[r][idx] - y
            rows.extend(eq)
    return rows


def _as_map(vec, dom: Space, cod: Space, field) -> LinMap:
    n = dom.dim
    return LinMap(dom, cod, [vec[r * n:(r + 1) * n] for r in range(cod.dim)], field)


def normal_basis_search(c: ComoduleAlgebra, a: Coinvariants | None = None, seed: int = 0,
                        trials: int = 64, intertwine: bool = True) -> NormalBasisWitness:
    """Randomized search for an invertible θ in the constraint space.

    Candidates are affine combinations ``θ0 + Σ c_i θ_i`` where θ0 sends
    1⊗1 to 1 and the θ_i span the homogeneous solutions (with θ(1⊗1) = 0);
    coefficients are drawn from ``[-d, d]`` with d = dim B.  If an
    invertible element exists the determinant is a nonzero polynomial of
    degree ≤ d in the c_i, so one trial misses with probability at most
    ``d/(2d+1) < 1/2``.  When no normalized θ exists the plain homogeneous
    space is searched instead.  A miss is inconclusive, never a proof.
    """
    a = a or c.coinvariants
    B, H = c.algebra, c.hopf
    A = a.algebra
    f = B.field
    AH = A.space.tensor(H.space)
    if AH.dim != B.dim:
        return NormalBasisWitness(None, 0, 0, seed, False, "dimension mismatch")
    rows = normal_basis_constraints(c, a, intertwine)
    n = AH.dim
    nunk = B.dim * n
    one = kron(A.unit, H.unit)
    # θ(1⊗1) = 1
    norm_rows = []
    for r in range(B.dim):
        row = [f.zero] * nunk
        for y, x in enumerate(one):
            if x:
                row[_vec_index(r, y, n)] = x
        norm_rows.append(row)
    rng = random.Random(seed)
    dim = B.dim
    try:
        base = solve_system(rows + norm_rows, [f.zero] * len(rows) + list(B.unit), nunk, f)
        hom = nullspace(rows + norm_rows, Space(tuple(str(i) for i in range(nunk))), f)
        normalized = True
    except NoSolution:
        base = tuple(f.zero for _ in range(nunk))
        hom = nullspace(rows, Space(tuple(str(i) for i in range(nunk))), f)
        normalized = False
    space_dim = hom.dim + (1 if normalized else 0)
    if space_dim == 0:
        return NormalBasisWitness(None, 0, 0, seed, normalized, "constraint space is zero")
    for t in range(1, trials + 1):
        coeffs = [f(rng.randint(-dim, dim)) for _ in range(hom.dim)]
        vec = list(base)
        for cf, b in zip(coeffs, hom.basis):
            if cf:
                for k, x in enumerate(b):
                    if x:
                        vec[k] = vec[k] + cf * x
        theta = _as_map(vec, AH, B.space, f)
        if rank(theta) == n:
            if not check_normal_basis(c, a, theta, intertwine).passed:
                raise VerificationFailed("candidate normal basis fails exact verification")
            return NormalBasisWitness(theta, space_dim, t, seed, normalized)
    return NormalBasisWitness(None, space_dim, trials, seed, normalized, "no witness found")


def check_normal_basis(c: ComoduleAlgebra, a: Coinvariants, theta: LinMap, intertwine: bool = True) -> AxiomReport:
    """Exact check that θ is an invertible A-linear, H-colinear map."""
    B, H = c.algebra, c.hopf
    A = a.algebra
    f = B.field
    AH = A.space.tensor(H.space)
    rep = AxiomReport("normal_basis")
    try:
        invert(theta)
        rep.add(AxiomResult("theta_invertible", True))
    except Singular:
        rep.add(AxiomResult("theta_invertible", False, (), note="theta is singular"))
    fmt = f.format
    bad = None
    for ai in range(A.dim):
        ainv = A.pow(-1, A.e(ai))
        aemb = a.embed(A.e(ai))
        for x in range(AH.dim):
            b, h = divmod(x, H.dim)
            lhs = theta(kron(A.mul(ainv, A.e(b)), H.pow(1, H.e(h))))
            rhs = B.mul(aemb, theta.column(x))
            if lhs != rhs:
                bad = AxiomResult("theta_left_linear", False, (A.space.labels[ai], AH.labels[x]),
                                  [fmt(v) for v in lhs], [fmt(v) for v in rhs])
                break
        if bad:
            break
    rep.add(bad or AxiomResult("theta_left_linear", True))
    rho_ah = crossed_coaction_formula(A, H)
    rep.add(compare_maps("theta_colinear",
                         compose(tensor_map(theta, LinMap.identity(H.space, f)), rho_ah),
                         compose(c.rho, theta), [AH]))
    if intertwine:
        rep.add(compare_maps("theta_commutes_alpha",
                             compose(theta, tensor_map(A.alpha, H.alpha)),
                             compose(B.alpha, theta), [AH]))
    return rep


# ---------------------------------------------------------------------------
# Galois + normal basis -> cleft


@dataclass(frozen=True, eq=False)
class GaloisReconstruction:
    cleft: CleftData
    gamma: LinMap     # H → B
    g: LinMap         # B → A
    mu: LinMap        # H → B
    report: AxiomReport


def galois_nb_to_cleft(c: ComoduleAlgebra, a: Coinvariants, rt: RelTensor, v: GaloisVerdict,
                       w: NormalBasisWitness) -> GaloisReconstruction:
    """Rebuild cleft data from a bijective Galois map and a normal basis θ.

    ``γ(h) = θ(1⊗α⁻¹(h))``, ``g = β∘(id⊗ε)∘θ⁻¹`` and
    ``μ(h) = m(id⊗g)φ⁻¹(1⊗α⁻¹(h))``; μ must come out as γ⁻¹.
    """
    if not v.bijective or v.phi_inv is None:
        raise VerificationFailed("Galois map is not bijective")
    if not w.found:
        raise VerificationFailed("no normal basis witness")
    B, H = c.algebra, c.hopf
    A = a.algebra
    f = B.field
    theta = w.theta
    theta_inv = invert(theta)
    gamma = LinMap.from_function(H.space, B.space,
                                 lambda h: theta(kron(A.unit, H.pow(-1, H.e(h)))), f)
    ident_a = LinMap.identity(A.space, f)
    g = compose(A.alpha, compose(tensor_map(ident_a, H.coalgebra.counit), theta_inv))
    g_b = compose(a.inclusion, g)
    rep = AxiomReport("galois_to_cleft")

    # m(id⊗g) must vanish on the relations to descend to B⊗_A B
    mg = compose(B.mult, tensor_map(LinMap.identity(B.space, f), g_b))
    ok = all(not any(mg(x)) for x in rt.relations.basis)
    rep.add(AxiomResult("m_id_g_well_defined", ok, None if ok else ()))

    def mu_col(h):
        target = kron(B.unit, H.pow(-1, H.e(h)))
        q = v.phi_inv(target)
        return mg(rt.quotient.lift(q))

    mu = LinMap.from_function(H.space, B.space, mu_col, f)

    eps1 = LinMap.from_function(H.space, B.space,
                                lambda h: tuple(H.eps(H.e(h)) * x for x in B.unit), f)
    rep.add(compare_maps("g_gamma_is_counit", compose(g_b, gamma), eps1, [H.space]))

    def recon(i):
        acc = Accumulator(B.dim, f)
        for coef, b0, b1 in c.coact(B.e(i)):
            acc.add(B.mul(g_b(b0), gamma(b1)), coef)
        return acc.vector()

    rep.add(compare_maps("b_is_g_b0_gamma_b1", LinMap.from_function(B.space, B.space, recon, f),
                         LinMap.identity(B.space, f), [B.space]))
    rep.add(compare_maps("gamma_comodule_map", compose(c.rho, gamma),
                         compose(tensor_map(gamma, LinMap.identity(H.space, f)), H.coalgebra.comult),
                         [H.space]))
    rep.add(compare_maps("gamma_commutes_alpha", compose(gamma, H.alpha), compose(B.alpha, gamma), [H.space]))
    unit = convolution_unit(H.coalgebra, B)
    rep.add(compare_maps("gamma_mu_unit", convolve(gamma, mu, H.coalgebra, B), unit, [H.space]))
    rep.add(compare_maps("mu_gamma_unit", convolve(mu, gamma, H.coalgebra, B), unit, [H.space]))
    if not rep.passed:
        raise VerificationFailed(
            "reconstruction fails: " + ", ".join(r.axiom for r in rep.failures()), rep)
    try:
        cd = CleftData(c, gamma, mu)
    except NormalizationMissing as exc:
        raise VerificationFailed(str(exc), rep) from None
    return GaloisReconstruction(cd, gamma, g, mu, rep)
