"""Right Hom-comodule algebras, coinvariants and cleft extensions.

A cleft extension is a comodule algebra B over H together with a
convolution-invertible comodule map γ: H → B with γ(1) = 1.  It is
equivalent to a crossed product A #_σ H over the coinvariants A:

* :func:`cleft_to_crossed` recovers the action
  ``h·a = Σ (γ(h1)β⁻¹(a)) γ⁻¹(α(h2))`` and cocycle
  ``σ(h,k) = Σ (γ(h1)γ(k1)) γ⁻¹(h2 k2)``, with the isomorphism
  ``Φ(a#h) = aγ(h)`` and its inverse ``Ψ(b) = Σ b00 γ⁻¹(b01) # b1``;
* :func:`crossed_to_cleft` goes back with ``γ(h) = 1#α⁻¹(h)`` and the
  closed form ``γ⁻¹(h) = Σ σ⁻¹(S(h21), h22) # S(h1)``.

Comodule conventions: ``Σ β⁻¹(b0)⊗Δ(b1) = Σ ρ(b0)⊗α⁻¹(b1)``,
``Σ ε(b1) b0 = β⁻¹(b)`` and ``ρ∘β = (β⊗α)∘ρ``.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from functools import cached_property

from .crossed import (
    ConditionsViolated,
    CrossedSystem,
    WeakAction,
    build_crossed_product,
    check_conditions,
    check_weak_action,
)
from .homstruct import (
    AxiomReport,
    AxiomResult,
    HomAlgebra,
    HomHopf,
    NotInMorphismSpace,
    NotInvertible,
    check_basis_identity,
    compare_maps,
    compare_vectors,
    convolution_invert,
    convolution_unit,
    convolve,
    tensor_mul,
)
from .linalg import (
    Accumulator,
    LinMap,
    NoSolution,
    ShapeMismatch,
    Subspace,
    bilinear,
    compose,
    flip,
    invert,
    kernel,
    kron,
    split_tensor,
    tensor_apply,
    tensor_map,
)


class NormalizationMissing(ValueError):
    """γ(1) ≠ 1."""


class ValueEscapesCoinvariants(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class ComoduleAlgebra:
    algebra: HomAlgebra
    hopf: HomHopf
    rho: LinMap

    def __post_init__(self):
        B, H = self.algebra.space, self.hopf.space
        if self.rho.dom != B or self.rho.cod != B.tensor(H):
            raise ShapeMismatch("coaction must map B to B⊗H")

    @property
    def field(self):
        return self.algebra.field

    def coact(self, b) -> list:
        """Sweedler terms ``(coef, b0, b1)`` of ρ(b) with basis vectors b0, b1."""
        B, H = self.algebra, self.hopf
        return [(c, B.e(i), H.e(j)) for c, (i, j) in split_tensor(self.rho(b), [B.dim, H.dim])]

    @cached_property
    def coinvariants(self) -> "Coinvariants":
        return coinvariants(self)


def check_comodule_algebra(c: ComoduleAlgebra) -> AxiomReport:
    B, H = c.algebra, c.hopf
    bs, f = B.space, B.field
    fmt = f.format
    rep = AxiomReport("comodule_algebra")
    rho = c.rho
    binv = B.alpha_power(-1)
    hinv = H.algebra.alpha_power(-1)
    ident = LinMap.identity(bs, f)
    rho_cols = rho.columns()
    rep.add(check_basis_identity("coassociativity", [bs],
                                 lambda i: tensor_apply([binv, H.coalgebra.comult], rho_cols[i]),
                                 lambda i: tensor_apply([rho, hinv], rho_cols[i]), fmt))
    rep.add(check_basis_identity("counit", [bs],
                                 lambda i: tensor_apply([ident, H.coalgebra.counit], rho_cols[i]),
                                 lambda i: binv.column(i), fmt))
    rep.add(compare_maps("coaction_auto", compose(rho, B.alpha),
                         compose(tensor_map(B.alpha, H.alpha), rho), [bs]))
    rep.add(check_basis_identity("coaction_multiplicative", [bs, bs],
                                 lambda i, j: rho(B.mul(B.e(i), B.e(j))),
                                 lambda i, j: tensor_mul(B, H.algebra, rho_cols[i], rho_cols[j]), fmt))
    rep.add(compare_vectors("coaction_unit", rho(B.unit), kron(B.unit, H.unit), (), fmt))
    return rep


# ---------------------------------------------------------------------------
# coinvariants


@dataclass(frozen=True, eq=False)
class Coinvariants:
    comodule: ComoduleAlgebra
    subspace: Subspace
    inclusion: LinMap
    algebra: HomAlgebra

    @property
    def dim(self) -> int:
        return self.subspace.dim

    def coords(self, b) -> tuple:
        """Coordinates in A of an element of B; raises if b is not coinvariant."""
        try:
            return self.subspace.coordinates(b)
        except NoSolution:
            raise ValueEscapesCoinvariants("element of B is not coinvariant") from None

    def embed(self, a) -> tuple:
        return self.inclusion(a)


def coinvariants(c: ComoduleAlgebra) -> Coinvariants:
    """``{b : ρ(b) = β⁻¹(b)⊗1}`` with the multiplication and twist of B restricted."""
    B, H = c.algebra, c.hopf
    f = B.field
    binv = B.alpha_power(-1)
    defect = LinMap.from_function(
        B.space, B.space.tensor(H.space),
        lambda i: tuple(x - y for x, y in zip(c.rho.column(i), kron(binv.column(i), H.unit))), f)
    sub = kernel(defect)
    space = sub.as_space()
    incl = sub.inclusion(space)

    def coords(b):
        try:
            return sub.coordinates(b)
        except NoSolution:
            raise ValueEscapesCoinvariants("coinvariants are not a Hom-subalgebra") from None

    n = sub.dim
    basis = sub.basis
    alpha = LinMap.from_function(space, space, lambda j: coords(B.pow(1, basis[j])), f)
    mult = LinMap.from_function(space.tensor(space), space,
                                lambda ij: coords(B.mul(basis[ij // n], basis[ij % n])), f)
    alg = HomAlgebra(space, alpha, mult, coords(B.unit))
    # β-stability in finite dimension makes β|A invertible
    invert(alpha)
    return Coinvariants(c, sub, incl, alg)


# ---------------------------------------------------------------------------
# cleft data


@dataclass(frozen=True, eq=False)
class CleftData:
    comod: ComoduleAlgebra
    gamma: LinMap
    gamma_inv: LinMap | None = None

    def __post_init__(self):
        B, H = self.comod.algebra, self.comod.hopf
        if self.gamma.dom != H.space or self.gamma.cod != B.space:
            raise ShapeMismatch("gamma must map H to B")
        if self.gamma_inv is not None and (self.gamma_inv.dom != H.space or self.gamma_inv.cod != B.space):
            raise ShapeMismatch("gamma_inv must map H to B")
        if tuple(self.gamma(H.unit)) != tuple(B.unit):
            raise NormalizationMissing("gamma(1) is not the unit of B")

    @property
    def algebra(self) -> HomAlgebra:
        return self.comod.algebra

    @property
    def hopf(self) -> HomHopf:
        return self.comod.hopf

    @property
    def coinvariants(self) -> Coinvariants:
        return self.comod.coinvariants

    def with_inverse(self) -> "CleftData":
        """Fill in γ⁻¹ by solving for the convolution inverse when absent."""
        if self.gamma_inv is not None:
            return self
        inv = convolution_invert(self.gamma, self.hopf.coalgebra, self.algebra)
        return replace(self, gamma_inv=inv)


def check_cleft(cd: CleftData) -> AxiomReport:
    B, H = cd.algebra, cd.hopf
    fmt = B.field.format
    rep = AxiomReport("cleft")
    rep.add(compare_vectors("gamma_normalized", cd.gamma(H.unit), B.unit, (), fmt))
    rep.add(compare_maps("gamma_comodule_map", compose(cd.comod.rho, cd.gamma),
                         compose(tensor_map(cd.gamma, LinMap.identity(H.space, H.field)),
                                 H.coalgebra.comult), [H.space]))
    rep.add(compare_maps("gamma_commutes_alpha", compose(cd.gamma, H.alpha),
                         compose(B.alpha, cd.gamma), [H.space]))
    inv = cd.gamma_inv
    if inv is None:
        try:
            inv = cd.with_inverse().gamma_inv
        except (NotInvertible, NotInMorphismSpace) as exc:
            rep.add(AxiomResult("gamma_convolution_invertible", False, (), note=str(exc)))
            return rep
    unit = convolution_unit(H.coalgebra, B)
    rep.add(compare_maps("gamma_inverse_left", convolve(cd.gamma, inv, H.coalgebra, B), unit, [H.space]))
    rep.add(compare_maps("gamma_inverse_right", convolve(inv, cd.gamma, H.coalgebra, B), unit, [H.space]))
    return rep


def lemma42_check(cd: CleftData) -> AxiomReport:
    """``ρ∘γ⁻¹ = (γ⁻¹⊗S)∘τ∘Δ`` and ``Σ b0 γ⁻¹(b1) ∈ A`` for every basis b."""
    cd = cd.with_inverse()
    B, H = cd.algebra, cd.hopf
    inv = cd.gamma_inv
    rep = AxiomReport("cleft_identities")
    tau = flip(H.space, H.space, H.field)
    rhs = compose(tensor_map(inv, H.antipode), compose(tau, H.coalgebra.comult))
    rep.add(compare_maps("coaction_of_gamma_inverse", compose(cd.comod.rho, inv), rhs, [H.space]))
    sub = cd.coinvariants.subspace
    fmt = B.field.format
    bad = None
    for i in range(B.dim):
        v = _b0_ginv_b1(cd, B.e(i))
        if not sub.contains(v):
            bad = (B.space.labels[i], v)
            break
    if bad is None:
        rep.add(AxiomResult("projection_is_coinvariant", True))
    else:
        rep.add(AxiomResult("projection_is_coinvariant", False, (bad[0],),
                            [fmt(x) for x in bad[1]], None, "not in the coinvariants"))
    return rep


def _b0_ginv_b1(cd: CleftData, b) -> tuple:
    B = cd.algebra
    acc = Accumulator(B.dim, B.field)
    for c, b0, b1 in cd.comod.coact(b):
        acc.add(B.mul(b0, cd.gamma_inv(b1)), c)
    return acc.vector()


# ---------------------------------------------------------------------------
# cleft -> crossed


@dataclass(frozen=True, eq=False)
class CleftToCrossed:
    system: CrossedSystem
    phi: LinMap   # A⊗H → B
    psi: LinMap   # B → A⊗H


def cleft_action_and_cocycle(cd: CleftData):
    """The action and cocycle induced on the coinvariants, as maps into A."""
    cd = cd.with_inverse()
    B, H = cd.algebra, cd.hopf
    co = cd.coinvariants
    A = co.algebra
    g, gi = cd.gamma, cd.gamma_inv
    f = B.field
    na, nh = A.dim, H.dim

    def act(idx):
        h, a = divmod(idx, na)
        acc = Accumulator(B.dim, f)
        ab = B.pow(-1, co.embed(A.e(a)))
        for c, h1, h2 in H.split(H.e(h)):
            acc.add(B.mul(B.mul(g(h1), ab), gi(H.pow(1, h2))), c)
        return co.coords(acc.vector())

    def sig(idx):
        h, k = divmod(idx, nh)
        acc = Accumulator(B.dim, f)
        for c1, h1, h2 in H.split(H.e(h)):
            for c2, k1, k2 in H.split(H.e(k)):
                acc.add(B.mul(B.mul(g(h1), g(k1)), gi(H.mul(h2, k2))), c1 * c2)
        return co.coords(acc.vector())

    act_map = LinMap.from_function(H.space.tensor(A.space), A.space, act, f)
    sigma = LinMap.from_function(H.space.tensor(H.space), A.space, sig, f)
    return act_map, sigma


def cleft_to_crossed(cd: CleftData, verify: bool = True) -> CleftToCrossed:
    cd = cd.with_inverse()
    B, H = cd.algebra, cd.hopf
    co = cd.coinvariants
    A = co.algebra
    f = B.field
    act, sigma = cleft_action_and_cocycle(cd)
    system = CrossedSystem(WeakAction(H, A, act), sigma)
    if verify:
        rep = AxiomReport("induced_crossed_system")
        rep.extend(check_weak_action(system.action), "weak_action")
        rep.extend(check_conditions(system))
        if not rep.passed:
            raise ConditionsViolated("induced crossed system fails its conditions", rep)

    nh = H.dim
    AH = A.space.tensor(H.space)
    phi = LinMap.from_function(
        AH, B.space, lambda x: B.mul(co.embed(A.e(x // nh)), cd.gamma(H.e(x % nh))), f)

    def psi_col(i):
        acc = Accumulator(A.dim * nh, f)
        for c, b0, b1 in cd.comod.coact(B.e(i)):
            a = co.coords(_b0_ginv_b1(cd, b0))
            acc.add(kron(a, b1), c)
        return acc.vector()

    psi = LinMap.from_function(B.space, AH, psi_col, f)
    return CleftToCrossed(system, phi, psi)


def check_cleft_to_crossed(cd: CleftData, res: CleftToCrossed) -> AxiomReport:
    """Φ and Ψ are mutually inverse, and Φ is an algebra, A-module and H-comodule map."""
    B, H = cd.algebra, cd.hopf
    s = res.system
    A = s.algebra
    f = B.field
    AH = A.space.tensor(H.space)
    rep = AxiomReport("cleft_to_crossed")
    phi, psi = res.phi, res.psi
    rep.add(compare_maps("phi_psi_identity", compose(phi, psi), LinMap.identity(B.space, f), [B.space]))
    rep.add(compare_maps("psi_phi_identity", compose(psi, phi), LinMap.identity(AH, f), [AH]))
    prod = build_crossed_product(s, force=True)
    rep.add(check_basis_identity("phi_multiplicative", [AH, AH],
                                 lambda x, y: phi(prod.mul(prod.e(x), prod.e(y))),
                                 lambda x, y: B.mul(phi.column(x), phi.column(y)), f.format))
    rep.add(compare_vectors("phi_unit", phi(prod.unit), B.unit, (), f.format))
    rep.add(compare_maps("phi_commutes_alpha", compose(phi, prod.alpha), compose(B.alpha, phi), [AH]))
    co = cd.coinvariants
    rep.add(check_basis_identity("phi_left_module", [A.space, AH],
                                 lambda a, x: phi(left_module_action(s, A.e(a), prod.e(x))),
                                 lambda a, x: B.mul(co.embed(A.e(a)), phi.column(x)), f.format))
    rho_ah = crossed_coaction(s)
    rep.add(compare_maps("phi_comodule_map",
                         compose(tensor_map(phi, LinMap.identity(H.space, f)), rho_ah),
                         compose(cd.comod.rho, phi), [AH]))
    return rep


def left_module_action(s: CrossedSystem, a, x) -> tuple:
    """``a·(b#h) = β⁻¹(a)b # α(h)`` on A⊗H."""
    A, H = s.algebra, s.hopf
    ainv = A.pow(-1, a)
    acc = Accumulator(A.dim * H.dim, A.field)
    for c, (b, h) in split_tensor(x, [A.dim, H.dim]):
        acc.add(kron(A.mul(ainv, A.e(b)), H.pow(1, H.e(h))), c)
    return acc.vector()


# ---------------------------------------------------------------------------
# crossed -> cleft


def crossed_coaction(s: CrossedSystem) -> LinMap:
    """``ρ(a#h) = Σ β⁻¹(a)#h1 ⊗ α(h2)``."""
    return crossed_coaction_formula(s.algebra, s.hopf)


def crossed_coaction_formula(A: HomAlgebra, H: HomHopf) -> LinMap:
    f = A.field
    nh = H.dim
    AH = A.space.tensor(H.space)

    def col(x):
        a, h = divmod(x, nh)
        ainv = A.pow(-1, A.e(a))
        acc = Accumulator(AH.dim * nh, f)
        for c, h1, h2 in H.split(H.e(h)):
            acc.add(kron(kron(ainv, h1), H.pow(1, h2)), c)
        return acc.vector()

    return LinMap.from_function(AH, AH.tensor(H.space), col, f)


def crossed_comodule(s: CrossedSystem, force: bool = False) -> ComoduleAlgebra:
    return ComoduleAlgebra(build_crossed_product(s, force=force), s.hopf, crossed_coaction(s))


def closed_form_gamma_inverse(s: CrossedSystem) -> LinMap:
    """``γ⁻¹(h) = Σ σ⁻¹(S(h21), h22) # S(h1)``."""
    s = s.with_inverse()
    A, H = s.algebra, s.hopf
    f = A.field
    S = H.antipode
    nh = H.dim

    def col(h):
        acc = Accumulator(A.dim * nh, f)
        for c1, h1, h2 in H.split(H.e(h)):
            sh1 = S(h1)
            for c2, h21, h22 in H.split(h2):
                left = bilinear(s.sigma_inv, S(h21), h22)
                acc.add(kron(left, sh1), c1 * c2)
        return acc.vector()

    return LinMap.from_function(H.space, A.space.tensor(H.space), col, f)


def crossed_to_cleft(s: CrossedSystem) -> CleftData:
    """Cleft data on the crossed product: ``γ(h) = 1#α⁻¹(h)`` with the closed-form inverse."""
    comod = crossed_comodule(s)
    A, H = s.algebra, s.hopf
    f = A.field
    gamma = LinMap.from_function(H.space, comod.algebra.space,
                                 lambda h: kron(A.unit, H.pow(-1, H.e(h))), f)
    return CleftData(comod, gamma, closed_form_gamma_inverse(s))


def solver_agrees_with_closed_form(cd: CleftData) -> AxiomResult:
    """The closed-form γ⁻¹ equals the solver's convolution inverse entrywise."""
    solved = convolution_invert(cd.gamma, cd.hopf.coalgebra, cd.algebra)
    return compare_maps("closed_form_inverse_matches_solver", cd.gamma_inv, solved, [cd.hopf.space])
