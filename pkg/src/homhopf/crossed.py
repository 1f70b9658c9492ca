"""Weak actions, cocycles and the crossed product A #_σ H.

The crossed product lives on A⊗H with

    (a#h)(b#k) = Σ a[(α⁻¹(h1)·β⁻²(b)) σ(h21, α⁻¹(k1))] # α²(h22) α(k2),

unit 1#1 and automorphism β⊗α.  It is a Hom-associative algebra exactly
when the twisted-module condition, the cocycle condition with
normalization, and ``σ∘(α⊗α) = β∘σ`` hold; :func:`check_conditions`
tests those and :func:`crossed_associativity_oracle` tests the product
directly, so the two verdicts can be compared.

The weak-action multiplicativity axiom is checked as
``h·(ab) = Σ (h1·a)(h2·b)``.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .homstruct import (
    AxiomReport,
    AxiomResult,
    HomAlgebra,
    HomHopf,
    NotInMorphismSpace,
    NotInvertible,
    check_basis_identity,
    check_hom_algebra,
    compare_maps,
    convolution_invert,
    tensor_coalgebra,
)
from .linalg import Accumulator, LinMap, ShapeMismatch, bilinear, kron, tensor_map


class ConditionsViolated(Exception):
    def __init__(self, msg, report: AxiomReport):
        super().__init__(msg)
        self.report = report


class NotModuleAction(ConditionsViolated):
    pass


@dataclass(frozen=True, eq=False)
class WeakAction:
    hopf: HomHopf
    algebra: HomAlgebra
    act: LinMap

    def __post_init__(self):
        H, A = self.hopf.space, self.algebra.space
        if self.act.dom != H.tensor(A) or self.act.cod != A:
            raise ShapeMismatch("action must map H⊗A to A")

    def __call__(self, h, a) -> tuple:
        return bilinear(self.act, h, a)


@dataclass(frozen=True, eq=False)
class CrossedSystem:
    action: WeakAction
    sigma: LinMap
    sigma_inv: LinMap | None = None

    def __post_init__(self):
        H, A = self.hopf.space, self.algebra.space
        if self.sigma.dom != H.tensor(H) or self.sigma.cod != A:
            raise ShapeMismatch("sigma must map H⊗H to A")

    @property
    def hopf(self) -> HomHopf:
        return self.action.hopf

    @property
    def algebra(self) -> HomAlgebra:
        return self.action.algebra

    @property
    def field(self):
        return self.algebra.field

    def sig(self, h, k) -> tuple:
        return bilinear(self.sigma, h, k)

    def with_inverse(self) -> "CrossedSystem":
        """Attach the convolution inverse of σ over the coalgebra H⊗H."""
        if self.sigma_inv is not None:
            return self
        hh = tensor_coalgebra(self.hopf.coalgebra, self.hopf.coalgebra)
        return replace(self, sigma_inv=convolution_invert(self.sigma, hh, self.algebra))


def trivial_cocycle(hopf: HomHopf, algebra: HomAlgebra) -> LinMap:
    """σ(h,k) = ε(h)ε(k)1."""
    H = hopf.space
    f = algebra.field
    eps = [hopf.eps(hopf.e(i)) for i in range(H.dim)]
    n = H.dim

    def value(ij):
        i, j = divmod(ij, n)
        c = eps[i] * eps[j]
        return tuple(c * x for x in algebra.unit)

    return LinMap.from_function(H.tensor(H), algebra.space, value, f)


def trivial_action(hopf: HomHopf, algebra: HomAlgebra) -> LinMap:
    """h·a = ε(h)β(a)."""
    H, A = hopf.space, algebra.space
    n = A.dim

    def value(ia):
        i, a = divmod(ia, n)
        c = hopf.eps(hopf.e(i))
        return tuple(c * x for x in algebra.alpha.column(a))

    return LinMap.from_function(H.tensor(A), A, value, algebra.field)


# ---------------------------------------------------------------------------
# condition checks


def check_weak_action(w: WeakAction) -> AxiomReport:
    H, A = w.hopf, w.algebra
    hs, as_ = H.space, A.space
    fmt = A.field.format
    rep = AxiomReport("weak_action")
    eh, ea = H.e, A.e

    rep.add(check_basis_identity(
        "action_auto", [hs, as_],
        lambda h, a: A.pow(1, w(eh(h), ea(a))),
        lambda h, a: w(H.pow(1, eh(h)), A.pow(1, ea(a))), fmt))
    rep.add(check_basis_identity(
        "action_unit", [hs],
        lambda h: w(eh(h), A.unit),
        lambda h: tuple(H.eps(eh(h)) * x for x in A.unit), fmt))

    def mult_rhs(h, a, b):
        acc = Accumulator(A.dim, A.field)
        for c, h1, h2 in H.split(eh(h)):
            acc.add(A.mul(w(h1, ea(a)), w(h2, ea(b))), c)
        return acc.vector()

    rep.add(check_basis_identity(
        "action_multiplicative", [hs, as_, as_],
        lambda h, a, b: w(eh(h), A.mul(ea(a), ea(b))), mult_rhs, fmt))
    return rep


def check_twisted_module(s: CrossedSystem) -> AxiomReport:
    """``1·a = β(a)`` and the twisted module condition

        Σ (α(h1)·(l1·β⁻¹(a))) σ(α(h2), α(l2)) = Σ σ(α(h1), α(l1)) (h2 l2 · a).
    """
    H, A, w = s.hopf, s.algebra, s.action
    hs, as_ = H.space, A.space
    fmt = A.field.format
    eh, ea = H.e, A.e
    rep = AxiomReport("twisted_module")
    rep.add(check_basis_identity("unit_acts_as_beta", [as_],
                                 lambda a: w(H.unit, ea(a)),
                                 lambda a: A.pow(1, ea(a)), fmt))

    def lhs(h, l, a):
        acc = Accumulator(A.dim, A.field)
        binv_a = A.pow(-1, ea(a))
        for c1, h1, h2 in H.split(eh(h)):
            for c2, l1, l2 in H.split(eh(l)):
                x = w(H.pow(1, h1), w(l1, binv_a))
                y = s.sig(H.pow(1, h2), H.pow(1, l2))
                acc.add(A.mul(x, y), c1 * c2)
        return acc.vector()

    def rhs(h, l, a):
        acc = Accumulator(A.dim, A.field)
        for c1, h1, h2 in H.split(eh(h)):
            for c2, l1, l2 in H.split(eh(l)):
                x = s.sig(H.pow(1, h1), H.pow(1, l1))
                y = w(H.mul(h2, l2), ea(a))
                acc.add(A.mul(x, y), c1 * c2)
        return acc.vector()

    rep.add(check_basis_identity("twisted_module", [hs, hs, as_], lhs, rhs, fmt))
    return rep


def check_cocycle_condition(s: CrossedSystem) -> AxiomReport:
    """Normalization ``σ(1,h) = σ(h,1) = ε(h)1`` and the cocycle condition

        Σ (α(h1)·σ(l1,k1)) σ(α(h2), l2 k2) = Σ σ(α(h1), α(l1)) σ(h2 l2, k).
    """
    H, A, w = s.hopf, s.algebra, s.action
    hs = H.space
    fmt = A.field.format
    eh = H.e
    rep = AxiomReport("cocycle")

    def eps_one(h):
        c = H.eps(eh(h))
        return tuple(c * x for x in A.unit)

    rep.add(check_basis_identity("sigma_normal_left", [hs], lambda h: s.sig(H.unit, eh(h)), eps_one, fmt))
    rep.add(check_basis_identity("sigma_normal_right", [hs], lambda h: s.sig(eh(h), H.unit), eps_one, fmt))

    def lhs(h, l, k):
        acc = Accumulator(A.dim, A.field)
        for c1, h1, h2 in H.split(eh(h)):
            for c2, l1, l2 in H.split(eh(l)):
                for c3, k1, k2 in H.split(eh(k)):
                    x = w(H.pow(1, h1), s.sig(l1, k1))
                    y = s.sig(H.pow(1, h2), H.mul(l2, k2))
                    acc.add(A.mul(x, y), c1 * c2 * c3)
        return acc.vector()

    def rhs(h, l, k):
        acc = Accumulator(A.dim, A.field)
        kk = eh(k)
        for c1, h1, h2 in H.split(eh(h)):
            for c2, l1, l2 in H.split(eh(l)):
                x = s.sig(H.pow(1, h1), H.pow(1, l1))
                y = s.sig(H.mul(h2, l2), kk)
                acc.add(A.mul(x, y), c1 * c2)
        return acc.vector()

    rep.add(check_basis_identity("cocycle", [hs, hs, hs], lhs, rhs, fmt))
    return rep


def check_sigma_morphism(s: CrossedSystem) -> AxiomReport:
    """``σ∘(α⊗α) = β∘σ``."""
    H = s.hopf
    rep = AxiomReport("sigma_morphism")
    rep.add(compare_maps("sigma_commutes_alpha",
                         s.sigma @ tensor_map(H.alpha, H.alpha),
                         s.algebra.alpha @ s.sigma, [H.space, H.space]))
    return rep


def check_conditions(s: CrossedSystem) -> AxiomReport:
    """Twisted module, cocycle with normalization and σ-morphism conditions together."""
    rep = AxiomReport("crossed_conditions")
    rep.extend(check_twisted_module(s), "twisted_module")
    rep.extend(check_cocycle_condition(s), "cocycle")
    rep.extend(check_sigma_morphism(s), "sigma_morphism")
    return rep


def check_sigma_invertible(s: CrossedSystem) -> AxiomResult:
    try:
        s.with_inverse()
    except (NotInvertible, NotInMorphismSpace) as exc:
        return AxiomResult("sigma_convolution_invertible", False, (), note=str(exc))
    return AxiomResult("sigma_convolution_invertible", True)


# ---------------------------------------------------------------------------
# the product


def crossed_multiplication(s: CrossedSystem) -> LinMap:
    """The crossed product multiplication on (A⊗H)⊗(A⊗H), with no checks."""
    H, A, w = s.hopf, s.algebra, s.action
    na, nh = A.dim, H.dim
    n = na * nh
    f = A.field
    space = A.space.tensor(H.space)
    cache = {}

    def value(idx):
        x, y = divmod(idx, n)
        a, h = divmod(x, nh)
        b, k = divmod(y, nh)
        acc = Accumulator(n, f)
        av = A.e(a)
        b2 = A.pow(-2, A.e(b))
        for c1, h1, h2 in H.split(H.e(h)):
            act = w(H.pow(-1, h1), b2)
            for c2, h21, h22 in H.split(h2):
                for c3, k1, k2 in H.split(H.e(k)):
                    key = (h1, h21, h22, k1, k2)
                    left = A.mul(av, A.mul(act, s.sig(h21, H.pow(-1, k1))))
                    right = cache.get(key)
                    if right is None:
                        right = cache[key] = H.mul(H.pow(2, h22), H.pow(1, k2))
                    acc.add(kron(left, right), c1 * c2 * c3)
        return acc.vector()

    return LinMap.from_function(space.tensor(space), space, value, f)


def product_algebra(s: CrossedSystem) -> HomAlgebra:
    """A⊗H with the crossed product multiplication, unit 1#1 and β⊗α; unchecked."""
    H, A = s.hopf, s.algebra
    return HomAlgebra(A.space.tensor(H.space), tensor_map(A.alpha, H.alpha),
                      crossed_multiplication(s), kron(A.unit, H.unit))


def build_crossed_product(s: CrossedSystem, force: bool = False) -> HomAlgebra:
    """The crossed product Hom-algebra; refuses systems failing the conditions unless ``force``."""
    if not force:
        rep = AxiomReport("crossed_system")
        rep.extend(check_weak_action(s.action), "weak_action")
        rep.extend(check_conditions(s))
        if not rep.passed:
            raise ConditionsViolated(
                "crossed system fails: " + ", ".join(r.axiom for r in rep.failures()), rep)
    return product_algebra(s)


def crossed_associativity_oracle(s: CrossedSystem) -> AxiomReport:
    """Check the Hom-algebra axioms of the product directly, ignoring the conditions."""
    return check_hom_algebra(product_algebra(s), name="crossed_product")


def build_smash_product(w: WeakAction) -> HomAlgebra:
    """The crossed product with σ = ε⊗ε·1; the action must be a Hom-module action."""
    s = CrossedSystem(w, trivial_cocycle(w.hopf, w.algebra))
    rep = check_twisted_module(s)
    if not rep.passed:
        raise NotModuleAction("action is not a module action for the trivial cocycle", rep)
    return build_crossed_product(s)
