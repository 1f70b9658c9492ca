"""Named crossed systems and cleft extensions used by the CLI and the tests.

Group examples are named ``"G/N auto"`` (for instance ``"S3/A3 conj:(12)"``)
and produce the crossed system kN #_σ k[G/N] from an α-equivariant coset
section, together with the Hom-group algebra kG as a comodule algebra over
k[G/N].  The remaining entries are small hand-built systems: scalar
cocycles, smash products with a function algebra, and mutants that break
exactly one family of conditions.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cleft import CleftData, ComoduleAlgebra, crossed_to_cleft
from .crossed import CrossedSystem, WeakAction, trivial_action, trivial_cocycle
from .homgroup import (
    EquivariantSection,
    GroupQuotient,
    HomGroup,
    automorphism_by_name,
    catalog_group,
    coset_cocycle,
    coset_weak_action,
    find_equivariant_section,
    hom_group_algebra,
    normal_quotient,
    parse_example_name,
    quotient_coaction,
    section_map,
    subgroup_by_name,
)
from .homstruct import HomAlgebra, HomHopf, ground_algebra
from .linalg import QQ, LinMap, Space, unit_vec


@dataclass(frozen=True, eq=False)
class GroupExample:
    name: str
    hom_group: HomGroup
    quotient: GroupQuotient
    section: EquivariantSection
    hopf: HomHopf          # k[G/N]
    algebra: HomAlgebra    # kN
    group_algebra: HomHopf  # kG
    system: CrossedSystem

    @property
    def comodule(self) -> ComoduleAlgebra:
        return ComoduleAlgebra(self.group_algebra.algebra, self.hopf,
                               quotient_coaction(self.quotient, self.field))

    @property
    def cleft(self) -> CleftData:
        return CleftData(self.comodule, section_map(self.section, self.field))

    @property
    def field(self):
        return self.algebra.field


def group_example(name: str, field=QQ) -> GroupExample:
    """Build the coset crossed system for ``"G/N auto"``; raises NoSection when none exists."""
    gname, sname, aname = parse_example_name(name)
    g = catalog_group(gname)
    hg = HomGroup(g, automorphism_by_name(g, aname))
    q = normal_quotient(hg, subgroup_by_name(g, sname))
    sec = find_equivariant_section(q)
    H = hom_group_algebra(q.quotient, field)
    A = hom_group_algebra(q.sub, field).algebra
    system = CrossedSystem(WeakAction(H, A, coset_weak_action(sec, field)), coset_cocycle(sec, field))
    return GroupExample(name, hg, q, sec, H, A, hom_group_algebra(hg, field), system)


def _group_hopf(gname: str, aname: str, field) -> HomHopf:
    g = catalog_group(gname)
    return hom_group_algebra(HomGroup(g, automorphism_by_name(g, aname)), field)


def scalar_system(gname: str, aname: str, values: dict, field=QQ) -> CrossedSystem:
    """A = k with trivial action and σ(x,y) = values.get((x,y), 1) on group elements."""
    H = _group_hopf(gname, aname, field)
    A = ground_algebra(field)
    n = H.dim
    sig = LinMap.from_function(H.space.tensor(H.space), A.space,
                               lambda ij: (field(values.get(divmod(ij, n), 1)),), field)
    return CrossedSystem(WeakAction(H, A, trivial_action(H, A)), sig)


def function_algebra(gname: str, aname: str, field=QQ) -> HomAlgebra:
    """Functions on G with idempotent basis p_x, twisted by the automorphism: p_x p_y = δ_xy p_α(x)."""
    g = catalog_group(gname)
    auto = automorphism_by_name(g, aname)
    n = g.order
    s = Space(tuple(f"p{label}" for label in g.labels))
    zero = tuple(field.zero for _ in range(n))
    beta = LinMap.from_function(s, s, lambda x: unit_vec(n, auto[x], field), field)
    mult = LinMap.from_function(
        s.tensor(s), s, lambda ij: unit_vec(n, auto[ij // n], field) if ij // n == ij % n else zero, field)
    return HomAlgebra(s, beta, mult, tuple(field.one for _ in range(n)))


def translation_smash(gname: str, aname: str, field=QQ, shift: str | None = None) -> CrossedSystem:
    """kG acting on functions on G by ``g·a = τ_g(β(a))`` with trivial σ.

    With ``shift`` set, every non-identity g translates by that fixed
    element instead, which keeps a weak action (for α = id) but breaks the
    module law.
    """
    g = catalog_group(gname)
    auto = automorphism_by_name(g, aname)
    H = hom_group_algebra(HomGroup(g, auto), field)
    A = function_algebra(gname, aname, field)
    n = g.order
    fixed = g.index(shift) if shift is not None else None

    def act(idx):
        h, x = divmod(idx, n)
        t = h if fixed is None else (g.identity if h == g.identity else fixed)
        return unit_vec(n, g.mul(t, auto[x]), field)

    w = WeakAction(H, A, LinMap.from_function(H.space.tensor(A.space), A.space, act, field))
    return CrossedSystem(w, trivial_cocycle(H, A))


def _replace_sigma(s: CrossedSystem, pairs, fn) -> CrossedSystem:
    """Apply ``fn`` to the σ-columns of the given (h, k) basis index pairs."""
    n = s.hopf.dim
    cols = [fn(c) if divmod(i, n) in pairs else c for i, c in enumerate(s.sigma.columns())]
    return CrossedSystem(s.action, LinMap.from_columns(s.sigma.dom, s.sigma.cod, cols, s.field))


def _swap(c):
    return (c[1], c[0]) + tuple(c[2:])


def _mutant_scaled(field):
    s = group_example("S3/A3 conj:(12)", field).system
    return _replace_sigma(s, {(0, 0)}, lambda c: tuple(2 * x for x in c))


def _mutant_orbit(field):
    s = group_example("Q8/Z rot", field).system
    return _replace_sigma(s, {(1, 1), (2, 2), (3, 3)}, _swap)


def _mutant_point(field):
    s = group_example("Q8/Z rot", field).system
    return _replace_sigma(s, {(1, 2)}, _swap)


VALID_GROUP_EXAMPLES = (
    "S3/A3 conj:(12)",
    "S3/A3",
    "Q8/Z rot",
    "Q8/Z",
    "D4/C4 conj:s",
    "Z6/{0,3} inv",
    "Z4/{0,2}",
    "Z2",
)

NO_SECTION_EXAMPLES = ("Z4/{0,2} inv", "D4/Z conj:r", "S3/A3 conj:(123)")

SYSTEMS = {
    "twisted-z2": lambda f: scalar_system("Z2", "id", {(1, 1): -1}, f),
    "scalar-z3-inv": lambda f: scalar_system("Z3", "inv", {(1, 1): -1, (2, 2): -1}, f),
    "smash-z3": lambda f: translation_smash("Z3", "id", f),
    "hom-smash-z3-inv": lambda f: translation_smash("Z3", "inv", f),
}

# name -> (builder, condition family the mutation breaks)
MUTANTS = {
    "mutant-shift-action": (lambda f: translation_smash("Z3", "id", f, shift="1"), "twisted_module"),
    "mutant-sigma-scaled": (_mutant_scaled, "normalization"),
    "mutant-sigma-orbit": (_mutant_orbit, "cocycle"),
    "mutant-sigma-point": (_mutant_point, "sigma_morphism"),
    "mutant-scalar-noninvariant": (
        lambda f: scalar_system("Z3", "inv", {(1, 1): -1}, f), "sigma_morphism"),
}


def valid_systems(field=QQ) -> dict:
    out = {name: group_example(name, field).system for name in VALID_GROUP_EXAMPLES}
    out.update({name: build(field) for name, build in SYSTEMS.items()})
    return out


def mutant_systems(field=QQ) -> dict:
    return {name: build(field) for name, (build, _) in MUTANTS.items()}


def system_by_name(name: str, field=QQ) -> CrossedSystem:
    if name in SYSTEMS:
        return SYSTEMS[name](field)
    if name in MUTANTS:
        return MUTANTS[name][0](field)
    return group_example(name, field).system


def identity_cleft(gname: str = "Z2", aname: str = "id", field=QQ) -> CleftData:
    """H over itself: B = H, ρ = Δ, γ = id."""
    H = _group_hopf(gname, aname, field)
    comod = ComoduleAlgebra(H.algebra, H, H.coalgebra.comult)
    return CleftData(comod, LinMap.identity(H.space, field))


def cleft_corpus(field=QQ) -> dict:
    """Every valid system as a crossed-product cleft extension, plus kG over k[G/N] and H over H."""
    out = {}
    for name, s in valid_systems(field).items():
        out[f"crossed:{name}"] = crossed_to_cleft(s)
    for name in VALID_GROUP_EXAMPLES:
        out[f"group:{name}"] = group_example(name, field).cleft
    out["identity:Z2"] = identity_cleft("Z2", "id", field)
    out["identity:Z3 inv"] = identity_cleft("Z3", "inv", field)
    return out
