"""Monoidal Hom-algebras, Hom-coalgebras and Hom-Hopf algebras by structure constants.

Each structure is a frozen dataclass holding :class:`~homhopf.linalg.LinMap`
structure maps.  The ``check_*`` functions evaluate every axiom on every
basis tuple and return an :class:`AxiomReport` whose failing entries carry
the lexicographically first counterexample.

Counit convention: the counit law is checked as
``Σ c1 ε(c2) = Σ ε(c1) c2 = γ⁻¹(c)`` where γ is the coalgebra's own
twisting automorphism.  Published statements of this axiom sometimes write
``λ⁻¹(c)`` with λ undeclared; γ⁻¹ is the only reading under which the
Hom-group algebras (Δ(g) = α⁻¹(g)⊗α⁻¹(g)) are coalgebras.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Sequence

from .linalg import (
    K,
    LinAlgError,
    LinMap,
    NoSolution,
    ShapeMismatch,
    Singular,
    Space,
    Subspace,
    bilinear,
    compose,
    compose_all,
    first_difference,
    flip,
    invert,
    is_invertible,
    nullspace,
    power,
    solve_system,
    tensor_map,
    tensor_maps,
    unit_vec,
    split_tensor,
    tensor_apply,
    unravel,
    zero_vec,
)


class NotInvertible(LinAlgError):
    pass


class NotInMorphismSpace(LinAlgError, ValueError):
    pass


class NoAntipode(LinAlgError):
    pass


# ---------------------------------------------------------------------------
# reports


@dataclass
class AxiomResult:
    axiom: str
    passed: bool
    counterexample: tuple | None = None
    lhs: list | None = None
    rhs: list | None = None
    note: str | None = None

    def to_dict(self) -> dict:
        d = {"axiom": self.axiom, "passed": self.passed}
        if not self.passed:
            d["counterexample"] = list(self.counterexample) if self.counterexample is not None else None
            d["lhs"] = self.lhs
            d["rhs"] = self.rhs
        if self.note:
            d["note"] = self.note
        return d


@dataclass
class AxiomReport:
    structure: str
    results: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def __bool__(self):
        return self.passed

    def failures(self) -> list:
        return [r for r in self.results if not r.passed]

    def result(self, axiom: str) -> AxiomResult:
        for r in self.results:
            if r.axiom == axiom:
                return r
        raise KeyError(axiom)

    def extend(self, other: "AxiomReport", prefix: str | None = None) -> "AxiomReport":
        for r in other.results:
            if prefix:
                r = AxiomResult(f"{prefix}.{r.axiom}", r.passed, r.counterexample,
                                r.lhs, r.rhs, r.note)
            self.results.append(r)
        return self

    def add(self, result: AxiomResult) -> None:
        self.results.append(result)

    def to_dict(self) -> dict:
        return {"structure": self.structure, "passed": self.passed,
                "axioms": [r.to_dict() for r in self.results]}

    def format_text(self) -> str:
        lines = [f"{self.structure}: {'PASS' if self.passed else 'FAIL'}"]
        for r in self.results:
            mark = "ok  " if r.passed else "FAIL"
            line = f"  [{mark}] {r.axiom}"
            if not r.passed and r.counterexample is not None:
                line += f"  at ({', '.join(r.counterexample)})"
                if r.lhs is not None:
                    line += f"\n         lhs = {r.lhs}\n         rhs = {r.rhs}"
            if r.note:
                line += f"  ({r.note})"
            lines.append(line)
        return "\n".join(lines)


def compare_maps(axiom: str, lhs: LinMap, rhs: LinMap, factors: Sequence[Space]) -> AxiomResult:
    """Compare two maps column by column; the first differing column is the counterexample."""
    c = first_difference(lhs, rhs)
    if c is None:
        return AxiomResult(axiom, True)
    dims = [s.dim for s in factors]
    multi = unravel(c, dims) if factors else []
    labels = tuple(s.labels[i] for s, i in zip(factors, multi))
    fmt = lhs.field.format
    return AxiomResult(axiom, False, labels,
                       [fmt(x) for x in lhs.column(c)], [fmt(x) for x in rhs.column(c)])


def compare_vectors(axiom: str, lhs, rhs, where: tuple, fmt) -> AxiomResult:
    if tuple(lhs) == tuple(rhs):
        return AxiomResult(axiom, True)
    return AxiomResult(axiom, False, where, [fmt(x) for x in lhs], [fmt(x) for x in rhs])


def check_basis_identity(axiom: str, factors: Sequence[Space], lhs: Callable, rhs: Callable, fmt) -> AxiomResult:
    """Evaluate ``lhs(*idx) == rhs(*idx)`` over all basis tuples in lexicographic order."""
    dims = [s.dim for s in factors]
    total = 1
    for d in dims:
        total *= d
    for flat in range(total):
        idx = unravel(flat, dims)
        left, right = lhs(*idx), rhs(*idx)
        if tuple(left) != tuple(right):
            labels = tuple(s.labels[i] for s, i in zip(factors, idx))
            return AxiomResult(axiom, False, labels, [fmt(x) for x in left], [fmt(x) for x in right])
    return AxiomResult(axiom, True)


# ---------------------------------------------------------------------------
# structures


@dataclass(frozen=True, eq=False)
class HomAlgebra:
    space: Space
    alpha: LinMap
    mult: LinMap
    unit: tuple

    def __post_init__(self):
        s = self.space
        if self.alpha.dom != s or self.alpha.cod != s:
            raise ShapeMismatch("alpha must be an endomorphism of the space")
        if self.mult.dom != s.tensor(s) or self.mult.cod != s:
            raise ShapeMismatch("mult must map space⊗space to space")
        if len(self.unit) != s.dim:
            raise ShapeMismatch("unit has the wrong length")

    @property
    def field(self):
        return self.alpha.field

    @property
    def dim(self) -> int:
        return self.space.dim

    def e(self, i: int) -> tuple:
        return unit_vec(self.dim, i, self.field)

    def zero(self) -> tuple:
        return zero_vec(self.dim, self.field)

    def mul(self, x, y) -> tuple:
        return bilinear(self.mult, x, y)

    @cached_property
    def _powers(self):
        return {}

    def alpha_power(self, k: int) -> LinMap:
        if k not in self._powers:
            self._powers[k] = power(self.alpha, k)
        return self._powers[k]

    def pow(self, k: int, x) -> tuple:
        """``α^k(x)``."""
        if k == 0:
            return tuple(x)
        return self.alpha_power(k)(x)

    @cached_property
    def unit_map(self) -> LinMap:
        """η: k → A."""
        return LinMap.from_columns(K, self.space, [self.unit], self.field)

    def left_mult(self, x) -> LinMap:
        return LinMap.from_function(self.space, self.space, lambda j: self.mul(x, self.e(j)), self.field)

    def right_mult(self, x) -> LinMap:
        return LinMap.from_function(self.space, self.space, lambda j: self.mul(self.e(j), x), self.field)


@dataclass(frozen=True, eq=False)
class HomCoalgebra:
    space: Space
    auto: LinMap
    comult: LinMap
    counit: LinMap

    def __post_init__(self):
        s = self.space
        if self.auto.dom != s or self.auto.cod != s:
            raise ShapeMismatch("automorphism must be an endomorphism of the space")
        if self.comult.dom != s or self.comult.cod != s.tensor(s):
            raise ShapeMismatch("comult must map space to space⊗space")
        if self.counit.dom != s or self.counit.cod != K:
            raise ShapeMismatch("counit must map space to the ground field")

    @property
    def field(self):
        return self.auto.field

    @property
    def dim(self) -> int:
        return self.space.dim

    def e(self, i: int) -> tuple:
        return unit_vec(self.dim, i, self.field)

    @cached_property
    def _split_basis(self):
        n = self.dim
        out = []
        for c in range(n):
            terms = []
            for r, x in self.comult._sparse_cols[c]:
                i, j = divmod(r, n)
                terms.append((x, i, j))
            out.append(terms)
        return out

    def split(self, x) -> list:
        """Sweedler terms ``(coef, x1, x2)`` of Δ(x), with x1, x2 basis vectors."""
        acc = {}
        for c, a in enumerate(x):
            if a:
                for coef, i, j in self._split_basis[c]:
                    acc[(i, j)] = acc.get((i, j), 0) + a * coef
        return [(coef, self.e(i), self.e(j)) for (i, j), coef in sorted(acc.items()) if coef]

    def eps(self, x):
        return self.counit(x)[0]

    @cached_property
    def _powers(self):
        return {}

    def auto_power(self, k: int) -> LinMap:
        if k not in self._powers:
            self._powers[k] = power(self.auto, k)
        return self._powers[k]

    def pow(self, k: int, x) -> tuple:
        if k == 0:
            return tuple(x)
        return self.auto_power(k)(x)


@dataclass(frozen=True, eq=False)
class HomHopf:
    """A monoidal Hom-bialgebra, with an antipode when ``antipode`` is set."""

    algebra: HomAlgebra
    coalgebra: HomCoalgebra
    antipode: LinMap | None = None

    def __post_init__(self):
        if self.algebra.space != self.coalgebra.space:
            raise ShapeMismatch("algebra and coalgebra live on different spaces")

    @property
    def space(self) -> Space:
        return self.algebra.space

    @property
    def field(self):
        return self.algebra.field

    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def alpha(self) -> LinMap:
        return self.algebra.alpha

    @property
    def unit(self) -> tuple:
        return self.algebra.unit

    def e(self, i: int) -> tuple:
        return self.algebra.e(i)

    def mul(self, x, y):
        return self.algebra.mul(x, y)

    def pow(self, k, x):
        return self.algebra.pow(k, x)

    def split(self, x):
        return self.coalgebra.split(x)

    def eps(self, x):
        return self.coalgebra.eps(x)

    def S(self, x):
        return self.antipode(x)


# ---------------------------------------------------------------------------
# tensor constructions


def tensor_mul(a: HomAlgebra, b: HomAlgebra, x, y) -> tuple:
    """Product in ``A⊗B`` of two tensor vectors, evaluated sparsely."""
    nb = b.dim
    out = [a.field.zero] * (a.dim * nb)
    ea, eb = a.e, b.e
    for cx, (i, j) in split_tensor(x, [a.dim, nb]):
        for cy, (k, l) in split_tensor(y, [a.dim, nb]):
            c = cx * cy
            left = a.mul(ea(i), ea(k))
            right = b.mul(eb(j), eb(l))
            for p, u in enumerate(left):
                if u:
                    cu = c * u
                    for q, v in enumerate(right):
                        if v:
                            out[p * nb + q] = out[p * nb + q] + cu * v
    return tuple(out)


def tensor_algebra(a: HomAlgebra, b: HomAlgebra) -> HomAlgebra:
    """``A⊗B`` with ``(a⊗b)(a'⊗b') = aa'⊗bb'`` and automorphism ``α⊗β``."""
    f = a.field
    n = a.dim * b.dim
    space = a.space.tensor(b.space)
    mult = LinMap.from_function(
        space.tensor(space), space,
        lambda ij: tensor_mul(a, b, unit_vec(n, ij // n, f), unit_vec(n, ij % n, f)), f)
    unit = tuple(x * y for x in a.unit for y in b.unit)
    return HomAlgebra(space, tensor_map(a.alpha, b.alpha), mult, unit)


def tensor_coalgebra(c: HomCoalgebra, d: HomCoalgebra) -> HomCoalgebra:
    """``C⊗D`` with ``Δ(c⊗d) = (c1⊗d1)⊗(c2⊗d2)``, counit ``ε⊗ε``, automorphism ``γ⊗δ``."""
    f = c.field
    ic, idd = LinMap.identity(c.space, f), LinMap.identity(d.space, f)
    middle = tensor_maps(ic, flip(c.space, d.space, f), idd)
    comult = compose(middle, tensor_map(c.comult, d.comult))
    return HomCoalgebra(c.space.tensor(d.space), tensor_map(c.auto, d.auto), comult,
                        tensor_map(c.counit, d.counit))


def ground_algebra(field, label: str = "1") -> HomAlgebra:
    """The ground field as a Hom-algebra with trivial twist."""
    s = Space((label,))
    one = LinMap.identity(s, field)
    mult = LinMap(s.tensor(s), s, [[field.one]], field)
    return HomAlgebra(s, one, mult, (field.one,))


def ground_hopf(field, label: str = "1") -> HomHopf:
    alg = ground_algebra(field, label)
    s = alg.space
    coal = HomCoalgebra(s, alg.alpha, LinMap(s, s.tensor(s), [[field.one]], field),
                        LinMap(s, K, [[field.one]], field))
    return HomHopf(alg, coal, LinMap.identity(s, field))


# ---------------------------------------------------------------------------
# checkers


def check_hom_algebra(a: HomAlgebra, name: str = "hom_algebra") -> AxiomReport:
    s, f = a.space, a.field
    fmt = f.format
    rep = AxiomReport(name)
    if not is_invertible(a.alpha):
        rep.add(AxiomResult("alpha_invertible", False, (), note="alpha is singular"))
    else:
        rep.add(AxiomResult("alpha_invertible", True))
    e, mul, al = a.e, a.mul, a.alpha
    alpha_cols = al.columns()
    rep.add(check_basis_identity(
        "hom_associativity", [s, s, s],
        lambda i, j, k: mul(alpha_cols[i], mul(e(j), e(k))),
        lambda i, j, k: mul(mul(e(i), e(j)), alpha_cols[k]), fmt))
    rep.add(check_basis_identity("unit_right", [s], lambda i: mul(e(i), a.unit),
                                 lambda i: alpha_cols[i], fmt))
    rep.add(check_basis_identity("unit_left", [s], lambda i: mul(a.unit, e(i)),
                                 lambda i: alpha_cols[i], fmt))
    rep.add(check_basis_identity("alpha_multiplicative", [s, s],
                                 lambda i, j: al(mul(e(i), e(j))),
                                 lambda i, j: mul(alpha_cols[i], alpha_cols[j]), fmt))
    rep.add(compare_vectors("alpha_unit", al(a.unit), a.unit, (), fmt))
    return rep


def check_hom_coalgebra(c: HomCoalgebra, name: str = "hom_coalgebra") -> AxiomReport:
    s, f = c.space, c.field
    fmt = f.format
    rep = AxiomReport(name)
    ids = LinMap.identity(s, f)
    try:
        ginv = invert(c.auto)
        rep.add(AxiomResult("auto_invertible", True))
    except Singular:
        rep.add(AxiomResult("auto_invertible", False, (), note="automorphism is singular"))
        return rep
    d, g, eps = c.comult, c.auto, c.counit
    dcols = d.columns()
    rep.add(check_basis_identity("hom_coassociativity", [s],
                                 lambda i: tensor_apply([ginv, d], dcols[i]),
                                 lambda i: tensor_apply([d, ginv], dcols[i]), fmt))
    ginv_cols = ginv.columns()
    rep.add(check_basis_identity("counit_right", [s], lambda i: tensor_apply([ids, eps], dcols[i]),
                                 lambda i: ginv_cols[i], fmt))
    rep.add(check_basis_identity("counit_left", [s], lambda i: tensor_apply([eps, ids], dcols[i]),
                                 lambda i: ginv_cols[i], fmt))
    rep.add(check_basis_identity("comult_auto", [s], lambda i: d(g.column(i)),
                                 lambda i: tensor_apply([g, g], dcols[i]), fmt))
    rep.add(compare_maps("counit_auto", compose(eps, g), eps, [s]))
    return rep


def check_hom_bialgebra(h: HomHopf, name: str = "hom_bialgebra") -> AxiomReport:
    a, c = h.algebra, h.coalgebra
    if a.space != c.space:
        raise ShapeMismatch("algebra and coalgebra live on different spaces")
    s, f = a.space, a.field
    fmt = f.format
    rep = AxiomReport(name)
    rep.extend(check_hom_algebra(a), "algebra")
    rep.extend(check_hom_coalgebra(c), "coalgebra")
    rep.add(compare_maps("shared_automorphism", a.alpha, c.auto, [s]))
    e, mul, delta, eps = a.e, a.mul, c.comult, c.eps
    rep.add(check_basis_identity("comult_multiplicative", [s, s],
                                 lambda i, j: delta(mul(e(i), e(j))),
                                 lambda i, j: tensor_mul(a, a, delta.column(i), delta.column(j)), fmt))
    rep.add(compare_vectors("comult_unit", delta(a.unit),
                            tuple(x * y for x in a.unit for y in a.unit), (), fmt))
    rep.add(check_basis_identity("counit_multiplicative", [s, s],
                                 lambda i, j: (eps(mul(e(i), e(j))),),
                                 lambda i, j: (eps(e(i)) * eps(e(j)),), fmt))
    rep.add(compare_vectors("counit_unit", (eps(a.unit),), (f.one,), (), fmt))
    return rep


def check_hom_hopf(h: HomHopf, name: str = "hom_hopf", anti: bool = False) -> AxiomReport:
    """Bialgebra axioms, ``S∘α = α∘S`` and the two antipode equations.

    With ``anti=True`` also checks that S is a Hom-anti-algebra and
    Hom-anti-coalgebra map, which is commonly asserted but not part of the
    definition.
    """
    if h.antipode is None:
        raise ShapeMismatch("no antipode supplied")
    S, al = h.antipode, h.alpha
    s, f = h.space, h.field
    if S.dom != s or S.cod != s:
        raise ShapeMismatch("antipode must be an endomorphism")
    rep = AxiomReport(name)
    rep.extend(check_hom_bialgebra(h))
    ids = LinMap.identity(s, f)
    m, d = h.algebra.mult, h.coalgebra.comult
    unit_counit = convolution_unit(h.coalgebra, h.algebra)
    rep.add(compare_maps("antipode_commutes_alpha", compose(S, al), compose(al, S), [s]))
    rep.add(compare_maps("antipode_left", compose_all(m, tensor_map(S, ids), d), unit_counit, [s]))
    rep.add(compare_maps("antipode_right", compose_all(m, tensor_map(ids, S), d), unit_counit, [s]))
    if anti:
        rep.extend(check_antipode_anti(h))
    return rep


def check_antipode_anti(h: HomHopf) -> AxiomReport:
    s, f = h.space, h.field
    fmt = f.format
    S, d = h.antipode, h.coalgebra.comult
    e, mul = h.e, h.mul
    tau = flip(s, s, f)
    rep = AxiomReport("antipode_anti")
    rep.add(check_basis_identity("anti_multiplicative", [s, s],
                                 lambda i, j: S(mul(e(i), e(j))),
                                 lambda i, j: mul(S.column(j), S.column(i)), fmt))
    rep.add(compare_vectors("anti_unit", S(h.unit), h.unit, (), fmt))
    rep.add(check_basis_identity("anti_comultiplicative", [s], lambda i: d(S.column(i)),
                                 lambda i: tau(tensor_apply([S, S], d.column(i))), fmt))
    rep.add(compare_maps("anti_counit", compose(h.coalgebra.counit, S), h.coalgebra.counit, [s]))
    return rep


# ---------------------------------------------------------------------------
# convolution


def convolve(f: LinMap, g: LinMap, c: HomCoalgebra, a: HomAlgebra) -> LinMap:
    """``(f∗g)(x) = Σ f(x1) g(x2)``."""
    for h in (f, g):
        if h.dom != c.space or h.cod != a.space:
            raise ShapeMismatch("convolution factors must map the coalgebra into the algebra")
    return compose_all(a.mult, tensor_map(f, g), c.comult)


def convolution_unit(c: HomCoalgebra, a: HomAlgebra) -> LinMap:
    """``x ↦ ε(x) 1``."""
    return compose(a.unit_map, c.counit)


@dataclass(frozen=True)
class MorphismSpace:
    """Linear maps ``f: C → A`` with ``f∘γ = β∘f``, as a subspace of vectorized matrices."""

    source: HomCoalgebra
    target: HomAlgebra
    subspace: Subspace

    def contains(self, f: LinMap) -> bool:
        return is_morphism(f, self.source, self.target)

    def element(self, coords) -> LinMap:
        vec = [self.target.field.zero] * (self.target.dim * self.source.dim)
        for c, b in zip(coords, self.subspace.basis):
            if c:
                vec = [x + c * y for x, y in zip(vec, b)]
        return _unvec(vec, self.source.space, self.target.space, self.target.field)


def _unvec(vec, dom: Space, cod: Space, field) -> LinMap:
    n = dom.dim
    return LinMap(dom, cod, [vec[r * n:(r + 1) * n] for r in range(cod.dim)], field)


def is_morphism(f: LinMap, c: HomCoalgebra, a: HomAlgebra) -> bool:
    return compose(f, c.auto).same_matrix(compose(a.alpha, f))


def _commute_rows(c: HomCoalgebra, a: HomAlgebra):
    """Rows of the linear constraint ``g∘γ − β∘g = 0`` on vec(g) (row-major)."""
    n, m = c.dim, a.dim
    F = a.field
    gam, beta = c.auto.rows, a.alpha.rows
    rows = []
    for r in range(m):
        for col in range(n):
            # (g γ)[r][col] - (β g)[r][col]
            row = [F.zero] * (m * n)
            for k in range(n):
                x = gam[k][col]
                if x:
                    row[r * n + k] = row[r * n + k] + x
            for k in range(m):
                y = beta[r][k]
                if y:
                    row[k * n + col] = row[k * n + col] - y
            rows.append(row)
    return rows


def morphism_space(c: HomCoalgebra, a: HomAlgebra) -> MorphismSpace:
    n, m = c.dim, a.dim
    dom = Space(tuple(f"{a.space.labels[r]}<-{c.space.labels[k]}" for r in range(m) for k in range(n)))
    return MorphismSpace(c, a, nullspace(_commute_rows(c, a), dom, a.field))


def convolution_invert(f: LinMap, c: HomCoalgebra, a: HomAlgebra) -> LinMap:
    """Two-sided convolution inverse of ``f`` inside the morphism space.

    Solves the linear system ``f∗g = g∗f = ηε``, ``g∘γ = β∘g`` in the
    entries of g.  Raises :class:`NotInvertible` when it has no solution.
    """
    if f.dom != c.space or f.cod != a.space:
        raise ShapeMismatch("f must map the coalgebra into the algebra")
    if not is_morphism(f, c, a):
        raise NotInMorphismSpace("f does not commute with the twisting automorphisms")
    F = a.field
    n, m = c.dim, a.dim
    unknowns = m * n
    rows = _commute_rows(c, a)
    rhs = [F.zero] * len(rows)
    # left and right multiplication matrices by f(e_i)
    fvals = f.columns()
    Lmul = [a.left_mult(v).rows for v in fvals]
    Rmul = [a.right_mult(v).rows for v in fvals]
    eta_eps = convolution_unit(c, a)
    for x in range(n):
        target = eta_eps.column(x)
        for which in ("fg", "gf"):
            eqs = [[F.zero] * unknowns for _ in range(m)]
            for coef, i, j in c._split_basis[x]:
                # f∗g: f(e_i) g(e_j);  g∗f: g(e_i) f(e_j)
                mat, col = (Lmul[i], j) if which == "fg" else (Rmul[j], i)
                for r in range(m):
                    mr = mat[r]
                    er = eqs[r]
                    for k in range(m):
                        y = mr[k]
                        if y:
                            er[k * n + col] = er[k * n + col] + coef * y
            rows.extend(eqs)
            rhs.extend(target)
    try:
        sol = solve_system(rows, rhs, unknowns, F)
    except NoSolution:
        raise NotInvertible("no convolution inverse exists") from None
    return _unvec(sol, c.space, a.space, F)


def compute_antipode(a: HomAlgebra, c: HomCoalgebra) -> LinMap:
    """The antipode as the convolution inverse of the identity."""
    if a.space != c.space:
        raise ShapeMismatch("algebra and coalgebra live on different spaces")
    ident = LinMap.identity(a.space, a.field)
    try:
        S = convolution_invert(ident, c, a)
    except NotInvertible:
        raise NoAntipode("identity is not convolution invertible") from None
    except NotInMorphismSpace:
        raise NoAntipode("algebra and coalgebra automorphisms differ") from None
    assert compose(S, a.alpha).same_matrix(compose(a.alpha, S))
    return S
