"""Hom-groups, Hom-group algebras, quotients and coset cocycles.

A Hom-group here is a finite group G with an automorphism α and the
twisted product ``g·h = α(gh)``.  Its group algebra kG carries

    mult(g, h) = α(gh),   unit e,   Δ(g) = α⁻¹(g)⊗α⁻¹(g),   ε(g) = 1,   S(g) = g⁻¹,

which is a monoidal Hom-Hopf algebra.  The ordinary product of kG would
violate ``a·1 = α(a)`` whenever α ≠ id, so the twisted product is used.

For an α-stable normal subgroup N and an α-equivariant coset section γ
(``α∘γ = γ∘ᾱ``, ``γ(1̄) = e``) the weak action and cocycle

    x̄ ▷ m    = [γ(ᾱ⁻¹x̄)·α⁻¹(m)]·γ(x̄)⁻¹
    σ(x̄, ȳ) = [γ(ᾱ⁻¹x̄)·γ(ᾱ⁻¹ȳ)]·γ(ᾱ⁻¹x̄·ᾱ⁻¹ȳ)⁻¹

are evaluated literally: every product is the Hom-group product, every
``⁻¹`` is the ordinary group inverse of the representative.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import cached_property

from .homstruct import HomAlgebra, HomCoalgebra, HomHopf
from .linalg import K, LinMap, Space, unit_vec


class GroupError(ValueError):
    pass


class InvalidAutomorphism(GroupError):
    pass


class NotSubgroup(GroupError):
    pass


class NotNormal(GroupError):
    pass


class NotAlphaStable(GroupError):
    pass


class NoSection(GroupError):
    def __init__(self, msg, searched=()):
        super().__init__(msg)
        self.searched = list(searched)


class ActionLeavesN(GroupError):
    pass


class CocycleLeavesN(GroupError):
    pass


# ---------------------------------------------------------------------------
# finite groups


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    labels: tuple
    table: tuple
    name: str = ""

    def __post_init__(self):
        n = len(self.labels)
        object.__setattr__(self, "labels", tuple(str(x) for x in self.labels))
        object.__setattr__(self, "table", tuple(tuple(int(x) for x in r) for r in self.table))
        if n == 0:
            raise GroupError("a group needs at least one element")
        if len(set(self.labels)) != n:
            raise GroupError("duplicate element labels")
        if len(self.table) != n or any(len(r) != n for r in self.table):
            raise GroupError("multiplication table has the wrong shape")
        t = self.table
        if any(not 0 <= x < n for r in t for x in r):
            raise GroupError("table entry out of range")
        ids = [e for e in range(n) if all(t[e][g] == g and t[g][e] == g for g in range(n))]
        if not ids:
            raise GroupError("no identity element")
        e = ids[0]
        for a, b, c in itertools.product(range(n), repeat=3):
            if t[t[a][b]][c] != t[a][t[b][c]]:
                raise GroupError(f"table not associative at {self.labels[a]},{self.labels[b]},{self.labels[c]}")
        for g in range(n):
            if e not in t[g]:
                raise GroupError(f"{self.labels[g]} has no inverse")
        object.__setattr__(self, "identity", e)
        object.__setattr__(self, "inverse", tuple(t[g].index(e) for g in range(n)))

    @property
    def order(self) -> int:
        return len(self.labels)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverse[a]

    def index(self, label) -> int:
        try:
            return self.labels.index(str(label))
        except ValueError:
            raise GroupError(f"no element labelled {label!r} in {self.name or 'group'}") from None

    def is_abelian(self) -> bool:
        t = self.table
        return all(t[a][b] == t[b][a] for a in range(self.order) for b in range(a))

    def conj(self, g: int, x: int) -> int:
        return self.mul(self.mul(g, x), self.inv(g))

    def center(self) -> tuple:
        return tuple(z for z in range(self.order)
                     if all(self.mul(z, g) == self.mul(g, z) for g in range(self.order)))

    @classmethod
    def from_elements(cls, elements, mul, label, name="") -> "FiniteGroup":
        elements = list(elements)
        pos = {x: i for i, x in enumerate(elements)}
        table = [[pos[mul(a, b)] for b in elements] for a in elements]
        return cls(tuple(label(x) for x in elements), tuple(map(tuple, table)), name)


def is_automorphism(g: FiniteGroup, perm) -> bool:
    n = g.order
    if sorted(perm) != list(range(n)):
        return False
    return all(perm[g.mul(a, b)] == g.mul(perm[a], perm[b]) for a in range(n) for b in range(n))


@dataclass(frozen=True, eq=False)
class HomGroup:
    group: FiniteGroup
    auto: tuple

    def __post_init__(self):
        object.__setattr__(self, "auto", tuple(int(x) for x in self.auto))
        if len(self.auto) != self.group.order or not is_automorphism(self.group, self.auto):
            raise InvalidAutomorphism("alpha is not an automorphism of the group")

    @cached_property
    def auto_inv(self) -> tuple:
        inv = [0] * len(self.auto)
        for i, j in enumerate(self.auto):
            inv[j] = i
        return tuple(inv)

    def alpha(self, g: int, k: int = 1) -> int:
        perm = self.auto if k >= 0 else self.auto_inv
        for _ in range(abs(k)):
            g = perm[g]
        return g

    def hom_mul(self, g: int, h: int) -> int:
        """The Hom-group product ``g·h = α(gh)``."""
        return self.auto[self.group.mul(g, h)]

    @property
    def labels(self):
        return self.group.labels

    @property
    def order(self):
        return self.group.order

    def check_hom_associativity(self) -> bool:
        n = self.order
        return all(self.hom_mul(self.alpha(g), self.hom_mul(h, k))
                   == self.hom_mul(self.hom_mul(g, h), self.alpha(k))
                   for g in range(n) for h in range(n) for k in range(n))


# ---------------------------------------------------------------------------
# catalog


def cyclic(n: int) -> FiniteGroup:
    return FiniteGroup.from_elements(range(n), lambda a, b: (a + b) % n, str, f"Z{n}")


def dihedral(n: int) -> FiniteGroup:
    """Symmetries of the n-gon (order 2n): elements r^i s^j with s r = r⁻¹ s."""
    elems = [(i, j) for j in (0, 1) for i in range(n)]

    def mul(a, b):
        (i, j), (k, l) = a, b
        return ((i + (k if j == 0 else -k)) % n, (j + l) % 2)

    def label(x):
        i, j = x
        r = "" if i == 0 else ("r" if i == 1 else f"r{i}")
        s = "s" if j else ""
        return (r + s) or "e"

    return FiniteGroup.from_elements(elems, mul, label, f"D{n}")


def _cycle_label(p) -> str:
    seen, parts = set(), []
    for start in range(len(p)):
        if start in seen or p[start] == start:
            continue
        cyc, x = [], start
        while x not in seen:
            seen.add(x)
            cyc.append(str(x + 1))
            x = p[x]
        parts.append("(" + "".join(cyc) + ")")
    return "".join(parts) or "e"


def _parity(p) -> int:
    return sum(1 for i in range(len(p)) for j in range(i) if p[j] > p[i]) % 2


def symmetric(n: int) -> FiniteGroup:
    """Permutations of {1..n}; ``(gh)(x) = g(h(x))``."""
    perms = list(itertools.permutations(range(n)))
    return FiniteGroup.from_elements(perms, lambda g, h: tuple(g[h[x]] for x in range(n)),
                                     _cycle_label, f"S{n}")


def alternating(n: int) -> FiniteGroup:
    perms = [p for p in itertools.permutations(range(n)) if _parity(p) == 0]
    return FiniteGroup.from_elements(perms, lambda g, h: tuple(g[h[x]] for x in range(n)),
                                     _cycle_label, f"A{n}")


_Q8 = {  # unit quaternions as (sign, letter)
    "1": (1, "1"), "-1": (-1, "1"), "i": (1, "i"), "-i": (-1, "i"),
    "j": (1, "j"), "-j": (-1, "j"), "k": (1, "k"), "-k": (-1, "k"),
}
_QMUL = {
    ("1", "1"): (1, "1"), ("1", "i"): (1, "i"), ("1", "j"): (1, "j"), ("1", "k"): (1, "k"),
    ("i", "1"): (1, "i"), ("i", "i"): (-1, "1"), ("i", "j"): (1, "k"), ("i", "k"): (-1, "j"),
    ("j", "1"): (1, "j"), ("j", "i"): (-1, "k"), ("j", "j"): (-1, "1"), ("j", "k"): (1, "i"),
    ("k", "1"): (1, "k"), ("k", "i"): (1, "j"), ("k", "j"): (-1, "i"), ("k", "k"): (-1, "1"),
}


def quaternion() -> FiniteGroup:
    elems = list(_Q8)

    def mul(a, b):
        sa, la = _Q8[a]
        sb, lb = _Q8[b]
        s, l = _QMUL[(la, lb)]
        s *= sa * sb
        return l if s == 1 and l != "1" else ("1" if (s, l) == (1, "1") else f"-{l}")

    return FiniteGroup.from_elements(elems, mul, str, "Q8")


def klein() -> FiniteGroup:
    elems = [(0, 0), (1, 0), (0, 1), (1, 1)]
    names = {(0, 0): "e", (1, 0): "a", (0, 1): "b", (1, 1): "c"}
    return FiniteGroup.from_elements(elems, lambda x, y: ((x[0] + y[0]) % 2, (x[1] + y[1]) % 2),
                                     names.__getitem__, "V4")


def catalog_group(name: str) -> FiniteGroup:
    """Groups by name: ``Z<n>``, ``D<n>`` (order 2n), ``S<n>``, ``A<n>`` (n ≤ 4), ``Q8``, ``V4``."""
    name = name.strip().replace("/", "") if re.fullmatch(r"Z/\d+", name.strip()) else name.strip()
    m = re.fullmatch(r"([ZDSA])(\d+)", name)
    if name == "Q8":
        return quaternion()
    if name == "V4":
        return klein()
    if m:
        kind, n = m.group(1), int(m.group(2))
        if kind == "Z" and n >= 1:
            return cyclic(n)
        if kind == "D" and n >= 2:
            return dihedral(n)
        if kind == "S" and 1 <= n <= 4:
            return symmetric(n)
        if kind == "A" and 1 <= n <= 4:
            return alternating(n)
    raise GroupError(f"unknown catalog group {name!r}")


def automorphism_by_name(g: FiniteGroup, name: str) -> tuple:
    """``id``/``trivial``, ``inv`` (abelian only), ``conj:<label>``, ``mul:<k>`` (cyclic),
    ``rot`` (Q8: i→j→k→i, V4: a→b→c→a)."""
    n = g.order
    name = name.strip()
    if name in ("id", "trivial"):
        perm = tuple(range(n))
    elif name == "inv":
        if not g.is_abelian():
            raise InvalidAutomorphism("inversion is an automorphism only of abelian groups")
        perm = g.inverse
    elif name.startswith("conj:"):
        x = g.index(name[5:])
        perm = tuple(g.conj(x, y) for y in range(n))
    elif name.startswith("mul:"):
        if not g.name.startswith("Z"):
            raise InvalidAutomorphism("mul:<k> applies to cyclic groups")
        k = int(name[4:])
        perm = tuple((k * y) % n for y in range(n))
    elif name == "rot" and g.name == "Q8":
        cyc = {"1": "1", "-1": "-1", "i": "j", "j": "k", "k": "i", "-i": "-j", "-j": "-k", "-k": "-i"}
        perm = tuple(g.index(cyc[lab]) for lab in g.labels)
    elif name == "rot" and g.name == "V4":
        cyc = {"e": "e", "a": "b", "b": "c", "c": "a"}
        perm = tuple(g.index(cyc[lab]) for lab in g.labels)
    else:
        raise InvalidAutomorphism(f"unknown automorphism {name!r}")
    if not is_automorphism(g, perm):
        raise InvalidAutomorphism(f"{name} is not an automorphism of {g.name}")
    return perm


def subgroup_by_name(g: FiniteGroup, name: str) -> tuple:
    """``{l1,l2,...}`` label sets, ``1``/``{e}`` trivial, ``Z`` centre, ``A<n>`` in S<n>,
    ``C<n>`` rotations in D<n>, ``V4`` in S4/A4."""
    name = name.strip()
    if name.startswith("{") and name.endswith("}"):
        inner = name[1:-1].strip()
        if not inner:
            return (g.identity,)
        return tuple(sorted(g.index(x.strip()) for x in inner.split(",")))
    if name in ("1", "trivial"):
        return (g.identity,)
    if name == "G":
        return tuple(range(g.order))
    if name == "Z":
        return g.center()
    m = re.fullmatch(r"A(\d+)", name)
    if m and g.name == f"S{m.group(1)}":
        alt = {lab for lab in alternating(int(m.group(1))).labels}
        return tuple(i for i, lab in enumerate(g.labels) if lab in alt)
    m = re.fullmatch(r"C(\d+)", name)
    if m and g.name == f"D{m.group(1)}":
        return tuple(i for i, lab in enumerate(g.labels) if "s" not in lab)
    if name == "V4" and g.name in ("S4", "A4"):
        return tuple(i for i, lab in enumerate(g.labels) if lab in ("e", "(12)(34)", "(13)(24)", "(14)(23)"))
    raise GroupError(f"unknown subgroup {name!r} of {g.name}")


# ---------------------------------------------------------------------------
# Hom-group algebras


def hom_group_algebra(hg: HomGroup, field) -> HomHopf:
    """kG with the Hom-group product, Δ(g)=α⁻¹(g)⊗α⁻¹(g), ε(g)=1, S(g)=g⁻¹."""
    if not hg.check_hom_associativity():
        raise InvalidAutomorphism("Hom-group product is not Hom-associative")
    g = hg.group
    n = g.order
    space = Space(g.labels)
    ss = space.tensor(space)

    def e(i, dim=n):
        return unit_vec(dim, i, field)

    alpha = LinMap.from_function(space, space, lambda i: e(hg.alpha(i)), field)
    mult = LinMap.from_function(ss, space, lambda ij: e(hg.hom_mul(*divmod(ij, n))), field)
    unit = e(g.identity)

    def delta(i):
        a = hg.alpha(i, -1)
        return e(a * n + a, n * n)

    comult = LinMap.from_function(space, ss, delta, field)
    counit = LinMap(space, K, [[field.one] * n], field)
    antipode = LinMap.from_function(space, space, lambda i: e(g.inv(i)), field)
    algebra = HomAlgebra(space, alpha, mult, unit)
    coalgebra = HomCoalgebra(space, alpha, comult, counit)
    return HomHopf(algebra, coalgebra, antipode)


# ---------------------------------------------------------------------------
# normal subgroups and quotients


@dataclass(frozen=True, eq=False)
class GroupQuotient:
    parent: HomGroup
    normal: tuple            # G-indices of N, ascending
    cosets: tuple            # each coset as ascending G-indices; ordered by least element
    coset_of: tuple          # G-index -> coset index
    sub: HomGroup            # (N, α|N)
    quotient: HomGroup       # (G/N, ᾱ)

    def project(self, g: int) -> int:
        return self.coset_of[g]

    def sub_index(self, g: int) -> int:
        """Position of a G-element inside N (raises if not in N)."""
        return self.normal.index(g)


def normal_quotient(hg: HomGroup, subset) -> GroupQuotient:
    g = hg.group
    idx = sorted({g.index(x) if isinstance(x, str) else int(x) for x in subset})
    nset = set(idx)
    if g.identity not in nset or any(g.mul(a, b) not in nset for a in idx for b in idx):
        raise NotSubgroup("subset is not a subgroup")
    if any(g.conj(x, y) not in nset for x in range(g.order) for y in idx):
        raise NotNormal("subgroup is not normal")
    if any(hg.auto[y] not in nset for y in idx):
        raise NotAlphaStable("alpha does not map N onto N")

    cosets, coset_of = [], [None] * g.order
    for x in range(g.order):
        if coset_of[x] is None:
            cos = sorted(g.mul(x, y) for y in idx)
            for y in cos:
                coset_of[y] = len(cosets)
            cosets.append(tuple(cos))
    # sub-group N relabelled by its own positions
    pos = {x: i for i, x in enumerate(idx)}
    ntable = tuple(tuple(pos[g.mul(a, b)] for b in idx) for a in idx)
    ngroup = FiniteGroup(tuple(g.labels[x] for x in idx), ntable, f"{g.name}:N")
    sub = HomGroup(ngroup, tuple(pos[hg.auto[x]] for x in idx))
    # quotient G/N
    qlabels = tuple(f"[{g.labels[c[0]]}]" for c in cosets)
    qtable = tuple(tuple(coset_of[g.mul(a[0], b[0])] for b in cosets) for a in cosets)
    qgroup = FiniteGroup(qlabels, qtable, f"{g.name}/N")
    quot = HomGroup(qgroup, tuple(coset_of[hg.auto[c[0]]] for c in cosets))
    return GroupQuotient(hg, tuple(idx), tuple(cosets), tuple(coset_of), sub, quot)


@dataclass(frozen=True, eq=False)
class EquivariantSection:
    quotient: GroupQuotient
    reps: tuple   # coset index -> G-index

    def __post_init__(self):
        q = self.quotient
        hg = q.parent
        for c, r in enumerate(self.reps):
            if q.coset_of[r] != c:
                raise NoSection(f"representative {hg.labels[r]} is not in coset {c}")
            if hg.auto[r] != self.reps[q.quotient.auto[c]]:
                raise NoSection("section is not alpha-equivariant")
        if self.reps[q.coset_of[hg.group.identity]] != hg.group.identity:
            raise NoSection("section must send the identity coset to e")

    def gamma(self, c: int) -> int:
        return self.reps[c]


def find_equivariant_section(q: GroupQuotient) -> EquivariantSection:
    """Lexicographically first section with ``α∘γ = γ∘ᾱ`` and ``γ(1̄) = e``.

    Works orbit by orbit under ᾱ: for an orbit x̄, ᾱx̄, ... of length k the
    representative r of x̄ must satisfy ``α^k(r) = r`` and then fixes
    ``γ(ᾱ^i x̄) = α^i(r)``.
    """
    hg = q.parent
    g = hg.group
    qa = q.quotient.auto
    reps = [None] * len(q.cosets)
    one = q.coset_of[g.identity]
    reps[one] = g.identity
    searched = []
    for c in range(len(q.cosets)):
        if reps[c] is not None:
            continue
        orbit = [c]
        while qa[orbit[-1]] != c:
            orbit.append(qa[orbit[-1]])
        k = len(orbit)
        label = q.quotient.labels[c]
        searched.append(label)
        for r in q.cosets[c]:
            if hg.alpha(r, k) == r:
                for i, d in enumerate(orbit):
                    reps[d] = hg.alpha(r, i)
                break
        else:
            raise NoSection(
                f"no representative of coset {label} is fixed by alpha^{k}; "
                f"searched cosets {', '.join(searched)}", searched)
    return EquivariantSection(q, tuple(reps))


def coset_weak_action(sec: EquivariantSection, field) -> LinMap:
    """``x̄ ▷ m = [γ(ᾱ⁻¹x̄)·α⁻¹(m)]·γ(x̄)⁻¹`` as a map k[G/N]⊗kN → kN."""
    q = sec.quotient
    hg, g = q.parent, q.parent.group
    qhg = q.quotient
    H = Space(qhg.labels)
    A = Space(q.sub.labels)
    nn = len(q.normal)

    def value(idx):
        c, mi = divmod(idx, nn)
        m = q.normal[mi]
        u = sec.gamma(qhg.alpha(c, -1))
        w = hg.hom_mul(u, hg.alpha(m, -1))
        out = hg.hom_mul(w, g.inv(sec.gamma(c)))
        if out not in q.normal:
            raise ActionLeavesN(f"{qhg.labels[c]} ▷ {g.labels[m]} = {g.labels[out]} is not in N")
        return unit_vec(nn, q.sub_index(out), field)

    return LinMap.from_function(H.tensor(A), A, value, field)


def coset_cocycle(sec: EquivariantSection, field) -> LinMap:
    """``σ(x̄,ȳ) = [γ(ᾱ⁻¹x̄)·γ(ᾱ⁻¹ȳ)]·γ(ᾱ⁻¹x̄·ᾱ⁻¹ȳ)⁻¹`` as a map k[G/N]⊗k[G/N] → kN."""
    q = sec.quotient
    hg, g = q.parent, q.parent.group
    qhg = q.quotient
    H = Space(qhg.labels)
    A = Space(q.sub.labels)
    nq, nn = len(q.cosets), len(q.normal)

    def value(idx):
        x, y = divmod(idx, nq)
        xa, ya = qhg.alpha(x, -1), qhg.alpha(y, -1)
        left = hg.hom_mul(sec.gamma(xa), sec.gamma(ya))
        out = hg.hom_mul(left, g.inv(sec.gamma(qhg.hom_mul(xa, ya))))
        if out not in q.normal:
            raise CocycleLeavesN(f"sigma({qhg.labels[x]},{qhg.labels[y]}) = {g.labels[out]} is not in N")
        return unit_vec(nn, q.sub_index(out), field)

    return LinMap.from_function(H.tensor(H), A, value, field)


def quotient_coaction(q: GroupQuotient, field) -> LinMap:
    """``ρ = (id⊗π)∘Δ``: g ↦ α⁻¹(g) ⊗ π(α⁻¹(g)), making kG a k[G/N]-comodule algebra."""
    hg = q.parent
    B = Space(hg.labels)
    H = Space(q.quotient.labels)
    nq = len(q.cosets)

    def value(i):
        a = hg.alpha(i, -1)
        return unit_vec(B.dim * nq, a * nq + q.coset_of[a], field)

    return LinMap.from_function(B, B.tensor(H), value, field)


def section_map(sec: EquivariantSection, field) -> LinMap:
    """The linear extension k[G/N] → kG of the section, x̄ ↦ γ(x̄)."""
    q = sec.quotient
    B = Space(q.parent.labels)
    H = Space(q.quotient.labels)
    return LinMap.from_function(H, B, lambda c: unit_vec(B.dim, sec.gamma(c), field), field)


def subgroup_inclusion(q: GroupQuotient, field) -> LinMap:
    B = Space(q.parent.labels)
    A = Space(q.sub.labels)
    return LinMap.from_function(A, B, lambda i: unit_vec(B.dim, q.normal[i], field), field)


def parse_example_name(name: str):
    """Split ``"S3/A3 conj:(12)"`` into ``("S3", "A3", "conj:(12)")``.

    The subgroup part defaults to the trivial subgroup and the automorphism to
    ``id``.
    """
    parts = name.strip().split()
    if not parts:
        raise GroupError("empty example name")
    head = parts[0]
    auto = parts[1] if len(parts) > 1 else "id"
    if len(parts) > 2:
        raise GroupError(f"cannot parse example name {name!r}")
    if "/" in head and not re.fullmatch(r"Z/\d+", head):
        gname, sname = head.split("/", 1)
    else:
        gname, sname = head, "1"
    return gname, sname, auto
