"""Exact linear algebra over Q and F_p on labeled finite-dimensional spaces.

Everything here is dense and exact.  Vectors are plain tuples of field
elements; a :class:`LinMap` stores its matrix row-major with entry (r, c)
the coefficient of codomain basis vector r in the image of domain basis
vector c.  Tensor products use row-major order with the left factor
outermost, so the basis vector ``a⊗b`` of ``V⊗W`` sits at index
``i * dim W + j``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Callable, Iterable, Sequence


class LinAlgError(Exception):
    pass


class ShapeMismatch(LinAlgError, ValueError):
    pass


class NoSolution(LinAlgError):
    pass


class Singular(LinAlgError):
    pass


# ---------------------------------------------------------------------------
# fields


class Mod:
    """An element of the prime field F_p."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, Mod):
            if other.p != self.p:
                raise ShapeMismatch(f"mixing F_{self.p} and F_{other.p}")
            return other.v
        if isinstance(other, int):
            return other
        if isinstance(other, Fraction):
            return other.numerator * pow(other.denominator, -1, self.p)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Mod(self.v + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Mod(self.v - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Mod(o - self.v, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Mod(self.v * o, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o % self.p == 0:
            raise ZeroDivisionError("division by zero in F_%d" % self.p)
        return Mod(self.v * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if self.v == 0:
            raise ZeroDivisionError("division by zero in F_%d" % self.p)
        return Mod(o * pow(self.v, -1, self.p), self.p)

    def __neg__(self):
        return Mod(-self.v, self.p)

    def __pos__(self):
        return self

    def __bool__(self):
        return self.v != 0

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return False
        return (self.v - o) % self.p == 0

    def __hash__(self):
        return hash((self.v, self.p))

    def __int__(self):
        return self.v

    def __repr__(self):
        return f"{self.v} (mod {self.p})"


class Field:
    """Base class for the two supported ground fields."""

    name: str

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def __call__(self, x):
        raise NotImplementedError

    def parse(self, s) -> object:
        raise NotImplementedError

    def format(self, x) -> str:
        raise NotImplementedError

    def spec(self):
        """JSON-ready description of the field."""
        raise NotImplementedError


class Rationals(Field):
    name = "Q"

    def __call__(self, x):
        if isinstance(x, Mod):
            raise ShapeMismatch("cannot coerce an F_p element to Q")
        if isinstance(x, str):
            return self.parse(x)
        return Fraction(x)

    def parse(self, s):
        if isinstance(s, int) and not isinstance(s, bool):
            return Fraction(s)
        if not isinstance(s, str):
            raise ValueError(f"bad rational literal {s!r}")
        text = s.strip()
        if "/" in text:
            num, den = text.split("/", 1)
            num, den = int(num), int(den)
            if den == 0:
                raise ValueError(f"zero denominator in {s!r}")
            return Fraction(num, den)
        return Fraction(int(text))

    def format(self, x):
        x = Fraction(x)
        return f"{x.numerator}/{x.denominator}"

    def spec(self):
        return "Q"

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "QQ"


class PrimeField(Field):
    def __init__(self, p: int):
        if p < 2 or p >= 2**31 or not _is_prime(p):
            raise ValueError(f"{p} is not a prime below 2^31")
        self.p = p
        self.name = f"F{p}"

    def __call__(self, x):
        if isinstance(x, Mod):
            if x.p != self.p:
                raise ShapeMismatch(f"mixing F_{self.p} and F_{x.p}")
            return x
        if isinstance(x, str):
            return self.parse(x)
        if isinstance(x, Fraction):
            return Mod(x.numerator * pow(x.denominator, -1, self.p), self.p)
        return Mod(int(x), self.p)

    def parse(self, s):
        if isinstance(s, int) and not isinstance(s, bool):
            return Mod(s, self.p)
        if not isinstance(s, str):
            raise ValueError(f"bad F_{self.p} literal {s!r}")
        text = s.strip()
        if "/" in text:
            num, den = text.split("/", 1)
            return self(Fraction(int(num), int(den)))
        return Mod(int(text), self.p)

    def format(self, x):
        return str(self(x).v)

    def spec(self):
        return {"Fp": self.p}

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("Fp", self.p))

    def __repr__(self):
        return f"GF({self.p})"


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in range(2, math.isqrt(n) + 1):
        if n % q == 0:
            return False
    return True


QQ = Rationals()


@lru_cache(maxsize=None)
def GF(p: int) -> PrimeField:
    return PrimeField(p)


def field_from_spec(spec) -> Field:
    """Accepts ``"Q"``, ``{"Fp": p}`` or the CLI form ``"Fp:<p>"``."""
    if spec in (None, "Q", "QQ"):
        return QQ
    if isinstance(spec, dict) and "Fp" in spec:
        return GF(int(spec["Fp"]))
    if isinstance(spec, str) and spec.startswith("Fp:"):
        return GF(int(spec[3:]))
    raise ValueError(f"unknown field {spec!r}")


# ---------------------------------------------------------------------------
# spaces


@dataclass(frozen=True)
class Space:
    """A finite-dimensional space with an ordered list of distinct labels.

    The ground field itself is the one-dimensional space ``K`` with
    ``ground=True``; tensoring with it is the identity on spaces, so the
    unit isomorphisms k⊗V = V = V⊗k stay implicit.
    """

    labels: tuple
    ground: bool = dc_field(default=False, compare=True)

    def __post_init__(self):
        labels = tuple(str(x) for x in self.labels)
        object.__setattr__(self, "labels", labels)
        if len(set(labels)) != len(labels):
            raise ShapeMismatch(f"duplicate basis labels in {labels}")

    @property
    def dim(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        return self._index[label]

    @cached_property
    def _index(self):
        return {lab: i for i, lab in enumerate(self.labels)}

    def tensor(self, other: "Space") -> "Space":
        if self.ground:
            return other
        if other.ground:
            return self
        return Space(tuple(f"{a}⊗{b}" for a in self.labels for b in other.labels))

    __matmul__ = tensor

    def __repr__(self):
        if self.ground:
            return "K"
        return f"Space({list(self.labels)})"


K = Space(("1",), ground=True)


def tensor_spaces(*spaces: Space) -> Space:
    out = K
    for s in spaces:
        out = out.tensor(s)
    return out


# ---------------------------------------------------------------------------
# vectors


def zero_vec(n: int, field: Field) -> tuple:
    z = field.zero
    return (z,) * n


def unit_vec(n: int, i: int, field: Field) -> tuple:
    z, o = field.zero, field.one
    return tuple(o if k == i else z for k in range(n))


def vec_add(u, v) -> tuple:
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u, v) -> tuple:
    return tuple(a - b for a, b in zip(u, v))


def vec_scale(c, v) -> tuple:
    return tuple(c * a for a in v)


def is_zero(v) -> bool:
    return not any(v)


def kron(u, v) -> tuple:
    z = None
    out = []
    for a in u:
        if a:
            out.extend(a * b for b in v)
        else:
            if z is None:
                z = a - a
            out.extend([z] * len(v))
    return tuple(out)


def support(v) -> list:
    return [(i, x) for i, x in enumerate(v) if x]


class Accumulator:
    """Mutable running sum of vectors; avoids rebuilding tuples in hot loops."""

    __slots__ = ("data",)

    def __init__(self, n: int, field: Field):
        self.data = [field.zero] * n

    def add(self, v, coef=None):
        data = self.data
        if coef is None:
            for i, x in enumerate(v):
                if x:
                    data[i] = data[i] + x
        else:
            if not coef:
                return
            for i, x in enumerate(v):
                if x:
                    data[i] = data[i] + coef * x

    def vector(self) -> tuple:
        return tuple(self.data)


# ---------------------------------------------------------------------------
# linear maps


class LinMap:
    """A linear map between labeled spaces, stored as a dense exact matrix."""

    __slots__ = ("dom", "cod", "field", "rows", "__dict__")

    def __init__(self, dom: Space, cod: Space, rows, field: Field):
        rows = tuple(tuple(r) for r in rows)
        if len(rows) != cod.dim or any(len(r) != dom.dim for r in rows):
            shape = (len(rows), len(rows[0]) if rows else 0)
            raise ShapeMismatch(
                f"matrix shape {shape} does not match {cod.dim}x{dom.dim}"
            )
        self.dom = dom
        self.cod = cod
        self.field = field
        self.rows = rows

    # constructors -------------------------------------------------------

    @classmethod
    def identity(cls, space: Space, field: Field) -> "LinMap":
        n = space.dim
        return cls(space, space, [unit_vec(n, i, field) for i in range(n)], field)

    @classmethod
    def zero(cls, dom: Space, cod: Space, field: Field) -> "LinMap":
        z = field.zero
        return cls(dom, cod, [[z] * dom.dim for _ in range(cod.dim)], field)

    @classmethod
    def from_columns(cls, dom: Space, cod: Space, cols: Sequence, field: Field) -> "LinMap":
        if len(cols) != dom.dim:
            raise ShapeMismatch(f"{len(cols)} columns for a domain of dim {dom.dim}")
        for c in cols:
            if len(c) != cod.dim:
                raise ShapeMismatch("column length does not match codomain")
        rows = [[cols[c][r] for c in range(dom.dim)] for r in range(cod.dim)]
        return cls(dom, cod, rows, field)

    @classmethod
    def from_function(cls, dom: Space, cod: Space, fn: Callable[[int], Sequence], field: Field) -> "LinMap":
        """Build the map whose value on basis vector i is ``fn(i)``."""
        return cls.from_columns(dom, cod, [tuple(fn(i)) for i in range(dom.dim)], field)

    # access -------------------------------------------------------------

    @property
    def shape(self):
        return (self.cod.dim, self.dom.dim)

    @cached_property
    def _sparse_cols(self):
        cols = [[] for _ in range(self.dom.dim)]
        for r, row in enumerate(self.rows):
            for c, x in enumerate(row):
                if x:
                    cols[c].append((r, x))
        return cols

    def column(self, c: int) -> tuple:
        return tuple(row[c] for row in self.rows)

    def columns(self) -> list:
        return [self.column(c) for c in range(self.dom.dim)]

    def __call__(self, v) -> tuple:
        if len(v) != self.dom.dim:
            raise ShapeMismatch(f"vector of length {len(v)} for domain dim {self.dom.dim}")
        out = [self.field.zero] * self.cod.dim
        cols = self._sparse_cols
        for c, x in enumerate(v):
            if x:
                for r, y in cols[c]:
                    out[r] = out[r] + x * y
        return tuple(out)

    def apply_basis(self, c: int) -> tuple:
        return self.column(c)

    # algebra ------------------------------------------------------------

    def __matmul__(self, other: "LinMap") -> "LinMap":
        return compose(self, other)

    def __add__(self, other: "LinMap") -> "LinMap":
        _same_shape(self, other)
        return LinMap(self.dom, self.cod,
                      [vec_add(a, b) for a, b in zip(self.rows, other.rows)], self.field)

    def __sub__(self, other: "LinMap") -> "LinMap":
        _same_shape(self, other)
        return LinMap(self.dom, self.cod,
                      [vec_sub(a, b) for a, b in zip(self.rows, other.rows)], self.field)

    def __neg__(self) -> "LinMap":
        return self.scale(-self.field.one)

    def scale(self, c) -> "LinMap":
        c = self.field(c)
        return LinMap(self.dom, self.cod, [vec_scale(c, r) for r in self.rows], self.field)

    def __eq__(self, other):
        if not isinstance(other, LinMap):
            return NotImplemented
        return (self.dom == other.dom and self.cod == other.cod
                and self.rows == other.rows)

    def same_matrix(self, other: "LinMap") -> bool:
        return self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        return hash((self.dom, self.cod, self.rows))

    def relabel(self, dom: Space | None = None, cod: Space | None = None) -> "LinMap":
        """Same matrix, reinterpreted between spaces of equal dimension."""
        dom = dom or self.dom
        cod = cod or self.cod
        if dom.dim != self.dom.dim or cod.dim != self.cod.dim:
            raise ShapeMismatch("relabel must preserve dimensions")
        return LinMap(dom, cod, self.rows, self.field)

    def is_identity(self) -> bool:
        if self.dom.dim != self.cod.dim:
            return False
        o = self.field.one
        return all((x == o) if r == c else not x
                   for r, row in enumerate(self.rows) for c, x in enumerate(row))

    def __repr__(self):
        return f"LinMap({self.cod.dim}x{self.dom.dim} over {self.field!r})"


def _same_shape(f: LinMap, g: LinMap):
    if f.dom != g.dom or f.cod != g.cod:
        raise ShapeMismatch("maps live between different spaces")


def compose(f: LinMap, g: LinMap) -> LinMap:
    """``f ∘ g``."""
    if f.dom != g.cod:
        raise ShapeMismatch(f"cannot compose: {f.dom!r} != {g.cod!r}")
    field = f.field
    n = g.dom.dim
    g_rows = g.rows
    out = []
    for row in f.rows:
        acc = [field.zero] * n
        for k, x in enumerate(row):
            if x:
                for c, y in enumerate(g_rows[k]):
                    if y:
                        acc[c] = acc[c] + x * y
        out.append(acc)
    return LinMap(g.dom, f.cod, out, field)


def compose_all(*maps: LinMap) -> LinMap:
    """``maps[0] ∘ maps[1] ∘ ...``."""
    out = maps[-1]
    for f in reversed(maps[:-1]):
        out = compose(f, out)
    return out


def tensor_map(f: LinMap, g: LinMap) -> LinMap:
    """Kronecker product ``f ⊗ g``."""
    field = f.field
    rows = []
    for fr in f.rows:
        for gr in g.rows:
            rows.append(kron(fr, gr))
    return LinMap(f.dom.tensor(g.dom), f.cod.tensor(g.cod), rows, field)


def tensor_maps(*maps: LinMap) -> LinMap:
    out = maps[0]
    for f in maps[1:]:
        out = tensor_map(out, f)
    return out


def flip(a: Space, b: Space, field: Field) -> LinMap:
    """The swap ``a⊗b ↦ b⊗a``."""
    na, nb = a.dim, b.dim

    def col(idx):
        i, j = divmod(idx, nb)
        return unit_vec(na * nb, j * na + i, field)

    return LinMap.from_function(a.tensor(b), b.tensor(a), col, field)


def permute_legs(spaces: Sequence[Space], order: Sequence[int], field: Field) -> LinMap:
    """Reorder tensor legs: output leg k is input leg ``order[k]``."""
    dims = [s.dim for s in spaces]
    dom = tensor_spaces(*spaces)
    cod = tensor_spaces(*[spaces[k] for k in order])
    out_dims = [dims[k] for k in order]

    def col(idx):
        multi = unravel(idx, dims)
        new = [multi[k] for k in order]
        return unit_vec(cod.dim, ravel(new, out_dims), field)

    return LinMap.from_function(dom, cod, col, field)


def unravel(idx: int, dims: Sequence[int]) -> list:
    out = []
    for d in reversed(dims):
        idx, r = divmod(idx, d)
        out.append(r)
    return out[::-1]


def ravel(multi: Sequence[int], dims: Sequence[int]) -> int:
    idx = 0
    for m, d in zip(multi, dims):
        idx = idx * d + m
    return idx


def bilinear(f: LinMap, x, y) -> tuple:
    """Evaluate ``f(x⊗y)`` without materializing the Kronecker vector."""
    ny = len(y)
    out = [f.field.zero] * f.cod.dim
    cols = f._sparse_cols
    ys = [(j, b) for j, b in enumerate(y) if b]
    for i, a in enumerate(x):
        if not a:
            continue
        base = i * ny
        for j, b in ys:
            ab = a * b
            for r, m in cols[base + j]:
                out[r] = out[r] + ab * m
    return tuple(out)


def tensor_apply(maps: Sequence[LinMap], v) -> tuple:
    """``(f1⊗...⊗fk)(v)`` evaluated sparsely, never forming the Kronecker matrix."""
    dims_in = [f.dom.dim for f in maps]
    dims_out = [f.cod.dim for f in maps]
    total = 1
    for d in dims_out:
        total *= d
    field = maps[0].field
    out = [field.zero] * total
    for coef, multi in split_tensor(v, dims_in):
        terms = [(0, coef)]
        for f, i, d in zip(maps, multi, dims_out):
            col = f._sparse_cols[i]
            terms = [(idx * d + r, c * x) for idx, c in terms for r, x in col]
        for idx, c in terms:
            out[idx] = out[idx] + c
    return tuple(out)


def split_tensor(v, dims: Sequence[int]) -> list:
    """Nonzero terms ``(coef, multi_index)`` of a vector in a tensor space."""
    return [(x, unravel(i, dims)) for i, x in enumerate(v) if x]


# ---------------------------------------------------------------------------
# row reduction


def rref(rows: Iterable[Sequence], ncols: int, field: Field):
    """Reduced row-echelon form.  Returns ``(nonzero_rows, pivot_columns)``."""
    m = [list(r) for r in rows]
    pivots = []
    r = 0
    nrows = len(m)
    for c in range(ncols):
        if r == nrows:
            break
        p = None
        for i in range(r, nrows):
            if m[i][c]:
                p = i
                break
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        piv = m[r][c]
        if piv != 1:
            inv = field.one / piv
            m[r] = [x * inv if x else x for x in m[r]]
        prow = m[r]
        nz = [(k, prow[k]) for k in range(c, ncols) if prow[k]]
        for i in range(nrows):
            if i != r:
                f = m[i][c]
                if f:
                    row = m[i]
                    for k, x in nz:
                        row[k] = row[k] - f * x
        pivots.append(c)
        r += 1
    return [tuple(row) for row in m[:r]], pivots


# ---------------------------------------------------------------------------
# subspaces and quotients


@dataclass(frozen=True)
class Subspace:
    """A subspace held by its RREF basis."""

    ambient: Space
    basis: tuple
    pivots: tuple
    field: Field

    @classmethod
    def span(cls, ambient: Space, vectors: Iterable[Sequence], field: Field) -> "Subspace":
        rows, piv = rref(vectors, ambient.dim, field)
        return cls(ambient, tuple(rows), tuple(piv), field)

    @classmethod
    def zero_space(cls, ambient: Space, field: Field) -> "Subspace":
        return cls(ambient, (), (), field)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def reduce(self, v) -> tuple:
        """Remainder of ``v`` modulo the subspace (zero at every pivot)."""
        v = list(v)
        for row, p in zip(self.basis, self.pivots):
            c = v[p]
            if c:
                for k, x in enumerate(row):
                    if x:
                        v[k] = v[k] - c * x
        return tuple(v)

    def contains(self, v) -> bool:
        return is_zero(self.reduce(v))

    def __contains__(self, v) -> bool:
        return self.contains(v)

    def coordinates(self, v) -> tuple:
        """Coordinates of ``v`` in the RREF basis; raises NoSolution if outside."""
        if not self.contains(v):
            raise NoSolution("vector is not in the subspace")
        return tuple(v[p] for p in self.pivots)

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(b) for b in other.basis)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient == other.ambient and self.basis == other.basis

    def __hash__(self):
        return hash((self.ambient, self.basis))

    def as_space(self) -> Space:
        """Labels the basis by the ambient label at each pivot."""
        return Space(tuple(self.ambient.labels[p] for p in self.pivots))

    def inclusion(self, space: Space | None = None) -> LinMap:
        space = space or self.as_space()
        return LinMap.from_columns(space, self.ambient, list(self.basis), self.field)


@dataclass(frozen=True)
class QuotientSpace:
    ambient: Space
    killed: Subspace
    space: Space
    section: tuple
    project: LinMap
    lift: LinMap

    @property
    def dim(self) -> int:
        return self.space.dim


def quotient_by(ambient: Space, x: Subspace) -> QuotientSpace:
    if x.ambient != ambient:
        raise ShapeMismatch("subspace lives in a different ambient space")
    field = x.field
    piv = set(x.pivots)
    section = tuple(c for c in range(ambient.dim) if c not in piv)
    space = Space(tuple(ambient.labels[c] for c in section))
    q = len(section)

    def proj(c):
        r = x.reduce(unit_vec(ambient.dim, c, field))
        return tuple(r[s] for s in section)

    project = LinMap.from_function(ambient, space, proj, field)
    lift = LinMap.from_function(space, ambient,
                                lambda j: unit_vec(ambient.dim, section[j], field), field)
    assert q == ambient.dim - x.dim
    return QuotientSpace(ambient, x, space, section, project, lift)


# ---------------------------------------------------------------------------
# kernels, images, solving


def kernel(f: LinMap) -> Subspace:
    return nullspace(f.rows, f.dom, f.field)


def nullspace(rows, dom: Space, field: Field) -> Subspace:
    n = dom.dim
    red, piv = rref(rows, n, field)
    pivset = set(piv)
    vecs = []
    for j in range(n):
        if j in pivset:
            continue
        v = [field.zero] * n
        v[j] = field.one
        for row, p in zip(red, piv):
            if row[j]:
                v[p] = -row[j]
        vecs.append(v)
    return Subspace.span(dom, vecs, field)


def image(f: LinMap) -> Subspace:
    return Subspace.span(f.cod, f.columns(), f.field)


def rank(f: LinMap) -> int:
    return len(rref(f.rows, f.dom.dim, f.field)[1])


def solve(f: LinMap, target) -> tuple:
    """One exact preimage of ``target``: pivot variables solved, free ones zero."""
    if len(target) != f.cod.dim:
        raise ShapeMismatch("target does not live in the codomain")
    return solve_system(f.rows, target, f.dom.dim, f.field)


def solve_system(rows, rhs, ncols: int, field: Field) -> tuple:
    aug = [tuple(r) + (b,) for r, b in zip(rows, rhs)]
    red, piv = rref(aug, ncols + 1, field)
    if piv and piv[-1] == ncols:
        raise NoSolution("target is not in the image")
    x = [field.zero] * ncols
    for row, p in zip(red, piv):
        x[p] = row[ncols]
    return tuple(x)


def invert(f: LinMap) -> LinMap:
    n = f.dom.dim
    if f.cod.dim != n:
        raise Singular("non-square map")
    field = f.field
    aug = [tuple(r) + unit_vec(n, i, field) for i, r in enumerate(f.rows)]
    red, piv = rref(aug, 2 * n, field)
    if len(piv) < n or piv[n - 1] != n - 1:
        raise Singular(f"rank {sum(1 for p in piv if p < n)} < {n}")
    rows = [row[n:] for row in red]
    return LinMap(f.cod, f.dom, rows, field)


def is_invertible(f: LinMap) -> bool:
    return f.dom.dim == f.cod.dim and rank(f) == f.dom.dim


def power(f: LinMap, k: int) -> LinMap:
    if f.dom != f.cod:
        raise ShapeMismatch("power of a non-endomorphism")
    if k < 0:
        return power(invert(f), -k)
    out = LinMap.identity(f.dom, f.field)
    for _ in range(k):
        out = compose(f, out)
    return out


def first_difference(f: LinMap, g: LinMap):
    """Index of the first column where the matrices differ, or None."""
    if f.shape != g.shape:
        raise ShapeMismatch(f"cannot compare {f.shape} with {g.shape}")
    for c in range(f.dom.dim):
        for r in range(f.cod.dim):
            if f.rows[r][c] != g.rows[r][c]:
                return c
    return None


# ---------------------------------------------------------------------------
# serialization


def format_scalar(x, field: Field) -> str:
    return field.format(x)


def format_vector(v, field: Field) -> list:
    return [field.format(x) for x in v]


def format_matrix(f: LinMap) -> list:
    return [[f.field.format(x) for x in row] for row in f.rows]


def parse_vector(data, field: Field) -> tuple:
    return tuple(field.parse(x) for x in data)


def parse_matrix(data, dom: Space, cod: Space, field: Field) -> LinMap:
    return LinMap(dom, cod, [parse_vector(r, field) for r in data], field)
