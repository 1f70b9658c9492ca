"""JSON file formats for structures, groups, crossed systems, comodule algebras and cleft data.

Every document carries ``kind``.  Scalars are strings (``"p/q"`` over Q,
integers mod p over F_p); matrices are lists of rows.  Structure-constant
arrays use three indices:

* ``mult[i][j][k]``: e_i e_j = Σ_k mult[i][j][k] e_k
* ``comult[i][j][k]``: Δ(e_i) = Σ comult[i][j][k] e_j⊗e_k
* ``action[h][a][k]``: h·e_a = Σ_k action[h][a][k] e_k
* ``sigma[h][l][k]``: σ(h,l) = Σ_k sigma[h][l][k] e_k
* ``coaction[i][j][k]``: ρ(e_i) = Σ coaction[i][j][k] e_j⊗h_k

Sub-documents (``hopf``, ``algebra``, ``comodule``) may be inline objects
or paths relative to the referring file.
"""

from __future__ import annotations

import json
from pathlib import Path

from .cleft import CleftData, ComoduleAlgebra
from .crossed import CrossedSystem, WeakAction
from .homgroup import FiniteGroup, GroupError, HomGroup
from .homstruct import HomAlgebra, HomCoalgebra, HomHopf, compute_antipode
from .linalg import K, Field, LinMap, Space, field_from_spec

SCHEMA_VERSION = "1"

KINDS = ("hom_algebra", "hom_coalgebra", "hom_bialgebra", "hom_hopf", "group",
         "crossed_system", "comodule_algebra", "cleft")


class ParseError(ValueError):
    def __init__(self, msg, where: str = ""):
        super().__init__(f"{where}: {msg}" if where else msg)
        self.where = where


# ---------------------------------------------------------------------------
# loading


class _Ctx:
    def __init__(self, path: Path | None, field: Field | None):
        self.path = path
        self.field = field
        self.base = path.parent if path else Path(".")

    def at(self, key: str) -> str:
        return f"{self.path or '<inline>'}:{key}"


def load_document(path) -> dict:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read file ({exc.strerror})", str(path)) from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON at line {exc.lineno} column {exc.colno}", str(path)) from None
    if not isinstance(doc, dict):
        raise ParseError("top level must be an object", str(path))
    return doc


def document_kind(doc: dict) -> str:
    kind = doc.get("kind")
    if kind is None:
        if "table" in doc:
            kind = "group"
        elif "coaction" in doc:
            kind = "comodule_algebra"
        elif "gamma" in doc:
            kind = "cleft"
        elif "sigma" in doc:
            kind = "crossed_system"
        elif "mult" in doc and "comult" in doc:
            kind = "hom_hopf" if "antipode" in doc else "hom_bialgebra"
        elif "mult" in doc:
            kind = "hom_algebra"
        elif "comult" in doc:
            kind = "hom_coalgebra"
    if kind not in KINDS:
        raise ParseError(f"unknown document kind {kind!r}")
    return kind


def _field(doc: dict, ctx: _Ctx) -> Field:
    if ctx.field is not None:
        return ctx.field
    try:
        return field_from_spec(doc.get("field", "Q"))
    except (ValueError, TypeError) as exc:
        raise ParseError(str(exc), ctx.at("field")) from None


def _scalar(x, f: Field, where: str):
    try:
        return f.parse(x)
    except (ValueError, TypeError, ZeroDivisionError):
        raise ParseError(f"bad scalar {x!r}", where) from None


def _vector(data, n: int, f: Field, where: str) -> tuple:
    if not isinstance(data, list) or len(data) != n:
        raise ParseError(f"expected a list of {n} scalars", where)
    return tuple(_scalar(x, f, f"{where}[{i}]") for i, x in enumerate(data))


def _matrix(data, dom: Space, cod: Space, f: Field, where: str) -> LinMap:
    if not isinstance(data, list) or len(data) != cod.dim:
        raise ParseError(f"expected {cod.dim} rows", where)
    rows = [_vector(r, dom.dim, f, f"{where}[{i}]") for i, r in enumerate(data)]
    return LinMap(dom, cod, rows, f)


def _array3(data, d0: int, d1: int, d2: int, f: Field, where: str):
    if not isinstance(data, list) or len(data) != d0:
        raise ParseError(f"expected {d0} entries", where)
    out = []
    for i, plane in enumerate(data):
        if not isinstance(plane, list) or len(plane) != d1:
            raise ParseError(f"expected {d1} entries", f"{where}[{i}]")
        out.append([_vector(r, d2, f, f"{where}[{i}][{j}]") for j, r in enumerate(plane)])
    return out


def _bilinear_map(arr, s0: Space, s1: Space, cod: Space, f: Field) -> LinMap:
    """Map s0⊗s1 → cod from an array indexed [i][j][k]."""
    n1 = s1.dim
    rows = [[arr[c // n1][c % n1][k] for c in range(s0.dim * n1)] for k in range(cod.dim)]
    return LinMap(s0.tensor(s1), cod, rows, f)


def _co_map(arr, dom: Space, s1: Space, s2: Space, f: Field) -> LinMap:
    """Map dom → s1⊗s2 from an array indexed [i][j][k]."""
    n2 = s2.dim
    rows = [[arr[i][r // n2][r % n2] for i in range(dom.dim)] for r in range(s1.dim * n2)]
    return LinMap(dom, s1.tensor(s2), rows, f)


def _basis(doc: dict, ctx: _Ctx) -> Space:
    labels = doc.get("basis")
    if not isinstance(labels, list) or not labels:
        raise ParseError("basis must be a non-empty list of labels", ctx.at("basis"))
    labels = [str(x) for x in labels]
    if len(set(labels)) != len(labels):
        raise ParseError("basis labels must be distinct", ctx.at("basis"))
    return Space(tuple(labels))


def _require(doc: dict, key: str, ctx: _Ctx):
    if key not in doc:
        raise ParseError("missing field", ctx.at(key))
    return doc[key]


def _algebra(doc, ctx, s: Space, f: Field) -> HomAlgebra:
    n = s.dim
    alpha = _matrix(_require(doc, "alpha", ctx), s, s, f, ctx.at("alpha"))
    mult = _bilinear_map(_array3(_require(doc, "mult", ctx), n, n, n, f, ctx.at("mult")), s, s, s, f)
    unit = _vector(_require(doc, "unit", ctx), n, f, ctx.at("unit"))
    return HomAlgebra(s, alpha, mult, unit)


def _coalgebra(doc, ctx, s: Space, f: Field) -> HomCoalgebra:
    n = s.dim
    key = "alpha" if "alpha" in doc else "auto"
    auto = _matrix(_require(doc, key, ctx), s, s, f, ctx.at(key))
    comult = _co_map(_array3(_require(doc, "comult", ctx), n, n, n, f, ctx.at("comult")), s, s, s, f)
    counit = LinMap(s, K, [_vector(_require(doc, "counit", ctx), n, f, ctx.at("counit"))], f)
    return HomCoalgebra(s, auto, comult, counit)


def _parse_structure(doc: dict, ctx: _Ctx, kind: str):
    f = _field(doc, ctx)
    s = _basis(doc, ctx)
    if kind == "hom_algebra":
        return _algebra(doc, ctx, s, f)
    if kind == "hom_coalgebra":
        return _coalgebra(doc, ctx, s, f)
    alg, coal = _algebra(doc, ctx, s, f), _coalgebra(doc, ctx, s, f)
    anti = None
    if "antipode" in doc:
        anti = _matrix(doc["antipode"], s, s, f, ctx.at("antipode"))
    return HomHopf(alg, coal, anti)


def _parse_group(doc: dict, ctx: _Ctx) -> HomGroup:
    labels = _require(doc, "labels", ctx)
    if not isinstance(labels, list) or not labels:
        raise ParseError("labels must be a non-empty list", ctx.at("labels"))
    order = doc.get("order", len(labels))
    if order != len(labels):
        raise ParseError("order does not match the number of labels", ctx.at("order"))
    table = _require(doc, "table", ctx)
    n = len(labels)
    if (not isinstance(table, list) or len(table) != n
            or any(not isinstance(r, list) or len(r) != n for r in table)):
        raise ParseError(f"table must be {n}x{n}", ctx.at("table"))
    auto = doc.get("automorphism", list(range(n)))
    try:
        g = FiniteGroup(tuple(str(x) for x in labels), tuple(tuple(int(x) for x in r) for r in table),
                        str(doc.get("name", "")))
        return HomGroup(g, tuple(int(x) for x in auto))
    except (GroupError, ValueError, TypeError, IndexError) as exc:
        raise ParseError(str(exc), ctx.at("table")) from None


def _sub(doc: dict, key: str, ctx: _Ctx):
    """Resolve an inline or path-referenced sub-document."""
    ref = _require(doc, key, ctx)
    if isinstance(ref, str):
        path = (ctx.base / ref)
        sub = load_document(path)
        return sub, _Ctx(path, ctx.field)
    if isinstance(ref, dict):
        return ref, _Ctx(ctx.path, ctx.field)
    raise ParseError("expected a path or an inline object", ctx.at(key))


def _sub_hopf(doc, key, ctx) -> HomHopf:
    sub, sctx = _sub(doc, key, ctx)
    kind = document_kind(sub)
    if kind not in ("hom_hopf", "hom_bialgebra"):
        raise ParseError(f"expected a Hom-Hopf structure, got {kind}", ctx.at(key))
    h = _parse_structure(sub, sctx, kind)
    if h.antipode is None:
        h = HomHopf(h.algebra, h.coalgebra, compute_antipode(h.algebra, h.coalgebra))
    return h


def _sub_algebra(doc, key, ctx) -> HomAlgebra:
    sub, sctx = _sub(doc, key, ctx)
    kind = document_kind(sub)
    if kind == "hom_algebra":
        return _parse_structure(sub, sctx, kind)
    if kind in ("hom_hopf", "hom_bialgebra"):
        return _parse_structure(sub, sctx, kind).algebra
    raise ParseError(f"expected a Hom-algebra, got {kind}", ctx.at(key))


def _parse_crossed(doc, ctx) -> CrossedSystem:
    H = _sub_hopf(doc, "hopf", ctx)
    A = _sub_algebra(doc, "algebra", ctx)
    f = A.field
    nh, na = H.dim, A.dim
    act = _bilinear_map(_array3(_require(doc, "action", ctx), nh, na, na, f, ctx.at("action")),
                        H.space, A.space, A.space, f)
    sig = _bilinear_map(_array3(_require(doc, "sigma", ctx), nh, nh, na, f, ctx.at("sigma")),
                        H.space, H.space, A.space, f)
    return CrossedSystem(WeakAction(H, A, act), sig)


def _parse_comodule(doc, ctx) -> ComoduleAlgebra:
    H = _sub_hopf(doc, "hopf", ctx)
    B = _sub_algebra(doc, "algebra", ctx)
    f = B.field
    arr = _array3(_require(doc, "coaction", ctx), B.dim, B.dim, H.dim, f, ctx.at("coaction"))
    return ComoduleAlgebra(B, H, _co_map(arr, B.space, B.space, H.space, f))


def _parse_cleft(doc, ctx) -> CleftData:
    sub, sctx = _sub(doc, "comodule", ctx)
    comod = _parse_comodule(sub, sctx)
    B, H = comod.algebra, comod.hopf
    f = B.field
    gamma = _matrix(_require(doc, "gamma", ctx), H.space, B.space, f, ctx.at("gamma"))
    ginv = None
    if doc.get("gamma_inv") is not None:
        ginv = _matrix(doc["gamma_inv"], H.space, B.space, f, ctx.at("gamma_inv"))
    return CleftData(comod, gamma, ginv)


def parse_document(doc: dict, path=None, field: Field | None = None):
    """Build the object a document describes.  Returns ``(kind, object)``."""
    ctx = _Ctx(Path(path) if path else None, field)
    kind = document_kind(doc)
    if kind == "group":
        return kind, _parse_group(doc, ctx)
    if kind == "crossed_system":
        return kind, _parse_crossed(doc, ctx)
    if kind == "comodule_algebra":
        return kind, _parse_comodule(doc, ctx)
    if kind == "cleft":
        return kind, _parse_cleft(doc, ctx)
    return kind, _parse_structure(doc, ctx, kind)


def load(path, field: Field | None = None):
    return parse_document(load_document(path), path, field)


# ---------------------------------------------------------------------------
# writing


def _fmt_vec(v, f: Field) -> list:
    return [f.format(x) for x in v]


def _fmt_matrix(m: LinMap) -> list:
    return [_fmt_vec(r, m.field) for r in m.rows]


def _arr3_from_domain(m: LinMap, d0: int, d1: int) -> list:
    f = m.field
    cols = m.columns()
    return [[_fmt_vec(cols[i * d1 + j], f) for j in range(d1)] for i in range(d0)]


def _arr3_from_codomain(m: LinMap, d1: int, d2: int) -> list:
    f = m.field
    cols = m.columns()
    return [[_fmt_vec(cols[i][j * d2:(j + 1) * d2], f) for j in range(d1)] for i in range(m.dom.dim)]


def algebra_doc(a: HomAlgebra) -> dict:
    n = a.dim
    return {"kind": "hom_algebra", "schema_version": SCHEMA_VERSION, "field": a.field.spec(),
            "basis": list(a.space.labels), "alpha": _fmt_matrix(a.alpha),
            "mult": _arr3_from_domain(a.mult, n, n), "unit": _fmt_vec(a.unit, a.field)}


def hopf_doc(h: HomHopf) -> dict:
    n = h.dim
    d = algebra_doc(h.algebra)
    d["kind"] = "hom_hopf" if h.antipode is not None else "hom_bialgebra"
    d["comult"] = _arr3_from_codomain(h.coalgebra.comult, n, n)
    d["counit"] = _fmt_vec(h.coalgebra.counit.rows[0], h.field)
    if h.antipode is not None:
        d["antipode"] = _fmt_matrix(h.antipode)
    return d


def crossed_doc(s: CrossedSystem, hopf_ref=None, algebra_ref=None) -> dict:
    nh, na = s.hopf.dim, s.algebra.dim
    return {"kind": "crossed_system", "schema_version": SCHEMA_VERSION,
            "hopf": hopf_ref if hopf_ref is not None else hopf_doc(s.hopf),
            "algebra": algebra_ref if algebra_ref is not None else algebra_doc(s.algebra),
            "action": _arr3_from_domain(s.action.act, nh, na),
            "sigma": _arr3_from_domain(s.sigma, nh, nh)}


def comodule_doc(c: ComoduleAlgebra, hopf_ref=None, algebra_ref=None) -> dict:
    return {"kind": "comodule_algebra", "schema_version": SCHEMA_VERSION,
            "hopf": hopf_ref if hopf_ref is not None else hopf_doc(c.hopf),
            "algebra": algebra_ref if algebra_ref is not None else algebra_doc(c.algebra),
            "coaction": _arr3_from_codomain(c.rho, c.algebra.dim, c.hopf.dim)}


def cleft_doc(cd: CleftData, comodule_ref=None) -> dict:
    d = {"kind": "cleft", "schema_version": SCHEMA_VERSION,
         "comodule": comodule_ref if comodule_ref is not None else comodule_doc(cd.comod),
         "gamma": _fmt_matrix(cd.gamma)}
    if cd.gamma_inv is not None:
        d["gamma_inv"] = _fmt_matrix(cd.gamma_inv)
    return d


def group_doc(hg: HomGroup) -> dict:
    g = hg.group
    return {"kind": "group", "schema_version": SCHEMA_VERSION, "name": g.name, "order": g.order,
            "labels": list(g.labels), "table": [list(r) for r in g.table],
            "automorphism": list(hg.auto)}


def dumps(doc) -> str:
    """Deterministic JSON: sorted keys, fixed indentation, trailing newline."""
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def write(doc: dict, path) -> None:
    Path(path).write_text(dumps(doc), encoding="utf-8")
