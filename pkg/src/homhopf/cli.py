"""Command-line front end.

    homhopf verify FILE          run the axiom suite for whatever FILE declares
    homhopf crossed FILE         check a crossed system and build its product
    homhopf cleft FILE           check cleft data and recover the crossed system
    homhopf galois FILE          Galois map and normal basis for a comodule algebra
    homhopf roundtrip FILE       crossed/cleft/Galois equivalence chains
    homhopf example NAME         write files for a catalog example

Exit status is 0 exactly when every requested check passes.
"""

from __future__ import annotations

import sys
from pathlib import Path

import click

from . import io
from .cleft import (
    CleftData,
    NormalizationMissing,
    ValueEscapesCoinvariants,
    check_cleft,
    check_cleft_to_crossed,
    check_comodule_algebra,
    cleft_to_crossed,
    crossed_to_cleft,
    lemma42_check,
    solver_agrees_with_closed_form,
)
from .corpus import MUTANTS, SYSTEMS, group_example, system_by_name
from .crossed import (
    ConditionsViolated,
    CrossedSystem,
    build_crossed_product,
    check_conditions,
    check_weak_action,
    crossed_associativity_oracle,
)
from .galois import (
    NotWellDefined,
    VerificationFailed,
    check_galois_inverse,
    cleft_galois_inverse,
    galois_map,
    galois_nb_to_cleft,
    normal_basis_search,
    relative_tensor,
)
from .homgroup import GroupError, NoSection, hom_group_algebra
from .homstruct import (
    AxiomReport,
    AxiomResult,
    NoAntipode,
    NotInMorphismSpace,
    NotInvertible,
    check_hom_algebra,
    check_hom_bialgebra,
    check_hom_coalgebra,
    check_hom_hopf,
    compare_maps,
)
from .linalg import LinAlgError, compose, field_from_spec, format_matrix


class Run:
    """Collects reports and facts for one command and renders them."""

    def __init__(self, command: str, target: str, field, fmt: str, seed: int | None = None):
        self.command = command
        self.target = target
        self.field = field
        self.fmt = fmt
        self.seed = seed
        self.reports: list[AxiomReport] = []
        self.facts: dict = {}
        self.errors: list[dict] = []
        self.notes: list[str] = []
        self.outputs: list[str] = []

    def report(self, rep: AxiomReport) -> AxiomReport:
        self.reports.append(rep)
        return rep

    def error(self, kind: str, message: str, **extra) -> None:
        self.errors.append({"error": kind, "message": message, **extra})

    @property
    def passed(self) -> bool:
        return not self.errors and all(r.passed for r in self.reports)

    def document(self) -> dict:
        doc = {"schema_version": io.SCHEMA_VERSION, "command": self.command, "target": self.target,
               "field": self.field.spec() if self.field else None, "passed": self.passed,
               "reports": [r.to_dict() for r in self.reports], "facts": self.facts,
               "errors": self.errors, "outputs": self.outputs}
        if self.seed is not None:
            doc["seed"] = self.seed
        return doc

    def text(self) -> str:
        lines = [f"{self.command} {self.target}"]
        for r in self.reports:
            lines.append(r.format_text())
        for k in sorted(self.facts):
            v = self.facts[k]
            if isinstance(v, list) and v and isinstance(v[0], list):
                lines.append(f"{k}:")
                lines.extend("  " + " ".join(row) for row in v)
            else:
                lines.append(f"{k}: {v}")
        for n in self.notes:
            lines.append(n)
        for o in self.outputs:
            lines.append(f"wrote {o}")
        for e in self.errors:
            lines.append(f"{e['error']}: {e['message']}")
        lines.append("PASS" if self.passed else "FAIL")
        return "\n".join(lines) + "\n"

    def emit(self) -> None:
        out = io.dumps(self.document()) if self.fmt == "machine" else self.text()
        click.echo(out, nl=False)
        sys.exit(0 if self.passed else 1)


def _field_option(value):
    if value is None:
        return None
    try:
        return field_from_spec(value)
    except (ValueError, TypeError) as exc:
        raise click.BadParameter(str(exc)) from None


def common(f):
    f = click.option("--format", "fmt", type=click.Choice(["text", "machine"]), default="text",
                     show_default=True, help="Report format.")(f)
    f = click.option("--field", "field", default=None, help="Ground field: Q or Fp:<p>.")(f)
    return f


def _load(run: Run, path: str, field):
    try:
        kind, obj = io.load(path, field)
    except io.ParseError as exc:
        run.error("ParseError", str(exc))
        return None, None
    except (LinAlgError, GroupError, ValueError) as exc:
        run.error(type(exc).__name__, f"{path}: {exc}")
        return None, None
    if run.field is None:
        run.field = _obj_field(obj)
    return kind, obj


def _obj_field(obj):
    for attr in ("field",):
        if hasattr(obj, attr):
            return getattr(obj, attr)
    if hasattr(obj, "comod"):
        return obj.comod.field
    return None


@click.group()
@click.version_option(package_name="artifact")
def main():
    """Exact verification of Hom-Hopf structures, crossed products and cleft extensions."""


# ---------------------------------------------------------------------------
# verify


@main.command()
@click.argument("path", type=click.Path(dir_okay=False))
@click.option("--anti", is_flag=True, help="Also check that the antipode is anti-multiplicative.")
@common
def verify(path, anti, field, fmt):
    """Run the full axiom suite for the structure declared in PATH."""
    field = _field_option(field)
    run = Run("verify", path, field, fmt)
    kind, obj = _load(run, path, field)
    if kind is not None:
        run.facts["kind"] = kind
        try:
            _verify(run, kind, obj, anti)
        except (LinAlgError, ValueError) as exc:
            run.error(type(exc).__name__, str(exc))
    run.emit()


def _verify(run: Run, kind, obj, anti):
    if kind == "hom_algebra":
        run.report(check_hom_algebra(obj))
    elif kind == "hom_coalgebra":
        run.report(check_hom_coalgebra(obj))
    elif kind == "hom_bialgebra":
        run.report(check_hom_bialgebra(obj))
    elif kind == "hom_hopf":
        run.report(check_hom_hopf(obj, anti=anti))
    elif kind == "group":
        rep = AxiomReport("hom_group")
        rep.add(AxiomResult("hom_associativity", obj.check_hom_associativity()))
        run.report(rep)
        field = run.field or field_from_spec("Q")
        run.field = field
        run.report(check_hom_hopf(hom_group_algebra(obj, field), "group_algebra", anti=anti))
    elif kind == "crossed_system":
        run.report(check_weak_action(obj.action))
        run.report(check_conditions(obj))
    elif kind == "comodule_algebra":
        run.report(check_comodule_algebra(obj))
    elif kind == "cleft":
        run.report(check_cleft(obj))


# ---------------------------------------------------------------------------
# crossed


@main.command()
@click.argument("path", type=click.Path(dir_okay=False))
@click.option("--force", is_flag=True, help="Build the product even when the conditions fail.")
@click.option("--out", "out", type=click.Path(file_okay=False), default=".", show_default=True,
              help="Directory for the product structure file.")
@common
def crossed(path, force, out, field, fmt):
    """Check a crossed system's conditions and its product, and write the product."""
    field = _field_option(field)
    run = Run("crossed", path, field, fmt)
    kind, s = _load(run, path, field)
    if kind is not None and kind != "crossed_system":
        run.error("ParseError", f"{path}: expected a crossed_system document, got {kind}")
    elif kind is not None:
        _crossed(run, s, force, Path(out))
    run.emit()


def _crossed(run: Run, s: CrossedSystem, force: bool, out: Path):
    weak = run.report(check_weak_action(s.action))
    cond = run.report(check_conditions(s))
    oracle = run.report(crossed_associativity_oracle(s))
    run.facts["conditions_pass"] = cond.passed
    run.facts["product_associative"] = oracle.passed
    run.facts["verdicts_agree"] = cond.passed == oracle.passed
    run.facts["product_dim"] = s.algebra.dim * s.hopf.dim
    if not run.facts["verdicts_agree"]:
        run.error("Disagreement", "condition checks and associativity oracle disagree")
    try:
        prod = build_crossed_product(s, force=force)
    except ConditionsViolated as exc:
        run.error("ConditionsViolated", str(exc))
        return
    if not weak.passed and not force:
        run.error("ConditionsViolated", "weak action axioms fail")
        return
    out.mkdir(parents=True, exist_ok=True)
    target = out / "crossed_product.json"
    io.write(io.algebra_doc(prod), target)
    run.outputs.append(str(target))


# ---------------------------------------------------------------------------
# cleft


@main.command()
@click.argument("path", type=click.Path(dir_okay=False))
@click.option("--out", "out", type=click.Path(file_okay=False), default=None,
              help="Directory for the recovered crossed system file.")
@common
def cleft(path, out, field, fmt):
    """Check cleft data and its γ⁻¹ identities, then recover the crossed system."""
    field = _field_option(field)
    run = Run("cleft", path, field, fmt)
    kind, cd = _load(run, path, field)
    if kind is not None and kind != "cleft":
        run.error("ParseError", f"{path}: expected a cleft document, got {kind}")
    elif kind is not None:
        _cleft(run, cd, Path(out) if out else None)
    run.emit()


def _cleft(run: Run, cd: CleftData, out: Path | None):
    run.report(check_comodule_algebra(cd.comod))
    rep = run.report(check_cleft(cd))
    if not rep.passed:
        return
    run.facts["coinvariant_dim"] = cd.coinvariants.dim
    run.report(lemma42_check(cd))
    try:
        res = cleft_to_crossed(cd)
    except (ConditionsViolated, ValueEscapesCoinvariants) as exc:
        run.error(type(exc).__name__, str(exc))
        return
    run.report(check_cleft_to_crossed(cd, res))
    if out is not None:
        out.mkdir(parents=True, exist_ok=True)
        target = out / "crossed_system.json"
        io.write(io.crossed_doc(res.system), target)
        run.outputs.append(str(target))


# ---------------------------------------------------------------------------
# galois


@main.command()
@click.argument("path", type=click.Path(dir_okay=False))
@click.option("--seed", type=click.IntRange(0, 2**64 - 1), default=0, show_default=True,
              help="Seed for the normal basis search.")
@click.option("--trials", type=click.IntRange(1), default=64, show_default=True)
@click.option("--no-intertwine", is_flag=True,
              help="Do not require the normal basis to commute with the twisting maps.")
@common
def galois(path, seed, trials, no_intertwine, field, fmt):
    """Galois map bijectivity and a normal basis witness for a comodule algebra."""
    field = _field_option(field)
    run = Run("galois", path, field, fmt, seed)
    kind, obj = _load(run, path, field)
    if kind == "cleft":
        obj = obj.comod
    elif kind is not None and kind != "comodule_algebra":
        run.error("ParseError", f"{path}: expected a comodule_algebra document, got {kind}")
        kind = None
    if kind is not None:
        _galois(run, obj, seed, trials, not no_intertwine)
    run.emit()


def _galois(run: Run, c, seed, trials, intertwine):
    comod = run.report(check_comodule_algebra(c))
    if not comod.passed:
        return
    co = c.coinvariants
    rt = relative_tensor(c, co)
    run.facts["coinvariant_dim"] = co.dim
    run.facts["relation_rank"] = rt.relation_rank
    run.facts["relative_tensor_dim"] = rt.dim
    try:
        v = galois_map(c, rt)
    except NotWellDefined as exc:
        run.error("NotWellDefined", str(exc))
        return
    run.facts["phi_rank"] = v.rank
    run.facts["codomain_dim"] = v.codomain_dim
    run.facts["bijective"] = v.bijective
    w = normal_basis_search(c, co, seed=seed, trials=trials, intertwine=intertwine)
    run.facts["witness_found"] = w.found
    run.facts["witness_trials"] = w.trials
    run.facts["constraint_dim"] = w.constraint_dim
    if w.found:
        run.facts["witness"] = format_matrix(w.theta)
    rep = AxiomReport("galois")
    rep.add(AxiomResult("galois_map_bijective", v.bijective))
    rep.add(AxiomResult("normal_basis_found", w.found, None if w.found else (),
                        note=None if w.found else f"inconclusive: {w.reason}"))
    run.report(rep)


# ---------------------------------------------------------------------------
# roundtrip


@main.command()
@click.argument("path", type=click.Path(dir_okay=False))
@click.option("--seed", type=click.IntRange(0, 2**64 - 1), default=0, show_default=True)
@common
def roundtrip(path, seed, field, fmt):
    """Run the crossed/cleft/Galois equivalence chains on a crossed system or cleft file."""
    field = _field_option(field)
    run = Run("roundtrip", path, field, fmt, seed)
    kind, obj = _load(run, path, field)
    if kind not in (None, "crossed_system", "cleft"):
        run.error("ParseError", f"{path}: expected a crossed_system or cleft document, got {kind}")
    elif kind is not None:
        try:
            _roundtrip(run, kind, obj, seed)
        except (ConditionsViolated, ValueEscapesCoinvariants, NotWellDefined, VerificationFailed,
                NotInvertible, NotInMorphismSpace, NoAntipode, NormalizationMissing) as exc:
            run.error(type(exc).__name__, str(exc))
    run.emit()


def roundtrip_reports(kind: str, obj, seed: int = 0) -> list[AxiomReport]:
    """The three equivalence chains as reports.

    1. crossed → cleft → crossed: Φ is an isomorphism onto the crossed product.
    2. cleft → crossed → cleft: the new cleft data pass, their closed-form
       γ⁻¹ matches the solver, and Φ carries the new γ to the old one.
    3. Galois + normal basis → cleft → crossed: Φ is an isomorphism onto B.
    """
    reps = []
    if kind == "crossed_system":
        cd = crossed_to_cleft(obj)
        first = AxiomReport("crossed_cleft_crossed")
        first.extend(check_cleft(cd), "cleft")
        first.add(solver_agrees_with_closed_form(cd))
        first.extend(cleft_to_crossed_report(cd))
        reps.append(first)
    else:
        cd = obj
        reps.append(AxiomReport("crossed_cleft_crossed").extend(cleft_to_crossed_report(cd)))

    res = cleft_to_crossed(cd)
    cd2 = crossed_to_cleft(res.system)
    second = AxiomReport("cleft_crossed_cleft")
    second.extend(check_cleft(cd2), "cleft")
    second.add(solver_agrees_with_closed_form(cd2))
    second.add(compare_maps("phi_carries_gamma", compose(res.phi, cd2.gamma), cd.gamma,
                            [cd.hopf.space]))
    reps.append(second)

    c = cd.comod
    co = c.coinvariants
    third = AxiomReport("galois_cleft_crossed")
    rt = relative_tensor(c, co)
    v = galois_map(c, rt)
    third.add(AxiomResult("galois_map_bijective", v.bijective))
    third.extend(check_galois_inverse(v, cleft_galois_inverse(cd, rt)))
    w = normal_basis_search(c, co, seed=seed)
    third.add(AxiomResult("normal_basis_found", w.found, None if w.found else ()))
    if v.bijective and w.found:
        rec = galois_nb_to_cleft(c, co, rt, v, w)
        third.extend(rec.report, "reconstruct")
        third.extend(cleft_to_crossed_report(rec.cleft), "recovered")
    reps.append(third)
    return reps


def cleft_to_crossed_report(cd: CleftData) -> AxiomReport:
    return check_cleft_to_crossed(cd, cleft_to_crossed(cd))


def _roundtrip(run: Run, kind, obj, seed):
    for rep in roundtrip_reports(kind, obj, seed):
        run.report(rep)
    run.facts["isomorphisms_confirmed"] = sum(1 for r in run.reports if r.passed)


# ---------------------------------------------------------------------------
# example


@main.command()
@click.argument("name")
@click.option("--out", "out", type=click.Path(file_okay=False), default=".", show_default=True)
@common
def example(name, out, field, fmt):
    """Write files for a catalog example such as "S3/A3 conj:(12)".

    Group examples produce group, Hopf, algebra, crossed-system, comodule
    and cleft files; the named hand-built systems produce the Hopf, algebra
    and crossed-system files.
    """
    field = _field_option(field) or field_from_spec("Q")
    run = Run("example", name, field, fmt)
    out = Path(out)
    try:
        _example(run, name, field, out)
    except NoSection as exc:
        run.error("NoSection", str(exc), searched=list(exc.searched))
    except GroupError as exc:
        run.error(type(exc).__name__, str(exc))
    run.emit()


def _example(run: Run, name: str, field, out: Path):
    files = {}
    if name in SYSTEMS or name in MUTANTS:
        s = system_by_name(name, field)
    else:
        ex = group_example(name, field)
        s = ex.system
        files["group.json"] = io.group_doc(ex.hom_group)
        files["group_algebra.json"] = io.hopf_doc(ex.group_algebra)
        files["comodule.json"] = io.comodule_doc(ex.comodule, "hopf.json", "group_algebra.json")
        files["cleft.json"] = io.cleft_doc(ex.cleft, "comodule.json")
        run.facts["section"] = [ex.hom_group.group.labels[r] for r in ex.section.reps]
    files["hopf.json"] = io.hopf_doc(s.hopf)
    files["algebra.json"] = io.algebra_doc(s.algebra)
    files["system.json"] = io.crossed_doc(s, "hopf.json", "algebra.json")
    out.mkdir(parents=True, exist_ok=True)
    for fname in sorted(files):
        io.write(files[fname], out / fname)
        run.outputs.append(str(out / fname))
    run.facts["hopf_dim"] = s.hopf.dim
    run.facts["algebra_dim"] = s.algebra.dim


if __name__ == "__main__":
    main()
