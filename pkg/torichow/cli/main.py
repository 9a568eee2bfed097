#  Copyright (c) torichow authors 2026-10-18.

import json
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import wraps
from typing import Any, Optional

import click

from torichow.adapters.json import (
    PresentationAdapter,
    StackyFanAdapter,
    encode_box,
    encode_comparison,
    encode_fraction,
    encode_group,
)
from torichow.adapters.latex import latex_fraction, latex_group, latex_name, latex_text
from torichow.chow.engine import graded_equal, graded_pieces
from torichow.chow.presentation import GradedPresentation
from torichow.chow.rings import chow_ring, eliminate_linear
from torichow.config import torichow_config
from torichow.orbifold.box import enumerate_boxes, lift_relabeling, split_defects
from torichow.orbifold.inertia import inertia as inertia_components
from torichow.orbifold.ring import (
    associativity_defects,
    module_decomposition_check,
    orbifold_ring,
)
from torichow.stacky import StackyFan
from torichow.types import (
    HypothesisNotSatisfied,
    IntegrityError,
    InvalidInputError,
    ResourceLimitError,
)
from torichow.utils.fgab import quotient
from torichow.utils.intlin import to_lists

from .formats import FORMATS, Report, emit

log = logging.getLogger(__name__)

RINGS = ("chow", "orbifold")


@dataclass
class Options:
    fmt: str
    out: Optional[str]


def exit_codes(func):
    """Map library errors onto the exit code contract."""

    @wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except HypothesisNotSatisfied as e:
            click.echo(f"Hypothesis not satisfied: {e}", err=True)
            raise click.exceptions.Exit(2)
        except ResourceLimitError as e:
            click.echo(f"Resource limit: {e}", err=True)
            raise click.exceptions.Exit(3)
        except IntegrityError as e:
            click.echo(f"Internal consistency check failed: {e}", err=True)
            raise click.exceptions.Exit(4)
        except (ValueError, OSError) as e:
            click.echo(f"Invalid input: {e}", err=True)
            raise click.exceptions.Exit(1)

    return wrapper


def read_document(path: str) -> Any:
    try:
        with open(path, "r", encoding="utf-8") as f:
            return json.load(f)
    except json.JSONDecodeError as e:
        raise InvalidInputError(f"{path} is not valid JSON: {e}")


def load_stacky_fan(path: str) -> StackyFan:
    doc = read_document(path)
    if isinstance(doc, dict) and not doc.get("name"):
        doc = dict(doc, name=path)
    return StackyFanAdapter().decode(doc)


def load_ring(path: str, ring: str) -> GradedPresentation:
    doc = read_document(path)
    if isinstance(doc, dict) and isinstance(doc.get("presentation"), dict):
        doc = doc["presentation"]
    if isinstance(doc, dict) and "generators" in doc:
        return PresentationAdapter().decode(doc)
    if isinstance(doc, dict) and not doc.get("name"):
        doc = dict(doc, name=path)
    sf = StackyFanAdapter().decode(doc)
    return chow_ring(sf) if ring == "chow" else orbifold_ring(sf)


def _routing(report: Report, p: GradedPresentation) -> None:
    if p.metadata.get("decomposed"):
        report.add(
            "routing",
            {"decomposed": True, "mu": p.metadata["mu"]},
            f"routed through decomposition, mu = {p.metadata['mu']}",
        )


@click.group()
@click.option("--format", "fmt", type=click.Choice(FORMATS), default="text", help="Output format.")
@click.option("--out", type=click.Path(dir_okay=False), default=None, help="Output file.")
@click.option("--seed", type=int, default=None, help="Seed for randomized self-checks.")
@click.option("--limit-monomials", type=int, default=None, help="Engine monomial cap.")
@click.option("-v", "--verbose", count=True, help="More logging (repeatable).")
@click.option("-q", "--quiet", is_flag=True, help="Only log errors.")
@click.pass_context
def cli(ctx, fmt, out, seed, limit_monomials, verbose, quiet):
    """Integral Chow rings of toric Deligne-Mumford stacks."""
    level = logging.WARNING
    if quiet:
        level = logging.ERROR
    elif verbose:
        level = logging.INFO if verbose == 1 else logging.DEBUG
    logging.basicConfig(level=level, format="%(name)s:%(levelname)s:%(message)s")
    torichow_config(seed=seed, monomial_limit=limit_monomials)
    ctx.obj = Options(fmt=fmt, out=out)


@cli.command()
@click.argument("file")
@click.pass_obj
@exit_codes
def validate(opts: Options, file: str):
    """Check a stacky fan file."""
    sf = load_stacky_fan(file)
    result = sf.validate()
    report = Report()
    report.add("ok", result.ok, "ok" if result.ok else "invalid")
    report.add("diagnostics", list(result.diagnostics))
    report.lines += [f"  {message}" for message in result.diagnostics]
    report.add(
        "torsion_generated",
        result.torsion_generated,
        f"torsion generated: {result.torsion_generated}",
    )
    report.add("lemma", list(result.lemma))
    report.lines += [f"  {message}" for message in result.lemma]
    report.tabular(
        ["check", "result"],
        [["valid", str(result.ok)], ["torsion generated", str(result.torsion_generated)]]
        + [["diagnostic", latex_text(message)] for message in result.diagnostics]
        + [["lemma", latex_text(message)] for message in result.lemma],
    )
    emit(report, opts.fmt, opts.out)
    if not result.ok:
        raise click.exceptions.Exit(1)


@cli.command()
@click.argument("file")
@click.pass_obj
@exit_codes
def gale(opts: Options, file: str):
    """Gale dual, Picard group and the cokernel of the dual map."""
    sf = load_stacky_fan(file).require_valid()
    dual, beta_dual = sf.gale
    mu, _ = quotient(dual, beta_dual.columns())
    report = Report()
    report.add("dual", encode_group(dual), f"N^v = {dual}")
    report.add("beta_dual", to_lists(beta_dual.matrix), f"beta^v = {to_lists(beta_dual.matrix)}")
    report.add("cokernel", encode_group(mu), f"coker(beta^v) = {mu}")
    emit(report, opts.fmt, opts.out)


@cli.command()
@click.argument("file")
@click.pass_obj
@exit_codes
def decompose(opts: Options, file: str):
    """Split off the part of the torsion the rays do not generate."""
    sf = load_stacky_fan(file).require_valid()
    result = sf.decompose()
    report = Report()
    report.add("core", StackyFanAdapter().encode(result.core), f"core: {result.core.group}")
    report.lines += [f"  ray {i}: {list(ray)}" for i, ray in enumerate(result.core.rays)]
    report.add("mu", encode_group(result.mu), f"mu = {result.mu}")
    shear = None if result.shear is None else to_lists(result.shear)
    report.add("shear", shear, f"shear: {shear}" if shear is not None else None)
    report.add("split", result.split, f"split: {result.split}")
    emit(report, opts.fmt, opts.out)
    if not result.split:
        raise click.exceptions.Exit(2)


@cli.command()
@click.argument("file")
@click.pass_obj
@exit_codes
def boxes(opts: Options, file: str):
    """List the box elements with cones and ages."""
    sf = load_stacky_fan(file).require_valid()
    found = enumerate_boxes(sf)
    report = Report()
    report.add("boxes", [encode_box(box) for box in found.nonzero])
    report.add("lifts", lift_relabeling(sf, found))
    report.lines.append(f"{len(found.nonzero)} nonzero box elements")
    for box in found.nonzero:
        coords = ", ".join(str(a) for a in box.fractional_coords)
        report.lines.append(f"  {box.label}  cone {list(box.cone)}  ({coords})  age {box.age}")
    report.tabular(
        ["box", "cone", "coordinates", "age"],
        [
            [
                f"${latex_name(box.label)}$",
                latex_text(list(box.cone)),
                "$(" + ", ".join(latex_fraction(a) for a in box.fractional_coords) + ")$",
                f"${latex_fraction(box.age)}$",
            ]
            for box in found.nonzero
        ],
    )
    emit(report, opts.fmt, opts.out)


@cli.command()
@click.argument("file")
@click.option("--order", type=click.IntRange(1, 2), default=1)
@click.pass_obj
@exit_codes
def inertia(opts: Options, file: str, order: int):
    """Components of the inertia or double inertia stack."""
    sf = load_stacky_fan(file).require_valid()
    components = inertia_components(sf, order)
    report = Report()
    records = []
    if order == 1:
        for c in components:
            records.append(
                {
                    "box": c.box.label,
                    "age": encode_fraction(c.age),
                    "local_group": encode_group(c.local_group),
                    "rays": c.sector.n,
                }
            )
            report.lines.append(
                f"{c.box.label}  age {c.age}  local group {c.local_group}  {c.sector.n} rays"
            )
        report.tabular(
            ["box", "age", "local group", "rays"],
            [
                [
                    f"${latex_name(c.box.label)}$",
                    f"${latex_fraction(c.age)}$",
                    f"${latex_group(c.local_group)}$",
                    str(c.sector.n),
                ]
                for c in components
            ],
        )
    else:
        for c in components:
            labels = [box.label for box in c.boxes]
            records.append(
                {
                    "boxes": labels,
                    "cone": list(c.cone),
                    "local_group": encode_group(c.sector.group),
                }
            )
            report.lines.append(f"{' '.join(labels)}  cone {list(c.cone)}  {c.sector.group}")
        report.tabular(
            ["boxes", "cone", "local group"],
            [
                [
                    ", ".join(f"${latex_name(box.label)}$" for box in c.boxes),
                    latex_text(list(c.cone)),
                    f"${latex_group(c.sector.group)}$",
                ]
                for c in components
            ],
        )
    report.add("components", records)
    emit(report, opts.fmt, opts.out)


@cli.command()
@click.argument("file")
@click.option("--eliminate", is_flag=True, help="Trade ray classes for a basis of the Picard group.")
@click.option("--max-degree", type=Fraction, default=None)
@click.pass_obj
@exit_codes
def chow(opts: Options, file: str, eliminate: bool, max_degree: Optional[Fraction]):
    """Chow ring presentation."""
    sf = load_stacky_fan(file)
    p = chow_ring(sf)
    report = Report()
    _routing(report, p)
    if eliminate:
        result = eliminate_linear(p)
        p = result.presentation
        report.add(
            "substitution",
            {name: result.image(name) for name in result.substitution},
            "; ".join(f"{name} -> {result.image(name)}" for name in result.substitution),
        )
    report.presentation("presentation", p)
    if max_degree is not None:
        report.table("graded_pieces", graded_pieces(p, max_degree))
    emit(report, opts.fmt, opts.out)


@cli.command()
@click.argument("file")
@click.option("--max-degree", type=Fraction, default=None)
@click.pass_obj
@exit_codes
def orbifold(opts: Options, file: str, max_degree: Optional[Fraction]):
    """Orbifold Chow ring presentation."""
    p = orbifold_ring(load_stacky_fan(file))
    report = Report()
    _routing(report, p)
    report.presentation("presentation", p)
    if max_degree is not None:
        report.table("graded_pieces", graded_pieces(p, max_degree))
    emit(report, opts.fmt, opts.out)


@cli.command()
@click.argument("file")
@click.option("--ring", type=click.Choice(RINGS), default="chow")
@click.option("--max-degree", type=Fraction, required=True)
@click.pass_obj
@exit_codes
def graded(opts: Options, file: str, ring: str, max_degree: Fraction):
    """Graded pieces of a ring up to a degree."""
    p = load_ring(file, ring)
    report = Report()
    _routing(report, p)
    report.table("graded_pieces", graded_pieces(p, max_degree))
    emit(report, opts.fmt, opts.out)


@cli.command()
@click.argument("file_a")
@click.argument("file_b")
@click.option("--ring", type=click.Choice(RINGS), default="chow")
@click.option("--ring-b", type=click.Choice(RINGS), default=None, help="Ring of the second file.")
@click.option("--max-degree", type=Fraction, required=True)
@click.pass_obj
@exit_codes
def compare(opts: Options, file_a: str, file_b: str, ring: str, ring_b: Optional[str], max_degree: Fraction):
    """Compare graded pieces of two rings."""
    a = load_ring(file_a, ring)
    b = load_ring(file_b, ring_b or ring)
    result = graded_equal(a, b, max_degree)
    report = Report()
    report.add("comparison", encode_comparison(result), "EQUAL" if result.equal else "NOT-EQUAL")
    report.lines += [f"  {line}" for line in result.report()]
    emit(report, opts.fmt, opts.out)


@cli.command()
@click.argument("file")
@click.option("--samples", type=click.IntRange(1), default=500, help="Random lattice points to split.")
@click.option("--max-degree", type=Fraction, default=Fraction(2))
@click.pass_obj
@exit_codes
def selfcheck(opts: Options, file: str, samples: int, max_degree: Fraction):
    """Randomized and exhaustive consistency checks of the orbifold product."""
    sf = load_stacky_fan(file).require_torsion_generated()
    found = enumerate_boxes(sf)
    report = Report()
    splits = split_defects(sf, found, samples)
    report.add("split_defects", [list(c) for c in splits], f"split defects: {len(splits)}")
    triples = associativity_defects(sf)
    report.add("associativity_defects", [list(t) for t in triples], f"associativity defects: {len(triples)}")
    report.lines += [f"  {' '.join(t)}" for t in triples]
    check = module_decomposition_check(sf, max_degree)
    report.add(
        "module_decomposition",
        {"verdict": check.verdict, "mismatches": [encode_fraction(d) for d, _, _ in check.mismatches]},
        f"module decomposition up to degree {max_degree}: {'ok' if check.verdict else 'FAILED'}",
    )
    report.lines += [f"  degree {d}: {a} != {b}" for d, a, b in check.mismatches]
    emit(report, opts.fmt, opts.out)


def main():
    cli(prog_name="torichow")


if __name__ == "__main__":
    main()
