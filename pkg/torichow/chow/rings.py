#  Copyright (c) torichow authors 2026-10-18.

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

from torichow.stacky import GerbeData, StackyFan
from torichow.types import HypothesisNotSatisfied, InvalidInputError
from torichow.utils.fgab import FgAbGroup, dual_lattice_maps
from torichow.utils.intlin import cokernel, reduce_modulo, zeros

from .polynomial import Polynomial, product
from .presentation import GradedPresentation, fresh_name

log = logging.getLogger(__name__)


def ray_names(n: int) -> Tuple[str, ...]:
    return tuple(f"x{i + 1}" for i in range(n))


def circuit_relations(sf: StackyFan, nvars: int = None) -> List[Polynomial]:
    """One linear relation ``Σᵢ (b̄ᵢ)ⱼ xᵢ`` per coordinate of the free part."""
    nvars = nvars or sf.n
    star = dual_lattice_maps(sf.beta)
    relations = []
    for j in range(sf.d):
        coeffs = list(star.column(j)) + [0] * (nvars - sf.n)
        relations.append(Polynomial.linear(coeffs))
    return relations


def tilde_coefficients(sf: StackyFan, gd: GerbeData, i: int) -> Tuple[int, ...]:
    """Small representative of ``x̃ᵢ`` modulo the circuit lattice.

    Coordinate ``i`` is reduced last, so ``x̃ᵢ`` stays a multiple of ``xᵢ``
    whenever its class allows it.
    """
    n = sf.n
    order = [k for k in range(n) if k != i] + [i]
    row = gd.tilde(i)
    lattice = zeros(n, sf.d)
    for j in range(sf.d):
        for pos, k in enumerate(order):
            lattice[pos, j] = sf.fan.rays[k][j]
    reduced = reduce_modulo([row[k] for k in order], lattice)
    out = [0] * n
    for pos, k in enumerate(order):
        out[k] = reduced[pos]
    return tuple(out)


def _sr_relations(sf: StackyFan, tilde: Sequence[Polynomial]) -> List[Polynomial]:
    nvars = tilde[0].nvars if tilde else sf.n
    return [
        product((tilde[i] for i in nonface), nvars)
        for nonface in sf.fan.minimal_nonfaces()
    ]


def _ray_generators(n: int):
    return tuple((name, Fraction(1)) for name in ray_names(n))


def sr_ring(sf: StackyFan, gd: GerbeData = None) -> GradedPresentation:
    sf.require_torsion_generated()
    if not sf.n:
        return reduced_sr_ring(sf)
    gd = gd or sf.gerbe_data
    tilde = [Polynomial.linear(tilde_coefficients(sf, gd, i)) for i in range(sf.n)]
    relations = circuit_relations(sf) + _sr_relations(sf, tilde)
    return GradedPresentation(
        generators=_ray_generators(sf.n),
        relations=relations,
        metadata=dict(ring="chow", name=sf.name, dual_torsion=gd.dual_torsion),
    )


def reduced_sr_ring(sf_red: StackyFan) -> GradedPresentation:
    if sf_red.group.torsion:
        raise InvalidInputError(f"Reduced stacky fan expected, group is {sf_red.group}")
    sf_red.require_valid()
    tilde = [Polynomial.variable(i, sf_red.n) for i in range(sf_red.n)]
    relations = circuit_relations(sf_red) + _sr_relations(sf_red, tilde)
    return GradedPresentation(
        generators=_ray_generators(sf_red.n),
        relations=relations,
        metadata=dict(ring="chow", name=sf_red.name, reduced=True),
    )


@dataclass(frozen=True)
class Elimination:
    presentation: GradedPresentation
    substitution: Dict[str, Polynomial]

    def image(self, name: str) -> str:
        return self.presentation.format(self.substitution[name])


def eliminate_linear(p: GradedPresentation) -> Elimination:
    """Trade degree-1 generators for a basis of their quotient by linear relations."""
    linear = [
        r
        for r in p.relations
        if r.is_linear() and all(p.degrees[e.index(1)] == 1 for e, _ in r.terms)
    ]
    if not linear:
        identity = {name: p.gen(name) for name in p.names}
        return Elimination(presentation=p, substitution=identity)

    involved = sorted({e.index(1) for r in linear for e, _ in r.terms})
    position = {g: k for k, g in enumerate(involved)}
    lattice = zeros(len(involved), len(linear))
    for j, r in enumerate(linear):
        for exponents, coeff in r.terms:
            lattice[position[exponents.index(1)], j] = coeff
    quotient = cokernel(lattice)
    kept = [i for i in range(p.nvars) if i not in position]
    count = quotient.free_rank + len(quotient.torsion)
    taken = [p.names[i] for i in kept]
    names = []
    for k in range(count):
        name = fresh_name("t" if count == 1 else f"t{k + 1}", taken + names)
        names.append(name)
    generators = tuple(p.generators[i] for i in kept) + tuple(
        (name, Fraction(1)) for name in names
    )
    nvars = len(generators)

    images: List[Polynomial] = [None] * p.nvars
    for new, old in enumerate(kept):
        images[old] = Polynomial.variable(new, nvars)
    for old, k in position.items():
        coeffs = [0] * len(kept) + [int(v) for v in quotient.projection[:, k]]
        images[old] = Polynomial.linear(coeffs)

    relations = []
    for j, order in enumerate(quotient.torsion):
        relations.append(Polynomial.variable(len(kept) + quotient.free_rank + j, nvars, order))
    for r in p.relations:
        if any(r is l for l in linear):
            continue
        image = r.substitute(images)
        if image:
            relations.append(image)
    log.debug("Eliminated %d linear relations into %d generators", len(linear), count)
    result = GradedPresentation(
        generators=generators,
        relations=relations,
        metadata={**p.metadata, "eliminated": True},
    )
    substitution = {name: images[i] for i, name in enumerate(p.names)}
    return Elimination(presentation=result, substitution=substitution)


def root_gerbe_ring(
    base: GradedPresentation,
    bundle_class: Polynomial,
    m: int,
) -> GradedPresentation:
    """Chow ring of the ``m``-th root stack of the line bundle ``bundle_class``."""
    if m <= 0:
        raise InvalidInputError(f"Root order must be positive, got {m}")
    degree = base.degree_of(bundle_class)
    if degree not in (None, 1):
        raise InvalidInputError(f"Bundle class has degree {degree}, expected 1")
    name = fresh_name("t", base.names)
    nvars = base.nvars + 1
    relation = bundle_class.extend(1) - Polynomial.variable(nvars - 1, nvars, m)
    return base.adjoin([(name, Fraction(1))], [relation])


def bmu_extension(base: GradedPresentation, mu: FgAbGroup) -> GradedPresentation:
    """Chow ring of ``X × Bμ``: one generator ``tᵢ`` with ``rᵢ tᵢ = 0`` per factor."""
    if mu.rank:
        raise InvalidInputError(f"Expected a finite group, got {mu}")
    names: List[str] = []
    for _ in mu.torsion:
        names.append(fresh_name("t", list(base.names) + names))
    nvars = base.nvars + len(names)
    relations = [
        Polynomial.variable(base.nvars + j, nvars, order)
        for j, order in enumerate(mu.torsion)
    ]
    return base.adjoin([(name, Fraction(1)) for name in names], relations)


def group_ring_extension(base: GradedPresentation, mu: FgAbGroup) -> GradedPresentation:
    """Adjoin the group ring of ``mu`` in degree 0 (``gₖ^rₖ = 1``)."""
    if mu.rank:
        raise InvalidInputError(f"Expected a finite group, got {mu}")
    names: List[str] = []
    for _ in mu.torsion:
        names.append(fresh_name("g", list(base.names) + names))
    nvars = base.nvars + len(names)
    relations = [
        Polynomial.variable(base.nvars + j, nvars) ** order - 1
        for j, order in enumerate(mu.torsion)
    ]
    return base.adjoin([(name, Fraction(0)) for name in names], relations)


def root_gerbe_chain(sf: StackyFan) -> GradedPresentation:
    """``sr_ring(sf)`` rebuilt as iterated root stacks over the reduced ring."""
    gd = sf.gerbe_data
    ring = reduced_sr_ring(sf.reduce())
    for coefficients, order in gd.root_bundles:
        bundle = Polynomial.linear(coefficients)
        bundle = bundle.extend(ring.nvars - sf.n)
        ring = root_gerbe_ring(ring, bundle, order)
    return ring


def chow_ring(sf: StackyFan) -> GradedPresentation:
    """Chow ring presentation, splitting off ``Bμ`` when the rays miss torsion."""
    sf.require_valid()
    if sf.validation.torsion_generated:
        return sr_ring(sf)
    decomposition = sf.decompose()
    if not decomposition.split:
        raise HypothesisNotSatisfied(
            f"Torsion of {sf.group} is not generated by the rays and does not split off"
        )
    log.info("Routing %s through its decomposition, mu = %s", sf.name, decomposition.mu)
    base = sr_ring(decomposition.core)
    ring = bmu_extension(base, decomposition.mu)
    ring.metadata.update(decomposed=True, mu=str(decomposition.mu))
    return ring

