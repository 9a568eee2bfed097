#  Copyright (c) torichow authors 2026-10-18.

import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement, product as cartesian
from typing import List, Optional, Tuple

from torichow.chow.engine import GradedGroupTable, graded_pieces, normal_form
from torichow.chow.polynomial import Polynomial, product
from torichow.chow.presentation import GradedPresentation
from torichow.chow.rings import (
    bmu_extension,
    chow_ring,
    circuit_relations,
    group_ring_extension,
    ray_names,
)
from torichow.stacky import StackyFan
from torichow.types import HypothesisNotSatisfied

from .box import BoxElement, BoxSet, enumerate_boxes
from .inertia import quotient_stacky_fan
from .product import orbifold_product, tilde_polynomials

log = logging.getLogger(__name__)


class _Generators:
    """Index of ray and twisted-sector generators of an orbifold presentation."""

    def __init__(self, sf: StackyFan, boxes: BoxSet) -> None:
        self.sf = sf
        self.boxes = boxes
        self.twisted = boxes.nonzero
        self.nvars = sf.n + len(self.twisted)
        self.index = {box: sf.n + k for k, box in enumerate(self.twisted)}

    def generators(self) -> List[Tuple[str, Fraction]]:
        return [(name, Fraction(1)) for name in ray_names(self.sf.n)] + [
            (box.label, box.age) for box in self.twisted
        ]

    def y(self, box: BoxElement) -> Polynomial:
        if box.is_zero:
            return Polynomial.constant(1, self.nvars)
        return Polynomial.variable(self.index[box], self.nvars)


def _product(gens: _Generators, v1: BoxElement, v2: BoxElement) -> Optional[Tuple[BoxElement, Polynomial]]:
    sf = gens.sf
    result = orbifold_product(sf, sf.gerbe_data, gens.boxes, v1, v2, gens.nvars)
    return None if result is None else (result.box, result.factor)


def _twisted_ring(sf: StackyFan, boxes: BoxSet) -> GradedPresentation:
    sf.require_torsion_generated()
    gens = _Generators(sf, boxes)
    nvars = gens.nvars
    tilde = tilde_polynomials(sf, sf.gerbe_data, nvars)

    relations = circuit_relations(sf, nvars)
    relations += [
        product((tilde[i] for i in nonface), nvars)
        for nonface in sf.fan.minimal_nonfaces()
    ]
    for box in gens.twisted:
        for j in range(sf.n):
            if not sf.fan.is_cone(box.cone + (j,)):
                relations.append(gens.y(box) * tilde[j])
    for v, w in combinations_with_replacement(gens.twisted, 2):
        found = _product(gens, v, w)
        rhs = Polynomial.zero(nvars) if found is None else gens.y(found[0]) * found[1]
        relations.append(gens.y(v) * gens.y(w) - rhs)

    log.info(
        "Orbifold ring of %s: %d twisted sectors, %d relations",
        sf.name or "stacky fan",
        len(gens.twisted),
        len(relations),
    )
    return GradedPresentation(
        generators=gens.generators(),
        relations=relations,
        metadata=dict(
            ring="orbifold",
            name=sf.name,
            boxes=[box.label for box in gens.twisted],
            dual_torsion=sf.gerbe_data.dual_torsion,
        ),
    )


def orbifold_ring(sf: StackyFan) -> GradedPresentation:
    """Integral orbifold Chow ring presentation.

    Inputs whose rays miss part of the torsion are split as ``core × Bμ``
    first; the ring is then the core's, extended by ``Bμ`` and the group
    ring of ``μ``.
    """
    sf.require_valid()
    if sf.validation.torsion_generated:
        return _twisted_ring(sf, enumerate_boxes(sf))
    decomposition = sf.decompose()
    if not decomposition.split:
        raise HypothesisNotSatisfied(
            f"Torsion of {sf.group} is not generated by the rays and does not split off"
        )
    log.info("Routing %s through its decomposition, mu = %s", sf.name, decomposition.mu)
    core = decomposition.core
    ring = _twisted_ring(core, enumerate_boxes(core))
    ring = bmu_extension(ring, decomposition.mu)
    ring = group_ring_extension(ring, decomposition.mu)
    ring.metadata.update(decomposed=True, mu=str(decomposition.mu))
    return ring


def associativity_defects(sf: StackyFan) -> List[Tuple[str, str, str]]:
    """Box triples where the two bracketings of the product formula disagree."""
    sf.require_torsion_generated()
    boxes = enumerate_boxes(sf)
    gens = _Generators(sf, boxes)
    ring = _twisted_ring(sf, boxes)
    zero = Polynomial.zero(gens.nvars)

    def times(left: Optional[Tuple[BoxElement, Polynomial]], v: BoxElement, swap: bool):
        if left is None:
            return None
        box, factor = left
        found = _product(gens, v, box) if swap else _product(gens, box, v)
        return None if found is None else (found[0], factor * found[1])

    def expand(value) -> Polynomial:
        return zero if value is None else gens.y(value[0]) * value[1]

    defects = []
    for v1, v2, v3 in cartesian(boxes, repeat=3):
        left = expand(times(_product(gens, v1, v2), v3, swap=False))
        right = expand(times(_product(gens, v2, v3), v1, swap=True))
        if any(normal_form(ring, left - right)):
            defects.append((v1.label, v2.label, v3.label))
    if defects:
        log.warning("%d non-associative box triples", len(defects))
    return defects


@dataclass
class ModuleCheck:
    summands: List[Tuple[BoxElement, GradedGroupTable]]
    total: GradedGroupTable
    orbifold: GradedGroupTable
    mismatches: List[Tuple[Fraction, object, object]]

    @property
    def verdict(self) -> bool:
        return not self.mismatches


def module_decomposition_check(sf: StackyFan, max_degree) -> ModuleCheck:
    """Compare the orbifold ring with the age-shifted sum of sector Chow groups."""
    sf.require_torsion_generated()
    max_degree = Fraction(max_degree)
    boxes = enumerate_boxes(sf)
    summands = []
    total = GradedGroupTable()
    for box in boxes:
        if box.age > max_degree:
            continue
        sector = quotient_stacky_fan(sf, box.cone)
        table = graded_pieces(chow_ring(sector), max_degree - box.age).shift(box.age)
        summands.append((box, table))
        total = total.direct_sum(table)
    orbifold = graded_pieces(_twisted_ring(sf, boxes), max_degree)
    mismatches = orbifold.mismatches(total)
    if mismatches:
        log.warning("Module decomposition of %s fails in %d degrees", sf.name, len(mismatches))
    return ModuleCheck(
        summands=summands,
        total=total,
        orbifold=orbifold,
        mismatches=mismatches,
    )
