#  Copyright (c) torichow authors 2026-10-18.

import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import floor
from typing import Dict, Iterator, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from torichow.config import torichow_get_config
from torichow.stacky import StackyFan
from torichow.types import (
    Cone,
    Element,
    IntegrityError,
    InvalidInputError,
    NotInSupportError,
    as_cone,
)
from torichow.utils.intlin import mat_vec, snf, unimodular_inverse

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class BoxElement:
    element: Element
    cone: Cone
    fractional_coords: Tuple[Fraction, ...]

    @property
    def age(self) -> Fraction:
        return sum(self.fractional_coords, Fraction(0))

    @property
    def is_zero(self) -> bool:
        return not any(self.element)

    @property
    def label(self) -> str:
        if self.is_zero:
            return "1"
        return "y(" + ",".join(str(v) for v in self.element) + ")"

    def sort_key(self) -> Tuple:
        return len(self.cone), self.cone, self.fractional_coords, self.element

    def __str__(self) -> str:
        return self.label


class BoxSet(tuple):
    """All box elements of a stacky fan, with lookup by element."""

    def __new__(cls, boxes: Sequence[BoxElement]):
        obj = super().__new__(cls, sorted(boxes, key=BoxElement.sort_key))
        obj.by_element = {box.element: box for box in obj}
        return obj

    @property
    def zero(self) -> BoxElement:
        return self[0]

    @property
    def nonzero(self) -> Tuple[BoxElement, ...]:
        return tuple(box for box in self if not box.is_zero)

    def find(self, element: Sequence[int]) -> BoxElement:
        try:
            return self.by_element[tuple(element)]
        except KeyError:
            raise IntegrityError(f"{tuple(element)} is not a box element")


class BoxSum(NamedTuple):
    v3: BoxElement
    check_v3: BoxElement
    carries: Dict[int, int]
    cone: Cone


def _torsion_elements(sf: StackyFan) -> Iterator[Tuple[int, ...]]:
    return product(*(range(m) for m in sf.group.torsion))


def _saturation_points(sf: StackyFan, cone: Cone) -> List[Tuple[int, ...]]:
    # coset representatives of (Q-span of the cone ∩ lattice) / Z-span of its rays
    if not cone:
        return [(0,) * sf.d]
    rays = sf.fan.ray_matrix[:, list(cone)]
    result = snf(rays)
    basis = unimodular_inverse(result.u)[:, : len(cone)]
    points = []
    for coeffs in product(*(range(d) for d in result.diagonal)):
        points.append(mat_vec(basis, coeffs))
    return points


def enumerate_boxes(sf: StackyFan) -> BoxSet:
    sf.require_valid()
    fan = sf.fan
    boxes = []
    for cone in fan.all_cones():
        for point in _saturation_points(sf, cone):
            coords = fan.cone_coordinates(cone, point)
            fractional = tuple(a - floor(a) for a in coords)
            if any(a == 0 for a in fractional):
                continue
            free = [Fraction(0)] * sf.d
            for a, i in zip(fractional, cone):
                for k, v in enumerate(fan.rays[i]):
                    free[k] += a * v
            free = tuple(int(v) for v in free)
            for torsion in _torsion_elements(sf):
                boxes.append(
                    BoxElement(
                        element=sf.group.reduce(free + torsion),
                        cone=cone,
                        fractional_coords=fractional,
                    )
                )
    log.debug("%s has %d box elements", sf.name or "stacky fan", len(boxes))
    return BoxSet(boxes)


def split(sf: StackyFan, boxes: BoxSet, c: Sequence[int]) -> Tuple[BoxElement, Dict[int, int]]:
    """Unique ``c = v + Σ mᵢ bᵢ`` with ``v`` a box element and ``mᵢ ≥ 0``."""
    c = sf.group.reduce(c)
    cone, coords = sf.fan.minimal_cone_containing(sf.group.free_part(c))
    carries = {i: floor(a) for i, a in zip(cone, coords) if floor(a)}
    rest = list(c)
    for i, m in carries.items():
        rest = [x - m * b for x, b in zip(rest, sf.rays[i])]
    return boxes.find(sf.group.reduce(rest)), carries


def box_inverse(sf: StackyFan, boxes: BoxSet, v: BoxElement) -> BoxElement:
    if v.is_zero:
        return v
    total = [-x for x in v.element]
    for i in v.cone:
        total = [x + b for x, b in zip(total, sf.rays[i])]
    inverse = boxes.find(sf.group.reduce(total))
    if inverse.cone != v.cone:
        raise IntegrityError(f"Inverse of {v} moved from cone {v.cone} to {inverse.cone}")
    return inverse


def box_sum_third(
    sf: StackyFan,
    boxes: BoxSet,
    v1: BoxElement,
    v2: BoxElement,
) -> Optional[BoxSum]:
    """Third box ``v3`` with ``v1 + v2 + v3`` vanishing in the common local group.

    Returns None when ``v1`` and ``v2`` have no common cone.
    """
    cone = as_cone(v1.cone + v2.cone)
    if not sf.fan.is_cone(cone):
        return None
    check_v3, carries = split(sf, boxes, sf.group.add(v1.element, v2.element))
    return BoxSum(
        v3=box_inverse(sf, boxes, check_v3),
        check_v3=check_v3,
        carries=carries,
        cone=cone,
    )


def alternative_lifts(sf: StackyFan, boxes: BoxSet, v: BoxElement) -> Tuple[BoxElement, ...]:
    """Box elements sharing the free part of ``v`` (other torsion lifts)."""
    if v not in boxes:
        raise InvalidInputError(f"{v} is not a box element")
    free = sf.group.free_part(v.element)
    return tuple(
        box
        for box in boxes
        if box != v and sf.group.free_part(box.element) == free
    )


def lift_relabeling(sf: StackyFan, boxes: BoxSet) -> Dict[str, Tuple[str, ...]]:
    """Canonical label of each twisted box mapped to the labels of its other lifts."""
    return {
        box.label: tuple(other.label for other in alternative_lifts(sf, boxes, box))
        for box in boxes.nonzero
    }


def split_defects(
    sf: StackyFan,
    boxes: BoxSet,
    samples: int = 500,
    seed: int = None,
    radius: int = 10,
) -> List[Tuple[int, ...]]:
    """Random lattice points whose split does not reproduce them."""
    if seed is None:
        seed = torichow_get_config().seed
    rng = np.random.default_rng(seed)
    defects = []
    checked = 0
    for _ in range(samples):
        free = [int(v) for v in rng.integers(-radius, radius + 1, size=sf.d)]
        torsion = [int(rng.integers(m)) for m in sf.group.torsion]
        c = sf.group.reduce(free + torsion)
        try:
            box, carries = split(sf, boxes, c)
        except NotInSupportError:
            continue
        checked += 1
        total = list(box.element)
        for i, m in carries.items():
            total = [x + m * b for x, b in zip(total, sf.rays[i])]
        if any(m < 0 for m in carries.values()) or sf.group.reduce(total) != c:
            defects.append(c)
    log.debug("Split checked on %d of %d samples, %d defects", checked, samples, len(defects))
    return defects
