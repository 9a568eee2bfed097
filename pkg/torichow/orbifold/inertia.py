#  Copyright (c) torichow authors 2026-10-18.

import logging
from dataclasses import dataclass
from typing import List, Sequence, Tuple

from torichow.stacky import StackyFan
from torichow.types import Cone, InvalidInputError, add_context, as_cone
from torichow.utils.fgab import FgAbGroup, quotient

from .box import BoxElement, BoxSet, box_sum_third, enumerate_boxes

log = logging.getLogger(__name__)


def quotient_stacky_fan(sf: StackyFan, cone: Sequence[int]) -> StackyFan:
    """Stacky fan of the closed substack of ``cone``: ``N(σ)`` and the link."""
    cone = as_cone(cone)
    if not sf.fan.is_cone(cone):
        raise InvalidInputError(f"{list(cone)} is not a cone of the fan")
    if not cone:
        return sf
    name = f"{sf.name}/{list(cone)}" if sf.name else f"sector {list(cone)}"
    try:
        group, projection = quotient(sf.group, [sf.rays[i] for i in cone])
        # the free part of the image only depends on the free coordinates
        free_block = projection.matrix[: group.rank, : sf.d].copy()
        fan = sf.fan.quotient_fan(cone, free_block)
        link = sf.fan.link(cone)
        rays = [projection.apply(sf.rays[j]) for j in link]
        return StackyFan.from_rays(group, rays, fan.max_cones, name=name)
    except ValueError as e:
        raise add_context(e, "building sector", name)


@dataclass(frozen=True)
class InertiaComponent:
    box: BoxElement
    sector: StackyFan

    @property
    def local_group(self) -> FgAbGroup:
        return self.sector.group

    @property
    def age(self):
        return self.box.age


@dataclass(frozen=True)
class DoubleInertiaComponent:
    boxes: Tuple[BoxElement, BoxElement, BoxElement]
    cone: Cone
    sector: StackyFan


def inertia(sf: StackyFan, order: int = 1, boxes: BoxSet = None) -> List:
    """Components of the inertia stack (``order=1``) or of the double inertia stack."""
    if order not in (1, 2):
        raise InvalidInputError(f"Inertia order must be 1 or 2, got {order}")
    boxes = boxes if boxes is not None else enumerate_boxes(sf)
    if order == 1:
        return [
            InertiaComponent(box=box, sector=quotient_stacky_fan(sf, box.cone))
            for box in boxes
        ]
    components = []
    for v1 in boxes:
        for v2 in boxes:
            found = box_sum_third(sf, boxes, v1, v2)
            if found is None:
                continue
            components.append(
                DoubleInertiaComponent(
                    boxes=(v1, v2, found.v3),
                    cone=found.cone,
                    sector=quotient_stacky_fan(sf, found.cone),
                )
            )
    log.debug("%s has %d components of order %d", sf.name, len(components), order)
    return components
