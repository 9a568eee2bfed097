#  Copyright (c) torichow authors 2026-10-18.

import logging
from typing import List, NamedTuple, Optional, Tuple

from torichow.chow.polynomial import Polynomial, product
from torichow.chow.rings import ray_names, tilde_coefficients
from torichow.stacky import GerbeData, StackyFan
from torichow.types import IntegrityError, as_cone

from .box import BoxElement, BoxSet, box_sum_third

log = logging.getLogger(__name__)


class OrbifoldProduct(NamedTuple):
    box: BoxElement
    factor: Polynomial


def tilde_polynomials(sf: StackyFan, gd: GerbeData, nvars: int = None) -> List[Polynomial]:
    nvars = nvars or sf.n
    return [
        Polynomial.linear(tilde_coefficients(sf, gd, i)).extend(nvars - sf.n)
        for i in range(sf.n)
    ]


def obstruction_euler(
    sf: StackyFan,
    gd: GerbeData,
    triple: Tuple[BoxElement, BoxElement, BoxElement],
    nvars: int = None,
) -> Polynomial:
    """Euler class of the obstruction bundle on the sector of ``triple``.

    ``v1 + v2 + v3 = Σ aᵢ bᵢ`` over the cone spanned by the three boxes, with
    every ``aᵢ`` equal to 1 or 2; the result is the product of ``x̃ᵢ`` over
    the rays with ``aᵢ = 2``.
    """
    nvars = nvars or sf.n
    cone = as_cone(sum((v.cone for v in triple), ()))
    if not sf.fan.is_cone(cone):
        raise IntegrityError(f"Boxes {[str(v) for v in triple]} span no cone")
    total = sf.group.add(*(v.element for v in triple))
    coords = sf.fan.cone_coordinates(cone, sf.group.free_part(total))
    if coords is None or any(a not in (1, 2) for a in coords):
        raise IntegrityError(
            f"Coefficients {coords} of {total} on cone {list(cone)} are not all 1 or 2"
        )
    rest = list(total)
    for i, a in zip(cone, coords):
        rest = [x - int(a) * b for x, b in zip(rest, sf.rays[i])]
    if not sf.group.is_zero(rest):
        raise IntegrityError(f"Torsion of {total} is not carried by the rays")
    tilde = tilde_polynomials(sf, gd, nvars)
    return product((tilde[i] for i, a in zip(cone, coords) if a == 2), nvars)


def orbifold_product(
    sf: StackyFan,
    gd: GerbeData,
    boxes: BoxSet,
    v1: BoxElement,
    v2: BoxElement,
    nvars: int = None,
) -> Optional[OrbifoldProduct]:
    """``y^v1 · y^v2`` as a box times a polynomial in the ray classes.

    Returns None when the boxes have no common cone.
    """
    nvars = nvars or sf.n
    found = box_sum_third(sf, boxes, v1, v2)
    if found is None:
        return None
    check_v3 = found.check_v3
    tilde = tilde_polynomials(sf, gd, nvars)
    # carries on rays that stay in the support of the box part
    carries = {i: m for i, m in found.carries.items() if i in check_v3.cone}
    shared = [j for j in v1.cone if j in v2.cone and j not in found.v3.cone]
    factor = product(
        [tilde[i] ** m for i, m in carries.items()] + [tilde[j] for j in shared],
        nvars,
    )
    if v1.age + v2.age != check_v3.age + sum(carries.values()) + len(shared):
        raise IntegrityError(
            f"Product {v1} * {v2} = {check_v3} * ({factor.format(ray_names(nvars))}) "
            f"breaks the grading"
        )
    return OrbifoldProduct(box=check_v3, factor=factor)

