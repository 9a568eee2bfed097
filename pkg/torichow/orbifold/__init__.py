#  Copyright (c) torichow authors 2026-10-18.

from .box import BoxElement, box_inverse, box_sum_third, enumerate_boxes
from .inertia import inertia, quotient_stacky_fan
from .product import obstruction_euler, orbifold_product
from .ring import module_decomposition_check, orbifold_ring

__all__ = [
    "BoxElement",
    "box_inverse",
    "box_sum_third",
    "enumerate_boxes",
    "inertia",
    "module_decomposition_check",
    "obstruction_euler",
    "orbifold_product",
    "orbifold_ring",
    "quotient_stacky_fan",
]
