#  Copyright (c) torichow authors 2026-10-18.

from .fgab import FgAbGroup, GroupHom, gale_dual, quotient, subgroup_contains
from .intlin import cokernel, hnf, kernel, snf, solve

__all__ = [
    "FgAbGroup",
    "GroupHom",
    "cokernel",
    "gale_dual",
    "hnf",
    "kernel",
    "quotient",
    "snf",
    "solve",
    "subgroup_contains",
]
