#  Copyright (c) torichow authors 2026-10-18.

from .engine import GradedGroupTable, graded_equal, graded_pieces, normal_form
from .polynomial import Polynomial
from .presentation import GradedPresentation
from .rings import (
    bmu_extension,
    chow_ring,
    eliminate_linear,
    reduced_sr_ring,
    root_gerbe_chain,
    root_gerbe_ring,
    sr_ring,
)

__all__ = [
    "GradedGroupTable",
    "GradedPresentation",
    "Polynomial",
    "bmu_extension",
    "chow_ring",
    "eliminate_linear",
    "graded_equal",
    "graded_pieces",
    "normal_form",
    "reduced_sr_ring",
    "root_gerbe_chain",
    "root_gerbe_ring",
    "sr_ring",
]
