#  Copyright (c) torichow authors 2026-10-18.

from .json import (
    PolynomialAdapter,
    PresentationAdapter,
    StackyFanAdapter,
    encode_box,
    encode_comparison,
    encode_group,
    encode_table,
)
from .latex import latex_polynomial, latex_presentation, latex_table

__all__ = [
    "PolynomialAdapter",
    "PresentationAdapter",
    "StackyFanAdapter",
    "encode_box",
    "encode_comparison",
    "encode_group",
    "encode_table",
    "latex_polynomial",
    "latex_presentation",
    "latex_table",
]
