#  Copyright (c) torichow authors 2026-10-18.

from .config import torichow_config, torichow_get_config, torichow_override
from .fan import Fan
from .stacky import GerbeData, StackyFan
from .types import (
    Config,
    Container,
    HypothesisNotSatisfied,
    IntegrityError,
    InvalidInputError,
    NotInSupportError,
    ResourceLimitError,
)
from .utils import FgAbGroup, GroupHom

__all__ = [
    "Config",
    "Container",
    "Fan",
    "FgAbGroup",
    "GerbeData",
    "GroupHom",
    "HypothesisNotSatisfied",
    "IntegrityError",
    "InvalidInputError",
    "NotInSupportError",
    "ResourceLimitError",
    "StackyFan",
    "torichow_config",
    "torichow_get_config",
    "torichow_override",
]
