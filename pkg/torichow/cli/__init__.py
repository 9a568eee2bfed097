#  Copyright (c) torichow authors 2026-10-18.

from .main import cli, main

__all__ = [
    "cli",
    "main",
]
