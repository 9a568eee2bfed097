#  Copyright (c) torichow authors 2026-10-18.

from fractions import Fraction
from typing import Any, List, Sequence, Tuple

import numpy as np


class Container(dict):
    """Dict whose keys also read and write as attributes."""

    def __getattr__(self, name: str) -> Any:
        try:
            return self[name]
        except KeyError:
            known = ", ".join(sorted(self))
            raise AttributeError(f"Unknown key '{name}' (known: {known})") from None

    def __setattr__(self, name: str, value: Any) -> None:
        self[name] = value


class Config(Container):
    monomial_limit: int
    zero_degree_cap: int | None
    seed: int
    check_lemma_cone: bool

    def update(self, *args, **kwargs) -> None:
        changes = dict(*args, **kwargs)
        unknown = sorted(set(changes) - set(self)) if self else []
        if unknown:
            raise InvalidInputError(f"Unknown setting(s): {', '.join(unknown)}")
        super().update(changes)


class InvalidInputError(ValueError):
    pass


class HypothesisNotSatisfied(ValueError):
    pass


class NotInSupportError(ValueError):
    pass


class ResourceLimitError(RuntimeError):
    pass


class IntegrityError(AssertionError):
    pass


class Adapter:
    # fmt: off
    def encode(self, value: Any) -> Any: ...
    def decode(self, value: Any) -> Any: ...
    # fmt: on


class Diagnostics(List[str]):
    @property
    def ok(self) -> bool:
        return not self


IntMatrix = np.ndarray
IntVector = Tuple[int, ...]
Element = Tuple[int, ...]
Cone = Tuple[int, ...]
Exponents = Tuple[int, ...]
RationalVector = Tuple[Fraction, ...]


def add_context(e: Exception, action: str, what: Any) -> Exception:
    suffix = f"; while {action} '{what}'"
    if e.args and isinstance(e.args[0], str):
        e.args = (e.args[0] + suffix,) + e.args[1:]
    else:
        e.args = (suffix[2:],)
    return e


def as_cone(indices: Sequence[int]) -> Cone:
    return tuple(sorted(set(int(i) for i in indices)))
