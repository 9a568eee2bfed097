#  Copyright (c) torichow authors 2026-10-18.

import logging
from dataclasses import dataclass, field
from functools import reduce
from math import prod
from typing import Optional, Sequence, Tuple

from torichow.types import Element, IntMatrix, InvalidInputError

from .intlin import (
    cokernel,
    from_columns,
    hstack,
    identity,
    mat_mul,
    mat_vec,
    solve,
    zeros,
)

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class FgAbGroup:
    rank: int
    torsion: Tuple[int, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "torsion", tuple(int(m) for m in self.torsion))
        if self.rank < 0:
            raise InvalidInputError(f"Negative rank {self.rank}")
        for m in self.torsion:
            if m <= 1:
                raise InvalidInputError(f"Torsion order {m} is not > 1")
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a:
                raise InvalidInputError(
                    f"Torsion {self.torsion} is not a divisibility chain"
                )

    @classmethod
    def free(cls, rank: int) -> "FgAbGroup":
        return cls(rank=rank)

    @classmethod
    def from_orders(cls, rank: int, orders: Sequence[int]) -> "FgAbGroup":
        """Group ℤ^rank ⊕ ℤ/o₁ ⊕ ... in canonical invariant-factor form."""
        orders = [o for o in orders if o != 1]
        presentation = zeros(len(orders), len(orders))
        for i, o in enumerate(orders):
            presentation[i, i] = o
        result = cokernel(presentation)
        return cls(rank=rank + result.free_rank, torsion=result.torsion)

    @property
    def length(self) -> int:
        return self.rank + len(self.torsion)

    @property
    def is_finite(self) -> bool:
        return self.rank == 0

    def is_trivial(self) -> bool:
        return self.length == 0

    def order(self) -> Optional[int]:
        if self.rank:
            return None
        return prod(self.torsion)

    def zero(self) -> Element:
        return (0,) * self.length

    def generators(self) -> Tuple[Element, ...]:
        return tuple(tuple(int(v) for v in row) for row in identity(self.length))

    def relations(self) -> IntMatrix:
        q = zeros(self.length, len(self.torsion))
        for j, m in enumerate(self.torsion):
            q[self.rank + j, j] = m
        return q

    def contains(self, element: Sequence[int]) -> bool:
        if len(element) != self.length:
            return False
        return all(0 <= v < m for v, m in zip(element[self.rank :], self.torsion))

    def reduce(self, element: Sequence[int]) -> Element:
        if len(element) != self.length:
            raise InvalidInputError(
                f"Element {tuple(element)} has length {len(element)} != {self.length}"
            )
        free = tuple(int(v) for v in element[: self.rank])
        tors = tuple(int(v) % m for v, m in zip(element[self.rank :], self.torsion))
        return free + tors

    def add(self, *elements: Sequence[int]) -> Element:
        total = reduce(
            lambda a, b: [x + y for x, y in zip(a, b)], elements, self.zero()
        )
        return self.reduce(total)

    def scale(self, k: int, element: Sequence[int]) -> Element:
        return self.reduce([k * v for v in element])

    def free_part(self, element: Sequence[int]) -> Tuple[int, ...]:
        return tuple(element[: self.rank])

    def torsion_part(self, element: Sequence[int]) -> Tuple[int, ...]:
        return tuple(element[self.rank :])

    def direct_sum(self, other: "FgAbGroup") -> "FgAbGroup":
        return FgAbGroup.from_orders(self.rank + other.rank, self.torsion + other.torsion)

    def is_zero(self, element: Sequence[int]) -> bool:
        return not any(self.reduce(element))

    def __str__(self) -> str:
        parts = []
        if self.rank == 1:
            parts.append("Z")
        elif self.rank:
            parts.append(f"Z^{self.rank}")
        parts += [f"Z/{m}" for m in self.torsion]
        return " + ".join(parts) or "0"


@dataclass(frozen=True)
class GroupHom:
    source: FgAbGroup
    target: FgAbGroup
    matrix: IntMatrix = field(compare=False)

    def __post_init__(self) -> None:
        shape = (self.target.length, self.source.length)
        if self.matrix.shape != shape:
            raise InvalidInputError(
                f"Matrix shape {self.matrix.shape} does not match {shape}"
            )

    def __eq__(self, other) -> bool:
        if not isinstance(other, GroupHom):
            return NotImplemented
        return (
            self.source == other.source
            and self.target == other.target
            and all(self.apply(g) == other.apply(g) for g in self.source.generators())
        )

    def __hash__(self) -> int:
        return hash((self.source, self.target))

    def apply(self, element: Sequence[int]) -> Element:
        return self.target.reduce(mat_vec(self.matrix, element))

    def column(self, j: int) -> Element:
        return self.target.reduce(tuple(self.matrix[:, j]))

    def columns(self) -> Tuple[Element, ...]:
        return tuple(self.column(j) for j in range(self.source.length))

    def compose(self, other: "GroupHom") -> "GroupHom":
        """``self ∘ other``."""
        if other.target != self.source:
            raise InvalidInputError(f"Cannot compose {other.target} -> {self.source}")
        return GroupHom(other.source, self.target, mat_mul(self.matrix, other.matrix))

    def is_well_defined(self) -> bool:
        for j, m in enumerate(self.source.torsion):
            image = self.column(self.source.rank + j)
            if not self.target.is_zero([m * v for v in image]):
                return False
        return True

    def is_surjective(self) -> bool:
        image = hstack(self.matrix, self.target.relations())
        return all(solve(image, g) is not None for g in self.target.generators())


def hom_from_columns(
    source: FgAbGroup,
    target: FgAbGroup,
    images: Sequence[Sequence[int]],
) -> GroupHom:
    matrix = from_columns([target.reduce(v) for v in images], target.length)
    return GroupHom(source, target, matrix)


def quotient(
    g: FgAbGroup,
    elements: Sequence[Sequence[int]],
) -> Tuple[FgAbGroup, GroupHom]:
    """Quotient of ``g`` by the subgroup generated by ``elements``."""
    for element in elements:
        if len(element) != g.length:
            raise InvalidInputError(
                f"Element {tuple(element)} has length {len(element)} != {g.length}"
            )
    presentation = hstack(g.relations(), from_columns(elements, g.length))
    result = cokernel(presentation)
    q = FgAbGroup(rank=result.free_rank, torsion=result.torsion)
    log.debug("Quotient of %s by %d element(s) is %s", g, len(elements), q)
    return q, GroupHom(g, q, result.projection)


def subgroup_contains(
    g: FgAbGroup,
    generators: Sequence[Sequence[int]],
    target: Sequence[int],
) -> bool:
    lattice = hstack(from_columns(generators, g.length), g.relations())
    return solve(lattice, g.reduce(target)) is not None


def subgroup_coordinates(
    g: FgAbGroup,
    generators: Sequence[Sequence[int]],
    target: Sequence[int],
) -> Optional[Tuple[int, ...]]:
    """Integer coefficients expressing ``target`` in ``generators``, or None."""
    lattice = hstack(from_columns(generators, g.length), g.relations())
    x = solve(lattice, g.reduce(target))
    return None if x is None else x[: len(generators)]


def gale_dual(beta: GroupHom) -> Tuple[FgAbGroup, GroupHom]:
    """Gale dual of ``beta: ℤⁿ → N`` as ``N∨ = coker([B, Q]ᵀ)``."""
    source, n = beta.source, beta.source.length
    if source.torsion:
        raise InvalidInputError(f"Source of the Gale dual must be free, got {source}")
    big = hstack(beta.matrix, beta.target.relations())
    result = cokernel(big.T.copy())
    ndual = FgAbGroup(rank=result.free_rank, torsion=result.torsion)
    beta_dual = GroupHom(source, ndual, result.projection[:, :n].copy())
    log.debug("Gale dual of %s -> %s is %s", source, beta.target, ndual)
    return ndual, beta_dual


def dual_lattice_maps(beta: GroupHom) -> GroupHom:
    """``β⋆: N⋆ → (ℤⁿ)⋆``, the transpose on the free part."""
    rank = beta.target.rank
    free = beta.matrix[:rank]
    return GroupHom(FgAbGroup.free(rank), beta.source, free.T.copy())
