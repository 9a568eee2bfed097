#  Copyright (c) torichow authors 2026-10-18.

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, NamedTuple, Sequence, Tuple

from torichow.types import InvalidInputError

from .polynomial import Polynomial


class Generator(NamedTuple):
    name: str
    degree: Fraction


@dataclass(frozen=True)
class GradedPresentation:
    """A graded ring ``ℤ[generators] / (relations)``.

    Relations must be homogeneous. Degrees are nonnegative fractions;
    degree-0 generators stand for torsion-only twisted sectors.
    """

    generators: Tuple[Generator, ...]
    relations: Tuple[Polynomial, ...] = ()
    metadata: Dict[str, object] = field(
        default_factory=dict, compare=False, hash=False, repr=False
    )

    def __post_init__(self) -> None:
        generators = tuple(
            Generator(str(name), Fraction(degree)) for name, degree in self.generators
        )
        object.__setattr__(self, "generators", generators)
        object.__setattr__(self, "relations", tuple(self.relations))
        names = [g.name for g in generators]
        if len(set(names)) != len(names):
            raise InvalidInputError(f"Duplicate generator names in {names}")
        for g in generators:
            if g.degree < 0:
                raise InvalidInputError(f"Generator {g.name} has negative degree")
        for k, relation in enumerate(self.relations):
            if relation.nvars != len(generators):
                raise InvalidInputError(
                    f"Relation {k} has {relation.nvars} variables, "
                    f"expected {len(generators)}"
                )
            if not relation.is_homogeneous(self.degrees):
                raise InvalidInputError(f"Relation {k} is not homogeneous")

    @property
    def names(self) -> Tuple[str, ...]:
        return tuple(g.name for g in self.generators)

    @property
    def degrees(self) -> Tuple[Fraction, ...]:
        return tuple(g.degree for g in self.generators)

    @property
    def nvars(self) -> int:
        return len(self.generators)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise InvalidInputError(f"No generator named '{name}'")

    def gen(self, name_or_index) -> Polynomial:
        i = name_or_index
        if isinstance(name_or_index, str):
            i = self.index(name_or_index)
        return Polynomial.variable(i, self.nvars)

    def one(self) -> Polynomial:
        return Polynomial.constant(1, self.nvars)

    def degree_of(self, poly: Polynomial) -> Fraction | None:
        return poly.degree(self.degrees)

    def format(self, poly: Polynomial) -> str:
        return poly.format(self.names)

    def adjoin(
        self,
        generators: Sequence[Tuple[str, Fraction]],
        relations: Sequence[Polynomial] = (),
        **metadata,
    ) -> "GradedPresentation":
        """New presentation with extra trailing generators and relations.

        Existing relations are extended to the new variables; ``relations``
        must already be written over the enlarged generator list.
        """
        extra = len(generators)
        return GradedPresentation(
            generators=self.generators + tuple(generators),
            relations=tuple(r.extend(extra) for r in self.relations)
            + tuple(relations),
            metadata={**self.metadata, **metadata},
        )

    def __str__(self) -> str:
        names = ", ".join(self.names)
        relations = ", ".join(self.format(r) for r in self.relations)
        return f"Z[{names}] / ({relations})"


def fresh_name(base: str, taken: Sequence[str]) -> str:
    if base not in taken:
        return base
    k = 1
    while f"{base}{k}" in taken:
        k += 1
    return f"{base}{k}"
