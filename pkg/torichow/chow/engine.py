#  Copyright (c) torichow authors 2026-10-18.

import logging
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import lcm
from time import perf_counter
from typing import Dict, Iterator, List, Set, Tuple

from torichow.config import torichow_get_config
from torichow.types import Exponents, IntMatrix, InvalidInputError, ResourceLimitError
from torichow.utils.fgab import FgAbGroup
from torichow.utils.intlin import cokernel, mat_vec, zeros

from .polynomial import Polynomial
from .presentation import GradedPresentation

log = logging.getLogger(__name__)

Column = Dict[int, int]


class GradedGroupTable(Dict[Fraction, FgAbGroup]):
    """Abelian group in each degree, keyed by exact fractional degree."""

    def get_group(self, degree) -> FgAbGroup:
        return self.get(Fraction(degree), FgAbGroup(0))

    def shift(self, by: Fraction) -> "GradedGroupTable":
        return GradedGroupTable({d + by: g for d, g in self.items()})

    def direct_sum(self, other: "GradedGroupTable") -> "GradedGroupTable":
        out = GradedGroupTable(self)
        for d, g in other.items():
            out[d] = out[d].direct_sum(g) if d in out else g
        return out

    def mismatches(self, other: "GradedGroupTable") -> List[Tuple[Fraction, FgAbGroup, FgAbGroup]]:
        out = []
        for d in sorted(set(self) | set(other)):
            a, b = self.get_group(d), other.get_group(d)
            if a != b:
                out.append((d, a, b))
        return out

    def __str__(self) -> str:
        return "\n".join(f"{d}: {g}" for d, g in sorted(self.items()))


@dataclass
class DegreePiece:
    degree: Fraction
    monomials: Tuple[Exponents, ...]
    index: Dict[Exponents, int]
    group: FgAbGroup
    substitution: Dict[int, Column]
    rows: Tuple[int, ...]
    projection: IntMatrix = field(repr=False)

    def coordinates(self, column: Column) -> Tuple[int, ...]:
        reduced = _expand(column, self.substitution)
        position = {r: k for k, r in enumerate(self.rows)}
        vector = [0] * len(self.rows)
        for r, c in reduced.items():
            vector[position[r]] += c
        if not self.rows:
            return self.group.zero()
        return self.group.reduce(mat_vec(self.projection, vector))


def _expand(column: Column, substitution: Dict[int, Column]) -> Column:
    out: Column = {}
    for r, c in column.items():
        if r in substitution:
            for r2, c2 in substitution[r].items():
                out[r2] = out.get(r2, 0) + c * c2
        else:
            out[r] = out.get(r, 0) + c
    return {r: c for r, c in out.items() if c}


def _unit_elimination(columns: List[Column]) -> Tuple[Dict[int, Column], List[Column]]:
    """Pivot on ±1 entries, keeping every substitution fully back-substituted.

    Returns the substitution (pivot row -> expression in non-pivot rows) and
    the residual columns that had no unit entry.
    """
    substitution: Dict[int, Column] = {}
    users: Dict[int, Set[int]] = defaultdict(set)
    pending = sorted(columns, key=len)
    progress = True
    while progress and pending:
        progress = False
        remaining = []
        for column in pending:
            column = _expand(column, substitution)
            if not column:
                continue
            units = [r for r, c in column.items() if c in (1, -1)]
            if not units:
                remaining.append(column)
                continue
            p = min(units)
            sign = column[p]
            expansion = {r: -c * sign for r, c in column.items() if r != p}
            for q in users.pop(p, set()):
                target = substitution[q]
                coeff = target.pop(p)
                for r, c in expansion.items():
                    value = target.get(r, 0) + coeff * c
                    if value:
                        target[r] = value
                        users[r].add(q)
                    else:
                        target.pop(r, None)
                        users[r].discard(q)
            substitution[p] = expansion
            for r in expansion:
                users[r].add(p)
            progress = True
        pending = remaining
    residual = [c for c in (_expand(c, substitution) for c in pending) if c]
    return substitution, residual


class GradedEngine:
    """Degree-by-degree quotient of the polynomial lattice by the relations.

    Each degree is the cokernel of the lattice spanned by all products of a
    relation with a monomial, restricted to that degree. Degree-0
    generators are truncated at a fixed exponent.
    """

    def __init__(
        self,
        presentation: GradedPresentation,
        monomial_limit: int = None,
        zero_degree_cap: int = None,
    ) -> None:
        config = torichow_get_config()
        self.presentation = presentation
        self.monomial_limit = monomial_limit or config.monomial_limit
        cap = zero_degree_cap if zero_degree_cap is not None else config.zero_degree_cap
        degrees = presentation.degrees
        self.scale = lcm(1, *(d.denominator for d in degrees))
        self.weights = tuple(int(d * self.scale) for d in degrees)
        self.caps: Dict[int, int] = {}
        for i, w in enumerate(self.weights):
            if w:
                continue
            if cap is not None:
                self.caps[i] = cap
            else:
                highest = max(
                    (r.max_exponent(i) for r in presentation.relations), default=0
                )
                self.caps[i] = max(highest, 1) + 1
        if self.caps:
            log.info(
                "Degree-0 generators truncated at exponents %s",
                ", ".join(f"{presentation.names[i]}<={e}" for i, e in self.caps.items()),
            )
        self._monomial_cache: Dict[int, Tuple[Exponents, ...]] = {}
        self._pieces: Dict[Fraction, DegreePiece] = {}

    def _weight(self, degree: Fraction) -> int:
        weight = Fraction(degree) * self.scale
        if weight.denominator != 1:
            raise InvalidInputError(f"No monomial can have degree {degree}")
        return int(weight)

    def _positive_parts(self, weight: int, start: int) -> Iterator[Tuple[int, ...]]:
        n = len(self.weights)
        if start == n:
            if weight == 0:
                yield ()
            return
        w = self.weights[start]
        if not w:
            for rest in self._positive_parts(weight, start + 1):
                yield (0,) + rest
            return
        for e in range(weight // w, -1, -1):
            for rest in self._positive_parts(weight - e * w, start + 1):
                yield (e,) + rest

    def monomials(self, weight: int) -> Tuple[Exponents, ...]:
        if weight in self._monomial_cache:
            return self._monomial_cache[weight]
        if weight < 0:
            return ()
        positive = list(self._positive_parts(weight, 0))
        zero = sorted(self.caps)
        count = len(positive)
        for i in zero:
            count *= self.caps[i] + 1
        if count > self.monomial_limit:
            raise ResourceLimitError(
                f"{count} monomials in degree {Fraction(weight, self.scale)} "
                f"exceed the limit of {self.monomial_limit}"
            )
        result = []
        for base in positive:
            for powers in product(*(range(self.caps[i] + 1) for i in zero)):
                exponents = list(base)
                for i, e in zip(zero, powers):
                    exponents[i] = e
                result.append(tuple(exponents))
        result.sort(reverse=True)
        self._monomial_cache[weight] = tuple(result)
        return self._monomial_cache[weight]

    def degrees_up_to(self, max_degree: Fraction) -> List[Fraction]:
        top = int(Fraction(max_degree) * self.scale)
        steps = [w for w in set(self.weights) if w]
        reachable = [False] * (top + 1)
        if top >= 0:
            reachable[0] = True
        for w in range(1, top + 1):
            reachable[w] = any(w >= s and reachable[w - s] for s in steps)
        return [Fraction(w, self.scale) for w in range(top + 1) if reachable[w]]

    def piece(self, degree: Fraction) -> DegreePiece:
        degree = Fraction(degree)
        if degree in self._pieces:
            return self._pieces[degree]
        start = perf_counter()
        weight = self._weight(degree)
        monomials = self.monomials(weight)
        index = {m: k for k, m in enumerate(monomials)}
        columns: List[Column] = []
        for relation in self.presentation.relations:
            if not relation:
                continue
            rel_weight = self._weight(self.presentation.degree_of(relation))
            if rel_weight > weight:
                continue
            for multiplier in self.monomials(weight - rel_weight):
                column: Column = {}
                for exponents, coeff in relation.terms:
                    key = tuple(a + b for a, b in zip(exponents, multiplier))
                    k = index.get(key)
                    if k is None:
                        column = None
                        break
                    column[k] = column.get(k, 0) + coeff
                if column:
                    columns.append(column)

        substitution, residual = _unit_elimination(columns)
        rows = tuple(k for k in range(len(monomials)) if k not in substitution)
        position = {r: k for k, r in enumerate(rows)}
        unique = {tuple(sorted(c.items())) for c in residual}
        matrix = zeros(len(rows), len(unique))
        for j, column in enumerate(sorted(unique)):
            for r, c in column:
                matrix[position[r], j] = c
        result = cokernel(matrix)
        group = FgAbGroup(rank=result.free_rank, torsion=result.torsion)
        piece = DegreePiece(
            degree=degree,
            monomials=monomials,
            index=index,
            group=group,
            substitution=substitution,
            rows=rows,
            projection=result.projection,
        )
        self._pieces[degree] = piece
        log.debug(
            "Degree %s: %d monomials, %d relation columns, %d residual -> %s (%.3fs)",
            degree,
            len(monomials),
            len(columns),
            len(unique),
            group,
            perf_counter() - start,
        )
        return piece

    def graded_pieces(self, max_degree: Fraction) -> GradedGroupTable:
        return GradedGroupTable(
            {d: self.piece(d).group for d in self.degrees_up_to(max_degree)}
        )

    def normal_form(self, element: Polynomial) -> Tuple[int, ...]:
        if element.nvars != self.presentation.nvars:
            raise InvalidInputError(
                f"Element over {element.nvars} variables, expected {self.presentation.nvars}"
            )
        degree = self.presentation.degree_of(element)
        if degree is None:
            return ()
        piece = self.piece(degree)
        column: Column = {}
        for exponents, coeff in element.terms:
            k = piece.index.get(exponents)
            if k is None:
                raise ResourceLimitError(
                    f"Monomial {exponents} lies outside the truncated degree-0 range"
                )
            column[k] = column.get(k, 0) + coeff
        return piece.coordinates(column)

    def is_zero(self, element: Polynomial) -> bool:
        return not any(self.normal_form(element))


@lru_cache(maxsize=64)
def _engine(presentation: GradedPresentation, limit: int, cap) -> GradedEngine:
    return GradedEngine(presentation, monomial_limit=limit, zero_degree_cap=cap)


def engine_for(presentation: GradedPresentation) -> GradedEngine:
    config = torichow_get_config()
    return _engine(presentation, config.monomial_limit, config.zero_degree_cap)


def graded_pieces(presentation: GradedPresentation, max_degree) -> GradedGroupTable:
    return engine_for(presentation).graded_pieces(Fraction(max_degree))


def normal_form(presentation: GradedPresentation, element: Polynomial) -> Tuple[int, ...]:
    return engine_for(presentation).normal_form(element)


@dataclass
class Comparison:
    equal: bool
    max_degree: Fraction
    left: GradedGroupTable
    right: GradedGroupTable
    mismatches: List[Tuple[Fraction, FgAbGroup, FgAbGroup]]

    def report(self) -> List[str]:
        return [f"degree {d}: {a} != {b}" for d, a, b in self.mismatches]


def graded_equal(
    a: GradedPresentation,
    b: GradedPresentation,
    max_degree,
) -> Comparison:
    """Compare graded pieces up to ``max_degree``.

    A mismatch proves the rings are not isomorphic as graded rings; equality
    is only a necessary condition.
    """
    max_degree = Fraction(max_degree)
    left = graded_pieces(a, max_degree)
    right = graded_pieces(b, max_degree)
    mismatches = left.mismatches(right)
    return Comparison(
        equal=not mismatches,
        max_degree=max_degree,
        left=left,
        right=right,
        mismatches=mismatches,
    )
