#  Copyright (c) torichow authors 2026-10-18.

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Dict, FrozenSet, List, Sequence, Tuple

import numpy as np
import sympy
from scipy.optimize import linprog

from .types import (
    Cone,
    Diagnostics,
    IntMatrix,
    IntVector,
    InvalidInputError,
    NotInSupportError,
    RationalVector,
    as_cone,
)
from .utils.fgab import FgAbGroup, quotient
from .utils.intlin import from_columns, mat_vec, rational_rank

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Fan:
    """Simplicial fan given by its ray vectors and maximal cones.

    Cones are sorted tuples of ray indices. The face lattice is derived from
    the maximal cones on demand; the empty tuple is the zero cone.
    """

    ambient_rank: int
    rays: Tuple[IntVector, ...]
    max_cones: Tuple[Cone, ...]

    def __post_init__(self) -> None:
        rays = tuple(tuple(int(v) for v in ray) for ray in self.rays)
        cones = tuple(as_cone(cone) for cone in self.max_cones if len(cone))
        object.__setattr__(self, "rays", rays)
        object.__setattr__(self, "max_cones", cones)

    @property
    def n(self) -> int:
        return len(self.rays)

    @cached_property
    def ray_matrix(self) -> IntMatrix:
        return from_columns(self.rays, self.ambient_rank)

    @cached_property
    def cones(self) -> FrozenSet[Cone]:
        faces = {()}
        for cone in self.max_cones:
            for k in range(1, len(cone) + 1):
                faces.update(combinations(cone, k))
        return frozenset(faces)

    def all_cones(self) -> List[Cone]:
        return sorted(self.cones, key=lambda c: (len(c), c))

    def validate(self) -> Diagnostics:
        diag = Diagnostics()
        for i, ray in enumerate(self.rays):
            if len(ray) != self.ambient_rank:
                diag.append(
                    f"Ray {i} has length {len(ray)} != ambient rank {self.ambient_rank}"
                )
            elif not any(ray):
                diag.append(f"Ray {i} is zero")
        if diag:
            return diag
        for cone in self.max_cones:
            if any(i < 0 or i >= self.n for i in cone):
                diag.append(f"Cone {list(cone)} has a ray index out of range")
        if diag:
            return diag
        for cone in self.max_cones:
            if rational_rank(self.ray_matrix[:, list(cone)]) != len(cone):
                diag.append(f"Cone {list(cone)} has linearly dependent rays")
        for a, b in combinations(self.max_cones, 2):
            if set(a) <= set(b) or set(b) <= set(a):
                diag.append(f"Cone {list(a)} and cone {list(b)} are nested")
        if diag:
            return diag
        for a, b in combinations(self.max_cones, 2):
            if not self._meet_is_face(a, b):
                diag.append(
                    f"Cones {list(a)} and {list(b)} do not meet in a common face"
                )
        return diag

    def _meet_is_face(self, a: Cone, b: Cone) -> bool:
        only_a = [i for i in a if i not in b]
        if not only_a:
            return True
        # maximize the weight on rays of a outside b over points of a ∩ b
        rays_a = np.array(self.ray_matrix[:, list(a)], dtype=float)
        rays_b = np.array(self.ray_matrix[:, list(b)], dtype=float)
        a_eq = np.hstack([rays_a, -rays_b])
        objective = np.array(
            [-1.0 if i in only_a else 0.0 for i in a] + [0.0] * len(b)
        )
        result = linprog(
            objective,
            A_eq=a_eq,
            b_eq=np.zeros(self.ambient_rank),
            bounds=[(0, 1)] * (len(a) + len(b)),
            method="highs",
        )
        return result.status == 0 and -result.fun < 1e-9

    def lemma_violations(self) -> Diagnostics:
        """Cones ``τ`` and ``S ⊆ link(τ)`` spanning a cone of ``Σ/τ`` with ``S ∪ τ`` no cone.

        ``S`` spans a cone of the quotient fan when the sum of its projected
        rays has exactly ``S`` as its minimal cone there.
        """
        diag = Diagnostics()
        free = FgAbGroup.free(self.ambient_rank)
        for tau in self.all_cones():
            link = self.link(tau)
            if not link:
                continue
            group, projection = quotient(free, [self.rays[i] for i in tau])
            star = self.quotient_fan(tau, projection.matrix[: group.rank].copy())
            for k in range(1, len(link) + 1):
                for subset in combinations(range(len(link)), k):
                    point = [
                        sum(star.rays[p][j] for p in subset) for j in range(group.rank)
                    ]
                    try:
                        cone, _ = star.minimal_cone_containing(point)
                    except NotInSupportError:
                        continue
                    rays = tuple(link[p] for p in subset)
                    if cone == subset and not self.is_cone(tau + rays):
                        diag.append(
                            f"Link subset {list(rays)} of cone {list(tau)} "
                            f"spans a quotient cone but its union with the cone is no cone"
                        )
        return diag

    def is_cone(self, rays: Sequence[int]) -> bool:
        cone = as_cone(rays)
        if any(i < 0 or i >= self.n for i in cone):
            raise InvalidInputError(f"Ray index out of range in {list(cone)}")
        return cone in self.cones

    def minimal_nonfaces(self) -> List[Cone]:
        found: List[Cone] = []
        for k in range(1, min(self.n, self.ambient_rank + 1) + 1):
            for subset in combinations(range(self.n), k):
                if subset in self.cones:
                    continue
                if any(set(s) <= set(subset) for s in found):
                    continue
                found.append(subset)
        log.debug("Fan with %d rays has %d minimal non-faces", self.n, len(found))
        return found

    def _left_inverse(self, cone: Cone) -> Tuple[sympy.Matrix, sympy.Matrix]:
        if cone not in self._inverse_cache:
            b = sympy.Matrix(self.ray_matrix[:, list(cone)].tolist())
            self._inverse_cache[cone] = (b, (b.T * b).inv() * b.T)
        return self._inverse_cache[cone]

    @cached_property
    def _inverse_cache(self) -> Dict[Cone, Tuple[sympy.Matrix, sympy.Matrix]]:
        return {}

    def cone_coordinates(self, cone: Sequence[int], point: Sequence) -> RationalVector | None:
        """Coefficients of ``point`` in the rays of ``cone``, if it lies in their span."""
        cone = as_cone(cone)
        if not cone:
            return () if not any(point) else None
        b, inverse = self._left_inverse(cone)
        p = _rational_column(point)
        coeffs = inverse * p
        if b * coeffs != p:
            return None
        return tuple(Fraction(int(c.p), int(c.q)) for c in coeffs)

    def minimal_cone_containing(self, point: Sequence) -> Tuple[Cone, RationalVector]:
        if len(point) != self.ambient_rank:
            raise InvalidInputError(
                f"Point of length {len(point)} in a rank {self.ambient_rank} fan"
            )
        if not any(point):
            return (), ()
        p = _rational_column(point)
        for cone in self.max_cones:
            b, inverse = self._left_inverse(cone)
            coeffs = inverse * p
            if b * coeffs != p or any(c < 0 for c in coeffs):
                continue
            support = tuple(
                (i, Fraction(int(c.p), int(c.q)))
                for i, c in zip(cone, coeffs)
                if c != 0
            )
            return (
                tuple(i for i, _ in support),
                tuple(c for _, c in support),
            )
        raise NotInSupportError(f"Point {tuple(point)} is not in the fan's support")

    def link(self, cone: Sequence[int]) -> Cone:
        cone = as_cone(cone)
        if not self.is_cone(cone):
            raise InvalidInputError(f"{list(cone)} is not a cone of the fan")
        return tuple(
            i for i in range(self.n) if i not in cone and self.is_cone(cone + (i,))
        )

    def quotient_fan(self, cone: Sequence[int], projection: IntMatrix) -> "Fan":
        """Fan of the link of ``cone``, pushed through ``projection``.

        ``projection`` maps the ambient lattice onto the free part of the
        quotient and must kill the rays of ``cone``.
        """
        cone = as_cone(cone)
        link = self.link(cone)
        if projection.shape[1] != self.ambient_rank:
            raise InvalidInputError(
                f"Projection of shape {projection.shape} on rank {self.ambient_rank}"
            )
        for i in cone:
            if any(mat_vec(projection, self.rays[i])):
                raise InvalidInputError(
                    f"Projection does not kill ray {i} of cone {list(cone)}"
                )
        index = {j: k for k, j in enumerate(link)}
        rays = tuple(mat_vec(projection, self.rays[j]) for j in link)
        max_cones = tuple(
            tuple(index[j] for j in tau if j not in cone)
            for tau in self.max_cones
            if set(cone) <= set(tau)
        )
        return Fan(ambient_rank=projection.shape[0], rays=rays, max_cones=max_cones)


def _rational_column(point: Sequence) -> sympy.Matrix:
    values = [Fraction(v) for v in point]
    return sympy.Matrix([sympy.Rational(v.numerator, v.denominator) for v in values])
