#  Copyright (c) torichow authors 2026-10-18.

import logging
from dataclasses import dataclass, field, replace
from functools import cached_property
from typing import Optional, Sequence, Tuple

from .config import torichow_get_config
from .fan import Fan
from .types import (
    Diagnostics,
    Element,
    HypothesisNotSatisfied,
    IntMatrix,
    InvalidInputError,
    add_context,
)
from .utils.fgab import (
    FgAbGroup,
    GroupHom,
    gale_dual,
    hom_from_columns,
    quotient,
    subgroup_contains,
)
from .utils.intlin import (
    from_columns,
    hstack,
    identity,
    kernel,
    mat_mul,
    rational_rank,
    snf,
    solve,
    to_lists,
    unimodular_inverse,
    zeros,
)

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Validation:
    diagnostics: Diagnostics
    torsion_generated: bool
    lemma: Diagnostics = field(default_factory=Diagnostics)

    @property
    def ok(self) -> bool:
        return self.diagnostics.ok


@dataclass(frozen=True)
class StackyFan:
    """A stacky fan ``(N, Σ, β)``.

    ``beta`` maps ℤⁿ to ``group``; the free part of its ``i``-th column is
    the ``i``-th ray of ``fan``.
    """

    group: FgAbGroup
    fan: Fan
    beta: GroupHom
    name: str = field(default="", compare=False)

    @classmethod
    def from_rays(
        cls,
        group: FgAbGroup,
        rays: Sequence[Sequence[int]],
        max_cones: Sequence[Sequence[int]],
        name: str = "",
    ) -> "StackyFan":
        for i, ray in enumerate(rays):
            if len(ray) != group.length:
                raise InvalidInputError(
                    f"Ray {i} has length {len(ray)} != {group.length} for {group}"
                )
        rays = [group.reduce(ray) for ray in rays]
        fan = Fan(
            ambient_rank=group.rank,
            rays=tuple(group.free_part(ray) for ray in rays),
            max_cones=tuple(tuple(cone) for cone in max_cones),
        )
        beta = hom_from_columns(FgAbGroup.free(len(rays)), group, rays)
        return cls(group=group, fan=fan, beta=beta, name=name)

    @property
    def n(self) -> int:
        return self.fan.n

    @property
    def d(self) -> int:
        return self.group.rank

    @cached_property
    def rays(self) -> Tuple[Element, ...]:
        return self.beta.columns()

    def torsion_part(self, i: int) -> Tuple[int, ...]:
        return self.group.torsion_part(self.rays[i])

    @cached_property
    def validation(self) -> Validation:
        diag = Diagnostics()
        if self.beta.source != FgAbGroup.free(self.n):
            diag.append(f"Source of beta is {self.beta.source}, not Z^{self.n}")
        if self.fan.ambient_rank != self.d:
            diag.append(
                f"Fan lives in rank {self.fan.ambient_rank}, group has rank {self.d}"
            )
        diag += self.fan.validate()
        if diag:
            return Validation(diagnostics=diag, torsion_generated=False)
        for i, ray in enumerate(self.rays):
            if self.group.free_part(ray) != self.fan.rays[i]:
                diag.append(f"Free part of column {i} differs from ray {i}")
        if rational_rank(self.fan.ray_matrix) != self.d:
            diag.append("Cokernel of beta is not finite: rays do not span N over Q")
        torsion_generated = all(
            subgroup_contains(self.group, self.rays, g)
            for g in self.group.generators()[self.d :]
        )
        lemma = Diagnostics()
        if not diag and torichow_get_config().check_lemma_cone:
            lemma = self.fan.lemma_violations()
            for message in lemma:
                log.warning("%s", message)
        return Validation(
            diagnostics=diag,
            torsion_generated=torsion_generated,
            lemma=lemma,
        )

    def validate(self) -> Validation:
        return self.validation

    def require_valid(self) -> "StackyFan":
        if not self.validation.ok:
            raise InvalidInputError(
                "Invalid stacky fan: " + "; ".join(self.validation.diagnostics)
            )
        return self

    def require_torsion_generated(self) -> "StackyFan":
        self.require_valid()
        if not self.validation.torsion_generated:
            raise HypothesisNotSatisfied(
                f"The rays do not generate the torsion part of {self.group}"
            )
        return self

    def reduce(self) -> "StackyFan":
        if not self.group.torsion:
            return self
        group = FgAbGroup.free(self.d)
        beta = GroupHom(self.beta.source, group, self.beta.matrix[: self.d].copy())
        return StackyFan(group=group, fan=self.fan, beta=beta, name=self.name)

    @cached_property
    def gale(self) -> Tuple[FgAbGroup, GroupHom]:
        return gale_dual(self.beta)

    def picard(self) -> FgAbGroup:
        return self.gale[0]

    @cached_property
    def gerbe_data(self) -> "GerbeData":
        self.require_torsion_generated()
        try:
            return _build_gerbe_data(self)
        except ValueError as e:
            raise add_context(e, "building gerbe data of", self.name or "stacky fan")

    def line_bundle_expansion(self, i: int) -> Tuple[int, ...]:
        return self.gerbe_data.line_bundle_expansion(i)

    @cached_property
    def decomposition(self) -> "Decomposition":
        self.require_valid()
        return _decompose(self)

    def decompose(self) -> "Decomposition":
        return self.decomposition


@dataclass(frozen=True)
class GerbeData:
    """Presentation-level data of the gerbe over the reduced stacky fan.

    ``x = a @ t`` and ``t = c @ x`` as classes in the dual of the reduced
    lattice, and ``e = a @ m @ c`` expresses each stack-level ray bundle in
    the orbifold ray bundles. When the dual lattices carry torsion there is
    no ``t``-basis; ``a`` and ``m`` are identities and ``c`` equals ``e``.

    ``root_bundles`` lists ``(coefficients in x, order)`` for the iterated
    root stacks over the reduced stack.
    """

    reduced: StackyFan
    dual: FgAbGroup
    t_basis: Tuple[Element, ...]
    a: IntMatrix = field(compare=False)
    m: IntMatrix = field(compare=False)
    c: IntMatrix = field(compare=False)
    e: IntMatrix = field(compare=False)
    orders: Tuple[int, ...]
    root_bundles: Tuple[Tuple[Tuple[int, ...], int], ...]
    dual_torsion: bool = False

    def line_bundle_expansion(self, i: int) -> Tuple[int, ...]:
        if not 0 <= i < self.e.shape[1]:
            raise InvalidInputError(f"Ray index {i} out of range")
        return tuple(int(v) for v in self.e[:, i])

    def tilde(self, i: int) -> Tuple[int, ...]:
        """Coefficients of ``x̃ᵢ`` in ``x₁, …, xₙ``."""
        if not 0 <= i < self.e.shape[0]:
            raise InvalidInputError(f"Ray index {i} out of range")
        return tuple(int(v) for v in self.e[i])

    def with_c(self, c: IntMatrix) -> "GerbeData":
        """Same data with another choice of ``t = c @ x``."""
        return replace(self, c=c, e=mat_mul(mat_mul(self.a, self.m), c))


def _ray_coefficients(bar_lattice: IntMatrix, n: int, element: Element) -> Tuple[int, ...]:
    sol = solve(bar_lattice, element)
    if sol is None:
        raise HypothesisNotSatisfied(f"{element} is not a class of rays")
    return tuple(int(v) for v in sol[:n])


def _root_bundles(
    phi: GroupHom,
    bar_lattice: IntMatrix,
    n: int,
) -> Tuple[Tuple[int, ...], Tuple[Tuple[Tuple[int, ...], int], ...]]:
    # lift each generator of coker(phi) to s in N∨; m s = phi(L) names the bundle L
    dual_bar, dual = phi.source, phi.target
    coker, projection = quotient(dual, phi.columns())
    if coker.rank:
        raise HypothesisNotSatisfied(f"Cokernel {coker} of the dual map is not finite")
    lift_lattice = hstack(projection.matrix, coker.relations())
    image_lattice = hstack(phi.matrix, dual.relations())
    bundles = []
    for generator, order in zip(coker.generators(), coker.torsion):
        s = solve(lift_lattice, generator)[: dual.length]
        bundle = solve(image_lattice, dual.scale(order, s))
        if bundle is None:
            raise HypothesisNotSatisfied(f"{order} * {s} is not in the image of {dual_bar}")
        bundle = dual_bar.reduce(bundle[: dual_bar.length])
        bundles.append((_ray_coefficients(bar_lattice, n, bundle), int(order)))
    orders = (1,) * (dual_bar.rank - len(bundles)) + coker.torsion
    return orders, tuple(bundles)


def _build_gerbe_data(sf: StackyFan) -> GerbeData:
    reduced = sf.reduce()
    dual_bar, beta_bar_dual = reduced.gale
    dual, beta_dual = sf.gale
    n = sf.n
    p_bar = beta_bar_dual.matrix
    bar_lattice = hstack(p_bar, dual_bar.relations())

    # phi: lift each generator of the reduced dual to Z^n and push it forward
    images = []
    for g in dual_bar.generators():
        w = solve(bar_lattice, g)
        if w is None:
            raise HypothesisNotSatisfied(f"Reduced Gale dual does not reach {g}")
        images.append(beta_dual.apply(w[:n]))
    phi = hom_from_columns(dual_bar, dual, images)
    for i in range(n):
        if phi.apply(beta_bar_dual.column(i)) != beta_dual.column(i):
            raise HypothesisNotSatisfied(f"Gale duals are not compatible at ray {i}")
    orders, root_bundles = _root_bundles(phi, bar_lattice, n)

    dual_torsion = bool(dual_bar.torsion or dual.torsion)
    if dual_torsion:
        if dual != dual_bar:
            raise HypothesisNotSatisfied(f"Dual groups {dual_bar} and {dual} differ")
        log.warning(
            "Dual groups %s have torsion; E is read through their identification",
            dual,
        )
        # phi(x_i) read back in the reduced dual, same coordinates
        rows = [
            _ray_coefficients(bar_lattice, n, beta_dual.column(i)) for i in range(n)
        ]
        e = from_columns(rows, n).T.copy() if rows else zeros(0, n)
        a, m, c = identity(n), identity(n), e.copy()
        t_basis = dual_bar.generators()
    else:
        result = snf(phi.matrix)
        k = dual_bar.length
        m = zeros(k, k)
        for j in range(min(k, result.d.shape[0])):
            m[j, j] = result.d[j, j]
        v = result.v
        a = mat_mul(unimodular_inverse(v), p_bar).T.copy()
        c_rows = [_ray_coefficients(bar_lattice, n, tuple(v[:, j])) for j in range(k)]
        c = from_columns(c_rows, n).T.copy() if c_rows else zeros(0, n)
        e = mat_mul(mat_mul(a, m), c)
        t_basis = tuple(dual_bar.reduce(tuple(v[:, j])) for j in range(k))

    log.debug("Gerbe data: orders = %s, E = %s", orders, to_lists(e))
    return GerbeData(
        reduced=reduced,
        dual=dual_bar,
        t_basis=t_basis,
        a=a,
        m=m,
        c=c,
        e=e,
        orders=orders,
        root_bundles=root_bundles,
        dual_torsion=dual_torsion,
    )


@dataclass(frozen=True)
class Decomposition:
    core: StackyFan
    mu: FgAbGroup
    shear: Optional[IntMatrix] = field(default=None, compare=False)
    split: bool = True


def _torsion_of_image(sf: StackyFan) -> Tuple[Element, ...]:
    # torsion values of integer relations among the free parts
    torsion_group = FgAbGroup(0, sf.group.torsion)
    parts = [sf.torsion_part(i) for i in range(sf.n)]
    relations = kernel(sf.fan.ray_matrix)
    values = []
    for col in range(relations.shape[1]):
        coeffs = relations[:, col]
        value = [
            sum(c * part[j] for c, part in zip(coeffs, parts))
            for j in range(torsion_group.length)
        ]
        values.append(torsion_group.reduce(value))
    return tuple(values)


def _find_shear(sf: StackyFan, image_torsion: Sequence[Element]) -> Optional[IntMatrix]:
    d, n = sf.d, sf.n
    torsion = sf.group.torsion
    r = len(torsion)
    lattice = hstack(
        from_columns(image_torsion, r),
        FgAbGroup(0, torsion).relations(),
    )
    g = lattice.shape[1]
    # unknowns: h (r x d, row-major) then one lattice combination per ray
    system = zeros(n * r, r * d + n * g)
    target = []
    for i in range(n):
        ray = sf.fan.rays[i]
        t = sf.torsion_part(i)
        for j in range(r):
            row = i * r + j
            for k in range(d):
                system[row, j * d + k] = ray[k]
            for l in range(g):
                system[row, r * d + i * g + l] = -lattice[j, l]
            target.append(-t[j])
    x = solve(system, target)
    if x is None:
        return None
    h = zeros(r, d)
    for j in range(r):
        for k in range(d):
            h[j, k] = x[j * d + k]
    return h


def _decompose(sf: StackyFan) -> Decomposition:
    if sf.validation.torsion_generated:
        return Decomposition(core=sf, mu=FgAbGroup(0))
    torsion_group = FgAbGroup(0, sf.group.torsion)
    if not any(any(sf.torsion_part(i)) for i in range(sf.n)):
        log.info("Torsion parts of %s vanish, splitting off all of %s", sf.name, torsion_group)
        return Decomposition(core=sf.reduce(), mu=torsion_group)
    image_torsion = _torsion_of_image(sf)
    parts = [sf.torsion_part(i) for i in range(sf.n)]
    shear = None
    contained = all(
        subgroup_contains(torsion_group, image_torsion, part) for part in parts
    )
    if not contained:
        shear = _find_shear(sf, image_torsion)
        if shear is not None:
            moved = mat_mul(shear, sf.fan.ray_matrix)
            parts = [
                torsion_group.reduce([t + moved[j, i] for j, t in enumerate(part)])
                for i, part in enumerate(parts)
            ]
            log.info("Sheared torsion parts of %s by %s", sf.name, to_lists(shear))

    mu, _ = quotient(torsion_group, parts)
    # abstract subgroup generated by the torsion parts
    r = len(sf.group.torsion)
    relations = kernel(hstack(from_columns(parts, r), torsion_group.relations()))
    relations = relations[: sf.n]
    sub, projection = quotient(
        FgAbGroup.free(sf.n),
        [tuple(relations[:, j]) for j in range(relations.shape[1])],
    )
    group = FgAbGroup(sf.d, sub.torsion)
    rays = [
        tuple(sf.fan.rays[i]) + tuple(projection.column(i))
        for i in range(sf.n)
    ]
    core = StackyFan.from_rays(
        group, rays, sf.fan.max_cones, name=f"{sf.name} core".strip()
    )
    split = core.validation.torsion_generated
    if not split:
        log.warning("Core of %s does not satisfy the torsion hypothesis", sf.name)
    log.info("Decomposed %s into core over %s and B(%s)", sf.name, group, mu)
    return Decomposition(core=core, mu=mu, shear=shear, split=split)
