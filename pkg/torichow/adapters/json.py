#  Copyright (c) torichow authors 2026-10-18.

from fractions import Fraction
from typing import Any, Dict, List, Mapping

from torichow.chow.engine import Comparison, GradedGroupTable
from torichow.chow.polynomial import Polynomial
from torichow.chow.presentation import GradedPresentation
from torichow.orbifold.box import BoxElement
from torichow.stacky import StackyFan
from torichow.types import Adapter, InvalidInputError, add_context
from torichow.utils.fgab import FgAbGroup


def encode_fraction(value: Fraction) -> Dict[str, int]:
    value = Fraction(value)
    return {"num": value.numerator, "den": value.denominator}


def decode_fraction(value: Any) -> Fraction:
    if isinstance(value, Mapping):
        return Fraction(int(value["num"]), int(value.get("den", 1)))
    return Fraction(value)


def encode_group(group: FgAbGroup) -> Dict[str, Any]:
    return {"rank": group.rank, "torsion": list(group.torsion), "text": str(group)}


def decode_group(value: Mapping) -> FgAbGroup:
    return FgAbGroup(rank=int(value.get("rank", 0)), torsion=tuple(value.get("torsion", ())))


class PolynomialAdapter(Adapter):
    def __init__(self, nvars: int) -> None:
        self.nvars = nvars

    def encode(self, value: Polynomial) -> List[Dict[str, Any]]:
        return [{"coeff": c, "exponents": list(e)} for e, c in value.terms]

    def decode(self, value: List[Mapping]) -> Polynomial:
        terms = []
        for term in value:
            exponents = tuple(int(e) for e in term["exponents"])
            if len(exponents) != self.nvars or any(e < 0 for e in exponents):
                raise InvalidInputError(f"Bad exponent vector {list(exponents)}")
            terms.append((exponents, int(term["coeff"])))
        return Polynomial(self.nvars, tuple(terms))


class PresentationAdapter(Adapter):
    def encode(self, value: GradedPresentation) -> Dict[str, Any]:
        polys = PolynomialAdapter(value.nvars)
        return {
            "generators": [
                {"name": g.name, "degree": encode_fraction(g.degree)}
                for g in value.generators
            ],
            "relations": [polys.encode(r) for r in value.relations],
            "metadata": _plain(value.metadata),
        }

    def decode(self, value: Mapping) -> GradedPresentation:
        try:
            generators = [
                (g["name"], decode_fraction(g["degree"])) for g in value["generators"]
            ]
            polys = PolynomialAdapter(len(generators))
            relations = [polys.decode(r) for r in value.get("relations", [])]
        except (KeyError, TypeError, ValueError) as e:
            if isinstance(e, InvalidInputError):
                raise add_context(e, "reading", "presentation")
            raise InvalidInputError(f"Malformed presentation: {e!r}")
        return GradedPresentation(
            generators=generators,
            relations=relations,
            metadata=dict(value.get("metadata", {})),
        )


class StackyFanAdapter(Adapter):
    def encode(self, value: StackyFan) -> Dict[str, Any]:
        return {
            "name": value.name,
            "group": {"rank": value.group.rank, "torsion": list(value.group.torsion)},
            "rays": [list(ray) for ray in value.rays],
            "max_cones": [list(cone) for cone in value.fan.max_cones],
        }

    def decode(self, value: Mapping) -> StackyFan:
        name = str(value.get("name") or "") if isinstance(value, Mapping) else ""
        try:
            group = decode_group(value["group"])
            rays = [[int(v) for v in ray] for ray in value["rays"]]
            max_cones = [[int(i) for i in cone] for cone in value["max_cones"]]
        except (KeyError, TypeError, ValueError) as e:
            raise InvalidInputError(f"Malformed stacky fan {name!r}: {e!r}")
        try:
            return StackyFan.from_rays(group, rays, max_cones, name=name)
        except ValueError as e:
            raise add_context(e, "reading stacky fan", name)


def encode_box(box: BoxElement) -> Dict[str, Any]:
    return {
        "label": box.label,
        "element": list(box.element),
        "cone": list(box.cone),
        "fractional_coords": [encode_fraction(a) for a in box.fractional_coords],
        "age": encode_fraction(box.age),
    }


def encode_table(table: GradedGroupTable) -> List[Dict[str, Any]]:
    return [
        {"degree": encode_fraction(d), "group": encode_group(g)}
        for d, g in sorted(table.items())
    ]


def encode_comparison(value: Comparison) -> Dict[str, Any]:
    return {
        "equal": value.equal,
        "max_degree": encode_fraction(value.max_degree),
        "mismatches": [
            {"degree": encode_fraction(d), "left": encode_group(a), "right": encode_group(b)}
            for d, a, b in value.mismatches
        ],
        "left": encode_table(value.left),
        "right": encode_table(value.right),
    }


def _plain(value: Any) -> Any:
    if isinstance(value, Mapping):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, Fraction):
        return encode_fraction(value)
    if value is None or isinstance(value, (bool, int, float, str)):
        return value
    return str(value)
