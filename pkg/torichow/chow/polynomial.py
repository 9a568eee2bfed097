#  Copyright (c) torichow authors 2026-10-18.

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Mapping, Sequence, Tuple

from torichow.types import Exponents, InvalidInputError


def _term_key(item: Tuple[Exponents, int]) -> Tuple:
    exponents = item[0]
    return -sum(exponents), tuple(-e for e in exponents)


@dataclass(frozen=True)
class Polynomial:
    """Integer polynomial stored as sorted ``(exponents, coefficient)`` terms.

    Terms are kept in graded lexicographic order, largest first, and never
    carry a zero coefficient.
    """

    nvars: int
    terms: Tuple[Tuple[Exponents, int], ...] = ()

    def __post_init__(self) -> None:
        merged: Dict[Exponents, int] = {}
        for exponents, coeff in self.terms:
            exponents = tuple(int(e) for e in exponents)
            if len(exponents) != self.nvars or any(e < 0 for e in exponents):
                raise InvalidInputError(
                    f"Bad exponent vector {exponents} for {self.nvars} variables"
                )
            merged[exponents] = merged.get(exponents, 0) + int(coeff)
        terms = tuple(sorted(((e, c) for e, c in merged.items() if c), key=_term_key))
        object.__setattr__(self, "terms", terms)

    @classmethod
    def zero(cls, nvars: int) -> "Polynomial":
        return cls(nvars)

    @classmethod
    def constant(cls, value: int, nvars: int) -> "Polynomial":
        return cls(nvars, (((0,) * nvars, value),))

    @classmethod
    def variable(cls, i: int, nvars: int, coeff: int = 1) -> "Polynomial":
        exponents = [0] * nvars
        exponents[i] = 1
        return cls(nvars, ((tuple(exponents), coeff),))

    @classmethod
    def monomial(cls, exponents: Sequence[int], coeff: int = 1) -> "Polynomial":
        return cls(len(exponents), ((tuple(exponents), coeff),))

    @classmethod
    def linear(cls, coeffs: Sequence[int]) -> "Polynomial":
        n = len(coeffs)
        return sum(
            (cls.variable(i, n, c) for i, c in enumerate(coeffs) if c),
            cls.zero(n),
        )

    @classmethod
    def from_dict(cls, nvars: int, data: Mapping[Exponents, int]) -> "Polynomial":
        return cls(nvars, tuple(data.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def _check(self, other: "Polynomial") -> None:
        if self.nvars != other.nvars:
            raise InvalidInputError(
                f"Polynomials over {self.nvars} and {other.nvars} variables"
            )

    def __add__(self, other: "Polynomial") -> "Polynomial":
        if isinstance(other, int):
            other = Polynomial.constant(other, self.nvars)
        self._check(other)
        return Polynomial(self.nvars, self.terms + other.terms)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.nvars, tuple((e, -c) for e, c in self.terms))

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        if isinstance(other, int):
            other = Polynomial.constant(other, self.nvars)
        return self + (-other)

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, int):
            return Polynomial(self.nvars, tuple((e, c * other) for e, c in self.terms))
        self._check(other)
        product: Dict[Exponents, int] = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = tuple(a + b for a, b in zip(e1, e2))
                product[e] = product.get(e, 0) + c1 * c2
        return Polynomial.from_dict(self.nvars, product)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Polynomial":
        result = Polynomial.constant(1, self.nvars)
        for _ in range(k):
            result = result * self
        return result

    def degree(self, degrees: Sequence[Fraction]) -> Fraction | None:
        """Weighted degree of a homogeneous polynomial; None when zero."""
        values = {
            sum((Fraction(d) * e for d, e in zip(degrees, exponents)), Fraction(0))
            for exponents, _ in self.terms
        }
        if len(values) > 1:
            raise InvalidInputError(f"Polynomial {self} is not homogeneous")
        return values.pop() if values else None

    def is_homogeneous(self, degrees: Sequence[Fraction]) -> bool:
        try:
            self.degree(degrees)
        except InvalidInputError:
            return False
        return True

    def max_exponent(self, i: int) -> int:
        return max((e[i] for e, _ in self.terms), default=0)

    def is_linear(self) -> bool:
        return bool(self.terms) and all(sum(e) == 1 for e, _ in self.terms)

    def extend(self, extra: int) -> "Polynomial":
        """Same polynomial over ``extra`` additional trailing variables."""
        return Polynomial(
            self.nvars + extra,
            tuple((e + (0,) * extra, c) for e, c in self.terms),
        )

    def substitute(self, images: Sequence["Polynomial"]) -> "Polynomial":
        if len(images) != self.nvars:
            raise InvalidInputError(
                f"{len(images)} images for {self.nvars} variables"
            )
        target = images[0].nvars if images else 0
        result = Polynomial.zero(target)
        powers: Dict[Tuple[int, int], Polynomial] = {}
        for exponents, coeff in self.terms:
            term = Polynomial.constant(coeff, target)
            for i, e in enumerate(exponents):
                if not e:
                    continue
                if (i, e) not in powers:
                    powers[i, e] = images[i] ** e
                term = term * powers[i, e]
            result = result + term
        return result

    def format(self, names: Sequence[str], times: str = "*") -> str:
        if not self.terms:
            return "0"
        out = ""
        for exponents, coeff in self.terms:
            factors = [
                name if e == 1 else f"{name}^{e}"
                for name, e in zip(names, exponents)
                if e
            ]
            sign = "-" if coeff < 0 else "+"
            magnitude = abs(coeff)
            if not factors:
                body = str(magnitude)
            elif magnitude == 1:
                body = times.join(factors)
            else:
                body = times.join([str(magnitude)] + factors)
            if not out:
                out = body if sign == "+" else f"-{body}"
            else:
                out += f" {sign} {body}"
        return out


def product(polys: Iterable[Polynomial], nvars: int) -> Polynomial:
    result = Polynomial.constant(1, nvars)
    for p in polys:
        result = result * p
    return result
