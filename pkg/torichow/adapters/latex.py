#  Copyright (c) torichow authors 2026-10-18.

import re
from fractions import Fraction
from typing import Sequence

import sympy

from torichow.chow.engine import GradedGroupTable
from torichow.chow.polynomial import Polynomial
from torichow.chow.presentation import GradedPresentation
from torichow.utils.fgab import FgAbGroup


def latex_name(name: str) -> str:
    if match := re.fullmatch(r"y\((.*)\)", name):
        return f"y^{{({match.group(1)})}}"
    if match := re.fullmatch(r"([A-Za-z]+)(\d+)", name):
        return f"{match.group(1)}_{{{match.group(2)}}}"
    return name


def latex_polynomial(poly: Polynomial, names: Sequence[str]) -> str:
    symbols = [sympy.Symbol(f"v{i}") for i in range(poly.nvars)]
    expr = sympy.Add(
        *(
            sympy.Mul(coeff, *(s**e for s, e in zip(symbols, exponents)))
            for exponents, coeff in poly.terms
        )
    )
    return sympy.latex(
        expr,
        order="lex",
        symbol_names={s: latex_name(name) for s, name in zip(symbols, names)},
    )


def latex_group(group: FgAbGroup) -> str:
    parts = []
    if group.rank == 1:
        parts.append(r"\mathbb{Z}")
    elif group.rank:
        parts.append(rf"\mathbb{{Z}}^{{{group.rank}}}")
    parts += [rf"\mathbb{{Z}}/{m}" for m in group.torsion]
    return r" \oplus ".join(parts) or "0"


def latex_presentation(p: GradedPresentation) -> str:
    generators = ", ".join(latex_name(name) for name in p.names)
    relations = ", ".join(latex_polynomial(r, p.names) for r in p.relations)
    ring = rf"\mathbb{{Z}}[{generators}]"
    if not relations:
        return ring
    return rf"{ring} / \left({relations}\right)"


def latex_table(table: GradedGroupTable) -> str:
    rows = [
        rf"{latex_fraction(d)} & {latex_group(g)} \\"
        for d, g in sorted(table.items())
    ]
    return "\n".join([r"\begin{tabular}{ll}"] + rows + [r"\end{tabular}"])


_SPECIAL = {c: "\\" + c for c in "&%$#_{}"}
_SPECIAL.update({"~": r"\textasciitilde{}", "^": r"\textasciicircum{}", "\\": r"\textbackslash{}"})


def latex_text(text: str) -> str:
    return "".join(_SPECIAL.get(c, c) for c in str(text))


def latex_fraction(value: Fraction) -> str:
    value = Fraction(value)
    return sympy.latex(sympy.Rational(value.numerator, value.denominator))


def latex_tabular(header: Sequence[str], rows: Sequence[Sequence[str]]) -> str:
    lines = [
        rf"\begin{{tabular}}{{{'l' * len(header)}}}",
        " & ".join(latex_text(h) for h in header) + r" \\",
        r"\hline",
    ]
    lines += [" & ".join(row) + r" \\" for row in rows]
    lines.append(r"\end{tabular}")
    return "\n".join(lines)
