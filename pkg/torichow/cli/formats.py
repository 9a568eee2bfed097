#  Copyright (c) torichow authors 2026-10-18.

import json
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence

import click

from torichow.adapters.json import PresentationAdapter, encode_table
from torichow.adapters.latex import latex_presentation, latex_table, latex_tabular
from torichow.chow.engine import GradedGroupTable
from torichow.chow.presentation import GradedPresentation
from torichow.types import InvalidInputError

FORMATS = ("text", "json", "latex")


@dataclass
class Report:
    """One emitted document, kept in all output formats."""

    data: Dict[str, Any] = field(default_factory=dict)
    lines: List[str] = field(default_factory=list)
    latex: List[str] = field(default_factory=list)

    def add(self, key: str, value: Any, text: Optional[str] = None) -> "Report":
        self.data[key] = value
        if text is not None:
            self.lines.append(text)
        return self

    def presentation(self, key: str, p: GradedPresentation) -> "Report":
        self.data[key] = PresentationAdapter().encode(p)
        self.lines.append(f"{key}: {p}")
        self.latex.append(latex_presentation(p))
        return self

    def table(self, key: str, table: GradedGroupTable) -> "Report":
        self.data[key] = encode_table(table)
        self.lines.append(f"{key}:")
        self.lines += [f"  degree {d}: {g}" for d, g in sorted(table.items())]
        self.latex.append(latex_table(table))
        return self

    def tabular(self, header: Sequence[str], rows: Sequence[Sequence[str]]) -> "Report":
        self.latex.append(latex_tabular(header, rows))
        return self

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return json.dumps(self.data, indent=2)
        if fmt == "latex":
            if not self.latex:
                raise InvalidInputError("LaTeX output is not available for this command")
            return "\n\n".join(self.latex)
        return "\n".join(self.lines)


def emit(report: Report, fmt: str, out: Optional[str]) -> None:
    text = report.render(fmt)
    if out is None:
        click.echo(text)
        return
    with open(out, "w", encoding="utf-8") as f:
        f.write(text + "\n")
