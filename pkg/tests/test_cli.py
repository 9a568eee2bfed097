#  Copyright (c) torichow authors 2026-10-18.

import importlib
import json

import pytest
from click.testing import CliRunner
from util import data_path

from torichow.cli import cli
from torichow.config import torichow_override
from torichow.types import IntegrityError


@pytest.fixture(autouse=True)
def restore_config():
    with torichow_override():
        yield


def run(*args):
    return CliRunner().invoke(cli, [str(arg) for arg in args])


class TestCommands:
    def test_chow_eliminate(self):
        result = run("chow", data_path("p64.json"), "--eliminate")
        assert result.exit_code == 0
        assert "24*t^2" in result.stdout

    def test_boxes(self):
        result = run("boxes", data_path("p64.json"))
        assert result.exit_code == 0
        assert "7 nonzero box elements" in result.stdout

    def test_compare(self):
        result = run(
            "compare",
            data_path("p112.json"),
            data_path("f2.json"),
            "--ring",
            "orbifold",
            "--ring-b",
            "chow",
            "--max-degree",
            "2",
        )
        assert result.exit_code == 0
        assert "NOT-EQUAL" in result.stdout

    def test_graded_fraction(self):
        result = run(
            "graded", data_path("p64.json"), "--ring", "orbifold", "--max-degree", "2/3"
        )
        assert result.exit_code == 0
        assert "degree 1/3" in result.stdout

    def test_json(self):
        result = run("--format", "json", "chow", data_path("p1.json"), "--max-degree", "2")
        assert result.exit_code == 0
        data = json.loads(result.stdout)
        assert [g["name"] for g in data["presentation"]["generators"]] == ["x1", "x2"]
        assert data["graded_pieces"][2]["group"]["text"] == "0"

    def test_latex(self):
        result = run("--format", "latex", "orbifold", data_path("p112.json"))
        assert result.exit_code == 0
        assert "y^{(0,-1)}" in result.stdout

    def test_out_file(self, tmp_path):
        out = tmp_path / "gale.json"
        result = run("--format", "json", "--out", str(out), "gale", data_path("p64.json"))
        assert result.exit_code == 0
        assert json.loads(out.read_text())["cokernel"]["torsion"] == [2]

    def test_saved_presentation(self, tmp_path):
        out = tmp_path / "chow.json"
        result = run("--format", "json", "--out", str(out), "chow", data_path("p64.json"))
        assert result.exit_code == 0
        result = run("graded", str(out), "--max-degree", "2")
        assert result.exit_code == 0
        assert "degree 2: Z/24" in result.stdout

    def test_latex_boxes(self):
        result = run("--format", "latex", "boxes", data_path("p64.json"))
        assert result.exit_code == 0
        assert r"\begin{tabular}{llll}" in result.stdout
        assert r"$y^{(1,1)}$ & [0] & $(\frac{1}{2})$ & $\frac{1}{2}$ \\" in result.stdout

    def test_latex_inertia(self):
        result = run("--format", "latex", "inertia", data_path("p64.json"), "--order", "2")
        assert result.exit_code == 0
        assert r"\begin{tabular}{lll}" in result.stdout

    def test_latex_validate(self):
        result = run("--format", "latex", "validate", data_path("p64.json"))
        assert result.exit_code == 0
        assert r"valid & True \\" in result.stdout

    def test_latex_unavailable(self):
        result = run("--format", "latex", "gale", data_path("p64.json"))
        assert result.exit_code == 1
        assert "LaTeX output is not available" in result.output

    def test_selfcheck(self):
        result = run("--seed", "3", "selfcheck", data_path("p64.json"), "--samples", "50")
        assert result.exit_code == 0
        assert "split defects: 0" in result.stdout
        assert "associativity defects: 0" in result.stdout
        assert "module decomposition up to degree 2: ok" in result.stdout


class TestExitCodes:
    def test_invalid(self):
        result = run("validate", data_path("broken.json"))
        assert result.exit_code == 1
        assert "invalid" in result.stdout

    def test_missing_file(self):
        assert run("chow", data_path("missing.json")).exit_code == 1

    def test_limit(self):
        result = run(
            "--limit-monomials", "1", "graded", data_path("f2.json"), "--max-degree", "2"
        )
        assert result.exit_code == 3

    def test_not_torsion_generated(self):
        assert run("boxes", data_path("p23_bz2.json")).exit_code == 0
        assert run("orbifold", data_path("p23_bz2.json")).exit_code == 0
        assert run("decompose", data_path("p23_bz2.json")).exit_code == 0

    def test_integrity(self, monkeypatch):
        def broken(sf):
            raise IntegrityError("box (3, 0) is not in the box set")

        monkeypatch.setattr(importlib.import_module("torichow.cli.main"), "enumerate_boxes", broken)
        result = run("boxes", data_path("p64.json"))
        assert result.exit_code == 4
        assert result.output == "Internal consistency check failed: box (3, 0) is not in the box set\n"
