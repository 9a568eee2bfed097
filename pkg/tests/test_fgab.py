#  Copyright (c) torichow authors 2026-10-18.

import numpy as np
import pytest
from util import random_plane_fan, read_stacky_fan

from torichow.types import InvalidInputError
from torichow.utils.fgab import (
    FgAbGroup,
    dual_lattice_maps,
    gale_dual,
    hom_from_columns,
    quotient,
    subgroup_contains,
    subgroup_coordinates,
)
from torichow.utils.intlin import int_matrix, kernel, mat_mul, to_lists


class TestFgAbGroup:
    def test_str(self):
        assert str(FgAbGroup(1, (2,))) == "Z + Z/2"
        assert str(FgAbGroup(2, (2, 4))) == "Z^2 + Z/2 + Z/4"
        assert str(FgAbGroup(0)) == "0"

    def test_from_orders(self):
        assert FgAbGroup.from_orders(0, [2, 3]) == FgAbGroup(0, (6,))
        assert FgAbGroup.from_orders(1, [4, 2, 1]) == FgAbGroup(1, (2, 4))

    def test_bad_chain(self):
        with pytest.raises(InvalidInputError):
            FgAbGroup(0, (4, 2))
        with pytest.raises(InvalidInputError):
            FgAbGroup(0, (1,))

    def test_order(self):
        assert FgAbGroup(0, (2, 4)).order() == 8
        assert FgAbGroup(1).order() is None
        assert FgAbGroup(0).is_trivial()

    def test_reduce(self):
        g = FgAbGroup(1, (2,))
        assert g.reduce((5, -1)) == (5, 1)
        assert g.add((1, 1), (1, 1)) == (2, 0)
        assert g.is_zero((0, 4))


class TestQuotient:
    def test_sector_group(self):
        q, _ = quotient(FgAbGroup(1, (2,)), [(2, 1)])
        assert q == FgAbGroup(0, (4,))

    def test_six(self):
        q, _ = quotient(FgAbGroup(1, (2,)), [(-3, 0)])
        assert q == FgAbGroup(0, (6,))

    def test_projection_kills(self):
        g = FgAbGroup(2)
        q, projection = quotient(g, [(1, 0), (-1, -2)])
        assert q == FgAbGroup(0, (2,))
        assert q.is_zero(projection.apply((1, 0)))
        assert not q.is_zero(projection.apply((0, 1)))

    @pytest.mark.parametrize("torsion", [(), (2,), (3,), (2, 4)])
    def test_random_functorial(self, torsion):
        # G / T equals (G / S) / image of T whenever S is part of T
        rng = np.random.default_rng(59)
        g = FgAbGroup(2, torsion)
        for _ in range(20):
            elements = [
                g.reduce([int(v) for v in rng.integers(-4, 5, size=g.length)])
                for _ in range(3)
            ]
            direct, projection = quotient(g, elements)
            first, p1 = quotient(g, elements[:1])
            second, p2 = quotient(first, [p1.apply(e) for e in elements])
            assert second == direct
            assert p1.is_well_defined() and p1.is_surjective()
            composite = p2.compose(p1)
            for e in elements:
                assert direct.is_zero(projection.apply(e))
                assert second.is_zero(composite.apply(e))

    def test_bad_length(self):
        with pytest.raises(InvalidInputError):
            quotient(FgAbGroup(2), [(1,)])


class TestSubgroup:
    def test_contains(self):
        g = FgAbGroup(0, (4,))
        assert subgroup_contains(g, [(2,)], (0,))
        assert not subgroup_contains(g, [(2,)], (1,))

    def test_coordinates(self):
        g = FgAbGroup(1, (2,))
        coords = subgroup_coordinates(g, [(2, 1), (-3, 0)], (0, 1))
        assert coords is not None
        total = g.add(g.scale(coords[0], (2, 1)), g.scale(coords[1], (-3, 0)))
        assert total == (0, 1)


class TestGale:
    def test_p64(self):
        sf = read_stacky_fan("p64.json")
        dual, beta_dual = gale_dual(sf.beta)
        assert dual == FgAbGroup(1)
        assert sorted(abs(v) for v in beta_dual.matrix[0]) == [4, 6]
        mu, _ = quotient(dual, beta_dual.columns())
        assert mu == FgAbGroup(0, (2,))

    def test_gerbe_relations(self):
        sf = read_stacky_fan("gerbe_f2.json")
        dual, beta_dual = gale_dual(sf.beta)
        assert dual == FgAbGroup(2)
        expected = int_matrix([[2, -4, 2, 0], [0, 4, 0, 4]])
        # same kernel, so the same relation lattice
        assert not mat_mul(beta_dual.matrix, kernel(expected)).any()
        assert not mat_mul(expected, kernel(beta_dual.matrix)).any()

    def test_exact(self):
        sf = read_stacky_fan("p112.json")
        dual, beta_dual = gale_dual(sf.beta)
        star = mat_mul(beta_dual.matrix, sf.fan.ray_matrix.T)
        assert not star.any()

    def test_dual_lattice_maps(self):
        sf = read_stacky_fan("gerbe_f2.json")
        star = dual_lattice_maps(sf.beta)
        assert star.source == FgAbGroup(2)
        assert star.column(0) == (1, 0, -1, 0)
        assert star.column(1) == (0, 1, 2, -1)
        dual, beta_dual = gale_dual(sf.beta)
        assert all(dual.is_zero(beta_dual.apply(c)) for c in star.columns())


class TestGroupHom:
    def test_compose(self):
        z = FgAbGroup(1)
        z4 = FgAbGroup(0, (4,))
        f = hom_from_columns(z, z4, [(1,)])
        g = hom_from_columns(z4, z4, [(2,)])
        h = g.compose(f)
        assert h.apply((3,)) == (2,)
        assert g.is_well_defined()
        assert f.is_surjective()
        assert not g.is_surjective()
        assert to_lists(h.matrix) == [[2]]


class TestRandomGale:
    @pytest.mark.parametrize("torsion", [(), (2,), (3,), (2, 2)])
    def test_exact(self, torsion):
        rng = np.random.default_rng(61)
        for _ in range(10):
            sf = random_plane_fan(rng, torsion)
            dual, beta_dual = gale_dual(sf.beta)
            assert beta_dual.is_surjective()
            for j in range(sf.d):
                row = [ray[j] for ray in sf.fan.rays]
                assert dual.is_zero(beta_dual.apply(row))
            # the reduced dual has the same invariants when the rays generate the torsion
            reduced, _ = gale_dual(sf.reduce().beta)
            assert reduced == dual
            assert dual.rank == sf.n - sf.d
