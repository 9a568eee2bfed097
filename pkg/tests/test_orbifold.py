#  Copyright (c) torichow authors 2026-10-18.

from fractions import Fraction
from itertools import product

import numpy as np
import pytest
from base import Zmod
from util import random_plane_fan, read_stacky_fan

from torichow.chow import (
    GradedPresentation,
    Polynomial,
    chow_ring,
    graded_equal,
    graded_pieces,
)
from torichow.config import torichow_override
from torichow.orbifold import (
    box_inverse,
    box_sum_third,
    enumerate_boxes,
    inertia,
    obstruction_euler,
    orbifold_product,
    orbifold_ring,
    quotient_stacky_fan,
)
from torichow.orbifold.box import lift_relabeling, split, split_defects
from torichow.orbifold.ring import associativity_defects, module_decomposition_check
from torichow.types import IntegrityError, InvalidInputError
from torichow.utils.fgab import FgAbGroup


@pytest.fixture
def p64():
    return read_stacky_fan("p64.json")


@pytest.fixture
def p112():
    return read_stacky_fan("p112.json")


class TestBoxes:
    def test_p64(self, p64):
        boxes = enumerate_boxes(p64)
        assert len(boxes) == 8
        assert boxes.zero.is_zero
        assert boxes.find((1, 1)).cone == (0,)
        assert boxes.find((1, 1)).fractional_coords == (Fraction(1, 2),)
        assert boxes.find((-1, 0)).age == Fraction(1, 3)
        assert boxes.find((0, 1)).cone == ()
        assert boxes.find((0, 1)).label == "y(0,1)"

    def test_not_a_box(self, p64):
        with pytest.raises(IntegrityError):
            enumerate_boxes(p64).find((3, 0))

    def test_ages_below_dimension(self):
        for name in ("p64.json", "p112.json", "gerbe_f2.json", "f2.json"):
            sf = read_stacky_fan(name)
            for box in enumerate_boxes(sf):
                assert 0 <= box.age < max(len(box.cone), 1)
                assert all(0 < a < 1 for a in box.fractional_coords)

    @pytest.mark.parametrize("name", ["p64.json", "p112.json", "gerbe_f2.json"])
    def test_census(self, name: str):
        sf = read_stacky_fan(name)
        boxes = enumerate_boxes(sf)
        for cone in sf.fan.max_cones:
            inside = [box for box in boxes if set(box.cone) <= set(cone)]
            assert len(inside) == quotient_stacky_fan(sf, cone).group.order()

    def test_inverse(self, p64):
        boxes = enumerate_boxes(p64)
        assert box_inverse(p64, boxes, boxes.find((1, 1))).element == (1, 0)
        assert box_inverse(p64, boxes, boxes.find((0, 1))).element == (0, 1)
        for box in boxes:
            assert box_inverse(p64, boxes, box_inverse(p64, boxes, box)) == box

    def test_self_inverse(self, p112):
        boxes = enumerate_boxes(p112)
        (v,) = boxes.nonzero
        assert v.element == (0, -1)
        assert v.cone == (0, 2)
        assert v.age == 1
        assert box_inverse(p112, boxes, v) == v

    def test_split(self, p64):
        boxes = enumerate_boxes(p64)
        rng = np.random.default_rng(31)
        for _ in range(100):
            c = p64.group.reduce([int(rng.integers(-20, 21)), int(rng.integers(0, 2))])
            box, carries = split(p64, boxes, c)
            total = list(box.element)
            for i, m in carries.items():
                assert m > 0
                total = [x + m * b for x, b in zip(total, p64.rays[i])]
            assert p64.group.reduce(total) == c

    @pytest.mark.parametrize("name", ["p64.json", "p112.json", "gerbe_f2.json"])
    def test_split_defects(self, name: str):
        sf = read_stacky_fan(name)
        assert split_defects(sf, enumerate_boxes(sf), samples=200, seed=5) == []

    def test_lift_relabeling(self, p64):
        relabel = lift_relabeling(p64, enumerate_boxes(p64))
        assert relabel["y(1,0)"] == ("y(1,1)",)
        assert relabel["y(0,1)"] == ("1",)
        assert len(relabel) == 7


class TestProducts:
    def test_sum_third(self, p64):
        boxes = enumerate_boxes(p64)
        v = boxes.find((1, 1))
        found = box_sum_third(p64, boxes, v, v)
        assert found.check_v3.element == (0, 1)
        assert found.v3.element == (0, 1)
        assert found.carries == {0: 1}
        assert box_sum_third(p64, boxes, v, boxes.find((-1, 0))) is None

    def test_p64(self, p64):
        boxes = enumerate_boxes(p64)
        gd = p64.gerbe_data
        v = boxes.find((1, 1))
        result = orbifold_product(p64, gd, boxes, v, v)
        assert result.box.element == (0, 1)
        assert result.factor == Polynomial.linear([2, 0])

        u = boxes.find((0, 1))
        result = orbifold_product(p64, gd, boxes, u, u)
        assert result.box.is_zero
        assert result.factor == Polynomial.constant(1, 2)

        w = boxes.find((-1, 0))
        result = orbifold_product(p64, gd, boxes, w, w)
        assert result.box.element == (-2, 0)
        assert result.factor == Polynomial.constant(1, 2)

        w2 = boxes.find((-2, 0))
        result = orbifold_product(p64, gd, boxes, w2, w2)
        assert result.box.element == (-1, 0)
        assert result.factor == Polynomial.linear([0, 2])

    @pytest.mark.parametrize(
        "element, cube",
        [
            pytest.param((-1, 0), (0, 0), id="untwisted"),
            pytest.param((-1, 1), (0, 1), id="lift"),
        ],
    )
    def test_cube(self, p64, element, cube):
        boxes = enumerate_boxes(p64)
        gd = p64.gerbe_data
        w = boxes.find(element)
        square = orbifold_product(p64, gd, boxes, w, w)
        assert square.box.element == (-2, 0)
        assert square.factor == Polynomial.constant(1, 2)
        result = orbifold_product(p64, gd, boxes, square.box, w)
        assert result.box.element == cube
        assert result.factor == Polynomial.linear([0, 2])

    def test_disjoint(self, p64):
        boxes = enumerate_boxes(p64)
        v, w = boxes.find((1, 0)), boxes.find((-1, 1))
        assert orbifold_product(p64, p64.gerbe_data, boxes, v, w) is None

    def test_commutative(self, p64):
        boxes = enumerate_boxes(p64)
        gd = p64.gerbe_data
        for v, w in product(boxes, repeat=2):
            assert orbifold_product(p64, gd, boxes, v, w) == orbifold_product(
                p64, gd, boxes, w, v
            )

    def test_unit(self, p64):
        boxes = enumerate_boxes(p64)
        for v in boxes:
            result = orbifold_product(p64, p64.gerbe_data, boxes, boxes.zero, v)
            assert result.box == v
            assert result.factor == Polynomial.constant(1, 2)

    def test_obstruction(self, p64):
        boxes = enumerate_boxes(p64)
        w2 = boxes.find((-2, 0))
        euler = obstruction_euler(p64, p64.gerbe_data, (w2, w2, w2))
        assert euler == Polynomial.linear([0, 2])
        with pytest.raises(IntegrityError):
            obstruction_euler(p64, p64.gerbe_data, (boxes.zero, boxes.zero, boxes.find((1, 0))))

    def test_associative(self, p64):
        assert associativity_defects(p64) == []


class TestInertia:
    def test_sectors(self, p64):
        assert quotient_stacky_fan(p64, (0,)).group == Zmod(4)
        assert quotient_stacky_fan(p64, (1,)).group == Zmod(6)
        assert quotient_stacky_fan(p64, ()) is p64

    def test_sector_p112(self, p112):
        sector = quotient_stacky_fan(p112, (0, 2))
        assert sector.group == Zmod(2)
        assert sector.n == 0

    def test_not_a_cone(self, p64):
        with pytest.raises(InvalidInputError):
            quotient_stacky_fan(p64, (0, 1))

    def test_counts(self, p64, p112):
        components = inertia(p64)
        assert len(components) == 8
        twisted = [c for c in components if c.box.cone]
        assert sorted(c.local_group.order() for c in twisted) == [4, 4, 6, 6, 6, 6]
        assert len(inertia(p112)) == 2
        assert len(inertia(p64, order=2)) == 48
        with pytest.raises(InvalidInputError):
            inertia(p64, order=3)

    def test_double_inertia_sums(self, p64):
        for component in inertia(p64, order=2):
            total = p64.group.add(*(box.element for box in component.boxes))
            coords = p64.fan.cone_coordinates(component.cone, p64.group.free_part(total))
            assert all(a.denominator == 1 for a in coords)


class TestRing:
    def test_p112(self, p112):
        expected = GradedPresentation(
            generators=[("t", 1), ("v", 1)],
            relations=[
                Polynomial.monomial((3, 0), 2),
                Polynomial.monomial((1, 1), 2),
                Polynomial.monomial((0, 2)) - Polynomial.monomial((2, 0)),
            ],
        )
        ring = orbifold_ring(p112)
        assert ring.names == ("x1", "x2", "x3", "y(0,-1)")
        assert ring.metadata["boxes"] == ["y(0,-1)"]
        assert graded_equal(ring, expected, 3).equal

    def test_not_chow(self, p112):
        f2 = read_stacky_fan("f2.json")
        comparison = graded_equal(orbifold_ring(p112), chow_ring(f2), 2)
        assert not comparison.equal
        assert [d for d, _, _ in comparison.mismatches] == [2]

    def test_untwisted(self):
        p1 = read_stacky_fan("p1.json")
        assert graded_equal(orbifold_ring(p1), chow_ring(p1), 3).equal

    def test_gerbe_f2(self):
        sf = read_stacky_fan("gerbe_f2.json")
        with torichow_override(zero_degree_cap=2):
            pieces = graded_pieces(orbifold_ring(sf), 1)
            check = module_decomposition_check(sf, 1)
        assert pieces == {0: FgAbGroup(8), 1: FgAbGroup(16)}
        assert check.verdict
        assert len(check.summands) == 8

    def test_decomposed(self):
        ring = orbifold_ring(read_stacky_fan("p23_bz2.json"))
        assert ring.metadata["decomposed"]
        assert ring.metadata["mu"] == "Z/2"
        assert ring.degrees[-2:] == (1, 0)


class TestRandomPlane:
    @pytest.mark.parametrize("torsion", [(), (2,), (3,)])
    def test_products(self, torsion):
        rng = np.random.default_rng(43)
        for _ in range(3):
            sf = random_plane_fan(rng, torsion, bound=2)
            gd = sf.gerbe_data
            boxes = enumerate_boxes(sf)
            degrees = [Fraction(1)] * sf.n
            for v, w in product(boxes, repeat=2):
                result = orbifold_product(sf, gd, boxes, v, w)
                assert result == orbifold_product(sf, gd, boxes, w, v)
                if result is None or result.factor.is_zero():
                    continue
                assert v.age + w.age == result.box.age + result.factor.degree(degrees)

    @pytest.mark.parametrize("seed", [47, 53])
    def test_associative(self, seed: int):
        sf = random_plane_fan(np.random.default_rng(seed), (2,), bound=1)
        assert associativity_defects(sf) == []
