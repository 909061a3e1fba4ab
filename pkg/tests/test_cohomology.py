import random
from fractions import Fraction

import pytest
from hypothesis import given, settings

from oracles import gl_kernel_dim
from strategies import bundles, trees
from tree_moduli import (
    LineBundle,
    NodeCoordinates,
    RationalTree,
    dualizing_degrees,
    enumerate_trees,
    euler_characteristic,
    h0,
    h1,
    power_bundle,
)
from tree_moduli.cohomology import evaluate_form, node_values, parse_bundle, structure_sheaf


def twisted_h0(t, degrees, rng):
    """h0 with random distinct node points and random nonzero gluing scalars."""
    cols, start = [], 0
    for d in degrees:
        cols.append(range(start, start + max(d + 1, 0)))
        start += max(d + 1, 0)
    pts = {}
    for v in range(t.vertex_count):
        xs = rng.sample(range(-20, 21), len(t.incident_edges(v)))
        for e, x in zip(t.incident_edges(v), xs):
            pts[v, e] = (x, 1) if x != 20 else (1, 0)
    rows = []
    for i, (a, b) in enumerate(t.edges):
        row = [0] * start
        for v, scale in ((a, rng.choice([1, 2, 3, 5])), (b, -rng.choice([1, 2, 7]))):
            d = degrees[v]
            x, y = pts[v, i]
            for j, c in enumerate(cols[v]):
                row[c] += scale * x ** (d - j) * y**j
        rows.append(row)
    return gl_kernel_dim(rows, start)


class TestDegrees:
    def test_point(self, point):
        assert dualizing_degrees(point) == [-2]

    def test_path3(self, path3):
        assert dualizing_degrees(path3) == [-1, 0, -1]

    def test_star3(self, star3):
        assert dualizing_degrees(star3) == [-1, -1, -1, 1]

    def test_dual_of_point(self, point):
        assert power_bundle(point, -1).degrees == (2,)

    def test_square_on_star3(self, star3):
        assert power_bundle(star3, 2).degrees == (-2, -2, -2, 2)

    @given(trees())
    def test_zeroth_power_is_trivial(self, t):
        assert set(power_bundle(t, 0).degrees) == {0}

    def test_length_checked(self, path3):
        with pytest.raises(ValueError):
            LineBundle(path3, (0, 0))


class TestNodeCoordinates:
    def test_convention(self, star3, path3):
        c = NodeCoordinates.of(star3)
        assert [c.at(3, e) for e in range(3)] == [(0, 1), (1, 1), (1, 0)]
        assert c.at(0, 0) == (1, 0)
        p = NodeCoordinates.of(path3)
        assert (p.at(1, 0), p.at(1, 1)) == ((0, 1), (1, 0))

    def test_extension_beyond_three(self):
        c = NodeCoordinates.of(RationalTree.star(5))
        assert [c.at(5, e) for e in range(5)] == [(0, 1), (1, 1), (1, 0), (1, 2), (1, 3)]

    @given(trees(max_vertices=10))
    def test_points_distinct(self, t):
        c = NodeCoordinates.of(t)
        for v in range(t.vertex_count):
            affine = ["inf" if y == 0 else Fraction(x, y) for x, y in c.points[v].values()]
            assert len(set(affine)) == len(affine)


class TestH0:
    def test_structure_sheaf_on_path4(self, path4):
        assert h0(structure_sheaf(path4)).dimension == 1

    def test_dualizing_dual_on_star3(self, star3):
        assert h0(power_bundle(star3, -1)).dimension == 3

    def test_square_on_star4(self, star4):
        space = h0(power_bundle(star4, 2))
        assert space.dimension == 1
        quartic = space.basis[0][4]
        for p in [(0, 1), (1, 1), (1, 0), (1, 2)]:
            assert evaluate_form(quartic, p) == 0

    @pytest.mark.parametrize("n", range(1, 5))
    def test_square_vanishes_up_to_three_nodes(self, n):
        for t in enumerate_trees(n):
            assert h0(power_bundle(t, 2)).dimension == 0

    @pytest.mark.parametrize("d", range(-5, 6))
    def test_projective_line(self, point, d):
        b = LineBundle(point, (d,))
        assert h0(b).dimension == max(d + 1, 0)
        assert h1(b) == max(-d - 1, 0)

    @given(bundles(max_vertices=7))
    @settings(max_examples=100)
    def test_independent_of_gluing_convention(self, tb):
        t, degrees = tb
        rng = random.Random(hash((t, degrees)))
        assert h0(LineBundle(t, degrees)).dimension == twisted_h0(t, degrees, rng)

    @given(bundles(max_vertices=7))
    @settings(max_examples=100)
    def test_basis_glues_exactly(self, tb):
        t, degrees = tb
        b = LineBundle(t, degrees)
        space = h0(b)
        for sec in space.basis:
            for v, coeffs in enumerate(sec):
                assert len(coeffs) == max(degrees[v] + 1, 0)
            for low, high in node_values(sec, b):
                assert low == high
                assert isinstance(low, Fraction)

    @given(bundles(max_vertices=7))
    @settings(max_examples=100)
    def test_negative_degree_forces_zero(self, tb):
        t, degrees = tb
        b = LineBundle(t, degrees)
        for sec in h0(b).basis:
            for i, (a, c) in enumerate(t.edges):
                vals = node_values(sec, b)[i]
                if degrees[a] < 0:
                    assert sec[a] == () and vals[0] == 0
                if degrees[c] < 0:
                    assert sec[c] == () and vals[1] == 0


class TestEuler:
    @given(trees(max_vertices=10))
    def test_structure_sheaf(self, t):
        assert euler_characteristic(structure_sheaf(t)) == 1

    @given(trees(max_vertices=10))
    def test_dualizing(self, t):
        assert euler_characteristic(power_bundle(t, 1)) == -1
        assert euler_characteristic(power_bundle(t, -1)) == 3

    def test_star4_square(self, star4):
        b = power_bundle(star4, 2)
        assert euler_characteristic(b) == -3 and h1(b) == 4


class TestH1:
    @pytest.mark.parametrize("n", range(1, 8))
    def test_structure_sheaf(self, n):
        for t in enumerate_trees(n):
            assert h1(structure_sheaf(t)) == 0

    @pytest.mark.parametrize("n", range(1, 5))
    def test_dualizing_dual(self, n):
        for t in enumerate_trees(n):
            assert h1(power_bundle(t, -1)) == 0

    @given(bundles(max_vertices=6))
    @settings(max_examples=100)
    def test_serre_duality(self, tb):
        t, degrees = tb
        b = LineBundle(t, degrees)
        dual_twist = power_bundle(t, 1).tensor(b.dual())
        assert h0(dual_twist).dimension == h1(b)


class TestBundleSpec:
    @pytest.mark.parametrize(
        "spec, k", [("dualizing", 1), ("dualizing-dual", -1), ("dualizing-power:2", 2), ("dualizing-power:-3", -3)]
    )
    def test_powers(self, star3, spec, k):
        assert parse_bundle(spec, star3) == power_bundle(star3, k)

    def test_degrees(self, path3):
        assert parse_bundle("degrees:1,-2,0", path3).degrees == (1, -2, 0)

    @pytest.mark.parametrize("spec", ["omega", "degrees:", "dualizing-power:x"])
    def test_bad(self, path3, spec):
        with pytest.raises(ValueError):
            parse_bundle(spec, path3)
