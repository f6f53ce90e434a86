"""Tests for hypertoric.py: the four presentation flavors."""

from itertools import combinations
from math import comb

import numpy as np
import pytest
from sympy import Matrix

_UNIMODULAR_POOL = {
    2: [(1, 0), (0, 1), (1, 1)],
    3: [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 0), (0, 1, 1), (1, 1, 1)],
}


def _random_smooth_arrangement(d, rng, name):
    """Basis normals plus draws from a totally unimodular pool; offsets redrawn
    until the arrangement is simple."""
    from hkq.arrangement import Arrangement, is_simple, is_smooth

    pool = _UNIMODULAR_POOL[d]
    n = int(rng.integers(d + 1, 8))
    normals = [tuple(int(i == j) for j in range(d)) for i in range(d)]
    for _ in range(n - d):
        sign = 1 if rng.integers(0, 2) else -1
        normals.append(tuple(sign * v for v in pool[int(rng.integers(0, len(pool)))]))
    while True:
        offsets = [int(v) for v in rng.integers(-30, 31, size=n)]
        arr = Arrangement.of(normals, offsets, name)
        if is_simple(arr):
            assert is_smooth(arr)
            return arr


def _matroid_h_vector(normals, d):
    """h-vector of the independence complex, from counts of independent sets."""
    f = [
        sum(1 for S in combinations(normals, i) if not S or Matrix(S).rank() == i)
        for i in range(d + 1)
    ]
    return [
        sum((-1) ** (k - i) * comb(d - i, k - i) * f[i] for i in range(k + 1))
        for k in range(d + 1)
    ]


def _ideal(R, build):
    from hkq.groebner import Ideal

    return Ideal.of(R.ring, build(*R.ring.gens))


class TestKirwanPresentation:
    """Tests for kirwan_presentation() on the bundled planar arrangements."""

    @pytest.mark.unit
    def test_equivariant_circle_ring_of_four_lines(self, four_lines):
        """t2t3, t1(x − t2)t4, t1t3t4."""
        from hkq.groebner import ideal_equal
        from hkq.hypertoric import kirwan_presentation

        R = kirwan_presentation(four_lines, "HTdS1")
        assert R.names == ["t1", "t2", "t3", "t4", "x"]
        expected = _ideal(
            R,
            lambda t1, t2, t3, t4, x: [t2 * t3, t1 * (x - t2) * t4, t1 * t3 * t4],
        )
        assert ideal_equal(R.relations, expected)

    @pytest.mark.unit
    def test_equivariant_circle_ring_of_flipped_lines(self, four_lines_flipped):
        """(x − t2)t3, t1t2t4, t1t3t4."""
        from hkq.groebner import ideal_equal
        from hkq.hypertoric import kirwan_presentation

        R = kirwan_presentation(four_lines_flipped, "HTdS1")
        expected = _ideal(
            R,
            lambda t1, t2, t3, t4, x: [(x - t2) * t3, t1 * t2 * t4, t1 * t3 * t4],
        )
        assert ideal_equal(R.relations, expected)

    @pytest.mark.unit
    def test_equivariant_circle_ring_of_moved_lines(self, four_lines_moved):
        """t2t3, (x − t1)t2(x − t4), t1t3t4."""
        from hkq.groebner import ideal_equal
        from hkq.hypertoric import kirwan_presentation

        R = kirwan_presentation(four_lines_moved, "HTdS1")
        expected = _ideal(
            R,
            lambda t1, t2, t3, t4, x: [
                t2 * t3,
                (x - t1) * t2 * (x - t4),
                t1 * t3 * t4,
            ],
        )
        assert ideal_equal(R.relations, expected)

    @pytest.mark.unit
    def test_torus_flavor_is_stanley_reisner(self, four_lines):
        """Without x the relations are the circuit monomials."""
        from hkq.groebner import ideal_equal
        from hkq.hypertoric import kirwan_presentation

        R = kirwan_presentation(four_lines, "HTd")
        expected = _ideal(
            R, lambda t1, t2, t3, t4: [t2 * t3, t1 * t2 * t4, t1 * t3 * t4]
        )
        assert ideal_equal(R.relations, expected)

    @pytest.mark.unit
    def test_ordinary_ring_hilbert_function_is_h_vector(self, four_lines):
        """The independence complex of four_lines has h-vector (1, 2, 2)."""
        from hkq.groebner import hilbert_function
        from hkq.hypertoric import kirwan_presentation

        R = kirwan_presentation(four_lines, "H")
        assert hilbert_function(R, 3) == [1, 2, 2, 0]

    @pytest.mark.unit
    def test_x_zero_recovers_torus_flavor(self, four_lines_moved):
        """Specializing x := 0 in HTdS1 gives the HTd ideal."""
        from hkq.groebner import ideal_equal, specialize
        from hkq.hypertoric import kirwan_presentation

        special = specialize(kirwan_presentation(four_lines_moved, "HTdS1"), "x", 0)
        plain = kirwan_presentation(four_lines_moved, "HTd")
        assert ideal_equal(special.relations, plain.relations)

    @pytest.mark.unit
    def test_cube_probes(self, four_lines, four_lines_flipped):
        """t3³ vanishes in the S¹ ring of four_lines; no probe does when flipped."""
        from hkq.groebner import contains
        from hkq.hypertoric import kirwan_presentation

        Ma = kirwan_presentation(four_lines, "HS1")
        Mb = kirwan_presentation(four_lines_flipped, "HS1")
        t2, t3, x = Mb.ring.gens[1], Mb.ring.gens[2], Mb.ring.gens[-1]
        assert contains(Ma.relations, Ma.ring.gens[2] ** 3)
        assert not contains(Mb.relations, t3**3)
        assert not contains(Mb.relations, (x - t2) ** 3)

    @pytest.mark.unit
    def test_unknown_flavor(self, four_lines):
        """Flavors other than H, HTd, HS1, HTdS1 raise InvalidInputError."""
        from hkq.exceptions import InvalidInputError
        from hkq.hypertoric import kirwan_presentation

        with pytest.raises(InvalidInputError):
            kirwan_presentation(four_lines, "HS2")

    @pytest.mark.unit
    def test_gf2_field(self, four_lines):
        """The same relations can be built over GF2."""
        from hkq.hypertoric import kirwan_presentation

        assert kirwan_presentation(four_lines, "HTdS1", field="GF2").field == "GF2"


class TestCoorientationMap:
    """Tests for coorientation_map()."""

    @pytest.mark.unit
    def test_flip_map_is_isomorphism(self, four_lines):
        """t2 ↦ x − t2 carries the four_lines ring onto the ring of its flip."""
        from hkq.arrangement import flip
        from hkq.groebner import contains
        from hkq.hypertoric import coorientation_map, kirwan_presentation

        source = kirwan_presentation(four_lines, "HTdS1")
        target = kirwan_presentation(flip(four_lines, 1), "HTdS1")
        f = coorientation_map(source, target, 1)
        for g in source.relations.generators:
            assert contains(target.relations, f.apply(g))

    @pytest.mark.unit
    def test_without_x_negates(self, four_lines):
        """In rings without x the flipped generator is negated."""
        from hkq.hypertoric import coorientation_map, kirwan_presentation

        R = kirwan_presentation(four_lines, "H")
        f = coorientation_map(R, R, 0)
        assert f.images[0] == -R.ring.gens[0]


class TestRandomSmoothArrangements:
    """Seeded smooth arrangements with n ≤ 7 against the matroid h-vector."""

    @pytest.mark.unit
    def test_hilbert_function_is_h_vector(self):
        """Five arrangements in dimensions 2 and 3."""
        from hkq.groebner import hilbert_function
        from hkq.hypertoric import kirwan_presentation

        rng = np.random.default_rng(24)
        for index, d in enumerate([2, 2, 2, 3, 3]):
            arr = _random_smooth_arrangement(d, rng, f"random{index}")
            assert arr.n <= 7
            expected = _matroid_h_vector(arr.normals, d)
            got = hilbert_function(kirwan_presentation(arr, "H"), d + 1)
            assert got == [*expected, 0], arr.name
