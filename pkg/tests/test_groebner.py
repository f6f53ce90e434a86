"""Tests for groebner.py: the Buchberger engine and ideal operations."""

import numpy as np
import pytest
from sympy import groebner as sympy_groebner
from sympy.polys.domains import QQ
from sympy import symbols


def _ring(*names, field="QQ"):
    from hkq.algebra import make_ring

    return make_ring(list(names), field=field)


class TestBasis:
    """Tests for groebner_basis() against sympy's engine."""

    @pytest.mark.unit
    def test_reduced_basis_matches_sympy(self):
        """The reduced degrevlex basis equals the one sympy computes."""
        from hkq.algebra import format_poly
        from hkq.groebner import Ideal, groebner_basis

        ring = _ring("x", "y", "z")
        x, y, z = ring.gens
        gens = [x**2 - y * z, x * y - z**2, y**2 - x * z]
        ours = sorted(format_poly(g) for g in groebner_basis(Ideal.of(ring, gens)))

        sx, sy, sz = symbols("x y z")
        oracle = sympy_groebner(
            [sx**2 - sy * sz, sx * sy - sz**2, sy**2 - sx * sz],
            sx,
            sy,
            sz,
            order="grevlex",
        )
        theirs = sorted(
            format_poly(ring.from_expr(g.as_expr()).monic()) for g in oracle.exprs
        )
        assert ours == theirs

    @pytest.mark.unit
    def test_zero_ideal_has_empty_basis(self):
        """The zero ideal contains nothing but zero."""
        from hkq.groebner import Ideal, contains, groebner_basis

        ring = _ring("x")
        zero = Ideal.zero(ring)
        assert groebner_basis(zero) == []
        assert not contains(zero, ring.gens[0])

    @pytest.mark.unit
    def test_unit_ideal(self):
        """⟨x, x + 1⟩ contains 1."""
        from hkq.groebner import Ideal, contains

        ring = _ring("x")
        x = ring.gens[0]
        assert contains(Ideal.of(ring, [x, x + 1]), ring.one)


class TestIdealOperations:
    """Tests for membership, equality, intersection, colon and elimination."""

    @pytest.mark.unit
    def test_membership_and_equality(self):
        """⟨x, y⟩ = ⟨x + y, x - y⟩ over QQ."""
        from hkq.groebner import Ideal, contains, ideal_equal

        ring = _ring("x", "y")
        x, y = ring.gens
        J = Ideal.of(ring, [x, y])
        assert contains(J, x * y + y**2)
        assert ideal_equal(J, Ideal.of(ring, [x + y, x - y]))

    @pytest.mark.unit
    def test_equality_fails_over_gf2(self):
        """Over GF2, x + y and x - y are the same element, so the ideals differ."""
        from hkq.groebner import Ideal, ideal_equal

        ring = _ring("x", "y", field="GF2")
        x, y = ring.gens
        assert not ideal_equal(Ideal.of(ring, [x, y]), Ideal.of(ring, [x + y, x - y]))

    @pytest.mark.unit
    def test_intersection_of_coordinate_ideals(self):
        """⟨x⟩ ∩ ⟨y⟩ = ⟨xy⟩."""
        from hkq.groebner import Ideal, ideal_equal, ideal_intersect

        ring = _ring("x", "y")
        x, y = ring.gens
        meet = ideal_intersect(Ideal.of(ring, [x]), Ideal.of(ring, [y]))
        assert ideal_equal(meet, Ideal.of(ring, [x * y]))

    @pytest.mark.unit
    def test_colon_ideal(self):
        """(⟨x y, y^2⟩ : y) = ⟨x, y⟩."""
        from hkq.groebner import Ideal, colon_ideal, ideal_equal

        ring = _ring("x", "y")
        x, y = ring.gens
        colon = colon_ideal(Ideal.of(ring, [x * y, y**2]), y)
        assert ideal_equal(colon, Ideal.of(ring, [x, y]))

    @pytest.mark.unit
    def test_colon_by_zero_raises(self):
        """Dividing an ideal by zero is a ZeroElementError."""
        from hkq.exceptions import ZeroElementError
        from hkq.groebner import Ideal, colon_ideal

        ring = _ring("x")
        with pytest.raises(ZeroElementError):
            colon_ideal(Ideal.of(ring, [ring.gens[0]]), ring.zero)

    @pytest.mark.unit
    def test_eliminate_parametrized_parabola(self):
        """⟨x - t, y - t^2⟩ ∩ Q[x, y] = ⟨y - x^2⟩."""
        from hkq.groebner import Ideal, eliminate, ideal_equal

        ring = _ring("t", "x", "y")
        t, x, y = ring.gens
        small = eliminate(Ideal.of(ring, [x - t, y - t**2]), ["t"])
        sx, sy = small.ring.gens
        assert small.names == ["x", "y"]
        assert ideal_equal(small, Ideal.of(small.ring, [sy - sx**2]))

    @pytest.mark.unit
    def test_mismatched_rings_raise(self):
        """Comparing ideals of different rings raises RingMismatchError."""
        from hkq.exceptions import RingMismatchError
        from hkq.groebner import Ideal, ideal_equal

        a = _ring("x", "y")
        b = _ring("y", "x")
        with pytest.raises(RingMismatchError):
            ideal_equal(Ideal.of(a, [a.gens[0]]), Ideal.of(b, [b.gens[0]]))


class TestPresentedRings:
    """Tests for Hilbert functions, annihilators, specialization and ring maps."""

    @pytest.mark.unit
    def test_hilbert_function_of_exterior_like_ring(self):
        """Q[x, y]/(x^2, y^2) has Hilbert function 1, 2, 1."""
        from hkq.groebner import (
            PresentedRing,
            dense_hilbert_function,
            hilbert_function,
            is_artinian,
            top_degree,
            total_dimension,
        )

        ring = _ring("x", "y")
        x, y = ring.gens
        R = PresentedRing.of(ring, [x**2, y**2])
        assert hilbert_function(R, 3) == [1, 2, 1, 0]
        assert dense_hilbert_function(R, 3) == [1, 2, 1, 0]
        assert is_artinian(R)
        assert top_degree(R) == 2
        assert total_dimension(R) == 4

    @pytest.mark.unit
    def test_polynomial_ring_is_not_artinian(self):
        """Q[x, y]/(xy) is infinite-dimensional; top_degree raises."""
        from hkq.exceptions import PreconditionError
        from hkq.groebner import (
            PresentedRing,
            hilbert_function,
            is_artinian,
            top_degree,
        )

        ring = _ring("x", "y")
        x, y = ring.gens
        R = PresentedRing.of(ring, [x * y])
        assert hilbert_function(R, 3) == [1, 2, 2, 2]
        assert not is_artinian(R)
        with pytest.raises(PreconditionError):
            top_degree(R)

    @pytest.mark.unit
    def test_annihilator_generators(self):
        """In Q[x, y]/(xy, y^2) the annihilator of y is generated by x and y."""
        from hkq.algebra import total_degree
        from hkq.groebner import PresentedRing, annihilator_generators

        ring = _ring("x", "y")
        x, y = ring.gens
        R = PresentedRing.of(ring, [x * y, y**2])
        gens = annihilator_generators(R, y)
        assert sorted(total_degree(g) for g in gens) == [1, 1]

    @pytest.mark.unit
    def test_annihilator_of_zero_raises(self):
        """Asking for the annihilator of a relation raises ZeroElementError."""
        from hkq.exceptions import ZeroElementError
        from hkq.groebner import PresentedRing, annihilator_generators

        ring = _ring("x")
        x = ring.gens[0]
        with pytest.raises(ZeroElementError):
            annihilator_generators(PresentedRing.of(ring, [x**2]), x**2)

    @pytest.mark.unit
    def test_specialize_drops_variable(self):
        """Setting x := 0 in Q[t, x]/(t(x - t)) gives Q[t]/(t^2)."""
        from hkq.groebner import PresentedRing, hilbert_function, specialize

        ring = _ring("t", "x")
        t, x = ring.gens
        R = specialize(PresentedRing.of(ring, [t * (x - t)], "R"), "x", 0)
        assert R.names == ["t"]
        assert hilbert_function(R, 2) == [1, 1, 0]
        assert R.label == "R|x=0"

    @pytest.mark.unit
    def test_swap_is_an_isomorphism(self):
        """x ↔ y is an automorphism of Q[x, y]/(x^2, y^2); x ↦ x, y ↦ x is not."""
        from hkq.groebner import PresentedRing, map_is_isomorphism, ring_map

        ring = _ring("x", "y")
        x, y = ring.gens
        R = PresentedRing.of(ring, [x**2, y**2])
        assert map_is_isomorphism(ring_map(R, R, ["y", "x"]))
        assert not map_is_isomorphism(ring_map(R, R, ["x", "x"]))

    @pytest.mark.unit
    def test_inhomogeneous_image_raises(self):
        """Images must be linear forms."""
        from hkq.exceptions import GradingError
        from hkq.groebner import PresentedRing, map_is_isomorphism, ring_map

        ring = _ring("x")
        R = PresentedRing.of(ring, [ring.gens[0] ** 2])
        with pytest.raises(GradingError):
            map_is_isomorphism(ring_map(R, R, ["x^2"]))


class TestNormalForm:
    """Seeded properties of normal_form() modulo fixed ideals."""

    @staticmethod
    def _poly(ring, rng):
        p = ring.zero
        for _ in range(4):
            exps = tuple(int(e) for e in rng.integers(0, 4, size=ring.ngens))
            den = int(rng.integers(1, 4)) if ring.domain == QQ else 1
            coeff = QQ(int(rng.integers(-5, 6)), den)
            p += ring.from_dict({exps: ring.domain.convert_from(coeff, QQ)})
        return p

    @pytest.mark.unit
    @pytest.mark.parametrize("field", ["QQ", "GF2"])
    def test_idempotent_linear_and_congruent(self, field):
        """NF(NF(f)) = NF(f), NF is additive and f − NF(f) ∈ I."""
        from hkq.groebner import Ideal, contains, normal_form

        ring = _ring("x", "y", "z", field=field)
        x, y, z = ring.gens
        J = Ideal.of(ring, [x**2 - y * z, x * y - z**2])
        rng = np.random.default_rng(23)
        for _ in range(200):
            f, g = self._poly(ring, rng), self._poly(ring, rng)
            nf = normal_form(f, J)
            assert normal_form(nf, J) == nf
            assert normal_form(f + g, J) == nf + normal_form(g, J)
            assert contains(J, f - nf)
