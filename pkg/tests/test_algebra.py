"""Tests for algebra.py: rings, the rational and polynomial text formats, operators."""

import numpy as np
import pytest
from sympy.polys.domains import QQ


def _random_poly(ring, rng, terms=4, maxdeg=3):
    """A sparse polynomial with small rational coefficients."""
    p = ring.zero
    for _ in range(terms):
        exps = tuple(int(e) for e in rng.integers(0, maxdeg + 1, size=ring.ngens))
        coeff = QQ(int(rng.integers(-5, 6)), int(rng.integers(1, 5)))
        p += ring.from_dict({exps: coeff})
    return p


class TestRationals:
    """Tests for parse_rational() and format_rational()."""

    @pytest.mark.unit
    def test_parses_fraction_and_integer(self):
        """"3/4", "-2" and 5 all parse to exact rationals."""
        from hkq.algebra import parse_rational

        assert parse_rational("3/4") == QQ(3, 4)
        assert parse_rational("-2") == QQ(-2)
        assert parse_rational(5) == QQ(5)

    @pytest.mark.unit
    @pytest.mark.parametrize("bad", ["1/0", "abc", "1.5", True])
    def test_rejects_malformed_literals(self, bad):
        """Zero denominators, decimals, words and booleans raise ParseError."""
        from hkq.algebra import parse_rational
        from hkq.exceptions import ParseError

        with pytest.raises(ParseError):
            parse_rational(bad)

    @pytest.mark.unit
    def test_format_drops_unit_denominator(self):
        """Integers print without a denominator, fractions as p/q."""
        from hkq.algebra import format_rational

        assert format_rational(QQ(6, 2)) == "3"
        assert format_rational(QQ(-1, 2)) == "-1/2"


class TestPolynomialText:
    """Tests for parse_poly() and format_poly()."""

    @pytest.mark.unit
    def test_parse_builds_expected_polynomial(self):
        """Coefficients, powers and implicit 1 coefficients are understood."""
        from hkq.algebra import make_ring, parse_poly

        ring = make_ring(["x", "y"])
        x, y = ring.gens
        assert parse_poly("x^2 - 1/2*x*y + 3", ring) == x**2 - QQ(1, 2) * x * y + 3

    @pytest.mark.unit
    def test_format_is_degrevlex_descending(self):
        """Higher-degree terms come first and signs are spaced."""
        from hkq.algebra import format_poly, make_ring

        ring = make_ring(["x", "y"])
        x, y = ring.gens
        assert format_poly(y - x**2 + 2 * x * y) == "-x^2 + 2*x*y + y"
        assert format_poly(ring.zero) == "0"

    @pytest.mark.unit
    def test_unknown_variable_raises(self):
        """A variable outside the ring is a ParseError."""
        from hkq.algebra import make_ring, parse_poly
        from hkq.exceptions import ParseError

        with pytest.raises(ParseError):
            parse_poly("x + z", make_ring(["x", "y"]))

    @pytest.mark.unit
    def test_gf2_coefficients_reduce(self):
        """Over GF2 the coefficient 2 vanishes."""
        from hkq.algebra import make_ring, parse_poly

        ring = make_ring(["x", "y"], field="GF2")
        x, y = ring.gens
        assert parse_poly("2*x + y", ring) == y


class TestRings:
    """Tests for make_ring() and convert()."""

    @pytest.mark.unit
    def test_repeated_names_rejected(self):
        """Duplicate variable names raise InvalidInputError."""
        from hkq.algebra import make_ring
        from hkq.exceptions import InvalidInputError

        with pytest.raises(InvalidInputError):
            make_ring(["x", "x"])

    @pytest.mark.unit
    def test_unknown_field_rejected(self):
        """Only QQ and GF2 are supported."""
        from hkq.algebra import make_ring
        from hkq.exceptions import InvalidInputError

        with pytest.raises(InvalidInputError):
            make_ring(["x"], field="RR")

    @pytest.mark.unit
    def test_convert_matches_variables_by_name(self):
        """A polynomial in (x) moves into (y, x) keeping its variable."""
        from hkq.algebra import convert, make_ring

        small = make_ring(["x"])
        big = make_ring(["y", "x"])
        moved = convert(small.gens[0] ** 2, big)
        assert moved == big.gens[1] ** 2

    @pytest.mark.unit
    def test_convert_missing_variable_raises(self):
        """Moving y into a ring without y raises RingMismatchError."""
        from hkq.algebra import convert, make_ring
        from hkq.exceptions import RingMismatchError

        with pytest.raises(RingMismatchError):
            convert(make_ring(["x", "y"]).gens[1], make_ring(["x"]))


class TestOperations:
    """Tests for degrees, evaluation, exact division and the apolarity action."""

    @pytest.mark.unit
    def test_monomials_of_degree_order(self):
        """Degree-2 monomials in two variables: x^2, xy, y^2."""
        from hkq.algebra import monomials_of_degree

        assert monomials_of_degree(2, 2) == [(2, 0), (1, 1), (0, 2)]

    @pytest.mark.unit
    def test_total_degree_and_homogeneity(self):
        """x^2 + y is degree 2 and not homogeneous; zero has degree -1."""
        from hkq.algebra import is_homogeneous, make_ring, total_degree

        ring = make_ring(["x", "y"])
        x, y = ring.gens
        assert total_degree(x**2 + y) == 2
        assert not is_homogeneous(x**2 + y)
        assert is_homogeneous(x * y - y**2)
        assert total_degree(ring.zero) == -1

    @pytest.mark.unit
    def test_poly_eval_is_exact(self):
        """x^2 - y at (1/2, 1/4) is exactly zero."""
        from hkq.algebra import make_ring, poly_eval

        ring = make_ring(["x", "y"])
        x, y = ring.gens
        assert poly_eval(x**2 - y, [QQ(1, 2), QQ(1, 4)]) == 0

    @pytest.mark.unit
    def test_divexact_and_failure(self):
        """(x^2 - y^2)/(x - y) = x + y; x/y is inexact."""
        from hkq.algebra import make_ring, poly_divexact
        from hkq.exceptions import InexactDivisionError, ZeroElementError

        ring = make_ring(["x", "y"])
        x, y = ring.gens
        assert poly_divexact(x**2 - y**2, x - y) == x + y
        with pytest.raises(InexactDivisionError):
            poly_divexact(x, y)
        with pytest.raises(ZeroElementError):
            poly_divexact(x, ring.zero)

    @pytest.mark.unit
    def test_apolarity_differentiates(self):
        """∂x applied to x^2 y gives 2xy; ∂y^2 kills it."""
        from hkq.algebra import make_ring, poly_apolar

        ring = make_ring(["x", "y"])
        x, y = ring.gens
        assert poly_apolar(x, x**2 * y) == 2 * x * y
        assert poly_apolar(y**2, x**2 * y) == ring.zero

    @pytest.mark.unit
    def test_substitute_into_other_ring(self):
        """x ↦ a + b, y ↦ a sends x*y to a^2 + a*b."""
        from hkq.algebra import make_ring, substitute

        src = make_ring(["x", "y"])
        dst = make_ring(["a", "b"])
        a, b = dst.gens
        x, y = src.gens
        assert substitute(x * y, [a + b, a], dst) == a**2 + a * b


class TestRandomPolynomials:
    """Seeded property checks over random polynomials in QQ[x, y, z]."""

    @pytest.mark.unit
    def test_text_round_trip(self):
        """parse_poly(format_poly(p)) == p for 1000 seeded polynomials."""
        from hkq.algebra import format_poly, make_ring, parse_poly

        ring = make_ring(["x", "y", "z"])
        rng = np.random.default_rng(20)
        for _ in range(1000):
            p = _random_poly(ring, rng)
            assert parse_poly(format_poly(p), ring) == p

    @pytest.mark.unit
    def test_ring_axioms(self):
        """Commutativity, associativity and distributivity on 1000 triples."""
        from hkq.algebra import make_ring

        ring = make_ring(["x", "y", "z"])
        rng = np.random.default_rng(21)
        for _ in range(1000):
            a, b, c = (_random_poly(ring, rng, terms=3, maxdeg=2) for _ in range(3))
            assert a + b == b + a
            assert a * b == b * a
            assert (a + b) + c == a + (b + c)
            assert (a * b) * c == a * (b * c)
            assert a * (b + c) == a * b + a * c
            assert a - a == ring.zero
            assert a * ring.one == a

    @pytest.mark.unit
    def test_evaluation_is_a_ring_map(self):
        """poly_eval respects sums and products at random rational points."""
        from hkq.algebra import make_ring, poly_eval

        ring = make_ring(["x", "y", "z"])
        rng = np.random.default_rng(22)
        for _ in range(200):
            a, b = _random_poly(ring, rng), _random_poly(ring, rng)
            point = [
                QQ(int(rng.integers(-4, 5)), int(rng.integers(1, 4))) for _ in range(3)
            ]
            assert poly_eval(a + b, point) == poly_eval(a, point) + poly_eval(b, point)
            assert poly_eval(a * b, point) == poly_eval(a, point) * poly_eval(b, point)
