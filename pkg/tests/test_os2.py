"""Tests for os2.py: ℤ₂-equivariant Orlik–Solomon rings and their invariants."""

import pytest


class TestPresentation:
    """Tests for os2_presentation() and os_specialize()."""

    @pytest.mark.unit
    def test_ring_is_over_gf2(self, four_lines):
        """Variables t1..t4 and x over GF2."""
        from hkq.os2 import os2_presentation

        R = os2_presentation(four_lines)
        assert R.names == ["t1", "t2", "t3", "t4", "x"]
        assert R.field == "GF2"
        assert R.label == "OS2(four_lines)"

    @pytest.mark.unit
    def test_orlik_solomon_hilbert_function(self, four_lines):
        """At x = 0 the ring has Hilbert function 1, 4, 5."""
        from hkq.groebner import hilbert_function
        from hkq.os2 import os2_presentation, os_specialize

        R = os_specialize(os2_presentation(four_lines), 0)
        assert hilbert_function(R, 3) == [1, 4, 5, 0]

    @pytest.mark.unit
    def test_free_over_x(self, four_lines):
        """The Hilbert function is the running sum of the x = 0 quotient."""
        from hkq.os2 import is_free_over_x, os2_presentation

        assert is_free_over_x(os2_presentation(four_lines), maxdeg=4)

    @pytest.mark.unit
    def test_only_zero_and_one(self, four_lines):
        """x := 2 is not a specialization over GF2."""
        from hkq.exceptions import InvalidInputError
        from hkq.os2 import os2_presentation, os_specialize

        with pytest.raises(InvalidInputError):
            os_specialize(os2_presentation(four_lines), 2)

    @pytest.mark.unit
    def test_non_smooth_raises(self):
        """(1,0) and (1,2) have determinant 2."""
        from hkq.arrangement import Arrangement
        from hkq.exceptions import NonSmoothError
        from hkq.os2 import os2_presentation

        arr = Arrangement.of([(1, 0), (0, 1), (1, 2)], [0, 0, 1], "steep")
        with pytest.raises(NonSmoothError, match="steep"):
            os2_presentation(arr)


class TestMaps:
    """Tests for flip_map() and explicit ring maps."""

    @pytest.mark.unit
    def test_flip_map_is_isomorphism(self, four_lines):
        """Reversing a coorientation leaves the ring unchanged up to t_m ↦ x − t_m."""
        from hkq.groebner import map_is_isomorphism
        from hkq.os2 import flip_map

        assert map_is_isomorphism(flip_map(four_lines, 1))

    @pytest.mark.unit
    def test_placed_and_moved_rings_agree(self, four_lines, four_lines_moved):
        """An explicit linear map identifies the two rings mod 2."""
        from hkq.groebner import map_is_isomorphism, ring_map
        from hkq.os2 import os2_presentation

        f = ring_map(
            os2_presentation(four_lines),
            os2_presentation(four_lines_moved),
            ["t1 + t2", "t2 + t3 + x", "t3", "t2 + t4", "x"],
        )
        assert map_is_isomorphism(f)


class TestFingerprints:
    """Tests for annihilator_fingerprint() and is_distinguished()."""

    @pytest.mark.unit
    def test_fingerprint_counts_nonzero_elements(self, four_lines):
        """Each nonzero degree-one sum is counted exactly once."""
        from hkq.groebner import contains, standard_monomials
        from hkq.os2 import annihilator_fingerprint, os2_presentation

        R = os2_presentation(four_lines)
        fingerprint = annihilator_fingerprint(R, 1)
        assert all(count > 0 for _, count in fingerprint)
        basis = standard_monomials(R, 1)
        assert sum(count for _, count in fingerprint) <= 2 ** len(basis) - 1
        assert not contains(R.relations, R.ring.gens[0])

    @pytest.mark.unit
    def test_ring_is_not_distinguished_from_itself(self, four_lines):
        """Identical rings never count as distinguished."""
        from hkq.os2 import is_distinguished, os2_presentation

        R = os2_presentation(four_lines)
        assert is_distinguished(R, R, 1) == "not distinguished at depth 1"

    @pytest.mark.unit
    def test_zero_degree_raises(self, four_lines):
        """Degree 3 of the x = 0 quotient is zero, so there is nothing to sample."""
        from hkq.exceptions import PreconditionError
        from hkq.os2 import annihilator_fingerprint, os2_presentation, os_specialize

        R = os_specialize(os2_presentation(four_lines), 0)
        with pytest.raises(PreconditionError):
            annihilator_fingerprint(R, 3)

    @pytest.mark.slow
    def test_second_example_is_distinguished(self):
        """Only the first ring has a degree-one element with profile [1, 1]."""
        from hkq.arrangement import fixture
        from hkq.os2 import (
            annihilator_fingerprint,
            has_profile,
            is_distinguished,
            os2_presentation,
        )

        Ra = os2_presentation(fixture("doubled_diagonal"))
        Rc = os2_presentation(fixture("doubled_diagonal_moved"))
        assert has_profile(annihilator_fingerprint(Ra, 1), (1, 1))
        assert not has_profile(annihilator_fingerprint(Rc, 1), (1, 1))
        assert is_distinguished(Ra, Rc, 1) == "distinguished"
