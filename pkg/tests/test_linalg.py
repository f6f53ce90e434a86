"""Tests for linalg.py: exact rank, kernels and solving."""

import pytest
from sympy.polys.domains import GF, QQ


class TestRankAndKernel:
    """Tests for rank(), nullspace() and integer_kernel()."""

    @pytest.mark.unit
    def test_rank_of_dependent_rows(self):
        """Two proportional rows have rank 1."""
        from hkq.linalg import rank

        assert rank([[1, 2], [2, 4]], 2) == 1
        assert rank([], 3) == 0

    @pytest.mark.unit
    def test_rank_depends_on_field(self):
        """[[1, 1], [1, -1]] is invertible over QQ but singular over GF(2)."""
        from hkq.linalg import rank

        rows = [[1, 1], [1, -1]]
        assert rank(rows, 2) == 2
        assert rank(rows, 2, GF(2)) == 1

    @pytest.mark.unit
    def test_nullspace_vectors_are_in_the_kernel(self):
        """Every returned vector is killed by the matrix."""
        from hkq.linalg import nullspace

        rows = [[1, 1, 0], [0, 1, 1]]
        kernel = nullspace(rows, 3)
        assert len(kernel) == 1
        for v in kernel:
            assert all(sum(a * b for a, b in zip(row, v)) == 0 for row in rows)

    @pytest.mark.unit
    def test_integer_kernel_is_primitive(self):
        """The kernel of (1 1) is spanned by (1, -1)."""
        from hkq.linalg import integer_kernel

        assert integer_kernel([[1, 1]], 2) == [[1, -1]]


class TestSolving:
    """Tests for solve_exact(), determinant() and primitive()."""

    @pytest.mark.unit
    def test_solves_square_system(self):
        """x + y = 3, x - y = 1 gives (2, 1)."""
        from hkq.linalg import solve_exact

        assert solve_exact([[1, 1], [1, -1]], [3, 1]) == [QQ(2), QQ(1)]

    @pytest.mark.unit
    def test_inconsistent_system_returns_none(self):
        """x = 1 and x = 2 has no solution."""
        from hkq.linalg import solve_exact

        assert solve_exact([[1], [1]], [1, 2]) is None

    @pytest.mark.unit
    def test_determinant(self):
        """det [[2, 1], [1, 1]] = 1."""
        from hkq.linalg import determinant

        assert determinant([[2, 1], [1, 1]]) == 1

    @pytest.mark.unit
    def test_primitive_clears_denominators_and_sign(self):
        """(1/2, -1/3) scales to (3, -2); (-2, 4) to (1, -2)."""
        from hkq.linalg import primitive

        assert primitive([QQ(1, 2), QQ(-1, 3)]) == [3, -2]
        assert primitive([-2, 4]) == [1, -2]
