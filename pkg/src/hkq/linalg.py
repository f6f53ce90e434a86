"""Exact linear algebra over ℚ and 𝔽₂ through sympy's DomainMatrix."""

import math
from collections.abc import Sequence
from typing import Any

from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

Row = list[Any]


def matrix(rows: Sequence[Sequence[Any]], ncols: int, domain: Any = QQ) -> DomainMatrix:
    """Build a DomainMatrix, converting every entry into ``domain``."""
    converted = [[domain.convert(v) for v in row] for row in rows]
    return DomainMatrix(converted, (len(converted), ncols), domain)


def rank(rows: Sequence[Sequence[Any]], ncols: int, domain: Any = QQ) -> int:
    """Rank of the matrix with the given rows."""
    if not rows or ncols == 0:
        return 0
    return int(matrix(rows, ncols, domain).rank())


def rref(
    rows: Sequence[Sequence[Any]], ncols: int, domain: Any = QQ
) -> tuple[list[Row], tuple[int, ...]]:
    """Reduced row echelon form and pivot columns."""
    if not rows:
        return [], ()
    reduced, pivots = matrix(rows, ncols, domain).rref()
    return reduced.to_list(), tuple(pivots)


def nullspace(rows: Sequence[Sequence[Any]], ncols: int, domain: Any = QQ) -> list[Row]:
    """Basis of {v : M v = 0}, one vector per returned row."""
    if not rows:
        return [
            [domain.one if i == j else domain.zero for j in range(ncols)]
            for i in range(ncols)
        ]
    return matrix(rows, ncols, domain).nullspace().to_list()


def solve_exact(
    rows: Sequence[Sequence[Any]], rhs: Sequence[Any], domain: Any = QQ
) -> Row | None:
    """Solve M v = rhs exactly; free variables are set to 0.

    Returns:
        A solution vector, or None when the system is inconsistent.
    """
    ncols = len(rows[0]) if rows else 0
    augmented = [[*row, b] for row, b in zip(rows, rhs, strict=True)]
    reduced, pivots = rref(augmented, ncols + 1, domain)
    if ncols in pivots:
        return None
    solution = [domain.zero] * ncols
    for r, col in enumerate(pivots):
        solution[col] = reduced[r][ncols]
    return solution


def independent_subset(vectors: Sequence[Sequence[Any]], domain: Any = QQ) -> list[int]:
    """Indices of a maximal independent subfamily, chosen greedily in input order."""
    if not vectors:
        return []
    length = len(vectors[0])
    columns = [[vectors[j][i] for j in range(len(vectors))] for i in range(length)]
    _, pivots = rref(columns, len(vectors), domain)
    return list(pivots)


def determinant(rows: Sequence[Sequence[Any]], domain: Any = QQ) -> Any:
    """Determinant of a square matrix."""
    return matrix(rows, len(rows), domain).det()


def primitive(vector: Sequence[Any]) -> list[int]:
    """Scale to a primitive integer vector whose first nonzero entry is positive."""
    fracs = [QQ.to_sympy(QQ.convert(v)) for v in vector]
    lcm = math.lcm(*(int(f.q) for f in fracs)) if fracs else 1
    ints = [int(f.p) * (lcm // int(f.q)) for f in fracs]
    g = math.gcd(*ints) if any(ints) else 1
    ints = [v // g for v in ints]
    lead = next((v for v in ints if v), 1)
    return [-v for v in ints] if lead < 0 else ints


def integer_kernel(rows: Sequence[Sequence[int]], ncols: int) -> list[list[int]]:
    """Primitive integer basis of the rational kernel of an integer matrix."""
    return [primitive(v) for v in nullspace(rows, ncols, QQ)]
