"""Exact rational polyhedra in H-representation.

A polyhedron is {v ∈ ℚ^d : v·a + r ⋛ 0} for a list of constraints. Dimensions
up to 3 are decided by Fourier–Motzkin elimination with strictness tracking;
larger ones go through sympy's exact simplex.
"""

import itertools
import logging
import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from functools import lru_cache
from typing import Any

import numpy as np
from pydantic import BaseModel, ValidationError
from sympy.polys.domains import QQ
from sympy.solvers.simplex import InfeasibleLPError, linprog

from hkq.algebra import format_rational, parse_rational
from hkq.exceptions import (
    InfeasibleError,
    InvalidInputError,
    NotFullDimensionalError,
    ParseError,
    UnboundedError,
)
from hkq.linalg import determinant, rank, solve_exact

logger = logging.getLogger(__name__)

Point = tuple[Any, ...]

SENSES = (">=", "<=", "=")

_FM_MAX_DIMENSION = 3

# (coefficients, constant, strict): coefficients·v + constant ≥ 0, or > 0
_Row = tuple[tuple[Any, ...], Any, bool]


@dataclass(frozen=True)
class Constraint:
    """One constraint v·normal + offset ⋛ 0."""

    normal: tuple[Any, ...]
    offset: Any
    sense: str = ">="

    @classmethod
    def of(cls, normal: Iterable[Any], offset: Any, sense: str = ">=") -> "Constraint":
        """Build a constraint with exact ℚ entries.

        Raises:
            InvalidInputError: If the sense is unknown or the normal is zero.
        """
        if sense not in SENSES:
            raise InvalidInputError(f"Unknown constraint sense {sense!r}")
        a = tuple(QQ.convert(c) for c in normal)
        if not any(a):
            raise InvalidInputError("Constraint normals must be nonzero")
        return cls(a, QQ.convert(offset), sense)

    def value(self, v: Sequence[Any]) -> Any:
        """v·normal + offset."""
        total = self.offset
        for a, x in zip(self.normal, v, strict=True):
            if a:
                total += a * x
        return total

    def holds(self, v: Sequence[Any]) -> bool:
        val = self.value(v)
        if self.sense == ">=":
            return val >= 0
        if self.sense == "<=":
            return val <= 0
        return val == 0

    def holds_strictly(self, v: Sequence[Any]) -> bool:
        val = self.value(v)
        if self.sense == ">=":
            return val > 0
        if self.sense == "<=":
            return val < 0
        return False

    def as_row(self, strict: bool = False) -> _Row:
        """The constraint written as ``coefficients·v + constant ≥ 0``."""
        if self.sense == "<=":
            return (tuple(-a for a in self.normal), -self.offset, strict)
        return (self.normal, self.offset, strict)


@dataclass(frozen=True)
class Polyhedron:
    """The set of points of ℚ^d satisfying every constraint."""

    d: int
    constraints: tuple[Constraint, ...]

    @classmethod
    def of(cls, d: int, constraints: Iterable[Constraint]) -> "Polyhedron":
        """Build a polyhedron, checking dimensions.

        Raises:
            InvalidInputError: If d < 1 or a normal has the wrong length.
        """
        if d < 1:
            raise InvalidInputError(f"Polyhedron dimension must be positive, got {d}")
        cons = tuple(constraints)
        for c in cons:
            if len(c.normal) != d:
                raise InvalidInputError(
                    f"Normal {list(c.normal)} does not have {d} coordinates"
                )
        return cls(d, cons)

    def contains(self, v: Sequence[Any]) -> bool:
        return all(c.holds(v) for c in self.constraints)

    def contains_interior(self, v: Sequence[Any]) -> bool:
        """True when every constraint holds strictly at ``v``."""
        return all(c.holds_strictly(v) for c in self.constraints)

    def active(self, v: Sequence[Any]) -> frozenset[int]:
        """Indices of the constraints tight at ``v``."""
        return frozenset(i for i, c in enumerate(self.constraints) if c.value(v) == 0)

    def with_constraints(self, extra: Iterable[Constraint]) -> "Polyhedron":
        return Polyhedron.of(self.d, (*self.constraints, *extra))


class ConstraintModel(BaseModel):
    """Wire format of one constraint."""

    normal: list[int]
    offset: str | int
    sense: str = ">="


class PolyhedronModel(BaseModel):
    """Wire format of a polyhedron: {d, constraints: [...]}."""

    d: int
    constraints: list[ConstraintModel]


def parse_polyhedron(data: dict[str, Any]) -> Polyhedron:
    """Build a polyhedron from its JSON form.

    Raises:
        ParseError: If the document does not match the wire format.
        InvalidInputError: If the parsed data is structurally invalid.
    """
    try:
        model = PolyhedronModel.model_validate(data)
    except ValidationError as e:
        raise ParseError(f"Invalid polyhedron document: {e}") from e
    return Polyhedron.of(
        model.d,
        [
            Constraint.of(c.normal, parse_rational(c.offset), c.sense)
            for c in model.constraints
        ],
    )


def polyhedron_to_json(P: Polyhedron) -> dict[str, Any]:
    """JSON form of ``P`` with rationals as ``p/q`` strings."""
    constraints = []
    for c in P.constraints:
        if any(QQ.to_sympy(a).q != 1 for a in c.normal):
            raise InvalidInputError("Only integer normals have a JSON form")
        constraints.append(
            {
                "normal": [int(QQ.to_sympy(a)) for a in c.normal],
                "offset": format_rational(c.offset),
                "sense": c.sense,
            }
        )
    return {"d": P.d, "constraints": constraints}


# ── Fourier–Motzkin ────────────────────────────────────────────────────────────


def _normalize(row: _Row) -> _Row:
    coeffs, const, strict = row
    lead = next((abs(c) for c in coeffs if c), None)
    if lead is None or lead == 1:
        return row
    return (tuple(c / lead for c in coeffs), const / lead, strict)


def _substitute_row(
    row: tuple[tuple[Any, ...], Any], k: int, expr: tuple[Any, ...], expr0: Any
) -> tuple[tuple[Any, ...], Any]:
    """Replace v_k by expr·v + expr0 in ``row``."""
    coeffs, const = row
    ak = coeffs[k]
    if not ak:
        return row
    new = tuple(
        QQ.zero if j == k else coeffs[j] + ak * expr[j] for j in range(len(coeffs))
    )
    return new, const + ak * expr0


def _fm_point(P: Polyhedron, strict: bool) -> Point | None:
    """A point of P (of its interior when ``strict``) or None, by elimination."""
    d = P.d
    rows: list[_Row] = []
    equalities: list[tuple[tuple[Any, ...], Any]] = []
    for c in P.constraints:
        if c.sense == "=":
            if strict:
                return None
            equalities.append((c.normal, c.offset))
        else:
            rows.append(c.as_row(strict))

    # ── 1. Solve out equalities ──
    substitutions: list[tuple[int, tuple[Any, ...], Any]] = []
    while equalities:
        coeffs, const = equalities.pop()
        k = next((j for j, a in enumerate(coeffs) if a), None)
        if k is None:
            if const:
                return None
            continue
        ak = coeffs[k]
        expr = tuple(QQ.zero if j == k else -coeffs[j] / ak for j in range(d))
        expr0 = -const / ak
        substitutions.append((k, expr, expr0))
        equalities = [_substitute_row(e, k, expr, expr0) for e in equalities]
        rows = [
            (*_substitute_row((r[0], r[1]), k, expr, expr0), r[2]) for r in rows
        ]

    eliminated = {k for k, _, _ in substitutions}
    free = [k for k in range(d) if k not in eliminated]

    # ── 2. Eliminate the free variables one by one ──
    stages: list[list[_Row]] = []
    current = list(dict.fromkeys(_normalize(r) for r in rows))
    for k in free:
        stages.append(current)
        keep = [r for r in current if not r[0][k]]
        upper = [r for r in current if r[0][k] < 0]
        lower = [r for r in current if r[0][k] > 0]
        combined = []
        for lo in lower:
            for up in upper:
                s, t = -up[0][k], lo[0][k]
                coeffs = tuple(s * a + t * b for a, b in zip(lo[0], up[0], strict=True))
                combined.append((coeffs, s * lo[1] + t * up[1], lo[2] or up[2]))
        current = list(dict.fromkeys(_normalize(r) for r in keep + combined))
        for coeffs, const, is_strict in current:
            if not any(coeffs) and (const < 0 or (is_strict and const == 0)):
                return None
    for coeffs, const, is_strict in current:
        if const < 0 or (is_strict and const == 0):
            return None

    # ── 3. Back-substitute a witness ──
    values = [QQ.zero] * d
    for k, system in zip(reversed(free), reversed(stages), strict=True):
        lo_val, hi_val = None, None
        for coeffs, const, _ in system:
            ak = coeffs[k]
            if not ak:
                continue
            rest = const + sum(
                (coeffs[j] * values[j] for j in range(d) if j != k and coeffs[j]),
                QQ.zero,
            )
            bound = -rest / ak
            if ak > 0:
                lo_val = bound if lo_val is None else max(lo_val, bound)
            else:
                hi_val = bound if hi_val is None else min(hi_val, bound)
        if lo_val is not None and hi_val is not None:
            values[k] = (lo_val + hi_val) / 2
        elif lo_val is not None:
            values[k] = lo_val + 1
        elif hi_val is not None:
            values[k] = hi_val - 1
    for k, expr, expr0 in reversed(substitutions):
        values[k] = expr0 + sum(
            (expr[j] * values[j] for j in range(d) if expr[j]), QQ.zero
        )
    return tuple(values)


# ── Simplex ────────────────────────────────────────────────────────────────────


def _lp_point(P: Polyhedron, strict: bool) -> Point | None:
    """A point of P (of its interior when ``strict``) or None, by exact simplex.

    Variables are split as v = p − q with p, q ≥ 0. In strict mode a slack
    0 ≤ s ≤ 1 is maximized against a·v + r − s ≥ 0.
    """
    d = P.d
    if strict and any(c.sense == "=" for c in P.constraints):
        return None
    width = 2 * d + (1 if strict else 0)
    A: list[list[Any]] = []
    b: list[Any] = []
    A_eq: list[list[Any]] = []
    b_eq: list[Any] = []
    for c in P.constraints:
        coeffs = [QQ.to_sympy(a) for a in c.normal]
        split = coeffs + [-a for a in coeffs]
        r = QQ.to_sympy(c.offset)
        if c.sense == "=":
            A_eq.append(split)
            b_eq.append(-r)
            continue
        sign = 1 if c.sense == ">=" else -1
        row = [-sign * a for a in split] + ([1] if strict else [])
        A.append(row)
        b.append(sign * r)
    # linprog mishandles an empty inequality block
    A.append([0] * width)
    b.append(1)
    objective = [0] * width
    if strict:
        A.append([0] * (2 * d) + [1])
        b.append(1)
        objective[-1] = -1
    try:
        optimum, solution = linprog(
            objective,
            A,
            b,
            A_eq if A_eq else None,
            b_eq if b_eq else None,
        )
    except InfeasibleLPError:
        return None
    if strict and optimum >= 0:
        return None
    values = [QQ.convert(x) for x in solution]
    return tuple(values[k] - values[d + k] for k in range(d))


def find_point(P: Polyhedron) -> Point | None:
    """Some point of P, or None when P is empty."""
    if P.d <= _FM_MAX_DIMENSION:
        return _fm_point(P, strict=False)
    return _lp_point(P, strict=False)


def interior_point(P: Polyhedron) -> Point | None:
    """A point where every constraint is strict, or None when there is none."""
    if P.d <= _FM_MAX_DIMENSION:
        return _fm_point(P, strict=True)
    return _lp_point(P, strict=True)


def feasible(P: Polyhedron) -> bool:
    """True iff P ≠ ∅."""
    return find_point(P) is not None


def full_dimensional(P: Polyhedron) -> bool:
    """True iff P has nonempty interior."""
    return interior_point(P) is not None


@lru_cache(maxsize=4096)
def _cone_is_trivial(d: int, rows: tuple[tuple[tuple[Any, ...], str], ...]) -> bool:
    cone = [Constraint(normal, QQ.zero, sense) for normal, sense in rows]
    for k in range(d):
        for sign in (1, -1):
            unit = tuple(QQ(sign) if j == k else QQ.zero for j in range(d))
            probe = Polyhedron(d, (*cone, Constraint(unit, QQ(-1), ">=")))
            if find_point(probe) is not None:
                return False
    return True


def bounded(P: Polyhedron) -> bool:
    """True iff the recession cone of P is {0}.

    Raises:
        InfeasibleError: If P is empty.
    """
    if not feasible(P):
        raise InfeasibleError("Boundedness of an empty polyhedron is undefined")
    return _cone_is_trivial(P.d, tuple((c.normal, c.sense) for c in P.constraints))


def vertices(P: Polyhedron) -> list[Point]:
    """All vertices of P, sorted lexicographically.

    For an unbounded P these are the vertices of its pointed part (possibly none).

    Raises:
        InfeasibleError: If P is empty.
    """
    if not feasible(P):
        raise InfeasibleError("An empty polyhedron has no vertices")
    d = P.d
    found: set[Point] = set()
    for combo in itertools.combinations(P.constraints, d):
        A = [c.normal for c in combo]
        if not determinant(A):
            continue
        solution = solve_exact(A, [-c.offset for c in combo])
        if solution is None:
            continue
        point = tuple(solution)
        if P.contains(point):
            found.add(point)
    return sorted(found)


def affine_rank(points: Sequence[Point]) -> int:
    """Dimension of the affine hull of ``points`` (−1 for no points)."""
    if not points:
        return -1
    base = points[0]
    diffs = [[a - b for a, b in zip(p, base, strict=True)] for p in points[1:]]
    return rank(diffs, len(base)) if diffs else 0


@dataclass(frozen=True)
class Face:
    """A nonempty face of a polytope.

    ``active`` holds the constraints tight on the whole face.
    """

    vertices: tuple[Point, ...]
    active: frozenset[int]
    dimension: int


def faces(P: Polyhedron) -> list[Face]:
    """All nonempty faces of a polytope, the polytope itself included.

    Faces are the nonempty intersections of the vertex sets of constraints,
    sorted by dimension then vertex list.

    Raises:
        InfeasibleError: If P is empty.
        UnboundedError: If P is unbounded.
    """
    if not bounded(P):
        raise UnboundedError("Face enumeration needs a bounded polyhedron")
    verts = vertices(P)
    incidence = {v: P.active(v) for v in verts}
    top = frozenset(verts)
    seen = {top}
    frontier = [top]
    while frontier:
        nxt = []
        for face in frontier:
            for j in range(len(P.constraints)):
                smaller = frozenset(v for v in face if j in incidence[v])
                if smaller and smaller not in seen:
                    seen.add(smaller)
                    nxt.append(smaller)
        frontier = nxt
    out = []
    for face in seen:
        ordered = tuple(sorted(face))
        active = frozenset.intersection(*(incidence[v] for v in ordered))
        out.append(Face(ordered, active, affine_rank(ordered)))
    out.sort(key=lambda f: (f.dimension, f.vertices))
    return out


def edges(P: Polyhedron) -> list[tuple[Point, Point]]:
    """Pairs of adjacent vertices of a polytope."""
    return [(f.vertices[0], f.vertices[1]) for f in faces(P) if f.dimension == 1]


# ── Volume and sampling ────────────────────────────────────────────────────────


def _triangulate(
    verts: list[Point], dim: int, incidence: dict[Point, frozenset[int]]
) -> list[tuple[Point, ...]]:
    """Simplices coning each facet not containing the lexicographic minimum to it."""
    if dim == 0:
        return [(verts[0],)]
    anchor = min(verts)
    seen: set[frozenset[Point]] = set()
    simplices: list[tuple[Point, ...]] = []
    for j in sorted(set().union(*(incidence[v] for v in verts))):
        facet = [v for v in verts if j in incidence[v]]
        key = frozenset(facet)
        if len(facet) == len(verts) or key in seen:
            continue
        if affine_rank(facet) != dim - 1:
            continue
        seen.add(key)
        if anchor in key:
            continue
        for simplex in _triangulate(sorted(facet), dim - 1, incidence):
            simplices.append((anchor, *simplex))
    return simplices


def simplex_volume(simplex: Sequence[Point]) -> Any:
    """|det(v_i − v_0)| / d! for a d-simplex given by d+1 points."""
    base = simplex[0]
    rows = [[a - b for a, b in zip(p, base, strict=True)] for p in simplex[1:]]
    return abs(determinant(rows)) / math.factorial(len(rows))


def volume(P: Polyhedron) -> Any:
    """Exact d-dimensional volume of a polytope (0 when lower-dimensional).

    Raises:
        InfeasibleError: If P is empty.
        UnboundedError: If P is unbounded.
    """
    if not bounded(P):
        raise UnboundedError("Volume of an unbounded polyhedron is infinite")
    verts = vertices(P)
    if affine_rank(verts) < P.d:
        return QQ.zero
    incidence = {v: P.active(v) for v in verts}
    total = QQ.zero
    for simplex in _triangulate(verts, P.d, incidence):
        total += simplex_volume(simplex)
    return total


def sample_interior(P: Polyhedron, count: int, seed: int) -> list[Point]:
    """``count`` distinct interior points of a full-dimensional polytope.

    The first point is the vertex barycenter; the others are convex combinations
    of all vertices with positive integer weights drawn from a seeded generator.

    Raises:
        InvalidInputError: If count is negative.
        InfeasibleError: If P is empty.
        NotFullDimensionalError: If P has empty interior.
        UnboundedError: If P is unbounded.
    """
    if count < 0:
        raise InvalidInputError(f"Sample count must be non-negative, got {count}")
    if not feasible(P):
        raise InfeasibleError("Cannot sample an empty polyhedron")
    if not full_dimensional(P):
        raise NotFullDimensionalError("Cannot sample the interior of a flat polyhedron")
    if not bounded(P):
        raise UnboundedError("Interior sampling needs a bounded polyhedron")
    verts = vertices(P)
    n = len(verts)
    barycenter = tuple(sum((v[k] for v in verts), QQ.zero) / n for k in range(P.d))
    points = [barycenter]
    seen = {barycenter}
    rng = np.random.default_rng(seed)
    while len(points) < count:
        weights = [int(w) for w in rng.integers(1, 1 << 16, size=n)]
        total = sum(weights)
        point = tuple(
            sum(
                (QQ(w, total) * v[k] for w, v in zip(weights, verts, strict=True)),
                QQ.zero,
            )
            for k in range(P.d)
        )
        if point not in seen:
            seen.add(point)
            points.append(point)
    return points[:count]
