"""Volume polynomials and the cogenerator calculus.

For a sign subset A and offsets r, P^r_A is the homogeneous degree-d polynomial
in x1..xn with Vol Δ^s_A = P^r_A(s) for every s in the chamber of r. Kirwan
kernels are recovered as annihilators of volume polynomials under the
differentiation action t_i ↦ ∂/∂x_i.
"""

import logging
import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from itertools import combinations
from typing import Any

import numpy as np
from sympy.polys.domains import QQ
from sympy.polys.rings import PolyElement, PolyRing

from hkq.algebra import (
    Monomial,
    format_poly,
    is_homogeneous,
    linear_form,
    make_ring,
    monomial,
    monomials_of_degree,
    poly_apolar,
    total_degree,
)
from hkq.arrangement import (
    Arrangement,
    SignSubset,
    circuits,
    format_subset,
    sign_subsets,
)
from hkq.config import settings
from hkq.exceptions import (
    InfeasibleError,
    InterpolationError,
    InvalidInputError,
    NonInvariantError,
    NonSimpleError,
    PreconditionError,
    VerificationError,
)
from hkq.groebner import (
    Ideal,
    ideal_equal,
    ideal_intersect,
    normal_form,
)
from hkq.hypertoric import kirwan_presentation, operator_ring, toric_presentation
from hkq.linalg import independent_subset, nullspace, rank, solve_exact
from hkq.polyhedra import (
    Constraint,
    Point,
    Polyhedron,
    bounded,
    find_point,
    vertices,
    volume,
)

logger = logging.getLogger(__name__)

_SAMPLE_GRID = 1000


@dataclass(frozen=True)
class VolumePolynomial:
    """P^r_A together with the chamber it is valid in."""

    poly: PolyElement
    A: SignSubset
    chamber: tuple[Any, ...]

    def __str__(self) -> str:
        return format_poly(self.poly)


@dataclass(frozen=True)
class CharTerm:
    """η_T · 1_{Δ^{r(T)}}, where r(T) replaces r_i by a large N_i for i ∈ T."""

    large: SignSubset
    eta: int

    def offsets(self, r: Sequence[Any], N: int) -> tuple[Any, ...]:
        """r(T) at the concrete large value N (N_i = N·(i+1))."""
        return tuple(
            QQ(N * (i + 1)) if i in self.large else QQ.convert(ri)
            for i, ri in enumerate(r)
        )


@dataclass(frozen=True)
class CharDecomposition:
    """1_{Δ^r_A} = Σ_T η_T 1_{Δ^{r(T)}} for all large enough N."""

    A: SignSubset
    r: tuple[Any, ...]
    terms: tuple[CharTerm, ...]


@dataclass(frozen=True)
class SpanU:
    """U^r: the volume polynomials of all admissible A and an independent basis."""

    polynomials: tuple[VolumePolynomial, ...]
    basis: tuple[VolumePolynomial, ...]


@dataclass(frozen=True)
class IntersectionCheck:
    """Outcome of comparing ∩_chambers Ann(P^r) with Ann(U^r)."""

    holds: bool
    matches_presentation: bool
    chambers: tuple[tuple[Any, ...], ...]
    intersection: Ideal
    span_annihilator: Ideal


def offset_ring(n: int) -> PolyRing:
    """ℚ[x1..xn], the ring volume polynomials live in."""
    return make_ring([f"x{i + 1}" for i in range(n)])


# ── Admissibility and chambers ─────────────────────────────────────────────────


def is_admissible(arr: Arrangement, A: Iterable[int]) -> bool:
    """True iff the signed normals ε_i(A)·a_i positively span ℚ^d."""
    members = set(A)
    cone = Polyhedron.of(
        arr.d,
        [
            Constraint.of(a, 0, "<=" if i in members else ">=")
            for i, a in enumerate(arr.normals)
        ],
    )
    return bounded(cone)


def admissible_sets(arr: Arrangement) -> list[SignSubset]:
    """All admissible A, ordered as bitmasks."""
    return [A for A in sign_subsets(arr.n) if is_admissible(arr, A)]


def walls(arr: Arrangement) -> list[tuple[int, ...]]:
    """Wall functionals r ↦ Σ c_i r_i, one per circuit (deduplicated)."""
    return list(dict.fromkeys(c.vector(arr.n) for c in circuits(arr)))


def _dot(w: Sequence[Any], r: Sequence[Any]) -> Any:
    return sum((wi * ri for wi, ri in zip(w, r, strict=True) if wi), QQ.zero)


def chamber_signs(arr: Arrangement, r: Sequence[Any]) -> tuple[int, ...]:
    """Signs of the wall functionals at r (0 on a wall)."""
    out = []
    for w in walls(arr):
        value = _dot(w, r)
        out.append(0 if value == 0 else (1 if value > 0 else -1))
    return tuple(out)


def _sign_cone(
    ws: Sequence[tuple[int, ...]], signs: Sequence[int], n: int
) -> Polyhedron:
    return Polyhedron.of(
        n,
        [
            Constraint.of([s * c for c in w], -1, ">=")
            for w, s in zip(ws, signs, strict=True)
        ],
    )


def _integral(point: Point) -> tuple[Any, ...]:
    """Positive rescaling of a point to a primitive integer vector."""
    fracs = [QQ.to_sympy(c) for c in point]
    lcm = math.lcm(*(int(f.q) for f in fracs))
    ints = [int(f.p) * (lcm // int(f.q)) for f in fracs]
    g = math.gcd(*ints) or 1
    return tuple(QQ(v // g) for v in ints)


def chambers(arr: Arrangement) -> list[tuple[Any, ...]]:
    """One integer representative offset per chamber of the simple locus."""
    ws = walls(arr)
    if not ws:
        return [tuple(arr.offsets)]
    partial: list[tuple[int, ...]] = [()]
    for k in range(len(ws)):
        grown = []
        for signs in partial:
            for s in (1, -1):
                candidate = (*signs, s)
                if find_point(_sign_cone(ws[: k + 1], candidate, arr.n)) is not None:
                    grown.append(candidate)
        partial = grown
    reps = []
    for signs in partial:
        point = find_point(_sign_cone(ws, signs, arr.n))
        assert point is not None
        reps.append(_integral(point))
    logger.debug("%d walls, %d chambers", len(ws), len(reps))
    return reps


# ── Volume polynomials ─────────────────────────────────────────────────────────


def _chamber_radius(ws: Sequence[tuple[int, ...]], r: Sequence[Any]) -> Any:
    """ε with |w·δ| < |w·r| for every wall whenever all |δ_i| < ε."""
    if not ws:
        return QQ.one
    radius = None
    for w in ws:
        value = abs(_dot(w, r))
        if not value:
            raise NonSimpleError(f"Offsets lie on the wall {list(w)}")
        bound = value / (2 * sum(abs(c) for c in w) + 1)
        radius = bound if radius is None else min(radius, bound)
    return radius


def _volume_at(arr: Arrangement, A: SignSubset, s: Sequence[Any]) -> Any:
    piece = Arrangement(arr.normals, tuple(s), arr.name).delta(A)
    try:
        return volume(piece)
    except InfeasibleError:
        return QQ.zero


def _monomial_value(point: Sequence[Any], m: Monomial) -> Any:
    value = QQ.one
    for x, e in zip(point, m, strict=True):
        if e:
            value *= x**e
    return value


def is_translation_invariant(arr: Arrangement, p: PolyElement) -> bool:
    """True iff Σ_i (a_i)_j ∂p/∂x_i = 0 for every coordinate j."""
    return all(not poly_apolar(linear_form(p.ring, row), p) for row in arr.matrix_rows)


def volume_polynomial(
    arr: Arrangement,
    A: Iterable[int] = (),
    r: Sequence[Any] | None = None,
    seed: int | None = None,
) -> VolumePolynomial:
    """Interpolate P^r_A from exact volumes at points of the chamber of r.

    Samples C(n+d−1, d) + margin offsets in a box that stays inside the
    chamber, solves for the coefficients in the degree-d monomial basis and
    requires every sample to agree.

    Args:
        arr: The arrangement (normals matter, offsets are the default r).
        A: An admissible sign subset.
        r: Simple offsets; defaults to the arrangement's own.
        seed: Sampling seed; defaults to ``settings.hkq_seed``.

    Raises:
        PreconditionError: If A is not admissible.
        NonSimpleError: If r lies on a wall.
        InterpolationError: If the samples do not fit one polynomial.
    """
    A = frozenset(A)
    r = tuple(QQ.convert(v) for v in (arr.offsets if r is None else r))
    if len(r) != arr.n:
        raise InvalidInputError(f"{len(r)} offsets for {arr.n} hyperplanes")
    if not is_admissible(arr, A):
        raise PreconditionError(f"Sign subset {format_subset(A)} is not admissible")
    ring = offset_ring(arr.n)
    basis = monomials_of_degree(arr.n, arr.d)
    radius = _chamber_radius(walls(arr), r)
    rng = np.random.default_rng(settings.hkq_seed if seed is None else seed)

    samples: list[tuple[Any, ...]] = []
    values: list[Any] = []
    target = len(basis) + settings.interpolation_margin
    for _ in range(4):
        while len(samples) < target:
            steps = rng.integers(-_SAMPLE_GRID + 1, _SAMPLE_GRID, size=arr.n)
            s = tuple(
                ri + radius * QQ(int(k), _SAMPLE_GRID)
                for ri, k in zip(r, steps, strict=True)
            )
            if s in samples:
                continue
            samples.append(s)
            values.append(_volume_at(arr, A, s))
        rows = [[_monomial_value(s, m) for m in basis] for s in samples]
        if rank(rows, len(basis)) == len(basis):
            break
        target += len(basis)
    else:
        raise InterpolationError(
            "Sample offsets do not determine a degree-d polynomial"
        )

    solution = solve_exact(rows, values)
    if solution is None:
        raise InterpolationError(
            f"Volumes of Δ_{format_subset(A)} do not fit one polynomial near "
            f"r = {[str(QQ.to_sympy(v)) for v in r]}"
        )
    poly = ring.from_dict({m: c for m, c in zip(basis, solution, strict=True) if c})
    if not is_translation_invariant(arr, poly):
        raise InterpolationError(f"P_{format_subset(A)} is not translation-invariant")
    logger.debug(
        "P_%s from %d samples: %s", format_subset(A), len(samples), format_poly(poly)
    )
    return VolumePolynomial(poly, A, r)


def span_U(arr: Arrangement, r: Sequence[Any] | None = None) -> SpanU:
    """U^r: volume polynomials of all admissible A with a linearly independent basis."""
    polys = tuple(volume_polynomial(arr, A, r) for A in admissible_sets(arr))
    basis_monomials = monomials_of_degree(arr.n, arr.d)
    vectors = [coefficient_vector(p.poly, basis_monomials) for p in polys]
    keep = independent_subset(vectors)
    return SpanU(polys, tuple(polys[i] for i in keep))


def coefficient_vector(p: PolyElement, basis: Sequence[Monomial]) -> list[Any]:
    terms = dict(p.iterterms())
    return [terms.get(m, QQ.zero) for m in basis]


def same_span(first: Sequence[PolyElement], second: Sequence[PolyElement]) -> bool:
    """True iff two families of polynomials span the same space."""
    monos = sorted({m for p in [*first, *second] for m in p.itermonoms()})
    a = [coefficient_vector(p, monos) for p in first]
    b = [coefficient_vector(p, monos) for p in second]
    width = len(monos)
    ra, rb = rank(a, width), rank(b, width)
    return ra == rb == rank(a + b, width)


# ── Inverse systems ────────────────────────────────────────────────────────────


def inverse_system_annihilator(
    arr: Arrangement, polys: Iterable[PolyElement]
) -> Ideal:
    """Operators in ℚ[t1..tn] killing every polynomial of ``polys``.

    Built degree by degree up to the top degree D; all monomials of degree D+1
    are added. With no nonzero input the result is ⟨t1,…,tn⟩.

    Raises:
        NonInvariantError: If an input is not homogeneous or not
            translation-invariant.
    """
    ring = operator_ring(arr.n)
    inputs = [p for p in polys if p]
    for p in inputs:
        if not is_homogeneous(p) or not is_translation_invariant(arr, p):
            raise NonInvariantError(
                f"{format_poly(p)} is not homogeneous and translation-invariant"
            )
    if not inputs:
        return Ideal.of(ring, ring.gens)
    top = max(total_degree(p) for p in inputs)
    gens: list[PolyElement] = []
    for k in range(1, top + 1):
        basis = monomials_of_degree(arr.n, k)
        images = [
            [poly_apolar(monomial(ring, m), f) for f in inputs] for m in basis
        ]
        keys = sorted(
            {(j, mm) for column in images for j, img in enumerate(column)
             for mm in img.itermonoms()}
        )
        index = {key: row for row, key in enumerate(keys)}
        rows = [[QQ.zero] * len(basis) for _ in keys]
        for col, column in enumerate(images):
            for j, img in enumerate(column):
                for mm, c in img.iterterms():
                    rows[index[(j, mm)]][col] = c
        for vector in nullspace(rows, len(basis)):
            gens.append(
                ring.from_dict({m: c for m, c in zip(basis, vector, strict=True) if c})
            )
    lower = Ideal.of(ring, gens)
    gens += [
        monomial(ring, m)
        for m in monomials_of_degree(arr.n, top + 1)
        if normal_form(monomial(ring, m), lower)
    ]
    return Ideal.of(ring, gens)


# ── Characteristic-function decomposition ──────────────────────────────────────


def char_decompose(
    arr: Arrangement, r: Sequence[Any] | None = None, A: Iterable[int] = ()
) -> CharDecomposition:
    """Express 1_{Δ^r_A} through indicators of polytopes of the form Δ^{r(T)}.

    η_T = (−1)^{|A∖T|} for every T ⊆ A; off the hyperplanes this is
    inclusion–exclusion on the G sides of A.

    Raises:
        PreconditionError: If A is not admissible.
    """
    A = frozenset(A)
    r = tuple(QQ.convert(v) for v in (arr.offsets if r is None else r))
    if not is_admissible(arr, A):
        raise PreconditionError(f"Sign subset {format_subset(A)} is not admissible")
    terms = []
    for size in range(len(A) + 1):
        for T in combinations(sorted(A), size):
            terms.append(CharTerm(frozenset(T), (-1) ** (len(A) - size)))
    return CharDecomposition(A, r, tuple(terms))


def _indicator(
    arr: Arrangement, offsets: Sequence[Any], A: SignSubset, v: Point
) -> int:
    piece = Arrangement(arr.normals, tuple(offsets), arr.name).delta(A)
    return 1 if piece.contains(v) else 0


def _bounding_box(
    arr: Arrangement, r: Sequence[Any], A: SignSubset
) -> list[tuple[Any, Any]]:
    piece = Arrangement(arr.normals, tuple(r), arr.name).delta(A)
    try:
        verts = vertices(piece)
    except InfeasibleError:
        verts = []
    if not verts:
        span = max((abs(v) for v in r), default=QQ.zero) + 1
        return [(-span, span)] * arr.d
    box = []
    for k in range(arr.d):
        lo = min(v[k] for v in verts)
        hi = max(v[k] for v in verts)
        margin = hi - lo + 1
        box.append((lo - margin, hi + margin))
    return box


def verify_char_decomposition(
    arr: Arrangement,
    decomposition: CharDecomposition,
    points: int | None = None,
    seed: int | None = None,
    N: int | None = None,
) -> int:
    """Check the indicator identity at seeded random points off the hyperplanes.

    Returns:
        The number of points checked.

    Raises:
        VerificationError: At the first point where the identity fails.
    """
    count = settings.char_check_points if points is None else points
    large = settings.large_offset if N is None else N
    rng = np.random.default_rng(settings.hkq_seed if seed is None else seed)
    r, A = decomposition.r, decomposition.A
    box = _bounding_box(arr, r, A)
    instantiated = [(t.eta, t.offsets(r, large)) for t in decomposition.terms]
    offsets_in_play = [r, *(o for _, o in instantiated)]
    checked = 0
    while checked < count:
        steps = rng.integers(0, _SAMPLE_GRID * 7 + 1, size=arr.d)
        v = tuple(
            lo + (hi - lo) * QQ(int(k), _SAMPLE_GRID * 7)
            for (lo, hi), k in zip(box, steps, strict=True)
        )
        on_hyperplane = any(
            _dot(a, v) + o[i] == 0
            for o in offsets_in_play
            for i, a in enumerate(arr.normals)
        )
        if on_hyperplane:
            continue
        lhs = _indicator(arr, r, A, v)
        rhs = sum(eta * _indicator(arr, o, frozenset(), v) for eta, o in instantiated)
        if lhs != rhs:
            raise VerificationError(
                f"Indicator identity for Δ_{format_subset(A)} fails at "
                f"{[str(QQ.to_sympy(x)) for x in v]}: {lhs} != {rhs}"
            )
        checked += 1
    return checked


def decomposition_volume_identity(
    arr: Arrangement, decomposition: CharDecomposition, N: int | None = None
) -> tuple[bool, PolyElement, PolyElement]:
    """Compare P^r_A with Σ_T η_T P^{r(T)}, each interpolated in its own chamber.

    Returns:
        (identity holds, left side, right side).
    """
    large = settings.large_offset if N is None else N
    r, A = decomposition.r, decomposition.A
    lhs = volume_polynomial(arr, A, r).poly
    rhs = lhs.ring.zero
    for term in decomposition.terms:
        rhs += term.eta * volume_polynomial(arr, (), term.offsets(r, large)).poly
    return lhs == rhs, lhs, rhs


# ── Whole-arrangement checks ───────────────────────────────────────────────────


def verify_toric(arr: Arrangement, r: Sequence[Any] | None = None) -> bool:
    """Ann(P^r) equals the toric presentation of Δ^r."""
    at_r = arr if r is None else arr.with_offsets(r)
    p = volume_polynomial(at_r).poly
    return ideal_equal(
        inverse_system_annihilator(arr, [p]), toric_presentation(at_r).relations
    )


def verify_theorem_int(arr: Arrangement) -> IntersectionCheck:
    """∩ over chambers of Ann(P^r) against Ann(U^r) and the flavor-H presentation.

    Chambers whose Δ is empty contribute the whole ring and are skipped.
    """
    reps = chambers(arr)
    intersection: Ideal | None = None
    used = []
    for r in reps:
        p = volume_polynomial(arr, (), r).poly
        if not p:
            continue
        used.append(r)
        ann = inverse_system_annihilator(arr, [p])
        intersection = (
            ann if intersection is None else ideal_intersect(intersection, ann)
        )
    ring = operator_ring(arr.n)
    if intersection is None:
        intersection = Ideal.of(ring, [ring.one])
    span_ann = inverse_system_annihilator(
        arr, [vp.poly for vp in span_U(arr).polynomials]
    )
    holds = ideal_equal(intersection, span_ann)
    presentation = kirwan_presentation(arr, "H").relations
    matches = ideal_equal(span_ann, presentation)
    logger.info(
        "Intersection check on %s: %d chambers used, equal=%s, presentation=%s",
        arr.name or "?",
        len(used),
        holds,
        matches,
    )
    return IntersectionCheck(holds, matches, tuple(used), intersection, span_ann)

