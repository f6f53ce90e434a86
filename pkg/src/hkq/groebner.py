"""Ideals, presented quotient rings and ring maps, with a Buchberger engine.

The engine follows the classical design: normal pair selection, the
Gebauer–Möller pair update, then minimalization and interreduction to the
unique reduced basis. Every ideal operation (membership, equality,
intersection, colon, annihilators, Hilbert functions) goes through reduced
bases, cached per ideal and monomial order.
"""

import logging
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from typing import Any

from sympy.polys.groebnertools import groebner as sympy_groebner
from sympy.polys.orderings import MonomialOrder, grevlex
from sympy.polys.rings import PolyElement, PolyRing

from hkq.algebra import (
    EliminationOrder,
    Monomial,
    convert,
    field_name,
    format_poly,
    is_homogeneous,
    make_ring,
    monomial,
    monomials_of_degree,
    parse_poly,
    poly_divexact,
    substitute,
    total_degree,
    variable_names,
    with_order,
)
from hkq.config import settings
from hkq.exceptions import (
    GradingError,
    PreconditionError,
    RingMismatchError,
    ZeroElementError,
)
from hkq.linalg import rank

logger = logging.getLogger(__name__)

_ELIMINATION_VARIABLE = "elim_t"


@dataclass(frozen=True, eq=False)
class Ideal:
    """An ideal of a polynomial ring, given by generators."""

    ring: PolyRing
    generators: tuple[PolyElement, ...]
    _bases: dict[Any, list[PolyElement]] = field(
        default_factory=dict, init=False, repr=False
    )

    @classmethod
    def of(cls, ring: PolyRing, generators: Iterable[PolyElement]) -> "Ideal":
        """Build an ideal, moving generators into ``ring`` and dropping zeros."""
        gens = []
        for g in generators:
            g = convert(g, ring)
            if g and not any(g == h for h in gens):
                gens.append(g)
        return cls(ring, tuple(gens))

    @classmethod
    def zero(cls, ring: PolyRing) -> "Ideal":
        """The zero ideal of ``ring``."""
        return cls(ring, ())

    def __add__(self, other: "Ideal") -> "Ideal":
        _check_same_ambient(self.ring, other.ring)
        return Ideal.of(self.ring, [*self.generators, *other.generators])

    def extend(self, generators: Iterable[PolyElement]) -> "Ideal":
        """Return the ideal with extra generators."""
        return Ideal.of(self.ring, [*self.generators, *generators])

    @property
    def names(self) -> list[str]:
        return variable_names(self.ring)

    def __len__(self) -> int:
        return len(self.generators)


@dataclass(frozen=True, eq=False)
class PresentedRing:
    """A graded quotient ring ambient/relations.

    ``degrees`` are cohomological degrees of the ambient generators; every
    generator used here sits in degree 2, which is polynomial degree 1.
    """

    relations: Ideal
    degrees: tuple[int, ...]
    label: str = ""

    @classmethod
    def of(
        cls,
        ring: PolyRing,
        relations: Iterable[PolyElement],
        label: str = "",
    ) -> "PresentedRing":
        """Present ``ring`` modulo ``relations`` with all generators in degree 2."""
        return cls(Ideal.of(ring, relations), (2,) * ring.ngens, label)

    @property
    def ring(self) -> PolyRing:
        return self.relations.ring

    @property
    def names(self) -> list[str]:
        return variable_names(self.ring)

    @property
    def field(self) -> str:
        return field_name(self.ring)


@dataclass(frozen=True, eq=False)
class RingMap:
    """A ring map given by the images of the source generators."""

    source: PresentedRing
    target: PresentedRing
    images: tuple[PolyElement, ...]

    def apply(self, p: PolyElement) -> PolyElement:
        """Image of an ambient source polynomial in the ambient target ring."""
        return substitute(convert(p, self.source.ring), self.images, self.target.ring)


def _check_same_ambient(a: PolyRing, b: PolyRing) -> None:
    if variable_names(a) != variable_names(b) or a.domain != b.domain:
        raise RingMismatchError(
            f"Ambient rings differ: {variable_names(a)} over {field_name(a)} vs "
            f"{variable_names(b)} over {field_name(b)}"
        )


# ── Buchberger ─────────────────────────────────────────────────────────────────


def _spoly(
    f: PolyElement, g: PolyElement, lmf: Monomial, lmg: Monomial
) -> PolyElement:
    R = f.ring
    lcm = R.monomial_lcm(lmf, lmg)
    return f.mul_monom(R.monomial_div(lcm, lmf)) - g.mul_monom(
        R.monomial_div(lcm, lmg)
    )


def _select(
    lmG: list[Monomial], P: list[tuple[int, int]], ring: PolyRing
) -> tuple[int, int]:
    """Normal strategy: the pair with the smallest lcm of leading monomials."""
    lcm = ring.monomial_lcm
    return min(P, key=lambda p: (ring.order(lcm(lmG[p[0]], lmG[p[1]])), p))


def _update(
    G: list[PolyElement],
    P: list[tuple[int, int]],
    lmG: list[Monomial],
    f: PolyElement,
) -> None:
    """Add ``f`` to ``G`` and its pairs to ``P`` with the Gebauer–Möller criteria."""
    R = f.ring
    lcm, mul, div = R.monomial_lcm, R.monomial_mul, R.monomial_div
    lmf = f.LM
    m = len(G)

    def can_drop(pair: tuple[int, int]) -> bool:
        i, j = pair
        gam = lcm(lmG[i], lmG[j])
        return (
            div(gam, lmf) is not None
            and gam != lcm(lmG[i], lmf)
            and gam != lcm(lmG[j], lmf)
        )

    P[:] = [p for p in P if not can_drop(p)]

    groups: dict[Monomial, list[int]] = {}
    for i in range(m):
        groups.setdefault(lcm(lmG[i], lmf), []).append(i)
    kept_lcms: list[Monomial] = []
    new_pairs = []
    for gam in sorted(groups, key=R.order):
        if all(div(gam, k) is None for k in kept_lcms):
            kept_lcms.append(gam)
            # coprime leading monomials reduce to zero
            if not any(lcm(lmG[i], lmf) == mul(lmG[i], lmf) for i in groups[gam]):
                new_pairs.append((groups[gam][0], m))
    new_pairs.sort()
    P.extend(new_pairs)
    G.append(f)
    lmG.append(lmf)


def _minimalize(G: list[PolyElement]) -> list[PolyElement]:
    if not G:
        return []
    R = G[0].ring
    kept: list[PolyElement] = []
    for f in sorted(G, key=lambda h: R.order(h.LM)):
        if all(R.monomial_div(f.LM, g.LM) is None for g in kept):
            kept.append(f)
    return kept


def _interreduce(G: list[PolyElement]) -> list[PolyElement]:
    reduced = []
    for i, g in enumerate(G):
        others = G[:i] + G[i + 1 :]
        reduced.append((g.rem(others) if others else g).monic())
    return reduced


def _buchberger(F: Sequence[PolyElement]) -> list[PolyElement]:
    """Reduced Gröbner basis of ⟨F⟩ in the order of F's ring."""
    F = [f for f in F if f]
    if not F:
        return []
    ring = F[0].ring
    G: list[PolyElement] = []
    lmG: list[Monomial] = []
    P: list[tuple[int, int]] = []
    for f in F:
        _update(G, P, lmG, f.monic())
    reductions = 0
    while P:
        i, j = _select(lmG, P, ring)
        P.remove((i, j))
        r = _spoly(G[i], G[j], lmG[i], lmG[j]).rem(G)
        reductions += 1
        if r:
            _update(G, P, lmG, r.monic())
    basis = _interreduce(_minimalize(G))
    basis.sort(key=lambda g: ring.order(g.LM), reverse=True)
    logger.debug(
        "Gröbner basis: %d inputs, %d reductions, %d elements",
        len(F),
        reductions,
        len(basis),
    )
    return basis


def groebner_basis(I: Ideal, order: MonomialOrder = grevlex) -> list[PolyElement]:
    """Reduced Gröbner basis of ``I`` in ``order``, cached on the ideal.

    The basis lives in a copy of ``I.ring`` carrying ``order``. The engine is
    chosen by ``settings.groebner_method``.
    """
    if order not in I._bases:
        ring = with_order(I.ring, order)
        gens = [convert(g, ring) for g in I.generators]
        if settings.groebner_method == "f5b" and gens:
            basis = sympy_groebner(gens, ring, method="f5b")
        else:
            basis = _buchberger(gens)
        I._bases[order] = basis
    return I._bases[order]


def buchberger(I: Ideal, order: MonomialOrder = grevlex) -> Ideal:
    """The reduced Gröbner basis of ``I`` as an ideal of the ``order`` ring."""
    basis = groebner_basis(I, order)
    return Ideal(with_order(I.ring, order), tuple(basis))


def normal_form(f: PolyElement, I: Ideal) -> PolyElement:
    """Remainder of ``f`` modulo the degrevlex reduced basis of ``I``, in ``I.ring``.

    Raises:
        RingMismatchError: If ``f`` uses variables outside ``I.ring``.
    """
    basis = groebner_basis(I)
    f = convert(f, basis[0].ring if basis else I.ring)
    r = f.rem(basis) if basis else f
    return convert(r, I.ring)


def contains(I: Ideal, f: PolyElement) -> bool:
    """Ideal membership."""
    return not normal_form(f, I)


def ideal_equal(I: Ideal, J: Ideal) -> bool:
    """True iff ``I`` and ``J`` are the same ideal (mutual membership).

    Raises:
        RingMismatchError: If the ambient rings differ.
    """
    _check_same_ambient(I.ring, J.ring)
    return all(contains(J, g) for g in I.generators) and all(
        contains(I, g) for g in J.generators
    )


def is_subideal(I: Ideal, J: Ideal) -> bool:
    """True iff I ⊆ J."""
    _check_same_ambient(I.ring, J.ring)
    return all(contains(J, g) for g in I.generators)


def ideal_intersect(I: Ideal, J: Ideal) -> Ideal:
    """I ∩ J, eliminating t from t·I + (1−t)·J."""
    _check_same_ambient(I.ring, J.ring)
    if not I.generators or not J.generators:
        return Ideal.zero(I.ring)
    names = variable_names(I.ring)
    if _ELIMINATION_VARIABLE in names:
        raise RingMismatchError(f"Variable name {_ELIMINATION_VARIABLE!r} is reserved")
    big = make_ring(
        [_ELIMINATION_VARIABLE, *names], field_name(I.ring), EliminationOrder(1)
    )
    t = big.gens[0]
    gens = [t * convert(g, big) for g in I.generators]
    gens += [(1 - t) * convert(g, big) for g in J.generators]
    if settings.groebner_method == "f5b":
        basis = sympy_groebner(gens, big, method="f5b")
    else:
        basis = _buchberger(gens)
    kept = [g for g in basis if all(m[0] == 0 for m in g.itermonoms())]
    return Ideal.of(I.ring, kept)


def colon_ideal(I: Ideal, f: PolyElement) -> Ideal:
    """(I : f) = {g : g·f ∈ I}, as (I ∩ ⟨f⟩)/f.

    Raises:
        ZeroElementError: If ``f`` is zero.
    """
    f = convert(f, I.ring)
    if not f:
        raise ZeroElementError("Colon ideal by the zero polynomial")
    if f.is_ground:
        return I
    meet = ideal_intersect(I, Ideal.of(I.ring, [f]))
    return Ideal.of(I.ring, [poly_divexact(g, f) for g in meet.generators])


def minimal_generators(
    J: Ideal, modulo: Ideal | None = None
) -> list[PolyElement]:
    """A minimal homogeneous generating set of J modulo ``modulo``.

    Candidates are the reduced basis elements of J taken by increasing degree;
    one is kept when it is not in the ideal generated by ``modulo`` and the
    elements kept so far. For homogeneous J this is a minimal generating set.
    """
    base = modulo if modulo is not None else Ideal.zero(J.ring)
    candidates = sorted(
        (convert(g, J.ring) for g in groebner_basis(J)),
        key=lambda g: (total_degree(g), J.ring.order(g.LM)),
    )
    kept: list[PolyElement] = []
    for g in candidates:
        if not contains(base.extend(kept), g):
            kept.append(g)
    return kept


def annihilator_generators(R: PresentedRing, f: PolyElement) -> list[PolyElement]:
    """Minimal generators of ann(f) in R, taken modulo the relations.

    Raises:
        ZeroElementError: If ``f`` is zero in R.
    """
    f = convert(f, R.ring)
    if contains(R.relations, f):
        raise ZeroElementError(f"{format_poly(f)} is zero in the presented ring")
    ann = colon_ideal(R.relations, f)
    return minimal_generators(ann, modulo=R.relations)


def annihilator_in_quotient(R: PresentedRing, f: PolyElement) -> Ideal:
    """Preimage in the ambient ring of ann(f) ⊆ R.

    Generators are the relations followed by minimal generators of the
    annihilator modulo the relations.
    """
    extra = annihilator_generators(R, f)
    return Ideal(R.ring, R.relations.generators + tuple(extra))


# ── Graded structure ───────────────────────────────────────────────────────────


def _leading_monomials(R: PresentedRing) -> list[Monomial]:
    return [g.LM for g in groebner_basis(R.relations)]


def standard_monomials(R: PresentedRing, k: int) -> list[Monomial]:
    """Degree-k monomials outside the leading-term ideal (a basis of R_k)."""
    lms = _leading_monomials(R)
    div = R.ring.monomial_div
    return [
        m
        for m in monomials_of_degree(R.ring.ngens, k)
        if all(div(m, lm) is None for lm in lms)
    ]


def hilbert_function(R: PresentedRing, maxdeg: int) -> list[int]:
    """dim R_k for k = 0..maxdeg, from the degrevlex staircase."""
    return [len(standard_monomials(R, k)) for k in range(maxdeg + 1)]


def is_artinian(R: PresentedRing) -> bool:
    """True when every variable has a pure power among the leading monomials."""
    lms = _leading_monomials(R)
    return all(
        any(lm[i] > 0 and sum(lm) == lm[i] for lm in lms) for i in range(R.ring.ngens)
    )


def top_degree(R: PresentedRing) -> int:
    """Largest k with R_k ≠ 0 (−1 for the zero ring).

    Raises:
        PreconditionError: If R is not finite-dimensional.
    """
    if not is_artinian(R):
        raise PreconditionError(f"Ring {R.label or R.names} is not finite-dimensional")
    k = 0
    while standard_monomials(R, k):
        k += 1
    return k - 1


def total_dimension(R: PresentedRing) -> int:
    """dim_k R for a finite-dimensional ring (graded or not)."""
    top = top_degree(R)
    return sum(hilbert_function(R, top)) if top >= 0 else 0


def coordinates(R: PresentedRing, f: PolyElement, k: int) -> list[Any]:
    """Coordinates of a degree-k element of R in the standard monomial basis of R_k."""
    r = normal_form(f, R.relations)
    return [r.coeff(monomial(R.ring, m)) for m in standard_monomials(R, k)]


def degree_bound(R: PresentedRing) -> int:
    """Top degree when finite-dimensional, else the configured Hilbert bound."""
    return top_degree(R) if is_artinian(R) else settings.hilbert_max_degree


def specialize(R: PresentedRing, name: str, value: int) -> PresentedRing:
    """Substitute ``name := value`` and drop that variable from the ambient ring."""
    names = R.names
    if name not in names:
        raise RingMismatchError(f"Variable {name!r} not in {names}")
    keep = [n for n in names if n != name]
    small = make_ring(keep, R.field)
    constant = small.ground_new(small.domain.convert(value))
    images = [constant if n == name else small.gens[keep.index(n)] for n in names]
    relations = [substitute(g, images, small) for g in R.relations.generators]
    degrees = tuple(d for n, d in zip(names, R.degrees, strict=True) if n != name)
    label = f"{R.label}|{name}={value}" if R.label else ""
    return PresentedRing(Ideal.of(small, relations), degrees, label)


def map_is_isomorphism(m: RingMap) -> bool:
    """Certify a graded ring map as an isomorphism.

    Checks that relations map into relations, that the Hilbert functions agree
    through the top degree (or the configured bound), and that the images
    span every target degree.

    Raises:
        GradingError: If an image is not homogeneous of its generator's degree.
    """
    source, target = m.source, m.target
    if len(m.images) != source.ring.ngens:
        raise GradingError(
            f"{len(m.images)} images for {source.ring.ngens} source generators"
        )
    for name, image, degree in zip(source.names, m.images, source.degrees, strict=True):
        if image and (not is_homogeneous(image) or 2 * total_degree(image) != degree):
            raise GradingError(f"Image of {name} is not homogeneous of degree {degree}")

    for g in source.relations.generators:
        if not contains(target.relations, m.apply(g)):
            logger.debug("Relation %s does not map to a relation", format_poly(g))
            return False

    top = max(degree_bound(source), degree_bound(target))
    if hilbert_function(source, top) != hilbert_function(target, top):
        return False

    for k in range(1, top + 1):
        images = [
            coordinates(target, m.apply(monomial(source.ring, mono)), k)
            for mono in standard_monomials(source, k)
        ]
        width = len(standard_monomials(target, k))
        if rank(images, width, target.ring.domain) != width:
            return False
    return True


def dense_hilbert_function(R: PresentedRing, maxdeg: int) -> list[int]:
    """Hilbert function by dense linear algebra on each graded piece.

    For homogeneous relations only; independent of the Gröbner staircase.
    """
    ring = R.ring
    gens = list(R.relations.generators)
    if any(not is_homogeneous(g) for g in gens):
        raise PreconditionError("Dense Hilbert function needs homogeneous relations")
    out = []
    for k in range(maxdeg + 1):
        basis = monomials_of_degree(ring.ngens, k)
        index = {mono: i for i, mono in enumerate(basis)}
        rows = []
        for g in gens:
            dg = total_degree(g)
            if dg > k:
                continue
            for mono in monomials_of_degree(ring.ngens, k - dg):
                prod = g * monomial(ring, mono)
                row = [ring.domain.zero] * len(basis)
                for mm, c in prod.iterterms():
                    row[index[mm]] = c
                rows.append(row)
        out.append(len(basis) - rank(rows, len(basis), ring.domain))
    return out


def ring_map(
    source: PresentedRing,
    target: PresentedRing,
    images: Sequence[PolyElement | str],
) -> RingMap:
    """Build a ring map from polynomial or string images of the source generators.

    Raises:
        GradingError: If the number of images differs from the number of generators.
    """
    if len(images) != source.ring.ngens:
        raise GradingError(
            f"{len(images)} images for {source.ring.ngens} source generators"
        )
    parsed = tuple(
        parse_poly(g, target.ring) if isinstance(g, str) else convert(g, target.ring)
        for g in images
    )
    return RingMap(source, target, parsed)


def eliminate(I: Ideal, names: Sequence[str]) -> Ideal:
    """I ∩ k[remaining variables], as an ideal of the smaller ring.

    Raises:
        RingMismatchError: If a name is not a variable of ``I.ring``.
    """
    ring_names = variable_names(I.ring)
    missing = [n for n in names if n not in ring_names]
    if missing:
        raise RingMismatchError(f"Variables {missing} not in {ring_names}")
    keep = [n for n in ring_names if n not in names]
    big = make_ring([*names, *keep], field_name(I.ring), EliminationOrder(len(names)))
    basis = groebner_basis(Ideal.of(big, I.generators), EliminationOrder(len(names)))
    split = len(names)
    kept = [g for g in basis if all(not any(m[:split]) for m in g.itermonoms())]
    logger.debug(
        "Eliminated %s: %d of %d basis elements kept", names, len(kept), len(basis)
    )
    return Ideal.of(make_ring(keep, field_name(I.ring)), kept)
