"""Cohomology presentations of hypertoric varieties and their toric quotients.

The ambient ring is ℚ[t1..tn] (t_i standing for ∂_i), with an extra variable x
for the S¹-equivariant flavors:

- ``HTdS1``: T^d × S¹-equivariant, relations ∏_{S1} t_i ∏_{S2} (x − t_j) over
  the minimal empty pairs.
- ``HTd``: T^d-equivariant, relations ∏_{S} t_i over the minimal empty flats.
- ``HS1`` and ``H``: the same plus the linear forms ℓ_j = Σ_i (a_i)_j t_i.
"""

import logging
from itertools import combinations

from sympy.polys.rings import PolyElement, PolyRing

from hkq.algebra import linear_form, make_ring
from hkq.arrangement import (
    Arrangement,
    SignSubset,
    coor_empty_pairs,
    format_subset,
    sr_empty_sets,
)
from hkq.exceptions import InvalidInputError, NotFullDimensionalError, UnboundedError
from hkq.groebner import PresentedRing, RingMap
from hkq.polyhedra import bounded, feasible, full_dimensional

logger = logging.getLogger(__name__)

FLAVORS = ("H", "HTd", "HS1", "HTdS1")


def operator_names(n: int, with_x: bool = False) -> list[str]:
    """t1..tn, then x when requested."""
    return [f"t{i + 1}" for i in range(n)] + (["x"] if with_x else [])


def operator_ring(n: int, field: str = "QQ", with_x: bool = False) -> PolyRing:
    """The ring ℚ[t1..tn(, x)] (or 𝔽₂[...]) the presentations live in."""
    return make_ring(operator_names(n, with_x), field)


def linear_relations(arr: Arrangement, ring: PolyRing) -> list[PolyElement]:
    """ℓ_j = Σ_i (a_i)_j t_i for j = 1..d; these generate ker ι*."""
    return [linear_form(ring, row) for row in arr.matrix_rows]


def flat_relation(ring: PolyRing, S: SignSubset) -> PolyElement:
    """∏_{i∈S} t_i."""
    p = ring.one
    for i in sorted(S):
        p *= ring.gens[i]
    return p


def pair_relation(ring: PolyRing, S1: SignSubset, S2: SignSubset) -> PolyElement:
    """∏_{i∈S1} t_i · ∏_{j∈S2} (x − t_j); x is the last generator of ``ring``."""
    x = ring.gens[-1]
    p = flat_relation(ring, S1)
    for j in sorted(S2):
        p *= x - ring.gens[j]
    return p


def kirwan_presentation(
    arr: Arrangement, flavor: str, field: str = "QQ"
) -> PresentedRing:
    """The presented cohomology ring of the hypertoric variety of ``arr``.

    Args:
        arr: A simple arrangement.
        flavor: One of "H", "HTd", "HS1", "HTdS1".
        field: "QQ" or "GF2".

    Returns:
        A PresentedRing in t1..tn, plus x for the S¹ flavors.

    Raises:
        InvalidInputError: If the flavor is unknown.
        NonSimpleError: If the arrangement is not simple.
    """
    if flavor not in FLAVORS:
        raise InvalidInputError(f"Unknown flavor {flavor!r}; expected one of {FLAVORS}")
    with_x = flavor.endswith("S1")
    ring = operator_ring(arr.n, field, with_x)
    if with_x:
        relations = [pair_relation(ring, S1, S2) for S1, S2 in coor_empty_pairs(arr)]
    else:
        relations = [flat_relation(ring, S) for S in sr_empty_sets(arr)]
    if flavor in ("H", "HS1"):
        relations += linear_relations(arr, ring)
    label = f"{flavor}({arr.name})" if arr.name else flavor
    logger.debug("Presentation %s: %d relations", label, len(relations))
    return PresentedRing.of(ring, relations, label)


def toric_presentation(arr: Arrangement) -> PresentedRing:
    """Cohomology of the toric variety whose moment polytope is Δ.

    Relations are t_i for hyperplanes missing Δ, ∏_S t_i for the minimal S whose
    flat misses Δ (among hyperplanes that meet it), and the linear forms ℓ_j.

    Raises:
        UnboundedError: If Δ is unbounded.
        NotFullDimensionalError: If Δ has empty interior.
    """
    delta = arr.delta()
    if not full_dimensional(delta):
        raise NotFullDimensionalError(
            f"Δ of {arr.name or 'the arrangement'} has empty interior"
        )
    if not bounded(delta):
        raise UnboundedError(f"Δ of {arr.name or 'the arrangement'} is unbounded")
    ring = operator_ring(arr.n)

    def misses(S: tuple[int, ...]) -> bool:
        return not feasible(delta.with_constraints(arr.hyperplane(i) for i in S))

    facets = [i for i in range(arr.n) if not misses((i,))]
    relations = [ring.gens[i] for i in range(arr.n) if i not in facets]
    minimal: list[frozenset[int]] = []
    for size in range(2, arr.d + 2):
        for S in combinations(facets, size):
            if any(m <= set(S) for m in minimal):
                continue
            if misses(S):
                minimal.append(frozenset(S))
    relations += [flat_relation(ring, S) for S in minimal]
    relations += linear_relations(arr, ring)
    logger.debug(
        "Toric presentation: %d facets, non-faces %s",
        len(facets),
        [format_subset(S) for S in minimal],
    )
    label = f"toric({arr.name})" if arr.name else "toric"
    return PresentedRing.of(ring, relations, label)


def coorientation_map(
    source: PresentedRing, target: PresentedRing, m: int
) -> RingMap:
    """The map induced by flipping hyperplane m.

    t_m ↦ x − t_m when the rings carry x, t_m ↦ −t_m otherwise; all other
    generators are fixed.
    """
    if source.names != target.names:
        raise InvalidInputError("Coorientation maps need rings on the same generators")
    ring = target.ring
    images = list(ring.gens)
    if "x" in target.names:
        images[m] = ring.gens[-1] - ring.gens[m]
    else:
        images[m] = -ring.gens[m]
    return RingMap(source, target, tuple(images))
