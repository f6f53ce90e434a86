"""ℤ₂-equivariant Orlik–Solomon algebras of smooth real arrangements.

The ring is 𝔽₂[t1..tn, x] modulo ∏_{S1} t_i ∏_{S2} (x − t_j) over the minimal
empty pairs and t_i(x − t_i) for every i. Setting x = 0 gives the
Orlik–Solomon algebra mod 2, x = 1 the Varchenko–Gelfand ring.
"""

import logging
from collections import Counter
from itertools import product

from sympy.polys.rings import PolyElement

from hkq.algebra import monomial, total_degree
from hkq.arrangement import Arrangement, flip, is_smooth
from hkq.config import settings
from hkq.exceptions import InvalidInputError, NonSmoothError, PreconditionError
from hkq.groebner import (
    PresentedRing,
    RingMap,
    annihilator_generators,
    contains,
    hilbert_function,
    specialize,
    standard_monomials,
)
from hkq.hypertoric import coorientation_map, kirwan_presentation

logger = logging.getLogger(__name__)

Profile = tuple[int, ...]
Fingerprint = tuple[tuple[Profile, int], ...]


def os2_presentation(arr: Arrangement) -> PresentedRing:
    """H*_{ℤ₂}(complement of the complexified arrangement; 𝔽₂).

    Raises:
        NonSmoothError: If some d normals have determinant other than 0, ±1.
        NonSimpleError: If the arrangement is not simple.
    """
    if not is_smooth(arr):
        raise NonSmoothError(f"Arrangement {arr.name or '?'} is not smooth")
    base = kirwan_presentation(arr, "HTdS1", field="GF2")
    ring = base.ring
    x = ring.gens[-1]
    squares = [ring.gens[i] * (x - ring.gens[i]) for i in range(arr.n)]
    label = f"OS2({arr.name})" if arr.name else "OS2"
    return PresentedRing.of(ring, [*base.relations.generators, *squares], label)


def os_specialize(R: PresentedRing, value: int) -> PresentedRing:
    """Set x := value (0 or 1) and drop x."""
    if value not in (0, 1):
        raise InvalidInputError(f"x can only be specialized to 0 or 1, got {value}")
    return specialize(R, "x", value)


def is_free_over_x(R: PresentedRing, maxdeg: int | None = None) -> bool:
    """Hilbert-function test of freeness over 𝔽₂[x]: HF(R)_k = Σ_{j≤k} HF(R/x)_j."""
    top = settings.hilbert_max_degree if maxdeg is None else maxdeg
    full = hilbert_function(R, top)
    quotient = hilbert_function(os_specialize(R, 0), top)
    running = 0
    for k in range(top + 1):
        running += quotient[k]
        if full[k] != running:
            return False
    return True


def _candidates(R: PresentedRing, degree: int) -> list[PolyElement]:
    basis = [monomial(R.ring, m) for m in standard_monomials(R, degree)]
    if not basis:
        raise PreconditionError(
            f"The ring {R.label or R.names} is zero in degree {degree}"
        )
    cap = settings.fingerprint_max_candidates
    out: list[PolyElement] = []
    for bits in product((0, 1), repeat=len(basis)):
        if not any(bits):
            continue
        chosen = (b for b, bit in zip(basis, bits, strict=True) if bit)
        out.append(sum(chosen, R.ring.zero))
        if len(out) >= cap:
            logger.warning("Fingerprint search capped at %d candidates", cap)
            break
    return out


def annihilator_profile(R: PresentedRing, f: PolyElement) -> Profile:
    """Sorted degrees of the minimal generators of ann(f), modulo the relations."""
    return tuple(sorted(total_degree(g) for g in annihilator_generators(R, f)))


def annihilator_fingerprint(R: PresentedRing, degree: int) -> Fingerprint:
    """Multiset of annihilator profiles over 0/1 combinations of R_degree's basis.

    ``degree`` is the polynomial degree; zero elements of R are skipped.

    Raises:
        PreconditionError: If R is zero in that degree.
    """
    counts: Counter[Profile] = Counter()
    for f in _candidates(R, degree):
        if contains(R.relations, f):
            continue
        counts[annihilator_profile(R, f)] += 1
    return tuple(sorted(counts.items()))


def has_profile(fingerprint: Fingerprint, profile: Profile) -> bool:
    return any(p == tuple(profile) for p, _ in fingerprint)


def is_distinguished(R1: PresentedRing, R2: PresentedRing, degree: int) -> str:
    """Compare fingerprints; never claims isomorphism."""
    if annihilator_fingerprint(R1, degree) != annihilator_fingerprint(R2, degree):
        return "distinguished"
    return f"not distinguished at depth {degree}"


def flip_map(arr: Arrangement, m: int) -> RingMap:
    """t_m ↦ x − t_m from the ring of ``arr`` to the ring of ``flip(arr, m)``."""
    return coorientation_map(os2_presentation(arr), os2_presentation(flip(arr, m)), m)
