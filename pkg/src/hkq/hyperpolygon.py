"""Hyperpolygon spaces: short sets, fixed loci, and their cohomology rings.

A hyperpolygon space is fixed by positive edge lengths α₁..α_n. A subset S is
short when Σ_S α < Σ_{S^c} α; α is generic when no subset ties. Indices are
0-based internally and printed 1-based.

Rings built here:

- the abelian quotient ℚ[a, b, δ, x] with its A_S, B_S relations,
- the equivariant ring ℚ[c, δ, x]/⟨c_i² − δ², D_S⟩ and its x = 0 shadow
  ℚ[c]/⟨c_i² − c_j², degree n−2 monomials⟩,
- the core-component rings in d_k = ½(c₁ + c_k), with and without x,
- the polygon-space rings of the fixed components 𝔛_S.
"""

import logging
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass, field
from functools import cached_property, reduce
from itertools import combinations
from pathlib import Path
from typing import Any

import numpy as np
from pydantic import BaseModel, ValidationError, field_validator
from sympy.polys.domains import QQ
from sympy.polys.rings import PolyElement, PolyRing

from hkq.algebra import (
    format_poly,
    format_rational,
    make_ring,
    monomial,
    monomials_of_degree,
    parse_poly,
    parse_rational,
    poly_divexact,
)
from hkq.arrangement import Arrangement, fixture_data, format_subset, read_json
from hkq.exceptions import (
    InvalidInputError,
    NonGenericError,
    ParseError,
    PreconditionError,
)
from hkq.groebner import (
    Ideal,
    PresentedRing,
    colon_ideal,
    contains,
    coordinates,
    eliminate,
    hilbert_function,
    ideal_equal,
    ideal_intersect,
    is_subideal,
    ring_map,
    specialize,
    standard_monomials,
    top_degree,
    total_dimension,
)
from hkq.hypertoric import kirwan_presentation
from hkq.linalg import determinant, rank

logger = logging.getLogger(__name__)

Subset = frozenset[int]


def _prod(factors: Iterable[PolyElement], one: PolyElement) -> PolyElement:
    return reduce(lambda p, q: p * q, factors, one)


def subsets(items: Iterable[int]) -> Iterator[Subset]:
    """All subsets of ``items``, by size and then lexicographically."""
    pool = sorted(items)
    for k in range(len(pool) + 1):
        for combo in combinations(pool, k):
            yield frozenset(combo)


# ── Edge lengths and short sets ────────────────────────────────────────────────


@dataclass(frozen=True)
class PolygonSpec:
    """Edge lengths α of a hyperpolygon space."""

    alphas: tuple[Any, ...]
    name: str = ""

    @classmethod
    def of(cls, alphas: Iterable[Any], name: str = "") -> "PolygonSpec":
        """Parse edge lengths, checking positivity and n ≥ 3.

        Raises:
            ParseError: If a length is not a rational literal.
            InvalidInputError: If a length is not positive or n < 3.
        """
        values = tuple(parse_rational(a) for a in alphas)
        if len(values) < 3:
            raise InvalidInputError(
                f"A polygon needs at least 3 edges, got {len(values)}"
            )
        for i, a in enumerate(values):
            if a <= 0:
                raise InvalidInputError(
                    f"Edge {i + 1} has non-positive length {format_rational(a)}"
                )
        return cls(values, name)

    @property
    def n(self) -> int:
        return len(self.alphas)

    @cached_property
    def total(self) -> Any:
        return sum(self.alphas, QQ.zero)

    def length(self, S: Iterable[int]) -> Any:
        return sum((self.alphas[i] for i in S), QQ.zero)

    def is_short(self, S: Iterable[int]) -> bool:
        return 2 * self.length(S) < self.total

    def complement(self, S: Iterable[int]) -> Subset:
        return frozenset(range(self.n)) - frozenset(S)

    def label(self) -> str:
        if self.name:
            return self.name
        return "(" + ",".join(format_rational(a) for a in self.alphas) + ")"


@dataclass(frozen=True)
class ShortSetFamily:
    """The short subsets of a generic polygon and the index helpers around them."""

    spec: PolygonSpec
    short: tuple[Subset, ...]

    @property
    def nonempty(self) -> tuple[Subset, ...]:
        return tuple(S for S in self.short if S)

    @property
    def sprime(self) -> tuple[Subset, ...]:
        """Short sets with at least two elements."""
        return tuple(S for S in self.short if len(S) >= 2)

    def is_short(self, S: Iterable[int]) -> bool:
        return frozenset(S) in set(self.short)

    def m(self, S: Subset) -> int:
        """Smallest element of S."""
        return min(S)

    def n_of(self, S: Subset) -> int:
        """Smallest element of S^c."""
        return min(self.spec.complement(S))

    def bar(self, S: Subset) -> Subset:
        """S without its smallest element."""
        return S - {min(S)}

    def cobar(self, S: Subset) -> Subset:
        """S^c without its smallest element."""
        comp = self.spec.complement(S)
        return comp - {min(comp)}


def validate_alpha(
    alphas: Iterable[Any], name: str = ""
) -> tuple[PolygonSpec, ShortSetFamily]:
    """Check positivity and genericity exactly, and enumerate the short sets.

    Raises:
        InvalidInputError: If a length is not positive or n < 3.
        NonGenericError: If some S has Σ_S α = Σ_{S^c} α; the first such S (by
            size, then lexicographically) is named.
    """
    spec = alphas if isinstance(alphas, PolygonSpec) else PolygonSpec.of(alphas, name)
    short = []
    for S in subsets(range(spec.n)):
        twice = 2 * spec.length(S)
        if twice == spec.total:
            raise NonGenericError(
                f"Edge lengths {spec.label()} are not generic: "
                f"S={format_subset(S)} ties with its complement"
            )
        if twice < spec.total:
            short.append(S)
    family = ShortSetFamily(spec, tuple(short))
    logger.debug(
        "Polygon %s: %d short sets, %d with |S| >= 2",
        spec.label(),
        len(family.short),
        len(family.sprime),
    )
    return spec, family


def random_generic_alpha(
    n: int, rng: np.random.Generator, high: int = 20
) -> PolygonSpec:
    """Draw integer edge lengths in [1, high] until they are generic."""
    while True:
        values = [int(v) for v in rng.integers(1, high + 1, size=n)]
        try:
            spec, _ = validate_alpha(values)
        except NonGenericError:
            continue
        return spec


def relabel(
    spec: PolygonSpec, S: Iterable[int]
) -> tuple[PolygonSpec, Subset, tuple[int, ...]]:
    """Rotate indices i ↦ (i − min S) mod n so that S contains index 0.

    Returns:
        The rotated spec, the rotated S and the permutation (old index → new).
    """
    S = frozenset(S)
    if not S:
        raise InvalidInputError("Cannot rotate the empty set to contain index 1")
    shift = min(S)
    perm = tuple((i - shift) % spec.n for i in range(spec.n))
    alphas = [QQ.zero] * spec.n
    for old, new in enumerate(perm):
        alphas[new] = spec.alphas[old]
    return PolygonSpec(tuple(alphas), spec.name), frozenset(perm[i] for i in S), perm


# ── Wire format ────────────────────────────────────────────────────────────────


class PolygonModel(BaseModel):
    """JSON shape of a polygon: {"alphas": ["1", "1", "3", "3", "3"]}."""

    alphas: list[str]
    name: str = ""

    @field_validator("alphas")
    @classmethod
    def at_least_three(cls, v: list[str]) -> list[str]:
        if len(v) < 3:
            raise ValueError("at least 3 edge lengths are required")
        return v


def parse_polygon(data: dict[str, Any], name: str = "") -> PolygonSpec:
    """Validate a JSON document into a generic PolygonSpec.

    Raises:
        ParseError: If the document does not match the polygon schema.
        InvalidInputError: If a length is not positive.
        NonGenericError: If the lengths are not generic.
    """
    try:
        model = PolygonModel.model_validate(data)
    except ValidationError as e:
        raise ParseError(f"Invalid polygon document: {e}") from e
    spec, _ = validate_alpha(model.alphas, model.name or name)
    return spec


def polygon_to_json(spec: PolygonSpec) -> dict[str, Any]:
    out: dict[str, Any] = {"alphas": [format_rational(a) for a in spec.alphas]}
    if spec.name:
        out["name"] = spec.name
    return out


def load_polygon(path: Path | str) -> PolygonSpec:
    return parse_polygon(read_json(path), Path(path).stem)


def polygon_fixture(name: str) -> PolygonSpec:
    """A bundled polygon, e.g. ``polygon_fixture("polygon_11333")``."""
    return parse_polygon(fixture_data(name), name)


# ── Fixed loci ─────────────────────────────────────────────────────────────────


@dataclass(frozen=True)
class FixedComponent:
    """A component of a fixed locus with its Poincaré coefficients (of t^{2k})."""

    label: str
    dimension: int
    poincare: tuple[int, ...]

    @property
    def betti_total(self) -> int:
        return sum(self.poincare)


@dataclass
class FixedReport:
    """Fixed components of 𝔐 or of a core component U_S.

    ``expected_total`` is the total Betti number of the space itself; a perfect
    Morse–Bott function makes it the sum over the fixed components.
    """

    spec: PolygonSpec
    components: list[FixedComponent]
    expected_total: int
    S: Subset | None = None

    @property
    def betti_total(self) -> int:
        return sum(c.betti_total for c in self.components)

    @property
    def consistent(self) -> bool:
        return self.betti_total == self.expected_total

    @property
    def euler_from_sprime(self) -> int:
        """Σ (|S| − 1) over the projective-space components."""
        return sum(c.betti_total for c in self.components if c.label.startswith("M_"))


def _cp(label: str, k: int) -> FixedComponent:
    return FixedComponent(label, k, (1,) * (k + 1))


def polygon_space_nonempty(spec: PolygonSpec, S: Iterable[int] = ()) -> bool:
    """Whether 𝔛_S (edges α_j, j ∉ S, and Σ_S α) is nonempty."""
    S = frozenset(S)
    if S and not spec.is_short(S):
        return False
    return all(spec.is_short({j}) for j in spec.complement(S))


def _poincare(R: PresentedRing) -> tuple[int, ...]:
    top = top_degree(R)
    return tuple(hilbert_function(R, top)) if top >= 0 else ()


def fixed_report(spec: PolygonSpec) -> FixedReport:
    """𝔛 plus one ℂP^{|S|−2} per S ∈ 𝒮′, checked against the total Betti number."""
    spec, family = validate_alpha(spec)
    components = []
    if polygon_space_nonempty(spec):
        first = next(i for i in range(spec.n) if spec.is_short({i}))
        poincare = _poincare(polygon_space_presentation(spec, {first}))
        components.append(FixedComponent("X", spec.n - 3, poincare))
    for S in family.sprime:
        components.append(_cp(f"M_{format_subset(S)}", len(S) - 2))
    report = FixedReport(spec, components, total_dimension(konno_presentation(spec)))
    if not report.consistent:
        logger.warning(
            "Fixed components of %s carry %d Betti numbers, the ring has %d",
            spec.label(),
            report.betti_total,
            report.expected_total,
        )
    return report


def core_fixed_report(spec: PolygonSpec, S: Iterable[int]) -> FixedReport:
    """Fixed set of U_S: 𝔛_S plus one ℂP^{|S|−2} for every T ∈ 𝒮′ with T ⊇ S."""
    spec, family = validate_alpha(spec)
    S = frozenset(S)
    core = core_presentation(spec, S, equivariant=False)
    components = []
    if polygon_space_nonempty(spec, S):
        poincare = _poincare(polygon_space_presentation(spec, S))
        dimension = spec.n - len(S) - 2
        components.append(FixedComponent(f"X_{format_subset(S)}", dimension, poincare))
    for T in family.sprime:
        if S <= T:
            components.append(_cp(f"M_{format_subset(T)}", len(S) - 2))
    return FixedReport(spec, components, total_dimension(core.presentation), S)


# ── Abelian quotient and the equivariant ring ──────────────────────────────────


def abelian_names(n: int) -> list[str]:
    a = [f"a{i + 1}" for i in range(n)]
    b = [f"b{i + 1}" for i in range(n)]
    return [*a, *b, "del", "x"]


def hp_names(n: int) -> list[str]:
    return [f"c{i + 1}" for i in range(n)] + ["del", "x"]


def _half_products(
    spec: PolygonSpec,
    S: Subset,
    a: Sequence[PolyElement],
    b: Sequence[PolyElement],
    x: PolyElement,
) -> tuple[PolyElement, PolyElement]:
    """A_S = ∏_S (x − a_i) ∏_{S^c} b_j and B_S = ∏_S (x − b_i) ∏_{S^c} a_j."""
    one = x.ring.one
    comp = sorted(spec.complement(S))
    A = _prod((x - a[i] for i in sorted(S)), one) * _prod((b[j] for j in comp), one)
    B = _prod((x - b[i] for i in sorted(S)), one) * _prod((a[j] for j in comp), one)
    return A, B


def abelian_presentation(spec: PolygonSpec) -> PresentedRing:
    """ℚ[a, b, δ, x]/(⟨a_i − b_i − δ, a_i b_i⟩ + ⟨A_S, B_S : S short⟩)."""
    spec, family = validate_alpha(spec)
    n = spec.n
    ring = make_ring(abelian_names(n))
    a, b = ring.gens[:n], ring.gens[n : 2 * n]
    delta, x = ring.gens[2 * n], ring.gens[2 * n + 1]
    relations = [a[i] - b[i] - delta for i in range(n)]
    relations += [a[i] * b[i] for i in range(n)]
    for S in family.short:
        relations.extend(_half_products(spec, S, a, b, x))
    return PresentedRing.of(ring, relations, f"N({spec.label()})")


def polygon_arrangement(spec: PolygonSpec) -> Arrangement:
    """The 2n hyperplanes v_i = ±α_i restricted to Σ v_i = 0, in ℝ^{n−1}.

    Coordinates are u = (v_1..v_{n−1}) with v_n = −Σ u. Hyperplane 2i−1 is
    v_i + α_i ≥ 0 and hyperplane 2i is −v_i + α_i ≥ 0, so t_{2i−1} matches a_i
    and t_{2i} matches b_i.
    """
    n, d = spec.n, spec.n - 1
    normals: list[tuple[int, ...]] = []
    offsets: list[Any] = []
    for i in range(n):
        v = tuple(1 if j == i else 0 for j in range(d)) if i < d else (-1,) * d
        normals += [v, tuple(-c for c in v)]
        offsets += [spec.alphas[i], spec.alphas[i]]
    return Arrangement.of(normals, offsets, f"polygon{spec.label()}")


def abelian_matches_hypertoric(spec: PolygonSpec) -> bool:
    """The abelian ring equals the S¹-equivariant ring of ``polygon_arrangement``.

    t_{2i−1} ↦ a_i, t_{2i} ↦ b_i, x ↦ x, and δ is tied to a_n − b_n.
    """
    abelian = abelian_presentation(spec)
    hs1 = kirwan_presentation(polygon_arrangement(spec), "HS1")
    n = spec.n
    gens = abelian.ring.gens
    images = []
    for i in range(n):
        images += [gens[i], gens[n + i]]
    images.append(gens[2 * n + 1])
    phi = ring_map(hs1, abelian, images)
    mapped = [phi.apply(g) for g in hs1.relations.generators]
    mapped.append(gens[2 * n] - (gens[n - 1] - gens[2 * n - 1]))
    return ideal_equal(Ideal.of(abelian.ring, mapped), abelian.relations)


def w_action_preserves(spec: PolygonSpec) -> bool:
    """a_i ↔ b_i, δ ↦ −δ maps the abelian ideal onto itself."""
    abelian = abelian_presentation(spec)
    n = spec.n
    gens = abelian.ring.gens
    images = [*gens[n : 2 * n], *gens[:n], -gens[2 * n], gens[2 * n + 1]]
    swap = ring_map(abelian, abelian, images)
    mapped = Ideal.of(
        abelian.ring, [swap.apply(g) for g in abelian.relations.generators]
    )
    return ideal_equal(mapped, abelian.relations)


def _hp_ring(n: int) -> PolyRing:
    return make_ring(hp_names(n))


def _square_relations(ring: PolyRing, n: int) -> list[PolyElement]:
    delta = ring.gens[n]
    return [ring.gens[i] ** 2 - delta**2 for i in range(n)]


def d_relation(family: ShortSetFamily, S: Subset, ring: PolyRing) -> PolyElement:
    """D_S = ∏_{i∈S, i≠m_S} (c_i − x) · ∏_{j∈S^c, j≠n_S} (c_{n_S} + c_j)."""
    c, x = ring.gens, ring.gens[family.spec.n + 1]
    ns = family.n_of(S)
    left = _prod((c[i] - x for i in sorted(family.bar(S))), ring.one)
    right = _prod((c[ns] + c[j] for j in sorted(family.cobar(S))), ring.one)
    return left * right


def euler_class(ring: PolyRing, n: int) -> PolyElement:
    """e = δ²(x² − δ²)."""
    delta, x = ring.gens[n], ring.gens[n + 1]
    return delta**2 * (x**2 - delta**2)


def kirwan_ideal(spec: PolygonSpec) -> Ideal:
    """⟨c_i² − δ²⟩ + ⟨C_S = A_S + B_S : S short⟩ with a = (c + δ)/2, b = (c − δ)/2."""
    spec, family = validate_alpha(spec)
    n = spec.n
    ring = _hp_ring(n)
    half = QQ(1, 2)
    c, delta, x = ring.gens[:n], ring.gens[n], ring.gens[n + 1]
    a = [(ci + delta) * half for ci in c]
    b = [(ci - delta) * half for ci in c]
    gens = _square_relations(ring, n)
    for S in family.short:
        A, B = _half_products(spec, S, a, b, x)
        gens.append(A + B)
    return Ideal.of(ring, gens)


def hp_presentation(spec: PolygonSpec) -> PresentedRing:
    """ℚ[c₁..c_n, δ, x]/(⟨c_i² − δ²⟩ + ⟨D_S : ∅ ≠ S short⟩).

    The relations only involve δ², so the ring is a free rank-two extension of
    the S¹-equivariant cohomology of the hyperpolygon space.
    """
    spec, family = validate_alpha(spec)
    ring = _hp_ring(spec.n)
    relations = _square_relations(ring, spec.n)
    relations += [d_relation(family, S, ring) for S in family.nonempty]
    return PresentedRing.of(ring, relations, f"HS1({spec.label()})")


def konno_presentation(spec: PolygonSpec) -> PresentedRing:
    """ℚ[c₁..c_n]/(⟨c_i² − c_j²⟩ + ⟨all monomials of degree n − 2⟩)."""
    spec, _ = validate_alpha(spec)
    n = spec.n
    ring = make_ring([f"c{i + 1}" for i in range(n)])
    c = ring.gens
    relations = [c[i] ** 2 - c[0] ** 2 for i in range(1, n)]
    relations += [monomial(ring, m) for m in monomials_of_degree(n, n - 2)]
    return PresentedRing.of(ring, relations, f"H({spec.label()})")


def hp_matches_konno(spec: PolygonSpec) -> bool:
    """Setting x = 0 in the equivariant ring and eliminating δ gives Konno's ideal."""
    at_zero = specialize(hp_presentation(spec), "x", 0)
    reduced = eliminate(at_zero.relations, ["del"])
    konno = konno_presentation(spec)
    return ideal_equal(Ideal.of(konno.ring, reduced.generators), konno.relations)


def hp_membership(spec: PolygonSpec) -> bool:
    """e·D_S ∈ 𝒥 + ⟨c_i² − δ²⟩ for every nonempty short S."""
    spec, family = validate_alpha(spec)
    J = kirwan_ideal(spec)
    e = euler_class(J.ring, spec.n)
    failing = [
        S for S in family.nonempty if not contains(J, e * d_relation(family, S, J.ring))
    ]
    for S in failing:
        logger.warning("e·D_S is not in the Kirwan ideal for S=%s", format_subset(S))
    return not failing


def verify_hp_colon(spec: PolygonSpec) -> bool:
    """(𝒥 + ⟨c_i² − δ²⟩ : e) equals the relations of ``hp_presentation``."""
    J = kirwan_ideal(spec)
    colon = colon_ideal(J, euler_class(J.ring, spec.n))
    hp = hp_presentation(spec)
    equal = ideal_equal(colon, hp.relations)
    logger.debug(
        "Colon ideal of %s: %d generators, equal=%s", spec.label(), len(colon), equal
    )
    return equal


def hp_low_degree_check(spec: PolygonSpec) -> bool:
    """Multiplication by e is injective from Q_k into Q/𝒥 for every k < n − 2."""
    spec, _ = validate_alpha(spec)
    n = spec.n
    J = kirwan_ideal(spec)
    ring = J.ring
    base = PresentedRing.of(ring, _square_relations(ring, n))
    target = PresentedRing.of(ring, J.generators)
    e = euler_class(ring, n)
    for k in range(n - 2):
        basis = standard_monomials(base, k)
        width = len(standard_monomials(target, k + 4))
        rows = [coordinates(target, e * monomial(ring, m), k + 4) for m in basis]
        if rank(rows, width) != len(basis):
            logger.warning(
                "e kills a nonzero class of degree %d for %s", k, spec.label()
            )
            return False
    return True


# ── Core components ────────────────────────────────────────────────────────────


def d_names(n: int, with_x: bool) -> list[str]:
    return [f"d{i + 1}" for i in range(n)] + (["x"] if with_x else [])


@dataclass
class CoreComponentRing:
    """The ring of U_S after rotating S to contain index 0."""

    S: Subset
    rotated: Subset
    permutation: tuple[int, ...]
    equivariant: bool
    presentation: PresentedRing
    families: dict[str, list[PolyElement]] = field(default_factory=dict)


@dataclass
class _Families:
    same: list[PolyElement]
    idempotent: list[PolyElement]
    products: list[PolyElement]
    quotients: list[PolyElement]
    longs: list[Subset]


def _core_families(spec: PolygonSpec, S: Subset, ring: PolyRing) -> _Families:
    """Relation families for a rotated S ∋ 0.

    ``quotients`` holds d₁⁻¹(∏_L (d_j − d₁) − ∏_L d_j) for each long L ⊆ S^c.
    """
    d = ring.gens[: spec.n]
    d0 = d[0]
    comp = spec.complement(S)
    same = [d0 - d[i] for i in sorted(S) if i != 0]
    idempotent = [d[j] * (d0 - d[j]) for j in sorted(comp)]
    minimal: list[Subset] = []
    for R in subsets(comp):
        if not R or any(m <= R for m in minimal):
            continue
        if not spec.is_short(S | R):
            minimal.append(R)
    products = [_prod((d[j] for j in sorted(R)), ring.one) for R in minimal]
    longs = [L for L in subsets(comp) if L and not spec.is_short(L)]
    quotients = []
    for L in longs:
        shifted = _prod((d[j] - d0 for j in sorted(L)), ring.one)
        plain = _prod((d[j] for j in sorted(L)), ring.one)
        quotients.append(poly_divexact(shifted - plain, d0))
    return _Families(same, idempotent, products, quotients, longs)


def _rotated_short(
    spec: PolygonSpec, S: Iterable[int], minimum: int
) -> tuple[PolygonSpec, Subset, tuple[int, ...]]:
    S = frozenset(S)
    if len(S) < minimum:
        raise InvalidInputError(
            f"S={format_subset(S)} needs at least {minimum} elements"
        )
    if not spec.is_short(S):
        raise InvalidInputError(f"S={format_subset(S)} is long for {spec.label()}")
    return relabel(spec, S)


def core_presentation(
    spec: PolygonSpec, S: Iterable[int], equivariant: bool = True
) -> CoreComponentRing:
    """Cohomology ring of the core component U_S.

    After rotating S to contain index 0, the relations are d₁ − d_i (i ∈ S),
    d_j(d₁ − d_j) (j ∉ S), ∏_R d_j for minimal R ⊆ S^c with R ∪ S long, and one
    relation per long L ⊆ S^c: (d₁ + x)^{|S|−1}·d₁⁻¹(∏_L (d_j − d₁) − ∏_L d_j)
    equivariantly, d₁^{|S|−2} ∏_L (d_j − d₁) otherwise.

    Raises:
        NonGenericError: If α is not generic.
        InvalidInputError: If S is long or has fewer than two elements.
    """
    spec, _ = validate_alpha(spec)
    original = frozenset(S)
    rotated_spec, rotated, perm = _rotated_short(spec, original, 2)
    n = spec.n
    ring = make_ring(d_names(n, equivariant))
    fam = _core_families(rotated_spec, rotated, ring)
    d0 = ring.gens[0]
    if equivariant:
        lead = (d0 + ring.gens[n]) ** (len(rotated) - 1)
        fourth = [lead * q for q in fam.quotients]
    else:
        lead = d0 ** (len(rotated) - 2)
        fourth = [
            lead * _prod((ring.gens[j] - d0 for j in sorted(L)), ring.one)
            for L in fam.longs
        ]
    families = {
        "same": fam.same,
        "idempotent": fam.idempotent,
        "products": fam.products,
        "long": fourth,
    }
    relations = [g for gens in families.values() for g in gens]
    kind = "HS1" if equivariant else "H"
    label = f"{kind}(U_{format_subset(original)}; {spec.label()})"
    logger.debug("Core ring %s: %d relations", label, len(relations))
    return CoreComponentRing(
        original,
        rotated,
        perm,
        equivariant,
        PresentedRing.of(ring, relations, label),
        families,
    )


def polygon_space_presentation(spec: PolygonSpec, S: Iterable[int]) -> PresentedRing:
    """Cohomology ring of the polygon space 𝔛_S in the d variables.

    Relations: d₁ − d_i (i ∈ S), d_j(d₁ − d_j), ∏_R d_j for R ∪ S long, and
    d₁⁻¹(∏_L (d_j − d₁) − ∏_L d_j) for long L ⊆ S^c. With S a singleton this is
    the ring of 𝔛 itself.
    """
    spec, _ = validate_alpha(spec)
    rotated_spec, rotated, _ = _rotated_short(spec, S, 1)
    ring = make_ring(d_names(spec.n, False))
    fam = _core_families(rotated_spec, rotated, ring)
    relations = fam.same + fam.idempotent + fam.products + fam.quotients
    return PresentedRing.of(ring, relations, f"H(X_{format_subset(S)}; {spec.label()})")


@dataclass(frozen=True)
class JtCheck:
    """Ideal comparisons behind the core-component ring."""

    intersection_equal: bool
    contained: bool
    kernel_equal: bool

    @property
    def holds(self) -> bool:
        return self.intersection_equal and self.contained and self.kernel_equal


def verify_lemma_jt(spec: PolygonSpec, S: Iterable[int]) -> JtCheck:
    """Compare the ideals assembled from the fixed components of U_S.

    - ∩_{short T ⊇ S} ⟨d₁ − d_i, d_j, (d₁ + x)^{|S|−1} : i ∈ T, j ∉ T⟩ equals
      ⟨d₁ − d_i, d_j(d₁ − d_j), ∏_R d_j, (d₁ + x)^{|S|−1}⟩;
    - the core ideal is contained in it;
    - the core ideal equals its intersection with the 𝔛_S kernel.
    """
    spec, _ = validate_alpha(spec)
    core = core_presentation(spec, S, equivariant=True)
    rotated_spec, rotated = relabel(spec, core.S)[:2]
    n = spec.n
    ring = core.presentation.ring
    d, x = ring.gens[:n], ring.gens[n]
    lead = (d[0] + x) ** (len(rotated) - 1)
    meet: Ideal | None = None
    for T in subsets(range(n)):
        if not rotated <= T or not rotated_spec.is_short(T):
            continue
        gens = [d[0] - d[i] for i in sorted(T) if i != 0]
        gens += [d[j] for j in sorted(rotated_spec.complement(T))]
        piece = Ideal.of(ring, [*gens, lead])
        meet = piece if meet is None else ideal_intersect(meet, piece)
    fam = _core_families(rotated_spec, rotated, ring)
    rhs = Ideal.of(ring, [*fam.same, *fam.idempotent, *fam.products, lead])
    kernel = Ideal.of(ring, [*fam.same, *fam.idempotent, *fam.products, *fam.quotients])
    assert meet is not None  # T = S always qualifies
    check = JtCheck(
        intersection_equal=ideal_equal(meet, rhs),
        contained=is_subideal(core.presentation.relations, rhs),
        kernel_equal=ideal_equal(
            ideal_intersect(rhs, kernel), core.presentation.relations
        ),
    )
    logger.debug("Fixed-component ideals for S=%s: %s", format_subset(core.S), check)
    return check


# ── Triangularity of the D_S basis ─────────────────────────────────────────────


def proper_subsets(n: int) -> list[Subset]:
    """A ⊊ {2..n} (0-based {1..n−1}), by size and then lexicographically."""
    return [A for A in subsets(range(1, n)) if len(A) < n - 1]


def d_basis_element(ring: PolyRing, n: int, A: Subset) -> PolyElement:
    """d_A = (−1)^{|A|} d₁^{n−2−|A|} ∏_{k∈A} d_k."""
    d = ring.gens
    sign = -1 if len(A) % 2 else 1
    return sign * d[0] ** (n - 2 - len(A)) * _prod((d[k] for k in sorted(A)), ring.one)


def d_coordinates(p: PolyElement, n: int) -> dict[Subset, Any]:
    """Coordinates of a degree n−2 element of ℚ[d]/⟨d_k² − d₁d_k⟩ in the d_A basis.

    A monomial reduces to d₁^{n−2−|A|} ∏_A d_k with A its support outside d₁,
    which is (−1)^{|A|} d_A.
    """
    out: dict[Subset, Any] = {}
    for exps, coeff in p.iterterms():
        if sum(exps) != n - 2:
            raise InvalidInputError(f"{format_poly(p)} is not of degree {n - 2}")
        A = frozenset(k for k in range(1, n) if exps[k])
        term = -coeff if len(A) % 2 else coeff
        out[A] = out.get(A, QQ.zero) + term
    return {A: c for A, c in out.items() if c}


def v_element(family: ShortSetFamily, S: Subset, ring: PolyRing) -> PolyElement:
    """v_S = (−1)^n ∏_{j∈S^c∖n_S} (d_j + d_{n_S} − d₁) · ∏_{i∈S∖m_S} (2d_i − d₁)."""
    n = family.spec.n
    d = ring.gens
    ns = family.n_of(S)
    left = _prod((d[j] + d[ns] - d[0] for j in sorted(family.cobar(S))), ring.one)
    right = _prod((2 * d[i] - d[0] for i in sorted(family.bar(S))), ring.one)
    sign = -1 if n % 2 else 1
    return sign * left * right


def w_element(family: ShortSetFamily, T: Subset, ring: PolyRing) -> PolyElement:
    """w_T = Σ_A 2^{|A ∩ T∖m_T|} d_A."""
    n = family.spec.n
    tbar = family.bar(T)
    return sum(
        (2 ** len(A & tbar) * d_basis_element(ring, n, A) for A in proper_subsets(n)),
        ring.zero,
    )


def x_element(family: ShortSetFamily, S: Subset, ring: PolyRing) -> PolyElement:
    """Σ_{0∈T⊆S} (−1)^{|S|+|T|} w_T when 0 ∈ S, v_S otherwise."""
    if 0 not in S:
        return v_element(family, S, ring)
    out = ring.zero
    for T in subsets(S):
        if 0 in T:
            sign = -1 if (len(S) + len(T)) % 2 else 1
            out += sign * w_element(family, T, ring)
    return out


def column_set(family: ShortSetFamily, A: Subset) -> Subset:
    """S(A): the complement of A in {2..n} when it is short, else A ∪ {1}."""
    rest = frozenset(range(1, family.spec.n)) - A
    return rest if family.spec.is_short(rest) else A | {0}


def v_closed_form(family: ShortSetFamily, S: Subset) -> dict[Subset, Any]:
    """Coefficients of v_S in the d_A basis, without expanding.

    0 ∉ S: 2^{|A∩S̄|} when S^c∖n_S ⊆ A and m_S ∉ A; 0 ∈ S: 2^{|A∩S̄|} when S^c ⊄ A.
    """
    n = family.spec.n
    sbar = family.bar(S)
    comp = family.spec.complement(S)
    out = {}
    for A in proper_subsets(n):
        if 0 in S:
            hit = not comp <= A
        else:
            hit = family.cobar(S) <= A and family.m(S) not in A
        if hit:
            out[A] = QQ(2 ** len(A & sbar))
    return out


@dataclass
class UpsilonReport:
    """Υ: coefficients of x_{S(A)} (columns) on the d_A basis (rows)."""

    spec: PolygonSpec
    rows: list[Subset]
    columns: list[Subset]
    matrix: list[list[Any]]
    claim_vs: bool
    claim_ws: bool

    @property
    def unit_lower_triangular(self) -> bool:
        size = len(self.rows)
        for i in range(size):
            if self.matrix[i][i] != 1:
                return False
            if any(self.matrix[i][j] for j in range(i + 1, size)):
                return False
        return True

    @property
    def holds(self) -> bool:
        return self.unit_lower_triangular and self.claim_vs and self.claim_ws


def upsilon_check(spec: PolygonSpec) -> UpsilonReport:
    """Expand v_S, w_T and x_S on the d_A basis and assemble Υ."""
    spec, family = validate_alpha(spec)
    n = spec.n
    ring = make_ring(d_names(n, False))
    rows = proper_subsets(n)
    columns = [column_set(family, A) for A in rows]
    if len(set(columns)) != len(columns):
        raise PreconditionError(f"S(A) is not injective for {spec.label()}")

    matrix = [[QQ.zero] * len(rows) for _ in rows]
    for j, S in enumerate(columns):
        coords = d_coordinates(x_element(family, S, ring), n)
        for i, A in enumerate(rows):
            matrix[i][j] = coords.get(A, QQ.zero)

    claim_vs = all(
        d_coordinates(v_element(family, S, ring), n) == v_closed_form(family, S)
        for S in family.nonempty
    )
    claim_ws = True
    for S in family.nonempty:
        if 0 not in S:
            continue
        ordered = sorted(S)
        total = v_element(family, S, ring)
        for k in range(1, len(S)):
            total += 2 ** (k - 1) * v_element(family, frozenset(ordered[k:]), ring)
        if d_coordinates(total, n) != d_coordinates(w_element(family, S, ring), n):
            logger.warning("w_S expansion fails for S=%s", format_subset(S))
            claim_ws = False
    report = UpsilonReport(spec, rows, columns, matrix, claim_vs, claim_ws)
    logger.debug(
        "Upsilon for %s: size %d, unit lower triangular=%s",
        spec.label(),
        len(rows),
        report.unit_lower_triangular,
    )
    return report


# ── Intersection forms on four-dimensional cores ───────────────────────────────


@dataclass(frozen=True)
class IntersectionForm:
    """Intersection pairing on H² of U_S, with the normalization used."""

    S: Subset
    basis: tuple[str, ...]
    matrix: tuple[tuple[Any, ...], ...]
    normalization: str

    @property
    def determinant(self) -> Any:
        return determinant([list(row) for row in self.matrix])

    @property
    def is_symmetric(self) -> bool:
        size = len(self.matrix)
        return all(
            self.matrix[i][j] == self.matrix[j][i]
            for i in range(size)
            for j in range(size)
        )


def intersection_form_n5(
    spec: PolygonSpec, S: Iterable[int], basis: Sequence[str] | None = None
) -> IntersectionForm:
    """Intersection form of U_S for n = 5, where U_S is a complex surface.

    The top class is fixed by −d₁·d_{j₀}[U_S] = 1 with j₀ the smallest j ∉ S
    whose product with d₁ is nonzero. The default basis is d₁ − Σ_J d_j followed
    by d_j for the j ∉ S with d_j nonzero in degree one. Indices are after
    rotating S to contain 1.

    Raises:
        PreconditionError: If n ≠ 5 or the top degree is not one-dimensional.
        InvalidInputError: If S is long or has fewer than two elements.
    """
    spec, _ = validate_alpha(spec)
    if spec.n != 5:
        raise PreconditionError(f"Intersection forms need n = 5, got n = {spec.n}")
    core = core_presentation(spec, S, equivariant=False)
    R = core.presentation
    ring = R.ring
    d = ring.gens
    top = top_degree(R)
    if top != 2 or len(standard_monomials(R, 2)) != 1:
        raise PreconditionError(
            f"U_{format_subset(core.S)} is not a surface: top degree {top}"
        )
    comp = sorted(frozenset(range(spec.n)) - core.rotated)
    pivot = next(
        (j for j in comp if coordinates(R, d[0] * d[j], 2)[0]), None
    )
    if pivot is None:
        raise PreconditionError("No product d1·d_j is nonzero in top degree")
    unit = coordinates(R, -d[0] * d[pivot], 2)[0]

    if basis is None:
        alive = [j for j in comp if not contains(R.relations, d[j])]
        first = d[0] - sum((d[j] for j in alive), ring.zero)
        elements = [first, *(d[j] for j in alive)]
    else:
        elements = [parse_poly(b, ring) for b in basis]
    matrix = tuple(
        tuple(coordinates(R, u * v, 2)[0] / unit for v in elements) for u in elements
    )
    return IntersectionForm(
        core.S,
        tuple(format_poly(e) for e in elements),
        matrix,
        f"-d1*d{pivot + 1} = 1",
    )
