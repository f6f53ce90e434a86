"""Cooriented rational hyperplane arrangements.

Hyperplane i is H_i = {v : v·a_i + r_i = 0}; F_i is the side where
v·a_i + r_i ≥ 0 and G_i the side where it is ≤ 0. Indices are 0-based in code
and 1-based in every rendered output.
"""

import json
import logging
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from functools import cached_property
from importlib import resources
from itertools import combinations
from pathlib import Path
from typing import Any

from pydantic import BaseModel, ValidationError
from sympy.polys.domains import QQ

from hkq.algebra import format_rational, parse_rational
from hkq.exceptions import InvalidInputError, NonSimpleError, ParseError
from hkq.linalg import determinant, integer_kernel, nullspace, primitive, rank
from hkq.polyhedra import Constraint, Polyhedron, feasible

logger = logging.getLogger(__name__)

SignSubset = frozenset[int]


@dataclass(frozen=True)
class Circuit:
    """A minimal dependent set of normals with its primitive dependency.

    Σ coefficients[k]·a_{support[k]} = 0, with the first coefficient positive.
    """

    support: tuple[int, ...]
    coefficients: tuple[int, ...]

    def vector(self, n: int) -> tuple[int, ...]:
        """The dependency as a length-n vector."""
        out = [0] * n
        for i, c in zip(self.support, self.coefficients, strict=True):
            out[i] = c
        return tuple(out)

    def wall_value(self, offsets: Sequence[Any]) -> Any:
        """Σ c_i r_i; zero exactly when the hyperplanes of the circuit meet."""
        return sum(
            (
                c * offsets[i]
                for i, c in zip(self.support, self.coefficients, strict=True)
            ),
            QQ.zero,
        )


@dataclass(frozen=True)
class Arrangement:
    """n cooriented hyperplanes in ℚ^d with integer normals and rational offsets."""

    normals: tuple[tuple[int, ...], ...]
    offsets: tuple[Any, ...]
    name: str = ""

    @classmethod
    def of(
        cls, normals: Iterable[Iterable[int]], offsets: Iterable[Any], name: str = ""
    ) -> "Arrangement":
        """Build and validate an arrangement."""
        arr = cls(
            tuple(tuple(int(x) for x in a) for a in normals),
            tuple(parse_rational(r) if isinstance(r, str | int) else QQ.convert(r)
                  for r in offsets),
            name,
        )
        return validate(arr)

    @property
    def n(self) -> int:
        return len(self.normals)

    @property
    def d(self) -> int:
        return len(self.normals[0])

    @property
    def k(self) -> int:
        """Rank of the kernel torus, n − d."""
        return self.n - self.d

    @cached_property
    def kernel_basis(self) -> list[list[int]]:
        """Primitive integer basis of {c : Σ c_i a_i = 0}."""
        return integer_kernel(self.matrix_rows, self.n)

    @cached_property
    def matrix_rows(self) -> list[list[int]]:
        """The d×n matrix whose columns are the normals."""
        return [[a[j] for a in self.normals] for j in range(self.d)]

    def with_offsets(self, offsets: Iterable[Any]) -> "Arrangement":
        return Arrangement.of(self.normals, offsets, self.name)

    def hyperplane(self, i: int) -> Constraint:
        return Constraint.of(self.normals[i], self.offsets[i], "=")

    def half_space(self, i: int, side: str) -> Constraint:
        """F_i for side "F", G_i for side "G"."""
        if side not in ("F", "G"):
            raise InvalidInputError(f"Unknown side {side!r}")
        sense = ">=" if side == "F" else "<="
        return Constraint.of(self.normals[i], self.offsets[i], sense)

    def delta(self, A: Iterable[int] = ()) -> Polyhedron:
        """Δ_A = ∩_{i∈A} G_i ∩ ∩_{i∉A} F_i; Δ_∅ is the polytope Δ."""
        members = set(A)
        return Polyhedron.of(
            self.d,
            [self.half_space(i, "G" if i in members else "F") for i in range(self.n)],
        )

    def pair_polyhedron(self, S1: Iterable[int], S2: Iterable[int]) -> Polyhedron:
        """∩_{i∈S1} G_i ∩ ∩_{j∈S2} F_j."""
        cons = [self.half_space(i, "G") for i in sorted(S1)]
        cons += [self.half_space(j, "F") for j in sorted(S2)]
        return Polyhedron.of(self.d, cons)

    def flat(self, S: Iterable[int]) -> Polyhedron:
        """∩_{i∈S} H_i."""
        return Polyhedron.of(self.d, [self.hyperplane(i) for i in sorted(S)])


class ArrangementModel(BaseModel):
    """Wire format: {"d": 2, "normals": [[...]], "offsets": ["p/q", ...]}."""

    d: int
    normals: list[list[int]]
    offsets: list[str | int]
    name: str = ""


def validate(arr: Arrangement) -> Arrangement:
    """Check the structural rules of an arrangement and return it.

    Raises:
        InvalidInputError: On an empty arrangement, mismatched lengths, a zero
            normal or normals that do not span ℚ^d.
    """
    if not arr.normals:
        raise InvalidInputError("An arrangement needs at least one hyperplane")
    d = len(arr.normals[0])
    if d < 1:
        raise InvalidInputError("Normals must have at least one coordinate")
    if len(arr.offsets) != len(arr.normals):
        raise InvalidInputError(
            f"{len(arr.normals)} normals but {len(arr.offsets)} offsets"
        )
    for i, a in enumerate(arr.normals):
        if len(a) != d:
            raise InvalidInputError(f"Normal {i + 1} has {len(a)} coordinates, not {d}")
        if not any(a):
            raise InvalidInputError(f"Normal {i + 1} is zero")
    if rank(arr.normals, d) != d:
        raise InvalidInputError(f"Normals do not span ℚ^{d}")
    return arr


def parse_arrangement(data: dict[str, Any], name: str = "") -> Arrangement:
    """Build an arrangement from its JSON form.

    Raises:
        ParseError: If the document does not match the wire format.
        InvalidInputError: If the parsed arrangement is invalid.
    """
    try:
        model = ArrangementModel.model_validate(data)
    except ValidationError as e:
        raise ParseError(f"Invalid arrangement document: {e}") from e
    if any(len(a) != model.d for a in model.normals):
        raise InvalidInputError(f"Every normal must have d = {model.d} coordinates")
    offsets = [parse_rational(r) for r in model.offsets]
    return Arrangement.of(model.normals, offsets, model.name or name)


def arrangement_to_json(arr: Arrangement) -> dict[str, Any]:
    return {
        "name": arr.name,
        "d": arr.d,
        "normals": [list(a) for a in arr.normals],
        "offsets": [format_rational(r) for r in arr.offsets],
    }


def read_json(path: Path | str) -> dict[str, Any]:
    """Read a JSON document, reporting the location of syntax errors.

    Raises:
        ParseError: If the file is missing or not valid JSON.
    """
    source = Path(path).expanduser()
    try:
        text = source.read_text(encoding="utf-8")
    except OSError as e:
        raise ParseError(f"Cannot read {str(path)!r}: {e.strerror}") from e
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"{source}:{e.lineno}:{e.colno}: {e.msg}") from e
    if not isinstance(data, dict):
        raise ParseError(f"{source}: top-level JSON value must be an object")
    return data


def load_arrangement(path: Path | str) -> Arrangement:
    """Load and validate an arrangement JSON file."""
    return parse_arrangement(read_json(path), name=Path(path).stem)


def fixture_data(name: str) -> dict[str, Any]:
    """Raw JSON of a bundled fixture.

    Raises:
        ParseError: If no fixture of that name ships with the package.
    """
    resource = resources.files("hkq.data").joinpath(f"{name}.json")
    if not resource.is_file():
        raise ParseError(f"No bundled fixture named {name!r}")
    data: dict[str, Any] = json.loads(resource.read_text(encoding="utf-8"))
    return data


def fixture(name: str) -> Arrangement:
    """A bundled arrangement fixture, e.g. ``fixture("four_lines")``."""
    return parse_arrangement(fixture_data(name), name=name)


# ── Matroid data ───────────────────────────────────────────────────────────────


def circuits(arr: Arrangement) -> list[Circuit]:
    """All circuits of the normals, by size then support."""
    out: list[Circuit] = []
    for size in range(2, arr.d + 2):
        for support in combinations(range(arr.n), size):
            if any(set(c.support) <= set(support) for c in out):
                continue
            rows = [[arr.normals[i][j] for i in support] for j in range(arr.d)]
            kernel = nullspace(rows, size)
            if len(kernel) != 1 or not all(kernel[0]):
                continue
            out.append(Circuit(support, tuple(primitive(kernel[0]))))
    logger.debug("Arrangement %s has %d circuits", arr.name or "?", len(out))
    return out


def is_simple(arr: Arrangement) -> bool:
    """True iff every circuit's hyperplanes have empty common intersection."""
    return all(c.wall_value(arr.offsets) for c in circuits(arr))


def is_smooth(arr: Arrangement) -> bool:
    """True iff every d×d minor of the normal matrix is 0 or ±1."""
    for combo in combinations(arr.normals, arr.d):
        det = determinant(list(combo))
        if det not in (0, 1, -1):
            return False
    return True


def _require_simple(arr: Arrangement) -> list[Circuit]:
    found = circuits(arr)
    bad = [c for c in found if not c.wall_value(arr.offsets)]
    if bad:
        names = ",".join(str(i + 1) for i in bad[0].support)
        raise NonSimpleError(
            f"Arrangement {arr.name or '?'} is not simple: hyperplanes {{{names}}} "
            "meet in too small a codimension"
        )
    return found


def sr_empty_sets(arr: Arrangement) -> list[SignSubset]:
    """Inclusion-minimal S with ∩_{i∈S} H_i = ∅.

    In a simple arrangement these are exactly the circuit supports.

    Raises:
        NonSimpleError: If the arrangement is not simple.
    """
    return [frozenset(c.support) for c in _require_simple(arr)]


def coor_empty_pairs(arr: Arrangement) -> list[tuple[SignSubset, SignSubset]]:
    """Inclusion-minimal disjoint (S1, S2) with ∩_{S1} G_i ∩ ∩_{S2} F_j = ∅.

    A circuit with dependency c and wall value w = Σ c_i r_i ≠ 0 yields one pair:
    index i goes to S1 when sign(c_i) = sign(w) and to S2 otherwise.

    Raises:
        NonSimpleError: If the arrangement is not simple.
    """
    pairs = []
    for c in _require_simple(arr):
        w_positive = c.wall_value(arr.offsets) > 0
        S1 = frozenset(
            i for i, ci in zip(c.support, c.coefficients, strict=True)
            if (ci > 0) == w_positive
        )
        pairs.append((S1, frozenset(c.support) - S1))
    return pairs


def pair_is_empty(arr: Arrangement, S1: Iterable[int], S2: Iterable[int]) -> bool:
    """Direct feasibility test of ∩_{S1} G_i ∩ ∩_{S2} F_j = ∅."""
    S1, S2 = set(S1), set(S2)
    if not S1 and not S2:
        return False
    return not feasible(arr.pair_polyhedron(S1, S2))


def flat_is_empty(arr: Arrangement, S: Iterable[int]) -> bool:
    """Direct test of ∩_{i∈S} H_i = ∅ by exact solving."""
    S = set(S)
    return bool(S) and not feasible(arr.flat(S))


# ── Moves ──────────────────────────────────────────────────────────────────────


def flip(arr: Arrangement, m: int) -> Arrangement:
    """Negate normal and offset of hyperplane m, swapping F_m and G_m."""
    if not 0 <= m < arr.n:
        raise InvalidInputError(f"No hyperplane {m + 1} in an arrangement of {arr.n}")
    normals = [tuple(-x for x in a) if i == m else a for i, a in enumerate(arr.normals)]
    offsets = [-r if i == m else r for i, r in enumerate(arr.offsets)]
    return Arrangement.of(normals, offsets, f"{arr.name}~{m + 1}" if arr.name else "")


def translate(arr: Arrangement, u: Sequence[Any]) -> Arrangement:
    """r ↦ r + π*(u), i.e. r_i ↦ r_i + a_i·u; moves every Δ_A by −u."""
    if len(u) != arr.d:
        raise InvalidInputError(f"Translation needs {arr.d} coordinates, got {len(u)}")
    u = [QQ.convert(x) for x in u]
    offsets = [
        r + sum((a_j * u_j for a_j, u_j in zip(a, u, strict=True)), QQ.zero)
        for a, r in zip(arr.normals, arr.offsets, strict=True)
    ]
    return Arrangement.of(arr.normals, offsets, arr.name)


def sign_subsets(n: int) -> list[SignSubset]:
    """All subsets of range(n), ordered as bitmasks."""
    return [
        frozenset(i for i in range(n) if mask >> i & 1) for mask in range(1 << n)
    ]


def format_subset(S: Iterable[int]) -> str:
    """1-based rendering such as "{1,4}"."""
    return "{" + ",".join(str(i + 1) for i in sorted(S)) + "}"
