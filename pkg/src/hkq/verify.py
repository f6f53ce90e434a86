"""The bundled verification suite behind ``hkq verify-paper``.

Each check rebuilds one worked example from the bundled fixtures and compares
it with the expected ring, polynomial, matrix or count. Checks run concurrently
in worker threads; a failing check is recorded and never stops the batch.
"""

import asyncio
import logging
import time
from collections.abc import Callable, Sequence
from dataclasses import dataclass
from typing import Any

import numpy as np
from pydantic import BaseModel
from sympy.polys.domains import QQ

from hkq.arrangement import fixture
from hkq.cogen import (
    char_decompose,
    decomposition_volume_identity,
    offset_ring,
    verify_char_decomposition,
    verify_theorem_int,
    volume_polynomial,
)
from hkq.config import settings
from hkq.core import core_components, extended_core, flow_graph
from hkq.exceptions import InvalidInputError, VerificationError
from hkq.groebner import (
    Ideal,
    annihilator_generators,
    contains,
    hilbert_function,
    ideal_equal,
    map_is_isomorphism,
    ring_map,
)
from hkq.hyperpolygon import (
    abelian_matches_hypertoric,
    core_fixed_report,
    core_presentation,
    fixed_report,
    hp_low_degree_check,
    hp_matches_konno,
    hp_membership,
    intersection_form_n5,
    polygon_fixture,
    random_generic_alpha,
    upsilon_check,
    validate_alpha,
    verify_hp_colon,
    verify_lemma_jt,
    w_action_preserves,
)
from hkq.hypertoric import kirwan_presentation
from hkq.os2 import (
    annihilator_fingerprint,
    has_profile,
    os2_presentation,
    os_specialize,
)

logger = logging.getLogger(__name__)


class CheckResult(BaseModel):
    """Outcome of one check."""

    name: str
    passed: bool
    detail: str
    seconds: float


class SuiteResult(BaseModel):
    """Outcome of a suite run."""

    total: int
    passed: int
    failed: int
    seed: int
    results: list[CheckResult]


@dataclass(frozen=True)
class Check:
    name: str
    run: Callable[[int], str]
    slow: bool = False


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise VerificationError(message)


# ── Hypertoric presentations ───────────────────────────────────────────────────

_TORUS_RELATIONS: dict[str, Callable[..., list[Any]]] = {
    "four_lines": lambda t1, t2, t3, t4, x: [
        t2 * t3,
        t1 * (x - t2) * t4,
        t1 * t3 * t4,
    ],
    "four_lines_flipped": lambda t1, t2, t3, t4, x: [
        (x - t2) * t3,
        t1 * t2 * t4,
        t1 * t3 * t4,
    ],
    "four_lines_moved": lambda t1, t2, t3, t4, x: [
        t2 * t3,
        (x - t1) * t2 * (x - t4),
        t1 * t3 * t4,
    ],
}


def check_torus_presentations(seed: int) -> str:
    for name, relations in _TORUS_RELATIONS.items():
        R = kirwan_presentation(fixture(name), "HTdS1")
        expected = Ideal.of(R.ring, relations(*R.ring.gens))
        _require(ideal_equal(R.relations, expected), f"{name}: presentation differs")
    return "three T^d x S^1 presentations match"


def check_torus_annihilators(seed: int) -> str:
    Ma = kirwan_presentation(fixture("four_lines"), "HTdS1")
    t2, t3 = Ma.ring.gens[1], Ma.ring.gens[2]
    ann = annihilator_generators(Ma, t2)
    _require(
        len(ann) == 1 and ideal_equal(
            Ma.relations.extend(ann), Ma.relations.extend([t3])
        ),
        "ann(t2) in M_a is not generated by t3",
    )
    Mc = kirwan_presentation(fixture("four_lines_moved"), "HTdS1")
    _require(
        not has_profile(annihilator_fingerprint(Mc, 1), (1,)),
        "M_c has a degree-one element with principal degree-one annihilator",
    )
    return "ann(t2) = <t3> in M_a; no such element in M_c"


def check_circle_cubes(seed: int) -> str:
    Ma = kirwan_presentation(fixture("four_lines"), "HS1")
    Mb = kirwan_presentation(fixture("four_lines_flipped"), "HS1")
    t2b, t3b, xb = Mb.ring.gens[1], Mb.ring.gens[2], Mb.ring.gens[-1]
    _require(not contains(Mb.relations, (xb - t2b) ** 3), "(x - t2)^3 = 0 in M_b")
    _require(not contains(Mb.relations, t3b**3), "t3^3 = 0 in M_b")
    _require(contains(Ma.relations, Ma.ring.gens[2] ** 3), "t3^3 != 0 in M_a")
    return "cube probes agree"


# ── Orlik–Solomon algebras mod 2 ───────────────────────────────────────────────


def check_os2_isomorphism(seed: int) -> str:
    Ra = os2_presentation(fixture("four_lines"))
    Rc = os2_presentation(fixture("four_lines_moved"))
    f = ring_map(Ra, Rc, ["t1 + t2", "t2 + t3 + x", "t3", "t2 + t4", "x"])
    _require(map_is_isomorphism(f), "f is not an isomorphism")
    return "f certified"


def check_os2_fingerprints(seed: int) -> str:
    Ra = os2_presentation(fixture("doubled_diagonal"))
    Rc = os2_presentation(fixture("doubled_diagonal_moved"))
    _require(
        has_profile(annihilator_fingerprint(Ra, 1), (1, 1)),
        "no [1,1] profile in the first ring",
    )
    _require(
        not has_profile(annihilator_fingerprint(Rc, 1), (1, 1)),
        "a [1,1] profile in the second ring",
    )
    return "distinguished by the [1,1] profile"


def check_os_hilbert(seed: int) -> str:
    R = os_specialize(os2_presentation(fixture("four_lines")), 0)
    hf = hilbert_function(R, 3)
    _require(hf == [1, 4, 5, 0], f"Hilbert function {hf}")
    return "1, 4, 5, 0"


# ── Cores ──────────────────────────────────────────────────────────────────────


def check_core_components(seed: int) -> str:
    expected: dict[str, tuple[int | None, int | None]] = {
        "four_lines": (2, None),
        "five_lines": (None, 3),
        "orbifold": (3, 4),
    }
    for name, (regions, components) in expected.items():
        arr = fixture(name)
        report = extended_core(arr)
        got = (len(report.bounded_regions), len(core_components(arr)))
        if regions is not None:
            _require(got[0] == regions, f"{name}: {got[0]} bounded regions")
        if components is not None:
            _require(got[1] == components, f"{name}: {got[1]} fixed components")
        flow_graph(arr, report)
    return "bounded regions and fixed components match"


# ── Cogenerators ───────────────────────────────────────────────────────────────


def check_volume_polynomials(seed: int) -> str:
    arr = fixture("four_lines_moved")
    ring = offset_ring(arr.n)
    x1, x2, x3, x4 = ring.gens
    half = QQ(1, 2)
    cases = [
        ((), None, half * (x1 + x3 + x4) ** 2),
        ((0, 3), None, half * (-x1 + x2 - x4) ** 2),
        ((), (7, 1, 1, 0), (x2 + x3) * (x1 + x4 + half * x3 - half * x2)),
    ]
    for A, r, expected in cases:
        got = volume_polynomial(arr, A, r, seed=seed).poly
        _require(got == expected, f"P for A={A}, r={r} differs")
    ok, _, _ = decomposition_volume_identity(arr, char_decompose(arr, None, (0, 3)))
    _require(ok, "volume identity for A={1,4} fails")
    return "three volume polynomials and the identity"


def check_char_decomposition(seed: int) -> str:
    arr = fixture("four_lines_moved")
    decomposition = char_decompose(arr, None, (0, 3))
    checked = verify_char_decomposition(arr, decomposition, seed=seed)
    return f"{checked} points"


def check_theorem_int(seed: int) -> str:
    for name in ("four_lines", "triangle"):
        result = verify_theorem_int(fixture(name))
        _require(result.holds, f"{name}: intersection differs from Ann(U)")
        _require(result.matches_presentation, f"{name}: Ann(U) differs from H")
    return "four_lines and triangle"


# ── Hyperpolygons ──────────────────────────────────────────────────────────────


def check_hp_membership(seed: int) -> str:
    for name in ("polygon_2348", "polygon_11333", "polygon_11113"):
        _require(hp_membership(polygon_fixture(name)), f"{name}: e*D_S not in J")
    return "e*D_S in J for all short S"


def check_hp_membership_sweep(seed: int) -> str:
    rng = np.random.default_rng(seed)
    specs = [random_generic_alpha(5, rng)]
    specs += [random_generic_alpha(6, rng) for _ in range(2)]
    for spec in specs:
        _require(hp_membership(spec), f"{spec.label()}: e*D_S not in J")
    return f"{len(specs)} random polygons with n = 5, 6"


def check_hp_konno(seed: int) -> str:
    for name in ("polygon_2348", "polygon_11333"):
        _require(hp_matches_konno(polygon_fixture(name)), f"{name}: x = 0 differs")
    return "x = 0 gives the degree n-2 truncation"


def check_hp_colon(seed: int) -> str:
    for name in ("polygon_2348", "polygon_11333"):
        _require(verify_hp_colon(polygon_fixture(name)), f"{name}: (J : e) differs")
    return "(J : e) = <D_S>"


def check_hp_low_degree(seed: int) -> str:
    for name in ("polygon_2348", "polygon_11333"):
        _require(
            hp_low_degree_check(polygon_fixture(name)),
            f"{name}: e kills a class below degree n-2",
        )
    return "multiplication by e is injective in low degree"


def check_abelian_hypertoric(seed: int) -> str:
    spec = polygon_fixture("polygon_2348")
    _require(abelian_matches_hypertoric(spec), "abelian ring differs from HS1")
    _require(w_action_preserves(spec), "the swap does not preserve the abelian ideal")
    return "2n-line arrangement and Weyl symmetry"


def check_abelian_sweep(seed: int) -> str:
    rng = np.random.default_rng(seed)
    specs = [polygon_fixture("polygon_11333"), polygon_fixture("polygon_11113")]
    specs += [random_generic_alpha(n, rng) for n in (4, 5)]
    for spec in specs:
        label = spec.label()
        _require(abelian_matches_hypertoric(spec), f"{label}: abelian ring differs")
        _require(w_action_preserves(spec), f"{label}: swap breaks the abelian ideal")
    return f"{len(specs)} polygons with n <= 5"


def check_upsilon(seed: int) -> str:
    rng = np.random.default_rng(seed)
    specs = [polygon_fixture("polygon_11333")]
    specs += [random_generic_alpha(n, rng) for n in range(4, 8) for _ in range(10)]
    for spec in specs:
        report = upsilon_check(spec)
        _require(report.holds, f"{spec.label()}: upsilon check fails")
    return f"{len(specs)} polygons"


def check_core_rings(seed: int) -> str:
    spec = polygon_fixture("polygon_11333")
    maximal = core_presentation(spec, {0, 1, 2}, equivariant=False).presentation
    hf = hilbert_function(maximal, 4)
    _require(hf == [1, 1, 1, 0, 0], f"maximal short S: Hilbert function {hf}")
    small = core_presentation(spec, {0, 2}, equivariant=False).presentation
    d1, d2, d3, d4, d5 = small.ring.gens
    expected = Ideal.of(small.ring, [d1 - d3, d4, d5, d1**2, d2 * (d1 - d2)])
    _require(ideal_equal(small.relations, expected), "S={1,3}: ring differs")
    _require(verify_lemma_jt(spec, {0, 1}).holds, "S={1,2}: ideal comparison fails")
    return "projective case, S={1,3} and S={1,2}"


def check_jt_sweep(seed: int) -> str:
    rng = np.random.default_rng(seed)
    specs = [polygon_fixture("polygon_11333"), polygon_fixture("polygon_11113")]
    specs.append(random_generic_alpha(6, rng))
    count = 0
    for spec in specs:
        _, family = validate_alpha(spec)
        for S in family.nonempty:
            if not 2 <= len(S) <= 3:
                continue
            check = verify_lemma_jt(spec, S)
            _require(check.holds, f"{spec.label()}: S={sorted(S)} comparison fails")
            count += 1
    return f"{count} core components with |S| <= 3"


def check_intersection_forms(seed: int) -> str:
    spec = polygon_fixture("polygon_11333")
    one = QQ(1)
    # Basis is d1 - sum d_j first, then the d_j, with -d1*d_j0 = 1 as the top
    # class. S={1,3} therefore reads diag(1,-1); listing the basis the other way
    # round gives the same form as diag(-1,1).
    cases = [({0, 1}, [1, -1, -1, -1]), ({0, 2}, [1, -1])]
    for S, diagonal in cases:
        form = intersection_form_n5(spec, S)
        size = len(diagonal)
        expected = tuple(
            tuple(one * diagonal[i] if i == j else QQ.zero for j in range(size))
            for i in range(size)
        )
        _require(form.matrix == expected, f"S={sorted(S)}: form {form.matrix}")
    return "diag(1,-1,-1,-1) and diag(1,-1)"


def check_fixed_loci(seed: int) -> str:
    spec = polygon_fixture("polygon_11333")
    report = fixed_report(spec)
    _require(report.consistent, "fixed components of M miss Betti numbers")
    core = core_fixed_report(spec, {0, 1})
    shapes = sorted(c.poincare for c in core.components)
    _require(shapes == [(1,)] * 4 + [(1, 1)], f"U_{{1,2}} fixed set {shapes}")
    _require(core.consistent, "fixed components of U_{1,2} miss Betti numbers")
    return "CP^1 and four points"


CHECKS: tuple[Check, ...] = (
    Check("torus-presentations", check_torus_presentations),
    Check("torus-annihilators", check_torus_annihilators),
    Check("circle-cubes", check_circle_cubes),
    Check("os2-isomorphism", check_os2_isomorphism),
    Check("os2-fingerprints", check_os2_fingerprints, slow=True),
    Check("os-hilbert", check_os_hilbert),
    Check("core-components", check_core_components),
    Check("volume-polynomials", check_volume_polynomials),
    Check("char-decomposition", check_char_decomposition),
    Check("theorem-int", check_theorem_int, slow=True),
    Check("hp-membership", check_hp_membership),
    Check("hp-membership-sweep", check_hp_membership_sweep, slow=True),
    Check("hp-konno", check_hp_konno),
    Check("hp-colon", check_hp_colon, slow=True),
    Check("hp-low-degree", check_hp_low_degree),
    Check("abelian-hypertoric", check_abelian_hypertoric),
    Check("abelian-sweep", check_abelian_sweep, slow=True),
    Check("upsilon", check_upsilon, slow=True),
    Check("core-rings", check_core_rings),
    Check("jt-sweep", check_jt_sweep, slow=True),
    Check("intersection-forms", check_intersection_forms),
    Check("fixed-loci", check_fixed_loci),
)


def select_checks(
    names: Sequence[str] | None = None, skip_slow: bool = False
) -> list[Check]:
    """Checks by name (all when ``names`` is empty), optionally without slow ones.

    Raises:
        InvalidInputError: If a name is unknown.
    """
    known = {c.name: c for c in CHECKS}
    if names:
        unknown = [n for n in names if n not in known]
        if unknown:
            raise InvalidInputError(f"Unknown checks {unknown}; known: {sorted(known)}")
        chosen = [known[n] for n in names]
    else:
        chosen = list(CHECKS)
    return [c for c in chosen if not (skip_slow and c.slow)]


async def _run_one(sem: asyncio.Semaphore, check: Check, seed: int) -> CheckResult:
    async with sem:
        start = time.perf_counter()
        detail = await asyncio.to_thread(check.run, seed)
        elapsed = round(time.perf_counter() - start, 3)
        logger.info("Check %s passed in %.2fs", check.name, elapsed)
        return CheckResult(name=check.name, passed=True, detail=detail, seconds=elapsed)


async def run_suite(
    checks: Sequence[Check],
    seed: int | None = None,
    max_concurrency: int | None = None,
) -> SuiteResult:
    """Run ``checks`` concurrently and collect their outcomes in input order.

    Args:
        checks: The checks to run.
        seed: Seed passed to every check. Defaults to ``settings.hkq_seed``.
        max_concurrency: Checks in flight at once. Defaults to the setting.

    Returns:
        SuiteResult with one entry per check; failures carry the error text.
    """
    seed = settings.hkq_seed if seed is None else seed
    limit = settings.max_concurrency if max_concurrency is None else max_concurrency
    sem = asyncio.Semaphore(max(1, limit))
    raw = await asyncio.gather(
        *[_run_one(sem, c, seed) for c in checks],
        return_exceptions=True,
    )

    results: list[CheckResult] = []
    for check, outcome in zip(checks, raw, strict=True):
        if isinstance(outcome, BaseException):
            logger.warning("Check %s failed: %s", check.name, outcome)
            results.append(
                CheckResult(
                    name=check.name,
                    passed=False,
                    detail=f"{type(outcome).__name__}: {outcome}",
                    seconds=0.0,
                )
            )
        else:
            results.append(outcome)

    passed = sum(1 for r in results if r.passed)
    return SuiteResult(
        total=len(results),
        passed=passed,
        failed=len(results) - passed,
        seed=seed,
        results=results,
    )
