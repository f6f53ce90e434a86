"""Report models, text and DOT rendering, and report files.

Reports are pydantic models. Rationals are written as ``p/q`` strings and
polynomials in the canonical text format, so two runs on the same input give
byte-identical files.
"""

import logging
from collections.abc import Iterable, Sequence
from pathlib import Path
from typing import Any

from pydantic import BaseModel

from hkq.algebra import format_poly, format_rational
from hkq.arrangement import (
    Arrangement,
    arrangement_to_json,
    circuits,
    coor_empty_pairs,
    format_subset,
    is_simple,
    is_smooth,
)
from hkq.cogen import CharDecomposition, VolumePolynomial
from hkq.core import (
    CoreReport,
    FlowGraph,
    core_components,
    fixed_components,
    point_label,
)
from hkq.exceptions import ReportError
from hkq.groebner import PresentedRing, degree_bound, hilbert_function
from hkq.hyperpolygon import (
    FixedReport,
    IntersectionForm,
    PolygonSpec,
    ShortSetFamily,
    UpsilonReport,
    polygon_to_json,
)
from hkq.os2 import Fingerprint

logger = logging.getLogger(__name__)


class RingModel(BaseModel):
    """A presented ring: generators, relations and Hilbert function."""

    label: str
    field: str
    generators: list[str]
    relations: list[str]
    hilbert: list[int] = []


class CircuitModel(BaseModel):
    support: str
    coefficients: list[int]


class PairModel(BaseModel):
    """A minimal empty pair: ∩_{S1} G ∩ ∩_{S2} F = ∅."""

    S1: str
    S2: str


class PieceModel(BaseModel):
    A: str
    status: str
    full_dimensional: bool


class FixedFaceModel(BaseModel):
    A: str
    B: str
    dimension: int
    minimizing: bool
    vertices: list[str]


class EdgeModel(BaseModel):
    source: str
    target: str
    pieces: list[str]


class FlowModel(BaseModel):
    vertices: list[str]
    edges: list[EdgeModel]
    ties: list[list[str]]


class HypertoricReport(BaseModel):
    """Matroid data, presentations, the extended core and its flow."""

    arrangement: dict[str, Any]
    simple: bool
    smooth: bool
    circuits: list[CircuitModel]
    empty_pairs: list[PairModel]
    presentations: list[RingModel]
    pieces: list[PieceModel]
    fixed: list[FixedFaceModel]
    components: int
    flow: FlowModel | None = None


class VolumeModel(BaseModel):
    A: str
    chamber: list[str]
    polynomial: str


class TermModel(BaseModel):
    T: str
    eta: int


class CogenReport(BaseModel):
    """Volume polynomials and the checks run on them."""

    arrangement: dict[str, Any]
    volumes: list[VolumeModel]
    decomposition: list[TermModel] = []
    checks: dict[str, bool] = {}


class ProfileModel(BaseModel):
    profile: list[int]
    count: int


class Os2Report(BaseModel):
    arrangement: dict[str, Any]
    presentation: RingModel
    specialization: RingModel | None = None
    free_over_x: bool
    fingerprint_degree: int | None = None
    fingerprint: list[ProfileModel] = []


class FixedComponentModel(BaseModel):
    label: str
    dimension: int
    poincare: list[int]


class FixedModel(BaseModel):
    components: list[FixedComponentModel]
    betti_total: int
    expected_total: int


class IntersectionFormModel(BaseModel):
    S: str
    basis: list[str]
    matrix: list[list[str]]
    normalization: str


class UpsilonModel(BaseModel):
    rows: list[str]
    columns: list[str]
    matrix: list[list[str]]
    unit_lower_triangular: bool
    claim_vs: bool
    claim_ws: bool


class PolygonReport(BaseModel):
    """Short sets, rings and checks of one hyperpolygon space."""

    polygon: dict[str, Any]
    short_sets: list[str] = []
    sprime: list[str] = []
    rings: list[RingModel] = []
    checks: dict[str, bool] = {}
    fixed: FixedModel | None = None
    intersection_form: IntersectionFormModel | None = None
    upsilon: UpsilonModel | None = None


# ── Builders ───────────────────────────────────────────────────────────────────


def ring_model(R: PresentedRing, hilbert: bool = True) -> RingModel:
    """Describe ``R``; the Hilbert function runs to the top degree or the bound."""
    return RingModel(
        label=R.label,
        field=R.field,
        generators=R.names,
        relations=[format_poly(g) for g in R.relations.generators],
        hilbert=hilbert_function(R, degree_bound(R)) if hilbert else [],
    )


def _points(vertices: Iterable[Sequence[Any]]) -> list[str]:
    return [point_label(v) for v in vertices]


def flow_model(flow: FlowGraph) -> FlowModel:
    graph = flow.graph
    edges = [
        EdgeModel(
            source=point_label(u),
            target=point_label(v),
            pieces=sorted(graph[u][v]["pieces"]),
        )
        for u, v in sorted(graph.edges)
    ]
    ties = [[format_subset(A), point_label(u), point_label(v)] for A, u, v in flow.ties]
    return FlowModel(vertices=_points(sorted(graph.nodes)), edges=edges, ties=ties)


def hypertoric_report(
    arr: Arrangement,
    presentations: Sequence[PresentedRing],
    core: CoreReport | None = None,
    flow: FlowGraph | None = None,
) -> HypertoricReport:
    pieces: list[PieceModel] = []
    fixed: list[FixedFaceModel] = []
    components = 0
    if core is not None:
        pieces = [
            PieceModel(
                A=format_subset(p.A),
                status=p.status,
                full_dimensional=p.full_dimensional,
            )
            for p in core.pieces
        ]
        faces = core.fixed or fixed_components(arr, core)
        fixed = [
            FixedFaceModel(
                A=format_subset(f.A),
                B=format_subset(f.B),
                dimension=f.dimension,
                minimizing=f.minimizing,
                vertices=_points(f.vertices),
            )
            for f in faces
        ]
        components = len(flow.components) if flow else len(core_components(arr, faces))
    return HypertoricReport(
        arrangement=arrangement_to_json(arr),
        simple=is_simple(arr),
        smooth=is_smooth(arr),
        circuits=[
            CircuitModel(
                support=format_subset(c.support), coefficients=list(c.coefficients)
            )
            for c in circuits(arr)
        ],
        empty_pairs=[
            PairModel(S1=format_subset(S1), S2=format_subset(S2))
            for S1, S2 in (coor_empty_pairs(arr) if is_simple(arr) else [])
        ],
        presentations=[ring_model(R) for R in presentations],
        pieces=pieces,
        fixed=fixed,
        components=components,
        flow=flow_model(flow) if flow is not None else None,
    )


def volume_model(p: VolumePolynomial) -> VolumeModel:
    return VolumeModel(
        A=format_subset(p.A),
        chamber=[format_rational(x) for x in p.chamber],
        polynomial=format_poly(p.poly),
    )


def cogen_report(
    arr: Arrangement,
    volumes: Sequence[VolumePolynomial],
    decomposition: CharDecomposition | None = None,
    checks: dict[str, bool] | None = None,
) -> CogenReport:
    terms = []
    if decomposition is not None:
        terms = [
            TermModel(T=format_subset(t.large), eta=t.eta)
            for t in decomposition.terms
        ]
    return CogenReport(
        arrangement=arrangement_to_json(arr),
        volumes=[volume_model(p) for p in volumes],
        decomposition=terms,
        checks=dict(checks or {}),
    )


def os2_report(
    arr: Arrangement,
    R: PresentedRing,
    free_over_x: bool,
    specialization: PresentedRing | None = None,
    fingerprint: Fingerprint | None = None,
    degree: int | None = None,
) -> Os2Report:
    return Os2Report(
        arrangement=arrangement_to_json(arr),
        presentation=ring_model(R),
        specialization=ring_model(specialization) if specialization else None,
        free_over_x=free_over_x,
        fingerprint_degree=degree,
        fingerprint=[
            ProfileModel(profile=list(p), count=c) for p, c in (fingerprint or ())
        ],
    )


def _matrix(rows: Iterable[Iterable[Any]]) -> list[list[str]]:
    return [[format_rational(x) for x in row] for row in rows]


def polygon_report(
    spec: PolygonSpec,
    family: ShortSetFamily | None = None,
    rings: Sequence[PresentedRing] = (),
    checks: dict[str, bool] | None = None,
    fixed: FixedReport | None = None,
    form: IntersectionForm | None = None,
    upsilon: UpsilonReport | None = None,
) -> PolygonReport:
    return PolygonReport(
        polygon=polygon_to_json(spec),
        short_sets=[format_subset(S) for S in family.short] if family else [],
        sprime=[format_subset(S) for S in family.sprime] if family else [],
        rings=[ring_model(R) for R in rings],
        checks=dict(checks or {}),
        fixed=FixedModel(
            components=[
                FixedComponentModel(
                    label=c.label, dimension=c.dimension, poincare=list(c.poincare)
                )
                for c in fixed.components
            ],
            betti_total=fixed.betti_total,
            expected_total=fixed.expected_total,
        )
        if fixed
        else None,
        intersection_form=IntersectionFormModel(
            S=format_subset(form.S),
            basis=list(form.basis),
            matrix=_matrix(form.matrix),
            normalization=form.normalization,
        )
        if form
        else None,
        upsilon=UpsilonModel(
            rows=[format_subset(A) for A in upsilon.rows],
            columns=[format_subset(S) for S in upsilon.columns],
            matrix=_matrix(upsilon.matrix),
            unit_lower_triangular=upsilon.unit_lower_triangular,
            claim_vs=upsilon.claim_vs,
            claim_ws=upsilon.claim_ws,
        )
        if upsilon
        else None,
    )


# ── Rendering ──────────────────────────────────────────────────────────────────


def _scalar(value: Any) -> str:
    if isinstance(value, bool):
        return "yes" if value else "no"
    return "-" if value is None else str(value)


def _render(value: Any, indent: int, lines: list[str]) -> None:
    pad = "  " * indent
    if isinstance(value, dict):
        for key, item in value.items():
            if isinstance(item, dict | list) and item and not _flat(item):
                lines.append(f"{pad}{key}:")
                _render(item, indent + 1, lines)
            else:
                lines.append(f"{pad}{key}: {_inline(item)}")
    elif isinstance(value, list):
        for item in value:
            if isinstance(item, dict | list) and not _flat(item):
                lines.append(f"{pad}-")
                _render(item, indent + 1, lines)
            else:
                lines.append(f"{pad}- {_inline(item)}")
    else:
        lines.append(f"{pad}{_scalar(value)}")


def _flat(value: Any) -> bool:
    if not isinstance(value, list):
        return False
    return all(not isinstance(v, dict | list) for v in value)


def _inline(value: Any) -> str:
    if isinstance(value, list):
        return "[" + ", ".join(_scalar(v) for v in value) + "]"
    if isinstance(value, dict):
        return "{}"
    return _scalar(value)


def render_text(report: BaseModel) -> str:
    """Indented human-readable view of a report, in field order."""
    lines: list[str] = []
    _render(report.model_dump(mode="json"), 0, lines)
    return "\n".join(lines)


def _quote(text: str) -> str:
    return '"' + text.replace('"', '\\"') + '"'


def flow_dot(flow: FlowGraph, name: str = "flow") -> str:
    """Graphviz digraph of the flow: vertices grouped by fixed component."""
    graph = flow.graph
    lines = [f"digraph {_quote(name)} {{", "  node [shape=circle];"]
    for v in sorted(graph.nodes):
        attrs = graph.nodes[v]
        lines.append(
            f"  {_quote(point_label(v))} "
            f"[label={_quote(attrs['label'])}, group={attrs['component']}];"
        )
    for u, v in sorted(graph.edges):
        label = " ".join(sorted(graph[u][v]["pieces"]))
        edge = f"{_quote(point_label(u))} -> {_quote(point_label(v))}"
        lines.append(f"  {edge} [label={_quote(label)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def emit_report(
    report: BaseModel, stem: Path | str, dot: str | None = None
) -> list[Path]:
    """Write ``<stem>.json``, ``<stem>.txt`` and, when given, ``<stem>.dot``.

    Returns:
        The paths written, in that order.

    Raises:
        ReportError: If a file cannot be written.
    """
    base = Path(stem).expanduser()
    outputs = [
        (Path(f"{base}.json"), report.model_dump_json(indent=2) + "\n"),
        (Path(f"{base}.txt"), render_text(report) + "\n"),
    ]
    if dot is not None:
        outputs.append((Path(f"{base}.dot"), dot))
    written = []
    for path, text in outputs:
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(text, encoding="utf-8")
        except OSError as e:
            reason = e.strerror or e
            raise ReportError(f"Cannot write report {str(path)!r}: {reason}") from e
        written.append(path)
    logger.info("Wrote %s", ", ".join(str(p) for p in written))
    return written
