"""Extended core, fixed components and gradient flow of a hypertoric variety.

The extended core is cut into the pieces Δ_A (one per sign subset A); the core
is the union of the bounded ones. On Δ_A the moment function is
Φ(v) = Σ_{i∈A} (v·a_i + r_i), which agrees on shared faces, so the flow is a
single digraph on the vertices of the arrangement.
"""

import logging
from collections.abc import Sequence
from dataclasses import dataclass, field
from typing import Any

import networkx as nx
from sympy.polys.domains import QQ

from hkq.algebra import format_rational
from hkq.arrangement import Arrangement, SignSubset, format_subset, sign_subsets
from hkq.exceptions import VerificationError
from hkq.linalg import rank
from hkq.polyhedra import (
    Face,
    Point,
    Polyhedron,
    bounded,
    faces,
    feasible,
    full_dimensional,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CorePiece:
    """Δ_A with its classification."""

    A: SignSubset
    polytope: Polyhedron
    status: str  # "empty" | "unbounded" | "bounded"
    full_dimensional: bool

    @property
    def is_root(self) -> bool:
        """Δ_∅ is Δ itself."""
        return not self.A


@dataclass(frozen=True)
class FixedFace:
    """A face of a bounded Δ_A fixed by the ℂ× action."""

    A: SignSubset
    B: frozenset[int]
    vertices: tuple[Point, ...]
    dimension: int
    minimizing: bool


@dataclass(frozen=True)
class CoreComponent:
    """A connected component of the fixed locus."""

    faces: tuple[FixedFace, ...]
    vertices: tuple[Point, ...]
    dimension: int


@dataclass
class CoreReport:
    """All pieces Δ_A, the bounded ones and their fixed faces."""

    arrangement: Arrangement
    pieces: list[CorePiece]
    fixed: list[FixedFace] = field(default_factory=list)

    @property
    def bounded_pieces(self) -> list[CorePiece]:
        return [p for p in self.pieces if p.status == "bounded"]

    @property
    def bounded_regions(self) -> list[CorePiece]:
        """Bounded pieces with nonempty interior."""
        return [p for p in self.bounded_pieces if p.full_dimensional]


@dataclass
class FlowGraph:
    """Vertices of the core with edges pointing down Φ."""

    graph: nx.DiGraph
    components: list[CoreComponent]
    ties: list[tuple[SignSubset, Point, Point]]


def functional(arr: Arrangement, A: SignSubset) -> tuple[Any, ...]:
    """Σ_{i∈A} a_i."""
    return tuple(
        QQ(sum(arr.normals[i][j] for i in A)) for j in range(arr.d)
    )


def phi(arr: Arrangement, A: SignSubset, v: Sequence[Any]) -> Any:
    """Φ on Δ_A: Σ_{i∈A} (v·a_i + r_i)."""
    total = QQ.zero
    for i in A:
        total += arr.offsets[i] + sum(
            (a * x for a, x in zip(arr.normals[i], v, strict=True)), QQ.zero
        )
    return total


def extended_core(arr: Arrangement) -> CoreReport:
    """Classify every Δ_A as empty, unbounded or bounded, A ordered by bitmask."""
    delta = arr.delta()
    if feasible(delta) and not bounded(delta):
        logger.warning(
            "Δ of %s is unbounded; the variety is not proper", arr.name or "?"
        )
    pieces = []
    for A in sign_subsets(arr.n):
        P = arr.delta(A)
        if not feasible(P):
            pieces.append(CorePiece(A, P, "empty", False))
            continue
        status = "bounded" if bounded(P) else "unbounded"
        pieces.append(CorePiece(A, P, status, full_dimensional(P)))
    report = CoreReport(arr, pieces)
    logger.debug(
        "Extended core of %s: %d nonempty pieces, %d bounded",
        arr.name or "?",
        sum(1 for p in pieces if p.status != "empty"),
        len(report.bounded_pieces),
    )
    return report


def _in_span(
    vector: tuple[Any, ...], generators: list[tuple[int, ...]], d: int
) -> bool:
    if not any(vector):
        return True
    if not generators:
        return False
    return rank([*generators, vector], d) == rank(generators, d)


def _fixed_faces_of(arr: Arrangement, piece: CorePiece) -> list[FixedFace]:
    sigma = functional(arr, piece.A)
    all_faces: list[Face] = faces(piece.polytope)
    values = {
        v: sum((s * x for s, x in zip(sigma, v, strict=True)), QQ.zero)
        for v in all_faces[-1].vertices
    }
    low = min(values.values())
    minimizers = frozenset(v for v, val in values.items() if val == low)
    out = []
    for f in all_faces:
        normals = [arr.normals[j] for j in sorted(f.active)]
        if not _in_span(sigma, normals, arr.d):
            continue
        out.append(
            FixedFace(
                piece.A,
                f.active,
                f.vertices,
                f.dimension,
                minimizing=frozenset(f.vertices) == minimizers,
            )
        )
    return out


def fixed_components(
    arr: Arrangement, report: CoreReport | None = None
) -> list[FixedFace]:
    """Fixed faces (A, B) of all bounded Δ_A: Σ_{i∈A} a_i ∈ span{a_j : j ∈ B}.

    Exactly one face per bounded piece is flagged as the minimizing face of
    Σ_{i∈A} a_i; for A = ∅ it is the whole of Δ.
    """
    report = report or extended_core(arr)
    fixed: list[FixedFace] = []
    for piece in report.bounded_pieces:
        fixed.extend(_fixed_faces_of(arr, piece))
    report.fixed = fixed
    return fixed


def core_components(
    arr: Arrangement, fixed: list[FixedFace] | None = None
) -> list[CoreComponent]:
    """Connected components of the union of the fixed faces.

    A face is a closed polytope, so two faces meet exactly when they share a
    vertex. Components are sorted by their smallest vertex.
    """
    fixed = fixed if fixed is not None else fixed_components(arr)
    graph = nx.Graph()
    for idx, f in enumerate(fixed):
        graph.add_node(("face", idx))
        for v in f.vertices:
            graph.add_edge(("face", idx), ("vertex", v))
    components = []
    for nodes in nx.connected_components(graph):
        face_ids = sorted(key for kind, key in nodes if kind == "face")
        members = tuple(fixed[i] for i in face_ids)
        verts = tuple(sorted({v for f in members for v in f.vertices}))
        components.append(
            CoreComponent(members, verts, max(f.dimension for f in members))
        )
    components.sort(key=lambda c: c.vertices[0])
    logger.debug("Fixed locus of %s: %d components", arr.name or "?", len(components))
    return components


def point_label(v: Sequence[Any]) -> str:
    return "(" + ",".join(format_rational(x) for x in v) + ")"


def flow_graph(arr: Arrangement, report: CoreReport | None = None) -> FlowGraph:
    """Digraph on core vertices with edges along polytope edges, down Φ.

    Edges inside pieces with A = ∅ carry no flow. An edge on which Φ is
    constant is a tie: it is reported and omitted.

    Raises:
        VerificationError: If the resulting digraph has a cycle.
    """
    report = report or extended_core(arr)
    fixed = report.fixed or fixed_components(arr, report)
    components = core_components(arr, fixed)
    owner = {v: k for k, c in enumerate(components) for v in c.vertices}
    graph = nx.DiGraph()
    ties: list[tuple[SignSubset, Point, Point]] = []
    for piece in report.bounded_pieces:
        for f in faces(piece.polytope):
            for v in f.vertices:
                if v not in graph:
                    graph.add_node(v, label=point_label(v), component=owner.get(v, -1))
            if f.dimension != 1 or piece.is_root:
                continue
            u, w = f.vertices
            pu, pw = phi(arr, piece.A, u), phi(arr, piece.A, w)
            if pu == pw:
                ties.append((piece.A, u, w))
                continue
            src, dst = (u, w) if pu > pw else (w, u)
            if graph.has_edge(src, dst):
                graph[src][dst]["pieces"].append(format_subset(piece.A))
            else:
                graph.add_edge(src, dst, pieces=[format_subset(piece.A)])
    if ties:
        logger.warning(
            "Flow of %s has %d tied edges; they are omitted", arr.name or "?", len(ties)
        )
    if not nx.is_directed_acyclic_graph(graph):
        raise VerificationError(f"Flow graph of {arr.name or '?'} has a cycle")
    return FlowGraph(graph, components, ties)
