"""Tests for report.py: report models, text rendering, DOT and report files."""

import json

import pytest


class TestModels:
    """Tests for the report builders."""

    @pytest.mark.unit
    def test_ring_model(self, four_lines):
        """Relations are canonical text; the Hilbert function is included."""
        from hkq.hypertoric import kirwan_presentation
        from hkq.report import ring_model

        model = ring_model(kirwan_presentation(four_lines, "H"))
        assert model.field == "QQ"
        assert model.generators == ["t1", "t2", "t3", "t4"]
        assert "t2*t3" in model.relations
        assert model.hilbert[:3] == [1, 2, 2]

    @pytest.mark.unit
    def test_hypertoric_report_without_core(self, four_lines):
        """Matroid data only; the core sections stay empty."""
        from hkq.hypertoric import kirwan_presentation
        from hkq.report import hypertoric_report

        report = hypertoric_report(four_lines, [kirwan_presentation(four_lines, "HTd")])
        assert report.simple
        assert report.smooth
        assert len(report.circuits) == 3
        assert {(p.S1, p.S2) for p in report.empty_pairs} == {
            ("{2,3}", "{}"),
            ("{1,4}", "{2}"),
            ("{1,3,4}", "{}"),
        }
        assert report.pieces == []
        assert report.flow is None

    @pytest.mark.unit
    def test_hypertoric_report_with_core(self, triangle):
        """The triangle core: eight pieces, seven fixed faces, one component."""
        from hkq.core import extended_core, flow_graph
        from hkq.report import hypertoric_report

        core = extended_core(triangle)
        flow = flow_graph(triangle, core)
        report = hypertoric_report(triangle, [], core, flow)
        assert len(report.pieces) == 8
        assert len(report.fixed) == 7
        assert report.components == 1
        assert report.flow.vertices == ["(0,0)", "(0,1)", "(1,0)"]

    @pytest.mark.unit
    def test_cogen_report(self, segment):
        """Volumes carry the chamber as rational strings."""
        from hkq.cogen import volume_polynomial
        from hkq.report import cogen_report

        volumes = [volume_polynomial(segment)]
        report = cogen_report(segment, volumes, checks={"toric": True})
        assert report.volumes[0].polynomial == "x1 + x2"
        assert report.volumes[0].chamber == ["0", "1"]
        assert report.checks == {"toric": True}

    @pytest.mark.unit
    def test_polygon_report(self, polygon_2348):
        """Short sets render 1-based."""
        from hkq.hyperpolygon import validate_alpha
        from hkq.report import polygon_report

        spec, family = validate_alpha(polygon_2348)
        report = polygon_report(spec, family)
        assert report.short_sets[:2] == ["{}", "{1}"]
        assert report.sprime == ["{1,2}", "{1,3}", "{2,3}"]
        assert report.fixed is None


class TestRendering:
    """Tests for render_text() and flow_dot()."""

    @pytest.mark.unit
    def test_text_is_indented_key_value(self, segment):
        """Booleans render yes/no and nested lists are indented."""
        from hkq.hypertoric import kirwan_presentation
        from hkq.report import hypertoric_report, render_text

        report = hypertoric_report(segment, [kirwan_presentation(segment, "H")])
        text = render_text(report)
        lines = text.splitlines()
        assert "simple: yes" in lines
        assert "presentations:" in lines
        assert any(line.startswith("    label: ") for line in lines)

    @pytest.mark.unit
    def test_rendering_is_deterministic(self, four_lines):
        """Two renderings of the same input are identical."""
        from hkq.hypertoric import kirwan_presentation
        from hkq.report import hypertoric_report, render_text

        rings = [kirwan_presentation(four_lines, "H")]
        first = render_text(hypertoric_report(four_lines, rings))
        second = render_text(hypertoric_report(four_lines, rings))
        assert first == second

    @pytest.mark.unit
    def test_flow_dot(self, four_lines):
        """A digraph with one quoted node per vertex and labeled edges."""
        from hkq.core import flow_graph
        from hkq.report import flow_dot

        flow = flow_graph(four_lines)
        dot = flow_dot(flow, "four_lines")
        assert dot.startswith('digraph "four_lines" {')
        assert dot.endswith("}\n")
        assert dot.count("->") == flow.graph.number_of_edges()
        assert dot.count("group=") == flow.graph.number_of_nodes()


class TestEmitReport:
    """Tests for emit_report()."""

    @pytest.mark.integration
    def test_writes_json_text_and_dot(self, out_dir, triangle):
        """Three files under the stem; the JSON parses back."""
        from hkq.core import flow_graph
        from hkq.report import emit_report, flow_dot, hypertoric_report

        flow = flow_graph(triangle)
        paths = emit_report(
            hypertoric_report(triangle, []), out_dir / "triangle", flow_dot(flow)
        )
        assert [p.suffix for p in paths] == [".json", ".txt", ".dot"]
        data = json.loads(paths[0].read_text(encoding="utf-8"))
        assert data["arrangement"]["name"] == "triangle"
        assert paths[1].read_text(encoding="utf-8").endswith("\n")

    @pytest.mark.integration
    def test_no_dot_without_flow(self, out_dir, segment):
        """Only JSON and text when no DOT source is given."""
        from hkq.report import emit_report, hypertoric_report

        paths = emit_report(hypertoric_report(segment, []), out_dir / "segment")
        assert len(paths) == 2

    @pytest.mark.integration
    def test_unwritable_location_raises(self, tmp_path, segment):
        """A regular file in place of the directory raises ReportError."""
        from hkq.exceptions import ReportError
        from hkq.report import emit_report, hypertoric_report

        blocker = tmp_path / "blocker"
        blocker.write_text("", encoding="utf-8")
        with pytest.raises(ReportError, match="Cannot write report"):
            emit_report(hypertoric_report(segment, []), blocker / "report")
