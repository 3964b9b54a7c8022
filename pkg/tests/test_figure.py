import xml.etree.ElementTree as ET
from fractions import Fraction

import pytest

from toral_types.defaults import FIGURE_STYLE
from toral_types.exceptions import ContractViolation
from toral_types.figure import clip_line_to_window, render_figure
from toral_types.roots import ApartmentPoint
from toral_types.torus import TorusSpec

SVG = "{http://www.w3.org/2000/svg}"
half = Fraction(1, 2)
window = (-half, Fraction(1))


def parse(spec, s0=Fraction(1, 10)):
    return ET.fromstring(render_figure(spec, s0))


def labels(root):
    return sorted(t.text for t in root.iter(SVG + "text"))


def test_ramified_pair_figure():
    root = parse(TorusSpec.from_counts(0, 2, 2))
    polygons = list(root.iter(SVG + "polygon"))
    assert len(polygons) == 2
    assert polygons[0].get("fill") == FIGURE_STYLE["region_fill"]
    assert polygons[1].get("fill") == "none"
    assert polygons[1].get("stroke-dasharray") == FIGURE_STYLE["omega_dash"]
    assert labels(root) == ["wy", "x", "y"]


def test_walls_are_clipped_to_the_window():
    root = parse(TorusSpec.from_counts(0, 2, 2))
    walls = next(g for g in root.iter(SVG + "g") if g.get("id") == "walls")
    assert len(list(walls)) == 13


def test_point_region_figure():
    root = parse(TorusSpec.from_counts(2, 0, 2))
    assert labels(root) == ["x"]
    fills = [c.get("fill") for c in root.iter(SVG + "circle")]
    assert FIGURE_STYLE["region_fill"] in fills


def test_segment_region_figure():
    root = parse(TorusSpec.from_counts(1, 1, 2))
    segments = [
        line for line in root.iter(SVG + "line") if line.get("stroke") == FIGURE_STYLE["region_stroke"]
    ]
    assert len(segments) == 1
    assert labels(root) == ["x"]


def test_figure_is_deterministic():
    spec = TorusSpec.from_counts(0, 2, 2)
    assert render_figure(spec, Fraction(1, 10)) == render_figure(spec, Fraction(1, 10))


def test_figure_needs_rank_two():
    with pytest.raises(ContractViolation):
        render_figure(TorusSpec.from_counts(1, 1, 3), Fraction(1, 10))


def test_figure_needs_a_window():
    with pytest.raises(ContractViolation):
        render_figure(TorusSpec.from_counts(0, 2, 2), Fraction(1, 10), (1, 0))


def test_clip_line_to_window():
    P = ApartmentPoint.of
    assert clip_line_to_window((1, -1), Fraction(0), window) == (P(-half, -half), P(1, 1))
    assert clip_line_to_window((2, 0), Fraction(1), window) == (P(half, -half), P(half, 1))
    assert clip_line_to_window((2, 0), Fraction(3), window) is None
    assert clip_line_to_window((1, 1), Fraction(2), window) is None
