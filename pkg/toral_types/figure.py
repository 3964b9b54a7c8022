"""SVG picture of a portion of the Sp_4 apartment: the walls in a window, the
fixed region A^T (gray), Ω_A(x, s_0) (dotted) and the labeled points x, y, wy.
"""
import math
from fractions import Fraction
from typing import Optional, Sequence

import svgwrite

from toral_types.apartment import Region, omega_region
from toral_types.census import strong_unicity_failure_witness
from toral_types.defaults import DEFAULT_FIGURE_WINDOW, FIGURE_MARGIN, FIGURE_SCALE, FIGURE_STYLE
from toral_types.exceptions import ContractViolation
from toral_types.log import logger
from toral_types.roots import ApartmentPoint, in_fundamental_alcove
from toral_types.torus import TorusSpec, attachment_point, fixed_region

Window = tuple[Fraction, Fraction]


def clip_line_to_window(
    alpha: Sequence[int], level: Fraction, window: Window
) -> Optional[tuple[ApartmentPoint, ApartmentPoint]]:
    """Endpoints of {α(z) = level} inside the square window², exactly."""
    lo, hi = window
    a, b = alpha
    hits = set()
    for fixed in (lo, hi):
        if b != 0:
            y = (level - a * fixed) / b
            if lo <= y <= hi:
                hits.add((fixed, y))
        if a != 0:
            x = (level - b * fixed) / a
            if lo <= x <= hi:
                hits.add((x, fixed))
    if len(hits) < 2:
        return None
    ordered = sorted(hits)
    return ApartmentPoint(ordered[0]), ApartmentPoint(ordered[-1])


def _counterclockwise(points: list[ApartmentPoint]) -> list[ApartmentPoint]:
    cx = sum(float(p[0]) for p in points) / len(points)
    cy = sum(float(p[1]) for p in points) / len(points)
    return sorted(points, key=lambda p: math.atan2(float(p[1]) - cy, float(p[0]) - cx))


class _Canvas:
    def __init__(self, window: Window):
        self.lo, self.hi = window
        side = float(self.hi - self.lo) * FIGURE_SCALE + 2 * FIGURE_MARGIN
        self.dwg = svgwrite.Drawing(size=(round(side, 2), round(side, 2)), profile="full", debug=False)

    def xy(self, p: ApartmentPoint) -> tuple[float, float]:
        x = FIGURE_MARGIN + float(p[0] - self.lo) * FIGURE_SCALE
        y = FIGURE_MARGIN + float(self.hi - p[1]) * FIGURE_SCALE
        return round(x, 2), round(y, 2)

    def shape(self, vertices: list[ApartmentPoint], **style):
        """Polygon, segment or dot depending on the number of vertices."""
        if len(vertices) == 1:
            self.dwg.add(self.dwg.circle(center=self.xy(vertices[0]), r=FIGURE_STYLE["region_width"], **style))
        elif len(vertices) == 2:
            self.dwg.add(self.dwg.line(start=self.xy(vertices[0]), end=self.xy(vertices[1]), **style))
        else:
            points = [self.xy(v) for v in _counterclockwise(vertices)]
            self.dwg.add(self.dwg.polygon(points=points, **style))

    def label(self, p: ApartmentPoint, text: str):
        dx, dy = FIGURE_STYLE["label_offset"]
        x, y = self.xy(p)
        self.dwg.add(self.dwg.circle(center=(x, y), r=FIGURE_STYLE["point_radius"], fill=FIGURE_STYLE["point_fill"]))
        self.dwg.add(
            self.dwg.text(text, insert=(round(x + dx, 2), round(y + dy, 2)), font_size=FIGURE_STYLE["label_size"])
        )


def render_figure(spec: TorusSpec, s0, window: Window = DEFAULT_FIGURE_WINDOW) -> str:
    """SVG document for a rank-two torus.

    Raises:
        ContractViolation: if the torus is not of rank two or the window is empty.
    """
    if spec.n != 2:
        raise ContractViolation(f"Figures are only drawn for Sp_4 (n = 2), got n = {spec.n}.")
    window = (Fraction(window[0]), Fraction(window[1]))
    if window[0] >= window[1]:
        raise ContractViolation(f"Window {window} is empty.")
    rd = spec.root_datum
    x = attachment_point(spec)
    region: Region = fixed_region(spec)
    omega = omega_region(x, Fraction(s0), rd)
    canvas = _Canvas(window)
    dwg = canvas.dwg

    walls = dwg.g(id="walls", stroke=FIGURE_STYLE["wall_stroke"], stroke_width=FIGURE_STYLE["wall_width"])
    for alpha in rd.positive_roots:
        values = [a * alpha[0] + b * alpha[1] for a in window for b in window]
        for level in range(math.floor(min(values)), math.ceil(max(values)) + 1):
            segment = clip_line_to_window(alpha, Fraction(level), window)
            if segment:
                walls.add(dwg.line(start=canvas.xy(segment[0]), end=canvas.xy(segment[1])))
    dwg.add(walls)

    canvas.shape(
        region.vertices(),
        fill=FIGURE_STYLE["region_fill"],
        stroke=FIGURE_STYLE["region_stroke"],
        stroke_width=FIGURE_STYLE["region_width"],
        fill_opacity=0.8,
    )
    canvas.shape(
        omega.vertices(),
        fill="none",
        stroke=FIGURE_STYLE["omega_stroke"],
        stroke_width=FIGURE_STYLE["omega_width"],
        stroke_dasharray=FIGURE_STYLE["omega_dash"],
    )

    canvas.label(x, "x")
    pair = strong_unicity_failure_witness(spec)
    if pair:
        y, wy = sorted(pair, key=lambda p: not in_fundamental_alcove(p, rd))
        canvas.label(y, "y")
        canvas.label(wy, "wy")
    logger.info(f"Rendered the apartment of Sp_4 for {spec} with s0 = {s0}")
    return dwg.tostring()
