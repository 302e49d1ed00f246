"""Standalone SVG radar graphs for metrics reports.

Four figure kinds are produced:

* modifiability: a bar on a [-3, 3] axis running from -P (portability,
  left) to +S (scalability, right) with a marker at its midpoint;
* surface: portability and scalability on the two upper axes and
  normalized complexity on the downward axis, joined into a triangle;
* autonomy: operator independence up, self-preservation down, strategy
  left and coordination right, joined into a quadrilateral whose doubled
  area is the autonomy total;
* panels: several of the above side by side, left to right in input order.

Output is byte-for-byte deterministic.  Plot geometry is exposed through
``data-cx``, ``data-cy`` and ``data-radius`` (or ``data-unit``) attributes
so emitted coordinates can be mapped back to metric values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence, Union
from xml.sax.saxutils import escape, quoteattr

from pmsmetrics.errors import NonpositiveReferenceError, RangeError, TooFewPanelsError
from pmsmetrics.metrics import AutonomyProfile, MetricsReport
from pmsmetrics.model import FACTOR_MAX

SVG_NS = "http://www.w3.org/2000/svg"

FIGURES = ("modifiability", "surface", "autonomy")

_AXIS_COLOR = "#555555"
_GRID_COLOR = "#cccccc"
_FILL = {"autonomy": "#4a7ebb", "surface": "#6aa84f", "modifiability": "#e69138"}

# Surface axes as (label, angle in degrees, counter-clockwise from +x).
_SURFACE_AXES = (("Portability", 150.0), ("Scalability", 30.0), ("Complexity", 270.0))


@dataclass(frozen=True)
class ComplexityNormalization:
    reference: float


@dataclass(frozen=True)
class RenderSpec:
    width: float = 600
    height: float = 600
    normalization: Optional[ComplexityNormalization] = None
    labels: bool = True

    def __post_init__(self) -> None:
        if self.width < 100 or self.height < 100:
            raise RangeError(f"panel size {self.width}x{self.height} is below the 100x100 minimum")
        if self.normalization is not None and not self.normalization.reference > 0:
            raise NonpositiveReferenceError(f"complexity reference {self.normalization.reference!r} must be > 0")


def fmt(x: float) -> str:
    """Shortest exact text for a coordinate; integers print without a point."""
    x = float(x)
    if x == 0:
        return "0"
    if x.is_integer() and abs(x) < 1e15:
        return str(int(x))
    return repr(x)


def format_total(total: float) -> str:
    if total == 0:
        return "0"
    text = f"{total:.12g}"
    if "." not in text and "e" not in text:
        text += ".0"
    return text


def _attrs(**kwargs) -> str:
    parts = []
    for key, value in kwargs.items():
        if value is None:
            continue
        if isinstance(value, float) or isinstance(value, int) and not isinstance(value, bool):
            value = fmt(value)
        parts.append(f"{key.rstrip('_').replace('_', '-')}={quoteattr(str(value))}")
    return " ".join(parts)


def _el(tag: str, text: str | None = None, **kwargs) -> str:
    attrs = _attrs(**kwargs)
    head = f"<{tag} {attrs}" if attrs else f"<{tag}"
    if text is None:
        return head + "/>"
    return f"{head}>{escape(text)}</{tag}>"


@dataclass
class _Frame:
    """Drawing area of one panel in absolute SVG coordinates."""

    x0: float
    y0: float
    width: float
    height: float
    title: str | None = None
    elements: list[str] = field(default_factory=list)

    @property
    def size(self) -> float:
        return min(self.width, self.height)

    @property
    def cx(self) -> float:
        return self.x0 + self.width / 2

    @property
    def cy(self) -> float:
        return self.y0 + self.height * 0.54

    @property
    def radius(self) -> float:
        return self.size * 0.34

    @property
    def font(self) -> float:
        return self.size * 0.03

    def text(self, x: float, y: float, content: str, cls: str, anchor: str = "middle", scale: float = 1.0) -> None:
        self.elements.append(_el("text", content, class_=cls, x=x, y=y, font_size=self.font * scale,
                                 text_anchor=anchor, font_family="sans-serif", fill="#222222"))

    def add_title(self) -> None:
        if self.title:
            self.text(self.cx, self.y0 + self.height * 0.07, self.title, "panel-title", scale=1.3)


def _check_unit(name: str, value: float, hi: float) -> None:
    if not 0.0 <= value <= hi:
        raise RangeError(f"{name} = {value!r} outside [0, {fmt(hi)}]")


# -- figure bodies -----------------------------------------------------------

def _draw_modifiability(f: _Frame, report: MetricsReport, labels: bool) -> None:
    p, s = report.portability, report.scalability
    _check_unit("portability", p, FACTOR_MAX)
    _check_unit("scalability", s, FACTOR_MAX)
    unit = f.radius / FACTOR_MAX
    cx, cy = f.cx, f.cy
    f.elements.append(_el("line", class_="axis", x1=cx - f.radius, y1=cy, x2=cx + f.radius, y2=cy,
                          stroke=_AXIS_COLOR, stroke_width=f.size * 0.003))
    tick = f.size * 0.015
    for v in range(-3, 4):
        cls = "zero-tick" if v == 0 else "tick"
        x = cx + v * unit
        f.elements.append(_el("line", class_=cls, x1=x, y1=cy - tick * (2 if v == 0 else 1), x2=x,
                              y2=cy + tick * (2 if v == 0 else 1), stroke=_AXIS_COLOR, stroke_width=f.size * 0.003))
        if labels:
            f.text(x, cy + tick * 4, str(abs(v)), "tick-label", scale=0.8)
    f.elements.append(_el("line", class_="modifiability", x1=cx - p * unit, y1=cy, x2=cx + s * unit, y2=cy,
                          stroke=_FILL["modifiability"], stroke_width=f.size * 0.03, stroke_linecap="butt",
                          data_cx=cx, data_unit=unit))
    mid = (s - p) / 2
    f.elements.append(_el("circle", class_="midpoint", cx=cx + mid * unit, cy=cy, r=f.size * 0.015,
                          fill="#222222", data_value=mid))
    f.text(cx, cy - f.size * 0.08, "Portability | Scalability", "axis-label")
    if labels:
        f.text(cx - f.radius, cy - f.size * 0.04, f"P = {p:g}", "value-label", anchor="start")
        f.text(cx + f.radius, cy - f.size * 0.04, f"S = {s:g}", "value-label", anchor="end")


def _draw_surface(f: _Frame, report: MetricsReport, reference: float, labels: bool) -> None:
    _check_unit("portability", report.portability, FACTOR_MAX)
    _check_unit("scalability", report.scalability, FACTOR_MAX)
    if report.complexity < 0:
        raise RangeError(f"complexity = {report.complexity!r} is negative")
    clipped = report.complexity > reference
    fractions = (report.portability / FACTOR_MAX, report.scalability / FACTOR_MAX,
                 min(report.complexity / reference, 1.0))
    cx, cy, r = f.cx, f.cy, f.radius
    points = []
    for (label, angle), frac in zip(_SURFACE_AXES, fractions):
        dx, dy = math.cos(math.radians(angle)), -math.sin(math.radians(angle))
        f.elements.append(_el("line", class_="axis", data_axis=label.lower(), x1=cx, y1=cy,
                              x2=cx + r * dx, y2=cy + r * dy, stroke=_AXIS_COLOR, stroke_width=f.size * 0.003))
        points.append((cx + r * frac * dx, cy + r * frac * dy))
        if labels:
            f.text(cx + r * 1.12 * dx, cy + r * 1.12 * dy, label, "axis-label")
    f.elements.append(_el("polygon", class_="surface", points=_points(points), fill=_FILL["surface"],
                          fill_opacity=0.5, stroke=_FILL["surface"], stroke_width=f.size * 0.004,
                          data_cx=cx, data_cy=cy, data_radius=r, data_reference=reference,
                          data_clipped="true" if clipped else "false"))
    if labels:
        f.text(cx, f.y0 + f.height * 0.97,
               f"P = {report.portability:g}, S = {report.scalability:g}, C = {report.complexity:g} (ref {reference:g})",
               "value-label", scale=0.8)
    if clipped:
        f.text(cx, f.y0 + f.height * 0.13, "complexity exceeds reference; clipped", "warning", scale=0.8)


def _draw_autonomy(f: _Frame, profile: AutonomyProfile, labels: bool) -> None:
    values = (profile.a_i, profile.a_c, profile.a_p, profile.a_s)
    for name, v in zip(("a_i", "a_c", "a_p", "a_s"), values):
        _check_unit(name, v, 100.0)
    cx, cy, r = f.cx, f.cy, f.radius
    # up, right, down, left
    directions = ((0.0, -1.0), (1.0, 0.0), (0.0, 1.0), (-1.0, 0.0))
    names = ("operator_independence", "coordination", "self_preservation", "strategy")
    captions = ("Operator independence", "Coordination", "Self-preservation", "Strategy")

    for level in (0.25, 0.5, 0.75, 1.0):
        grid = [(cx + r * level * dx, cy + r * level * dy) for dx, dy in directions]
        f.elements.append(_el("polygon", class_="grid", points=_points(grid), fill="none",
                              stroke=_GRID_COLOR, stroke_width=f.size * 0.002))
    for name, (dx, dy) in zip(names, directions):
        f.elements.append(_el("line", class_="axis", data_axis=name, x1=cx, y1=cy, x2=cx + r * dx,
                              y2=cy + r * dy, stroke=_AXIS_COLOR, stroke_width=f.size * 0.003))

    vertices = [(cx + r * v / 100.0 * dx, cy + r * v / 100.0 * dy) for v, (dx, dy) in zip(values, directions)]
    f.elements.append(_el("polygon", class_="autonomy-area", points=_points(vertices), fill=_FILL["autonomy"],
                          fill_opacity=0.5, stroke=_FILL["autonomy"], stroke_width=f.size * 0.004,
                          data_cx=cx, data_cy=cy, data_radius=r))
    if labels:
        for caption, v, (dx, dy) in zip(captions, values, directions):
            anchor = "start" if dx > 0 else "end" if dx < 0 else "middle"
            offset = f.font * (1.6 if dy > 0 else -0.6 if dy < 0 else 0.3)
            f.text(cx + r * 1.04 * dx, cy + r * dy + offset, f"{caption} {v:g}%", "axis-label", anchor=anchor)
        f.text(cx - f.radius, f.y0 + f.height * 0.97, "Autonomy total", "total-label", anchor="start")
    f.text(cx + f.radius, f.y0 + f.height * 0.97, format_total(profile.total), "autonomy-total", anchor="end", scale=1.2)


def _points(points: Sequence[tuple[float, float]]) -> str:
    return " ".join(f"{fmt(x)},{fmt(y)}" for x, y in points)


# -- documents ---------------------------------------------------------------

def _document(width: float, height: float, title: str, frames: Sequence[_Frame]) -> str:
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="{SVG_NS}" version="1.1" width="{fmt(width)}" height="{fmt(height)}" '
        f'viewBox="0 0 {fmt(width)} {fmt(height)}">',
        f"<title>{escape(title)}</title>",
        _el("rect", class_="background", x=0, y=0, width=width, height=height, fill="#ffffff"),
    ]
    for i, frame in enumerate(frames):
        lines.append(f'<g class="panel" data-index="{i}">')
        lines.extend(frame.elements)
        lines.append("</g>")
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def _reference(spec: RenderSpec, reports: Sequence[MetricsReport]) -> float:
    if spec.normalization is not None:
        return spec.normalization.reference
    largest = max((r.complexity for r in reports), default=0.0)
    return largest if largest > 0 else 1.0


def _pms_title(report: MetricsReport) -> str:
    return f"{report.pms.name} {report.pms.version}"


def render_modifiability(report: MetricsReport, spec: RenderSpec = RenderSpec()) -> str:
    frame = _Frame(0, 0, spec.width, spec.height, _pms_title(report) if spec.labels else None)
    frame.add_title()
    _draw_modifiability(frame, report, spec.labels)
    return _document(spec.width, spec.height, f"Portability and scalability: {_pms_title(report)}", [frame])


def render_surface(report: MetricsReport, spec: RenderSpec = RenderSpec()) -> str:
    frame = _Frame(0, 0, spec.width, spec.height, _pms_title(report) if spec.labels else None)
    frame.add_title()
    _draw_surface(frame, report, _reference(spec, [report]), spec.labels)
    return _document(spec.width, spec.height, f"Complexity with portability and scalability: {_pms_title(report)}",
                     [frame])


def render_autonomy(profile: AutonomyProfile, spec: RenderSpec = RenderSpec(), title: str | None = None) -> str:
    frame = _Frame(0, 0, spec.width, spec.height, title if spec.labels else None)
    frame.add_title()
    _draw_autonomy(frame, profile, spec.labels)
    return _document(spec.width, spec.height, f"Autonomy: {title}" if title else "Autonomy", [frame])


PanelItem = tuple[str, Union[MetricsReport, AutonomyProfile]]


def render_panels(items: Sequence[PanelItem], spec: RenderSpec = RenderSpec(), figure: str = "autonomy") -> str:
    """Draw one panel per item, left to right, all on a shared scale.

    Autonomy profiles always render as autonomy radars; reports render as
    ``figure``.  Surface panels share one complexity reference.
    """
    if len(items) < 2:
        raise TooFewPanelsError(f"need at least 2 panels, got {len(items)}")
    if figure not in FIGURES:
        raise ValueError(f"unknown figure kind {figure!r}")
    reports = [obj for _, obj in items if isinstance(obj, MetricsReport)]
    reference = _reference(spec, reports)
    frames = []
    for i, (title, obj) in enumerate(items):
        frame = _Frame(i * spec.width, 0, spec.width, spec.height, title)
        frame.add_title()
        if isinstance(obj, AutonomyProfile):
            _draw_autonomy(frame, obj, spec.labels)
        elif figure == "autonomy":
            _draw_autonomy(frame, obj.autonomy, spec.labels)
        elif figure == "surface":
            _draw_surface(frame, obj, reference, spec.labels)
        else:
            _draw_modifiability(frame, obj, spec.labels)
        frames.append(frame)
    titles = ", ".join(title for title, _ in items)
    return _document(spec.width * len(items), spec.height, f"Comparison: {titles}", frames)
