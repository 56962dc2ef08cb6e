"""
Result files: CSV tables (the contract) and small SVG plots (display only).

CSV cells hold floats with 6 significant digits; absent values are empty.
SVG plots are assembled from a handful of element writers and never read
back.
"""

import csv
import math
from dataclasses import dataclass, field, fields
from html import escape
from pathlib import Path
from typing import Iterable, List, Optional, Sequence, Tuple, Union

from common.errors import OutputError
from common.utils import get_logger

logger = get_logger(__name__)

Cell = Union[str, int, float, None]
Point = Tuple[float, float]


@dataclass(frozen=True)
class ResultRow:
    """One evaluated state. Measures not computed for a figure stay None."""

    family: str
    parameter: float
    discord: Optional[float] = None
    potential_discord: Optional[float] = None
    mutual_information: Optional[float] = None
    eof: Optional[float] = None
    entropy: Optional[float] = None
    correlation_rank: Optional[int] = None
    global_discord: Optional[float] = None

    def __post_init__(self) -> None:
        for f in fields(self):
            value = getattr(self, f.name)
            if isinstance(value, float) and not math.isfinite(value):
                raise ValueError(f"{f.name} is not finite: {value}")

    def sort_key(self) -> Tuple[str, float]:
        return (self.family, self.parameter)


FIELDNAMES = [f.name for f in fields(ResultRow)]


def format_cell(value: Cell) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        text = f"{value:.6g}"
        # Avoid "-0" for values rounded to zero
        return "0" if text in ("-0", "0") else text
    return str(value)


def write_csv(rows: Iterable[ResultRow], path: Union[str, Path]) -> Path:
    """Write rows sorted by family then parameter; returns the path."""
    path = Path(path)
    ordered = sorted(rows, key=ResultRow.sort_key)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(FIELDNAMES)
            for row in ordered:
                writer.writerow([format_cell(getattr(row, name)) for name in FIELDNAMES])
    except OSError as exc:
        raise OutputError(f"cannot write {path}: {exc}") from exc
    logger.info("wrote %d rows to %s", len(ordered), path)
    return path


# --- SVG ---------------------------------------------------------------------


def fmt_num(n: float) -> str:
    """Compact number for attributes: integers without a trailing '.0'."""
    if float(n).is_integer():
        return str(int(n))
    return f"{n:.1f}"


class SvgElement:
    tag = "g"

    def __init__(self, *children: "SvgElement", **attrs: Union[str, float]) -> None:
        self.children = list(children)
        self.attrs = {k.rstrip("_").replace("_", "-"): v for k, v in attrs.items()}

    def add(self, child: "SvgElement") -> "SvgElement":
        self.children.append(child)
        return child

    def render_attrs(self) -> str:
        parts = []
        for key, value in self.attrs.items():
            text = fmt_num(value) if isinstance(value, (int, float)) else str(value)
            parts.append(f' {key}="{escape(text, quote=True)}"')
        return "".join(parts)

    def render(self) -> str:
        if not self.children:
            return f"<{self.tag}{self.render_attrs()}/>"
        inner = "".join(child.render() for child in self.children)
        return f"<{self.tag}{self.render_attrs()}>{inner}</{self.tag}>"


class Circle(SvgElement):
    tag = "circle"

    def __init__(self, pos: Point, r: float = 2, **attrs: Union[str, float]) -> None:
        super().__init__(cx=pos[0], cy=pos[1], r=r, **attrs)


class Line(SvgElement):
    tag = "line"

    def __init__(self, a: Point, b: Point, **attrs: Union[str, float]) -> None:
        super().__init__(x1=a[0], y1=a[1], x2=b[0], y2=b[1], **attrs)


class Polyline(SvgElement):
    tag = "polyline"

    def __init__(self, points: Sequence[Point], **attrs: Union[str, float]) -> None:
        coords = " ".join(f"{fmt_num(x)},{fmt_num(y)}" for x, y in points)
        super().__init__(points=coords, fill="none", **attrs)


class Text(SvgElement):
    tag = "text"

    def __init__(self, text: str, pos: Point, **attrs: Union[str, float]) -> None:
        super().__init__(x=pos[0], y=pos[1], **attrs)
        self.text = text

    def render(self) -> str:
        return f"<{self.tag}{self.render_attrs()}>{escape(self.text)}</{self.tag}>"


class Svg(SvgElement):
    tag = "svg"


PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")


@dataclass
class Series:
    label: str
    points: List[Point]
    style: str = "points"  # "points" or "line"


@dataclass
class Plot:
    """Single-panel x/y plot with linear axes fitted to the data."""

    title: str
    x_label: str
    y_label: str
    series: List[Series] = field(default_factory=list)
    width: int = 640
    height: int = 480
    margin: int = 60

    def add_series(self, label: str, points: Iterable[Point], style: str = "points") -> None:
        kept = [(float(x), float(y)) for x, y in points if x is not None and y is not None]
        if kept:
            self.series.append(Series(label, sorted(kept) if style == "line" else kept, style))

    def _bounds(self) -> Tuple[float, float, float, float]:
        xs = [x for s in self.series for x, _ in s.points] or [0.0, 1.0]
        ys = [y for s in self.series for _, y in s.points] or [0.0, 1.0]
        x_min, x_max = min(xs), max(xs)
        y_min, y_max = min(0.0, min(ys)), max(ys)
        if x_max - x_min < 1e-12:
            x_max = x_min + 1.0
        if y_max - y_min < 1e-12:
            y_max = y_min + 1.0
        return x_min, x_max, y_min, y_max

    def render(self) -> str:
        x_min, x_max, y_min, y_max = self._bounds()
        left, top = self.margin, self.margin
        plot_w = self.width - 2 * self.margin
        plot_h = self.height - 2 * self.margin

        def transform(point: Point) -> Point:
            x, y = point
            return (
                round(left + plot_w * (x - x_min) / (x_max - x_min), 1),
                round(top + plot_h * (1.0 - (y - y_min) / (y_max - y_min)), 1),
            )

        svg = Svg(
            xmlns="http://www.w3.org/2000/svg",
            width=self.width,
            height=self.height,
            font_family="sans-serif",
            font_size=12,
        )
        svg.add(Text(self.title, (self.width / 2, top / 2), text_anchor="middle"))
        origin = (left, top + plot_h)
        svg.add(Line(origin, (left + plot_w, top + plot_h), stroke="black"))
        svg.add(Line(origin, (left, top), stroke="black"))
        svg.add(Text(self.x_label, (left + plot_w / 2, self.height - 15), text_anchor="middle"))
        svg.add(
            Text(
                self.y_label,
                (15, top + plot_h / 2),
                text_anchor="middle",
                transform=f"rotate(-90,15,{fmt_num(top + plot_h / 2)})",
            )
        )
        for value, anchor in ((x_min, "start"), (x_max, "end")):
            pos = transform((value, y_min))
            svg.add(Text(f"{value:.3g}", (pos[0], pos[1] + 16), text_anchor=anchor))
        for value in (y_min, y_max):
            pos = transform((x_min, value))
            svg.add(Text(f"{value:.3g}", (pos[0] - 6, pos[1] + 4), text_anchor="end"))

        for index, series in enumerate(self.series):
            color = PALETTE[index % len(PALETTE)]
            screen = [transform(p) for p in series.points]
            if series.style == "line":
                svg.add(Polyline(screen, stroke=color, stroke_width=1.5))
            else:
                group = svg.add(SvgElement(fill=color, fill_opacity=0.6))
                for pos in screen:
                    group.add(Circle(pos))
            legend_y = top + 14 * index
            svg.add(Line((left + plot_w - 120, legend_y), (left + plot_w - 100, legend_y), stroke=color, stroke_width=3))
            svg.add(Text(series.label, (left + plot_w - 95, legend_y + 4)))
        return svg.render() + "\n"


def write_svg(plot: Plot, path: Union[str, Path]) -> Path:
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(plot.render(), encoding="utf-8")
    except OSError as exc:
        raise OutputError(f"cannot write {path}: {exc}") from exc
    logger.info("wrote plot to %s", path)
    return path
