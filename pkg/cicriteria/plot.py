"""SVG rendering of the (d, n)-plane for one G/P.

Output is deterministic: elements are emitted in a fixed order and every
coordinate is written with ``%f`` (six decimals).
"""
import logging
import math
import os
import tempfile
from pathlib import Path
from typing import Callable, Optional, Sequence
from xml.sax.saxutils import escape

from cicriteria.chern_plane import degree_lower_bound
from cicriteria.ci_classifier import Region, evaluate
from cicriteria.errors import DataUnavailableError, PreconditionError
from cicriteria.exact_arith import DEFAULT_DIGITS, as_text
from cicriteria.root_systems import VarietyDescriptor, invariants

logger = logging.getLogger("cicriteria.info")

PREAMBLE = """\
<?xml version="1.0" standalone="no"?>
<!DOCTYPE svg PUBLIC "-//W3C//DTD SVG 1.1//EN"
"http://www.w3.org/Graphics/SVG/1.1/DTD/svg11.dtd">
<svg width="%(width)f" height="%(height)f" viewBox="0 0 %(width)f %(height)f" \
version="1.1" xmlns="http://www.w3.org/2000/svg">
<rect x="0.000000" y="0.000000" width="%(width)f" height="%(height)f" \
style="fill:#ffffff"/>
"""

POSTAMBLE = """\
</svg>
"""

REGION_COLORS = {
    Region.EMPTY_BELOW_EXCLUSION: "#d9d9d9",
    Region.COMET: "#fddbc7",
    Region.CHECKER: "#f4a582",
    Region.HORIZONTAL: "#92c5de",
    Region.GRID: "#4393c3",
    Region.VERTICAL: "#d1e5f0",
    Region.UNKNOWN: "#fff7bc",
}

PLOT_WIDTH = 640.0
PLOT_HEIGHT = 420.0
MARGIN = 50.0
MAX_COLUMNS = 120
MAX_ROWS = 60
CURVE_SAMPLES = 200


class SVG:
    """Accumulates SVG elements in data coordinates mapped onto a fixed canvas."""

    def __init__(self, x_max: float, y_max: float):
        self.x_max = x_max
        self.y_max = y_max
        self.commands: list[str] = []

    def to_canvas(self, x: float, y: float) -> tuple[float, float]:
        return (
            MARGIN + x * PLOT_WIDTH / self.x_max,
            MARGIN + PLOT_HEIGHT - y * PLOT_HEIGHT / self.y_max,
        )

    def inside(self, x: float, y: float) -> bool:
        return 0 <= x <= self.x_max and 0 <= y <= self.y_max

    def render(self) -> str:
        width = PLOT_WIDTH + 2 * MARGIN
        height = PLOT_HEIGHT + 2 * MARGIN
        body = "".join(item + "\n" for item in self.commands)
        return PREAMBLE % {"width": width, "height": height} + body + POSTAMBLE

    def rect(self, x: float, y: float, w: float, h: float, fill: str) -> None:
        left, top = self.to_canvas(x, y + h)
        right, bottom = self.to_canvas(x + w, y)
        self.commands.append(
            '<rect x="%f" y="%f" width="%f" height="%f" style="fill:%s;stroke:none"/>'
            % (left, top, right - left, bottom - top, fill)
        )

    def circle(self, x: float, y: float, radius: float, ident: str = "") -> None:
        cx, cy = self.to_canvas(x, y)
        id_attr = f' id="{ident}"' if ident else ""
        self.commands.append(
            '<circle%s cx="%f" cy="%f" r="%f" style="fill:#000000;stroke:none"/>'
            % (id_attr, cx, cy, radius)
        )

    def line(
        self,
        points: Sequence[tuple[float, float]],
        color: str = "#000000",
        width: float = 1.0,
        dashed: bool = False,
    ) -> None:
        visible = [point for point in points if self.inside(*point)]
        if len(visible) < 2:
            return
        dash = ";stroke-dasharray:6,4" if dashed else ""
        self.commands.append(
            '<polyline points="%s" style="fill:none;stroke:%s;stroke-width:%f%s"/>'
            % (
                " ".join("%f,%f" % self.to_canvas(*point) for point in visible),
                color,
                width,
                dash,
            )
        )

    def text(self, x: float, y: float, text: str, color: str = "#333333") -> None:
        cx, cy = self.to_canvas(x, y)
        self.commands.append(
            '<text x="%f" y="%f" fill="%s" font-size="11" font-family="monospace">'
            "%s</text>" % (cx, cy, color, escape(text))
        )

    def raw_text(self, cx: float, cy: float, text: str) -> None:
        self.commands.append(
            '<text x="%f" y="%f" fill="#333333" font-size="11" font-family="monospace">'
            "%s</text>" % (cx, cy, escape(text))
        )


def _curve(fn: Callable[[float], float], d_max: float) -> list[tuple[float, float]]:
    return [
        (d_max * i / CURVE_SAMPLES, fn(d_max * i / CURVE_SAMPLES))
        for i in range(CURVE_SAMPLES + 1)
    ]


def default_d_max(m: int, unsharp_bound: float) -> int:
    return max(10, 2 * max(m * m, math.ceil(unsharp_bound)))


def plane_figure(
    desc: VarietyDescriptor,
    d_max: Optional[int] = None,
    digits: int = DEFAULT_DIGITS,
) -> str:
    inv = invariants(desc)
    if inv.sp is None:
        raise DataUnavailableError(
            f"data unavailable: sp_V is not tabulated for {inv.label}"
        )
    m, p = inv.m, inv.p_pos
    if m < 1 or p < 3:
        raise PreconditionError(
            f"plane figure needs m >= 1 and p >= 3 for {inv.label}"
        )
    unsharp = degree_lower_bound(inv, sharp=False)
    sharp = degree_lower_bound(inv, sharp=True, digits=digits)
    if d_max is None:
        d_max = default_d_max(m, float(unsharp))
    if d_max < 1:
        raise PreconditionError(f"d_max must be >= 1, got {d_max}")
    n_max = max(2 * m + 2, math.ceil(2 * math.sqrt(d_max)) + 2)
    svg = SVG(float(d_max), float(n_max))

    d_step = max(1, math.ceil(d_max / MAX_COLUMNS))
    n_step = max(1, math.ceil(n_max / MAX_ROWS))
    for d in range(1, d_max + 1, d_step):
        for n in range(1, n_max + 1, n_step):
            region = evaluate(inv, desc, d, n, digits).region
            svg.rect(d - 0.5, n - 0.5, d_step, n_step, REGION_COLORS[region])

    svg.line([(0, 0), (d_max, 0)], width=1.5)
    svg.line([(0, 0), (0, n_max)], width=1.5)
    svg.line(_curve(lambda d: 2 * math.sqrt(d), d_max), width=1.5)
    # drawing only; the decision uses the Segre numbers
    cos_max = math.cos(math.pi / (p - 1))
    svg.line(_curve(lambda d: 2 * cos_max * math.sqrt(d), d_max), width=1.5)
    svg.line(_curve(lambda d: d / m + m, d_max), color="#2166ac", width=1.5)
    svg.line([(m * m, 0), (m * m, n_max)], width=2.0)
    svg.line(
        [(float(unsharp), 0), (float(unsharp), n_max)], color="#b2182b", width=2.0
    )
    svg.line(
        [(float(sharp), 0), (float(sharp), n_max)],
        color="#b2182b",
        width=2.0,
        dashed=True,
    )
    svg.circle(m * m, 2 * m, 4.0, ident="tangency")

    svg.raw_text(MARGIN, MARGIN - 30, f"{inv.label}  m={m}  p={p}  sp={inv.sp}")
    svg.raw_text(
        MARGIN,
        MARGIN - 14,
        f"tangency ({m * m}, {2 * m})  bound d={as_text(unsharp)}  "
        f"sharp d={float(sharp):.6f}",
    )
    svg.text(0, 0, "0")
    svg.raw_text(MARGIN + PLOT_WIDTH + 8, MARGIN + PLOT_HEIGHT, "d")
    svg.raw_text(MARGIN - 14, MARGIN - 2, "n")
    logger.info(
        "[plot][%s][d_max:%s][n_max:%s][elements:%s]",
        inv.label,
        d_max,
        n_max,
        len(svg.commands),
    )
    return svg.render()


def write_svg(content: str, path: Path) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(
        prefix=path.name + ".", suffix=".tmp", dir=path.parent
    )
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as file:
            file.write(content)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
