"""Layered SVG figures of the uniqueness regions.

One figure per dimension: literature regions as hatched or tinted
areas, the new subcritical range as a green fill, the critical cases as
curve overlays along their tied powers, and the open cases as slash
hatching plus dashed curve segments.  Area layers are painted from a
region grid cell by cell (vertical runs merged into single rectangles);
critical-power layers cannot be rastered meaningfully, since lattice
cells almost never satisfy an exact power equality, so they are drawn
as polylines along ``alpha = (n+2s)/(n-2s)`` or ``alpha = 4/(n-2s)``
with each sample kept only where the layer's predicate holds there.

Output is a standalone SVG built from plain strings: no timestamps, no
randomness, byte-identical across runs.  Colors are tool constants; the
source captions fix only color names and hatch directions.
"""

from __future__ import annotations

from dataclasses import dataclass

from .exact import Q, format_rational, rat
from .predicates import PREDICATES, region_predicate
from .regions import TRUE, GridSpec, RegionGrid, scan
from .scenarios import ProblemParams

# tied powers for curve layers: alpha as a function of (n, s)
_POWERS = {
    "scale": lambda n, s: (n + 2 * s) / (n - 2 * s),
    "energy": lambda n, s: 4 / (n - 2 * s),
}


@dataclass(frozen=True, slots=True)
class LayerSpec:
    """One paint layer: an id, a role label, and what it draws.

    ``rasters`` lists predicate ids whose or-fold fills cells;
    ``curves`` lists (predicate id, power name) pairs drawn as
    polylines along the named power.  A layer may have either or both.
    """

    id: str
    label: str
    style: str
    rasters: tuple[str, ...] = ()
    curves: tuple[tuple[str, str], ...] = ()


@dataclass(frozen=True, slots=True)
class FigureSpec:
    """Layer stack and axes of one figure; later layers paint on top."""

    n: int
    layers: tuple[LayerSpec, ...]
    alpha_max: Q

    @property
    def legend(self) -> tuple[str, ...]:
        return tuple(layer.label for layer in self.layers)


_ALPHA_MAX = {3: rat(4), 4: rat(5, 2), 5: rat(2)}

# fill/stroke constants per style token
_STYLE_COLOR = {
    "hatch-vertical": "#4878b8",
    "hatch-horizontal": "#8a5fc0",
    "hatch-oblique": "#2e8b57",
    "area-red": "#c03a3a",
    "area-green": "#3f9e3f",
    "curve-yellow": "#dcae00",
    "hatch-slash": "#6f6f6f",
}


def figure_spec(n: int) -> FigureSpec:
    """The layer stack for dimension n.

    Dimensions 3 to 5 carry seven layers; 6 and up share one five-layer
    stack (two literature regions are stated only for lower dimensions)
    drawn for whichever n is requested.
    """
    if n < 3:
        raise ValueError("figures cover dimension 3 and higher")
    open_power = "scale" if n == 3 else "energy"
    kato = LayerSpec("kato", "classical subcritical uniqueness",
                     "hatch-vertical", rasters=("kato",))
    rogers = LayerSpec("rogers", "uniqueness via generalized dispersive bounds",
                       "hatch-oblique", rasters=("rogers",))
    new_sub = LayerSpec("new-subcritical", "new subcritical range",
                        "area-green", rasters=("thm11", "thm12"))
    new_crit = LayerSpec(
        "new-critical", "new critical cases", "curve-yellow",
        curves=(("thm15", "scale"), ("thm16", "energy")),
    )
    open_layer = LayerSpec(
        "open", "open cases", "hatch-slash",
        rasters=("open-sub",), curves=(("open-crit", open_power),),
    )
    if n >= 6:
        return FigureSpec(
            n=n,
            layers=(kato, rogers, new_sub, new_crit, open_layer),
            alpha_max=rat(3, 2),
        )
    ft = LayerSpec("furioli-terraneo", "uniqueness in homogeneous spaces",
                   "hatch-horizontal", rasters=("furioli-terraneo",))
    wt_rasters = ("win-tsutsumi-sub",) if n == 3 else ()
    wt = LayerSpec("win-tsutsumi", "improved low-dimension uniqueness",
                   "area-red", rasters=wt_rasters,
                   curves=(("win-tsutsumi-crit", "energy"),))
    return FigureSpec(
        n=n,
        layers=(kato, ft, rogers, wt, new_sub, new_crit, open_layer),
        alpha_max=_ALPHA_MAX[n],
    )


def figure_grid(spec: FigureSpec, step: Q = rat(1, 64)) -> RegionGrid:
    """Scan every raster target the figure needs, over its axes."""
    targets = []
    for layer in spec.layers:
        for t in layer.rasters:
            if t not in targets:
                targets.append(t)
    grid_spec = GridSpec(
        n=spec.n,
        s_range=(rat(0), rat(1)),
        alpha_range=(rat(0), spec.alpha_max),
        step=rat(step),
    )
    return scan(grid_spec, targets)


# --------------------------------------------------------------------------
# SVG assembly
# --------------------------------------------------------------------------

_PLOT_X, _PLOT_Y = 70, 46
_PLOT_W, _PLOT_H = 530, 440
_LEGEND_X = _PLOT_X + _PLOT_W + 26
_WIDTH, _HEIGHT = _LEGEND_X + 300, _PLOT_Y + _PLOT_H + 58


def _fmt(x: float) -> str:
    return f"{x:.2f}"


def _pattern_def(style: str, layer_id: str) -> str:
    color = _STYLE_COLOR[style]
    pid = f"{style}-{layer_id}"
    if style == "hatch-vertical":
        path = '<path d="M 3 0 L 3 7" stroke="%s" stroke-width="1.4"/>' % color
    elif style == "hatch-horizontal":
        path = '<path d="M 0 3 L 7 3" stroke="%s" stroke-width="1.4"/>' % color
    elif style == "hatch-oblique":
        path = '<path d="M 0 7 L 7 0" stroke="%s" stroke-width="1.4"/>' % color
    elif style == "hatch-slash":
        path = '<path d="M 0 0 L 7 7" stroke="%s" stroke-width="1.6"/>' % color
    else:
        return ""
    return (
        f'<pattern id="{pid}" width="7" height="7" '
        f'patternUnits="userSpaceOnUse">{path}</pattern>'
    )


def _layer_paint(style: str, layer_id: str) -> str:
    if style.startswith("hatch-"):
        return f"url(#{style}-{layer_id})"
    return _STYLE_COLOR[style]


def _ticks(hi: Q) -> list[Q]:
    vals = []
    v = rat(0)
    step = rat(1, 4) if hi <= 1 else rat(1, 2)
    while v <= hi:
        vals.append(v)
        v = v + step
    return vals


def render_figure(f: FigureSpec, grid: RegionGrid) -> bytes:
    """Paint the figure's layers over the grid into standalone SVG."""
    spec = grid.spec
    if spec.n != f.n:
        raise ValueError("grid was scanned for a different dimension")
    if spec.s_range != (rat(0), rat(1)) or spec.alpha_range != (rat(0), f.alpha_max):
        raise ValueError("grid does not cover the figure's axes")
    for layer in f.layers:
        for t in layer.rasters:
            if t not in grid.targets:
                raise ValueError(
                    f"layer {layer.id!r} needs target {t!r}, absent from the grid"
                )

    amax = f.alpha_max

    def sx(s: Q) -> float:
        return _PLOT_X + float(s) * _PLOT_W

    def sy(a: Q) -> float:
        return _PLOT_Y + _PLOT_H - float(a / amax) * _PLOT_H

    cell_w = float(spec.step) * _PLOT_W
    cell_h = float(spec.step / amax) * _PLOT_H

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_WIDTH}" '
        f'height="{_HEIGHT}" viewBox="0 0 {_WIDTH} {_HEIGHT}">',
        f'<rect width="{_WIDTH}" height="{_HEIGHT}" fill="#ffffff"/>',
        "<defs>",
    ]
    for layer in f.layers:
        pat = _pattern_def(layer.style, layer.id)
        if pat:
            parts.append(pat)
    parts.append("</defs>")
    parts.append(
        f'<text x="{_PLOT_X}" y="26" font-family="Helvetica, Arial, sans-serif" '
        f'font-size="17" font-weight="bold">n = {f.n}</text>'
    )

    s_pts = spec.s_points()
    alpha_pts = spec.alpha_points()

    for layer in f.layers:
        group = [f'<g id="layer-{layer.id}">']
        if layer.rasters:
            idx = [grid.targets.index(t) for t in layer.rasters]
            paint = _layer_paint(layer.style, layer.id)
            opacity = ' fill-opacity="0.45"' if layer.style.startswith("area-") else ""
            for s in s_pts:
                run_start = None
                run_len = 0
                for j, a in enumerate(alpha_pts + (None,)):
                    hit = a is not None and any(
                        grid.cells[(s, a)][i] == TRUE for i in idx
                    )
                    if hit:
                        if run_start is None:
                            run_start = a
                        run_len += 1
                        run_end = a
                    elif run_start is not None:
                        x = sx(s) - cell_w / 2
                        y = sy(run_end) - cell_h / 2
                        group.append(
                            f'<rect x="{_fmt(x)}" y="{_fmt(y)}" '
                            f'width="{_fmt(cell_w)}" '
                            f'height="{_fmt(run_len * cell_h)}" '
                            f'fill="{paint}"{opacity}/>'
                        )
                        run_start, run_len = None, 0
        for pred_id, power_name in layer.curves:
            power = _POWERS[power_name]
            color = "#333333" if layer.id == "open" else _STYLE_COLOR[layer.style]
            dash = ' stroke-dasharray="10 6"' if layer.id == "open" else ""
            width = 4.0 if layer.style == "curve-yellow" else 3.2
            runs: list[list[tuple[float, float]]] = []
            current: list[tuple[float, float]] = []
            for s in s_pts:
                keep = False
                if 2 * s < f.n:
                    alpha = power(f.n, s)
                    if alpha <= amax:
                        p = ProblemParams(f.n, s, alpha)
                        keep = region_predicate(pred_id, p)
                if keep:
                    current.append((sx(s), sy(alpha)))
                elif current:
                    runs.append(current)
                    current = []
            if current:
                runs.append(current)
            for run in runs:
                if len(run) == 1:
                    x, y = run[0]
                    group.append(
                        f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="3.2" '
                        f'fill="{color}"/>'
                    )
                else:
                    pts = " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in run)
                    group.append(
                        f'<polyline points="{pts}" fill="none" '
                        f'stroke="{color}" stroke-width="{width}"{dash}/>'
                    )
        group.append("</g>")
        parts.extend(group)

    # axes over the layers so region fills never obscure them
    parts.append(
        f'<rect x="{_PLOT_X}" y="{_PLOT_Y}" width="{_PLOT_W}" '
        f'height="{_PLOT_H}" fill="none" stroke="#222" stroke-width="1.4"/>'
    )
    font = 'font-family="Helvetica, Arial, sans-serif" font-size="13"'
    for s in _ticks(rat(1)):
        x = sx(s)
        parts.append(
            f'<line x1="{_fmt(x)}" y1="{_PLOT_Y + _PLOT_H}" x2="{_fmt(x)}" '
            f'y2="{_PLOT_Y + _PLOT_H + 6}" stroke="#222" stroke-width="1.2"/>'
        )
        parts.append(
            f'<text x="{_fmt(x)}" y="{_PLOT_Y + _PLOT_H + 22}" {font} '
            f'text-anchor="middle">{format_rational(s)}</text>'
        )
    for a in _ticks(amax):
        y = sy(a)
        parts.append(
            f'<line x1="{_PLOT_X - 6}" y1="{_fmt(y)}" x2="{_PLOT_X}" '
            f'y2="{_fmt(y)}" stroke="#222" stroke-width="1.2"/>'
        )
        parts.append(
            f'<text x="{_PLOT_X - 10}" y="{_fmt(y + 4.5)}" {font} '
            f'text-anchor="end">{format_rational(a)}</text>'
        )
    parts.append(
        f'<text x="{_fmt(_PLOT_X + _PLOT_W / 2)}" '
        f'y="{_PLOT_Y + _PLOT_H + 44}" {font} text-anchor="middle">s</text>'
    )
    parts.append(
        f'<text x="22" y="{_fmt(_PLOT_Y + _PLOT_H / 2)}" {font} '
        f'text-anchor="middle" transform="rotate(-90 22 '
        f'{_fmt(_PLOT_Y + _PLOT_H / 2)})">&#945;</text>'
    )

    # legend: one swatch per layer, in paint order
    ly = _PLOT_Y + 8
    parts.append(
        f'<text x="{_LEGEND_X}" y="{ly - 14}" {font} font-weight="bold">'
        f"regions</text>"
    )
    for layer in f.layers:
        if layer.rasters:
            paint = _layer_paint(layer.style, layer.id)
            opacity = ' fill-opacity="0.45"' if layer.style.startswith("area-") else ""
            parts.append(
                f'<rect x="{_LEGEND_X}" y="{ly}" width="26" height="16" '
                f'fill="{paint}"{opacity} stroke="#555" stroke-width="0.7"/>'
            )
        else:
            color = "#333333" if layer.id == "open" else _STYLE_COLOR[layer.style]
            dash = ' stroke-dasharray="7 4"' if layer.id == "open" else ""
            parts.append(
                f'<line x1="{_LEGEND_X}" y1="{ly + 8}" x2="{_LEGEND_X + 26}" '
                f'y2="{ly + 8}" stroke="{color}" stroke-width="3.4"{dash}/>'
            )
        parts.append(
            f'<text x="{_LEGEND_X + 34}" y="{ly + 13}" {font}>{layer.label}</text>'
        )
        ly += 28
    parts.append("</svg>")
    return "\n".join(parts).encode("ascii", "xmlcharrefreplace")
