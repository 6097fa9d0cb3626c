"""Figure layout and SVG rendering."""

from __future__ import annotations

import re
import xml.etree.ElementTree as ET

import pytest

from uniq_regions.exact import rat
from uniq_regions.predicates import s0
from uniq_regions.render import (
    FigureSpec,
    LayerSpec,
    figure_grid,
    figure_spec,
    render_figure,
)

SVG_NS = {"svg": "http://www.w3.org/2000/svg"}


def coarse_svg(n, step=rat(1, 8)):
    spec = figure_spec(n)
    return render_figure(spec, figure_grid(spec, step=step))


def test_low_dimensions_have_no_figure():
    with pytest.raises(ValueError, match="dimension 3"):
        figure_spec(2)


def test_layer_lineup_by_dimension():
    assert [l.id for l in figure_spec(3).layers] == [
        "kato", "furioli-terraneo", "rogers", "win-tsutsumi",
        "new-subcritical", "new-critical", "open",
    ]
    assert [l.id for l in figure_spec(6).layers] == [
        "kato", "rogers", "new-subcritical", "new-critical", "open",
    ]
    assert len(figure_spec(5).layers) == 7
    assert len(figure_spec(9).layers) == 5


@pytest.mark.parametrize("n, cap", [(3, rat(4)), (4, rat(5, 2)),
                                    (5, rat(2)), (6, rat(3, 2))])
def test_power_axis_caps(n, cap):
    assert figure_spec(n).alpha_max == cap


def test_output_is_valid_svg():
    root = ET.fromstring(coarse_svg(3))
    assert root.tag == "{http://www.w3.org/2000/svg}svg"
    assert root.get("width") and root.get("height")


def test_legend_names_every_layer():
    text = coarse_svg(4).decode()
    for layer in figure_spec(4).layers:
        assert layer.label in text


def test_rendering_is_deterministic():
    spec = figure_spec(3)
    grid = figure_grid(spec, step=rat(1, 8))
    first = render_figure(spec, grid)
    assert render_figure(spec, grid) == first
    assert render_figure(spec, figure_grid(spec, step=rat(1, 8))) == first


def test_coordinates_use_two_decimals():
    text = coarse_svg(3).decode()
    for match in re.finditer(r'<polyline points="([^"]+)"', text):
        for pair in match.group(1).split():
            x, y = pair.split(",")
            assert re.fullmatch(r"\d+\.\d\d", x)
            assert re.fullmatch(r"\d+\.\d\d", y)


def test_curve_styles_are_distinguishable():
    text = coarse_svg(3).decode()
    assert 'stroke="#dcae00"' in text
    assert "stroke-dasharray" in text
    assert 'fill="#dcae00"' in text


def test_layer_with_no_true_cells_stays_blank():
    ghost = FigureSpec(
        n=4,
        layers=(LayerSpec(id="ghost", label="never drawn", style="area-red",
                          rasters=("thm15",)),),
        alpha_max=rat(5, 2),
    )
    root = ET.fromstring(render_figure(ghost, figure_grid(ghost, step=rat(1, 4))))
    group = next(
        g for g in root.iter("{http://www.w3.org/2000/svg}g")
        if g.get("id") == "layer-ghost"
    )
    assert len(list(group)) == 0


def test_critical_curve_starts_past_the_threshold():
    text = coarse_svg(5, step=rat(1, 16)).decode()
    xs = []
    for match in re.finditer(
            r'<polyline points="([^"]+)"[^>]*stroke="#dcae00"', text):
        xs += [float(p.split(",")[0]) for p in match.group(1).split()]
    for match in re.finditer(r'<circle cx="([0-9.]+)"[^>]*fill="#dcae00"', text):
        xs.append(float(match.group(1)))
    assert xs
    svals = [(x - 70.0) / 530.0 for x in xs]
    lo, _ = s0(5, rat(1, 10**6))
    assert min(svals) > float(lo)
    assert max(svals) < 1.0
