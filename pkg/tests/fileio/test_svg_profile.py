"""
SVG chart tests.
"""
import re

import allure
import numpy as np
import pytest

from fileio.svg_profile import (
    COLOR_CYCLE,
    render_svg_heatmap,
    render_svg_profile,
    value_range,
)
from models.schemas import Grid1D, TemperatureField
from utils.errors import ConfigurationError


@pytest.mark.smoke
@allure.feature("SVG Export")
@allure.story("Profiles")
class TestProfileChart:
    """Tests for temperature-against-position charts."""

    def test_one_polyline_and_legend_entry_per_field(self, test_data):
        """Test curve and legend counts."""
        grid = Grid1D(length=2.0, node_count=9)
        fields = [test_data.random_field(9, time=t) for t in (0.0, 1.0, 2.0)]
        svg = render_svg_profile(fields, ["a", "b", "c"], grid)
        assert svg.startswith('<svg xmlns="http://www.w3.org/2000/svg"')
        assert not svg.startswith("<?xml")
        assert svg.count("<polyline") == 3
        assert svg.count('class="legend-entry"') == 3
        assert svg.rstrip().endswith("</svg>")

    def test_colours_cycle(self, test_data):
        """Test curves past the palette reuse its colours."""
        grid = Grid1D(length=1.0, node_count=4)
        count = len(COLOR_CYCLE) + 2
        fields = [test_data.random_field(4) for _ in range(count)]
        svg = render_svg_profile(fields, [str(i) for i in range(count)], grid)
        assert svg.count(f'stroke="{COLOR_CYCLE[0]}"') == 2

    def test_deterministic(self, test_data):
        """Test identical inputs give byte-identical output."""
        grid = Grid1D(length=1.0, node_count=6)
        fields = [test_data.random_field(6)]
        assert render_svg_profile(fields, ["t=0"], grid) == render_svg_profile(
            fields, ["t=0"], grid
        )

    def test_labels_are_escaped(self):
        """Test legend text is XML-escaped."""
        grid = Grid1D(length=1.0, node_count=3)
        svg = render_svg_profile([TemperatureField(values=[0, 1, 0])], ["a<b & c"], grid)
        assert "a&lt;b &amp; c" in svg

    def test_non_finite_samples_are_skipped(self):
        """Test a diverged field still renders its finite points."""
        grid = Grid1D(length=2.0, node_count=3)
        field = TemperatureField(values=[0.0, np.inf, 1.0], diverged=True)
        svg = render_svg_profile([field], ["blown"], grid)
        points = re.search(r'<polyline points="([^"]*)"', svg).group(1)
        assert len(points.split()) == 2

    def test_requires_fields(self):
        """Test an empty chart is rejected."""
        with pytest.raises(ConfigurationError):
            render_svg_profile([], [], Grid1D(length=1.0, node_count=3))

    def test_label_count_must_match(self):
        """Test one label per field."""
        with pytest.raises(ConfigurationError):
            render_svg_profile(
                [TemperatureField(values=[0, 1, 0])], ["a", "b"], Grid1D(length=1.0, node_count=3)
            )


@pytest.mark.regression
@allure.feature("SVG Export")
@allure.story("Autoscale")
class TestValueRange:
    """Tests for the y-axis autoscale."""

    def test_padded_range(self):
        """Test five percent padding on both sides."""
        lo, hi = value_range([TemperatureField(values=[0.0, 10.0, 20.0])])
        assert (lo, hi) == pytest.approx((-1.0, 21.0))

    def test_all_zero_field(self):
        """Test an all-zero field scales to [-1, 1]."""
        assert value_range([TemperatureField(values=np.zeros(5))]) == (-1.0, 1.0)

    def test_constant_field(self):
        """Test a constant field scales to [v-1, v+1]."""
        assert value_range([TemperatureField(values=np.full(4, 7.0))]) == (6.0, 8.0)


@pytest.mark.regression
@allure.feature("SVG Export")
@allure.story("Heat Map")
class TestHeatMap:
    """Tests for the space-time colour map."""

    def test_cell_count(self, test_data):
        """Test one cell per (frame, node) for small histories."""
        result = test_data.random_result(node_count=7, frame_count=4)
        svg = render_svg_heatmap(result.frames, Grid1D(length=1.0, node_count=7))
        cells = svg.split('<g class="cells">')[1].split("</g>")[0]
        assert cells.count("<rect") == 4 * 7

    def test_large_history_is_thinned(self, test_data):
        """Test rows and columns are capped."""
        result = test_data.random_result(node_count=30, frame_count=50)
        svg = render_svg_heatmap(result.frames, Grid1D(length=1.0, node_count=30), max_cells=10)
        cells = svg.split('<g class="cells">')[1].split("</g>")[0]
        assert cells.count("<rect") == 10 * 10

    def test_deterministic(self, test_data):
        """Test identical inputs give byte-identical output."""
        result = test_data.random_result()
        grid = Grid1D(length=1.0, node_count=11)
        assert render_svg_heatmap(result.frames, grid) == render_svg_heatmap(result.frames, grid)

    def test_requires_frames(self):
        """Test an empty history is rejected."""
        with pytest.raises(ConfigurationError):
            render_svg_heatmap([], Grid1D(length=1.0, node_count=3))
