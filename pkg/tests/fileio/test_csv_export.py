"""
CSV export tests.
"""
import csv

import allure
import numpy as np
import pytest

from fileio.csv_export import (
    format_number,
    read_timeseries_csv,
    write_frames,
    write_text,
    write_timeseries_csv,
)
from models.schemas import Grid1D
from utils.errors import ConfigurationError, OutputError


@pytest.mark.smoke
@allure.feature("CSV Export")
@allure.story("Number Format")
class TestFormatNumber:
    """Tests for shortest round-trip number text."""

    @pytest.mark.parametrize("value,text", [
        (0.0, "0"),
        (-0.0, "-0"),
        (50.0, "50"),
        (-3.0, "-3"),
        (0.1, "0.1"),
        (1e-20, "1e-20"),
        (float("inf"), "inf"),
    ])
    def test_examples(self, value: float, text: str):
        """Test representative values."""
        assert format_number(value) == text

    def test_round_trip(self, test_data):
        """Test random values parse back bit-exactly."""
        for value in test_data.random_values(200, -1e6, 1e6):
            assert float(format_number(value)) == value


@pytest.mark.regression
@allure.feature("CSV Export")
@allure.story("Time Series")
class TestTimeSeries:
    """Tests for the t,x,temperature layout."""

    def test_layout(self, test_data):
        """Test header, row count and time-major ordering."""
        result = test_data.random_result(node_count=4, frame_count=3)
        grid = Grid1D(length=3.0, node_count=4)
        text = write_timeseries_csv(result, grid)
        rows = list(csv.reader(text.splitlines()))
        assert rows[0] == ["t", "x", "temperature"]
        assert len(rows) == 1 + 3 * 4
        assert [row[0] for row in rows[1:5]] == ["0"] * 4
        assert [row[1] for row in rows[1:5]] == ["0", "1", "2", "3"]
        assert "\r" not in text

    def test_read_back(self, test_data):
        """Test the reader recovers positions and frames."""
        result = test_data.random_result(node_count=6, frame_count=4)
        grid = Grid1D(length=1.0, node_count=6)
        positions, frames = read_timeseries_csv(write_timeseries_csv(result, grid))
        np.testing.assert_array_equal(positions, grid.positions)
        assert frames == result.frames

    def test_grid_mismatch(self, test_data):
        """Test frames must match the grid's node count."""
        result = test_data.random_result(node_count=5)
        with pytest.raises(ConfigurationError):
            write_timeseries_csv(result, Grid1D(length=1.0, node_count=6))

    def test_bad_header(self):
        """Test the reader rejects foreign files."""
        with pytest.raises(ConfigurationError):
            read_timeseries_csv("time,position,value\n0,0,1\n")


@pytest.mark.regression
@allure.feature("CSV Export")
@allure.story("Frame Files")
class TestFrameFiles:
    """Tests for one file per frame plus a manifest."""

    def test_writes_frames_and_manifest(self, test_data, output_dir):
        """Test file names, headers and manifest contents."""
        result = test_data.random_result(node_count=5, frame_count=3, dt=0.5)
        grid = Grid1D(length=4.0, node_count=5)
        paths = write_frames(result.frames, grid, output_dir / "frames")
        assert [p.name for p in paths] == [
            "frame_00000.csv", "frame_00001.csv", "frame_00002.csv", "manifest.csv"
        ]
        frame_rows = list(csv.reader(paths[1].read_text().splitlines()))
        assert frame_rows[0] == ["x", "temperature"]
        assert len(frame_rows) == 6
        assert float(frame_rows[1][1]) == result.frames[1].values[0]
        manifest = paths[-1].read_text()
        assert manifest == "index,time\n0,0\n1,0.5\n2,1\n"

    def test_empty_sequence_writes_manifest_only(self, output_dir):
        """Test no frames still produces a manifest with its header."""
        paths = write_frames([], Grid1D(length=1.0, node_count=3), output_dir)
        assert [p.name for p in paths] == ["manifest.csv"]
        assert paths[0].read_text() == "index,time\n"

    def test_unwritable_target(self, output_dir):
        """Test a directory blocked by a file raises OutputError."""
        blocker = output_dir / "blocker"
        blocker.write_text("x")
        with pytest.raises(OutputError):
            write_frames([], Grid1D(length=1.0, node_count=3), blocker)
        with pytest.raises(OutputError):
            write_text(blocker / "nested.csv", "t\n")
