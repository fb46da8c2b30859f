"""
CSV export of simulation histories.

Numbers are written in shortest round-trip form (integral values without a
decimal point) so files reproduce every stored value bit-exactly when read back.
"""
import csv
import io
import math
from pathlib import Path
from typing import Any, List, Sequence, Tuple, Union

import numpy as np

from models.schemas import Grid1D, SimulationResult, TemperatureField
from utils.errors import ConfigurationError, OutputError
from utils.logger import logger

TIMESERIES_HEADER = ("t", "x", "temperature")
FRAME_HEADER = ("x", "temperature")
MANIFEST_HEADER = ("index", "time")
FRAME_INDEX_WIDTH = 5

PathLike = Union[str, Path]


def format_number(value: float) -> str:
    """Shortest decimal text that parses back to exactly ``value``."""
    value = float(value)
    if value == 0.0:
        return "-0" if math.copysign(1.0, value) < 0 else "0"
    if value.is_integer() and abs(value) < 1e16:
        return str(int(value))
    return repr(value)


def _writer(buffer: io.StringIO) -> Any:
    return csv.writer(buffer, lineterminator="\n")


def write_timeseries_csv(result: SimulationResult, grid: Grid1D) -> str:
    """
    Render every stored frame as ``t,x,temperature`` rows (time-major).

    Args:
        result: Simulation result with at least one frame
        grid: Grid the result was computed on

    Returns:
        CSV text with a header line and one row per (frame, node)
    """
    positions = [format_number(x) for x in grid.positions]
    buffer = io.StringIO()
    writer = _writer(buffer)
    writer.writerow(TIMESERIES_HEADER)
    for frame in result.frames:
        if len(frame) != len(positions):
            raise ConfigurationError(
                f"Frame at t={frame.time:g} has {len(frame)} nodes, grid has {len(positions)}"
            )
        t = format_number(frame.time)
        writer.writerows(
            (t, x, format_number(value)) for x, value in zip(positions, frame.values)
        )
    return buffer.getvalue()


def read_timeseries_csv(text: str) -> Tuple[np.ndarray, List[TemperatureField]]:
    """
    Parse text produced by ``write_timeseries_csv``.

    Returns:
        Node positions and the frames in file order

    Raises:
        ConfigurationError: If the header or row layout is wrong
    """
    rows = list(csv.reader(io.StringIO(text)))
    if not rows or tuple(rows[0]) != TIMESERIES_HEADER:
        raise ConfigurationError(f"Expected header {','.join(TIMESERIES_HEADER)}")

    times: List[float] = []
    columns: List[List[float]] = []
    positions: List[float] = []
    for number, row in enumerate(rows[1:], start=2):
        if len(row) != 3:
            raise ConfigurationError(f"line {number}: expected 3 columns, got {len(row)}")
        t, x, value = (float(cell) for cell in row)
        if not times or t != times[-1]:
            times.append(t)
            columns.append([])
        columns[-1].append(value)
        if len(times) == 1:
            positions.append(x)

    frames = []
    for t, values in zip(times, columns):
        array = np.asarray(values)
        frames.append(
            TemperatureField(values=array, time=t, diverged=not bool(np.all(np.isfinite(array))))
        )
    return np.asarray(positions), frames


def write_text(path: PathLike, text: str) -> Path:
    """
    Write text to a file, creating parent directories.

    Raises:
        OutputError: If the file cannot be written
    """
    target = Path(path)
    try:
        target.parent.mkdir(parents=True, exist_ok=True)
        target.write_text(text, encoding="utf-8", newline="")
    except OSError as exc:
        raise OutputError(target, exc.strerror or str(exc)) from exc
    logger.info(f"Wrote {target}")
    return target


def write_frames(
    frames: Sequence[TemperatureField],
    grid: Grid1D,
    directory: PathLike,
) -> List[Path]:
    """
    Write one ``frame_<index>.csv`` per frame plus ``manifest.csv`` (index -> time).

    Args:
        frames: Stored frames of a result; may be empty
        grid: Grid the frames live on
        directory: Output directory, created if missing

    Returns:
        Paths of the frame files followed by the manifest

    Raises:
        OutputError: If the directory or a file cannot be written
    """
    target = Path(directory)
    try:
        target.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise OutputError(target, exc.strerror or str(exc)) from exc

    positions = [format_number(x) for x in grid.positions]
    manifest = io.StringIO()
    manifest_writer = _writer(manifest)
    manifest_writer.writerow(MANIFEST_HEADER)

    written: List[Path] = []
    for index, frame in enumerate(frames):
        buffer = io.StringIO()
        writer = _writer(buffer)
        writer.writerow(FRAME_HEADER)
        writer.writerows(
            (x, format_number(value)) for x, value in zip(positions, frame.values)
        )
        name = f"frame_{index:0{FRAME_INDEX_WIDTH}d}.csv"
        written.append(write_text(target / name, buffer.getvalue()))
        manifest_writer.writerow((index, format_number(frame.time)))

    written.append(write_text(target / "manifest.csv", manifest.getvalue()))
    return written
