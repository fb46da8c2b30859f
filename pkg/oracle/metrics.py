"""
Distances between temperature fields.
"""
import math

import numpy as np

from models.schemas import ErrorReport, TemperatureField
from utils.errors import ConfigurationError, DomainError


def error_metrics(a: TemperatureField, b: TemperatureField, dx: float) -> ErrorReport:
    """
    Max-abs and grid-weighted RMS difference of two fields.

    The RMS uses trapezoid weights (end nodes count half) over L = (N-1)*dx, so a
    constant difference c gives l2 = |c|.

    Args:
        a: First field
        b: Second field
        dx: Node spacing

    Returns:
        ErrorReport with max_abs and l2

    Raises:
        ConfigurationError: If the fields differ in length
    """
    if len(a) != len(b):
        raise ConfigurationError(f"Field lengths differ: {len(a)} vs {len(b)}")
    if not (math.isfinite(dx) and dx > 0):
        raise DomainError("dx", dx, "must be finite and > 0")

    diff = a.values - b.values
    max_abs = float(np.max(np.abs(diff)))
    weights = np.full(diff.shape[0], dx)
    weights[0] = weights[-1] = 0.5 * dx
    length = dx * (diff.shape[0] - 1)
    l2 = math.sqrt(float(np.sum(weights * diff ** 2)) / length)
    # Round-off can push the weighted mean a few ulps past the max
    return ErrorReport(max_abs=max_abs, l2=min(l2, max_abs))
