"""
Forward-time centred-space update for the 1-D heat equation.

T_i^{j+1} = T_i^j + lambda*(T_{i+1}^j - 2*T_i^j + T_{i-1}^j)

Dirichlet ends are overwritten with their value after each step. Neumann ends use a
ghost node mirrored through the end so the centred difference there matches the
prescribed gradient.
"""
import math
from typing import Optional

import numpy as np

from models.schemas import (
    BoundaryCondition,
    Dirichlet,
    Explicit,
    Grid1D,
    InitialCondition,
    Neumann,
    SineMode,
    SpikeAtNode,
    TemperatureField,
    Uniform,
)
from utils.errors import ConfigurationError, DomainError, UnsupportedQueryError


def apply_initial_condition(ic: InitialCondition, grid: Grid1D) -> TemperatureField:
    """
    Realize an initial condition on a grid.

    Args:
        ic: Initial condition
        grid: Target grid

    Returns:
        Field at t=0

    Raises:
        ConfigurationError: If a spike index or explicit length does not fit the grid
    """
    count = grid.node_count
    if isinstance(ic, Uniform):
        values = np.full(count, ic.value)
    elif isinstance(ic, SpikeAtNode):
        index = grid.mid_index if ic.node_index is None else ic.node_index
        if not 0 <= index <= count - 1:
            raise ConfigurationError(f"Spike node {index} outside [0, {count - 1}]")
        values = np.full(count, ic.background_value)
        values[index] = ic.spike_value
    elif isinstance(ic, SineMode):
        values = ic.amplitude * np.sin(ic.mode * np.pi * grid.positions / grid.length)
        values[-1] = 0.0  # sin(m*pi) is zero analytically
    elif isinstance(ic, Explicit):
        if len(ic.values) != count:
            raise ConfigurationError(
                f"Explicit initial condition has {len(ic.values)} values, grid has {count} nodes"
            )
        values = np.asarray(ic.values, dtype=np.float64)
    else:
        raise ConfigurationError(f"Unsupported initial condition: {ic!r}")
    return TemperatureField(values=values, time=0.0)


def pin_dirichlet_ends(values: np.ndarray, bc: BoundaryCondition) -> None:
    """Overwrite Dirichlet end nodes in place."""
    if isinstance(bc.left, Dirichlet):
        values[0] = bc.left.value
    if isinstance(bc.right, Dirichlet):
        values[-1] = bc.right.value


def advance(
    current: np.ndarray,
    out: np.ndarray,
    lam: float,
    bc: BoundaryCondition,
    dx: float,
    padded: Optional[np.ndarray] = None,
) -> None:
    """
    Write one FTCS step of ``current`` into ``out``.

    ``padded`` is an optional scratch buffer of length N+2 holding the ghost nodes;
    passing it avoids an allocation per step.
    """
    if padded is None:
        padded = np.empty(current.shape[0] + 2)
    padded[1:-1] = current

    left, right = bc.left, bc.right
    padded[0] = current[1] - 2.0 * dx * left.gradient if isinstance(left, Neumann) else left.value
    padded[-1] = (
        current[-2] + 2.0 * dx * right.gradient if isinstance(right, Neumann) else right.value
    )

    # Neighbour sum first so mirror-image nodes see bitwise-identical operands
    out[:] = current + lam * ((padded[2:] + padded[:-2]) - 2.0 * current)
    pin_dirichlet_ends(out, bc)


def ftcs_step(
    field: TemperatureField,
    lam: float,
    bc: BoundaryCondition,
    dx: float,
    *,
    dt: float,
) -> TemperatureField:
    """
    Advance a field by one explicit step.

    Args:
        field: Field at time t
        lam: Mesh Fourier number
        bc: Boundary conditions
        dx: Node spacing (used by Neumann ghost nodes)
        dt: Time step, added to the field time

    Returns:
        Field at time t+dt; flagged diverged if any value is non-finite

    Raises:
        ConfigurationError: If the field has fewer than 3 nodes
        DomainError: If lam, dx or dt is not positive
    """
    if len(field) < 3:
        raise ConfigurationError(f"FTCS needs at least 3 nodes, got {len(field)}")
    for name, value in (("lambda", lam), ("dx", dx), ("dt", dt)):
        if not value > 0:
            raise DomainError(name, value, "must be > 0")

    out = np.empty_like(field.values)
    with np.errstate(over="ignore", invalid="ignore"):
        advance(field.values, out, lam, bc, dx)
    diverged = field.diverged or not bool(np.all(np.isfinite(out)))
    return TemperatureField(values=out, time=field.time + dt, diverged=diverged)


def detect_steady_state(
    prev: TemperatureField,
    current: TemperatureField,
    dt: float,
    eps: float,
) -> bool:
    """
    Decide whether the largest nodal rate of change is below ``eps``.

    Raises:
        ConfigurationError: If the fields differ in length
        DomainError: If dt is not positive
    """
    if len(prev) != len(current):
        raise ConfigurationError(f"Field lengths differ: {len(prev)} vs {len(current)}")
    if not dt > 0:
        raise DomainError("dt", dt, "must be > 0")
    return max_rate(prev.values, current.values, dt) < eps


def max_rate(prev: np.ndarray, nxt: np.ndarray, dt: float) -> float:
    """max_i |next_i - prev_i| / dt; NaN when either array is non-finite."""
    with np.errstate(invalid="ignore", over="ignore"):
        rate = float(np.max(np.abs(nxt - prev))) / dt
    return rate if math.isfinite(rate) else math.nan


def linear_steady_profile(bc: BoundaryCondition, grid: Grid1D) -> TemperatureField:
    """
    Steady profile between two fixed-temperature ends.

    Raises:
        UnsupportedQueryError: If either end is Neumann (the steady state is not unique)
    """
    if not bc.both_dirichlet:
        raise UnsupportedQueryError(
            "Linear steady profile needs Dirichlet conditions at both ends"
        )
    left, right = bc.left.value, bc.right.value
    values = left + (right - left) * grid.positions / grid.length
    values[-1] = right
    return TemperatureField(values=values, time=0.0)


def heat_content(field: TemperatureField, dx: float) -> float:
    """
    Trapezoid-weighted node sum (end nodes count half).

    This is the quantity the insulated ghost-node update conserves exactly.
    """
    values = field.values
    return dx * (float(values.sum()) - 0.5 * (values[0] + values[-1]))
