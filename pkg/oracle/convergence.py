"""
Grid-refinement study of the explicit scheme's spatial accuracy.

At fixed lambda the time step scales with dx^2, so the whole truncation error
scales with dx^2 and the observed order should be close to 2.
"""
import math
from typing import List, Sequence

import numpy as np

from models.schemas import (
    BoundaryCondition,
    ConvergencePoint,
    ConvergenceReport,
    Grid1D,
    SineMode,
    SolverConfig,
    TemperatureField,
)
from oracle.metrics import error_metrics
from oracle.spectral import continuum_solution
from solver.materials import custom_material
from solver.simulation import simulate
from solver.stability import STABILITY_LIMIT
from utils.errors import ConfigurationError, DomainError
from utils.logger import logger

DEFAULT_GRIDS = (17, 33, 65)


def observed_order(dx: Sequence[float], errors: Sequence[float]) -> float:
    """Least-squares slope of log(error) against log(dx)."""
    slope, _ = np.polyfit(np.log(dx), np.log(errors), 1)
    return float(slope)


def convergence_study(
    alpha: float,
    length: float,
    mode: int,
    lambda_fixed: float,
    grids: Sequence[int],
    t_target: float,
    amplitude: float = 1.0,
) -> ConvergenceReport:
    """
    Compare sine-mode runs on successively finer grids against the continuum solution.

    For each node count N: dt = lambda_fixed*dx^2/alpha, steps = round(t_target/dt),
    and the final frame is compared with the exact solution at steps*dt.

    Args:
        alpha: Diffusivity
        length: Rod length
        mode: Sine mode number m
        lambda_fixed: Mesh Fourier number shared by all grids (<= 0.5)
        grids: Strictly increasing node counts, at least two
        t_target: Target comparison time
        amplitude: Sine amplitude

    Returns:
        ConvergenceReport with per-grid errors and the fitted order

    Raises:
        ConfigurationError: If lambda_fixed > 0.5 or the grid list is unusable
    """
    if not (math.isfinite(lambda_fixed) and lambda_fixed > 0):
        raise DomainError("lambda_fixed", lambda_fixed, "must be finite and > 0")
    if lambda_fixed > STABILITY_LIMIT:
        raise ConfigurationError(
            f"lambda_fixed={lambda_fixed:g} exceeds {STABILITY_LIMIT}; the study would "
            "measure instability rather than truncation error"
        )
    if len(grids) < 2:
        raise ConfigurationError("Convergence study needs at least two grids")
    if any(b <= a for a, b in zip(grids, grids[1:])):
        raise ConfigurationError(f"Grid node counts must be strictly increasing: {list(grids)}")
    if not (math.isfinite(t_target) and t_target > 0):
        raise DomainError("t_target", t_target, "must be finite and > 0")
    if len(grids) == 2:
        logger.warning("Observed order from a two-point fit; add grids for a robust estimate")

    material = custom_material(alpha, 1.0, 1.0, name="unit")
    bc = BoundaryCondition.dirichlet(0.0, 0.0)
    points: List[ConvergencePoint] = []
    for node_count in grids:
        grid = Grid1D(length=length, node_count=node_count)
        dt = lambda_fixed * grid.dx ** 2 / material.diffusivity
        steps = max(2, round(t_target / dt))
        config = SolverConfig(
            grid=grid,
            material=material,
            bc=bc,
            ic=SineMode(mode=mode, amplitude=amplitude),
            dt=dt,
            t_end=steps * dt,
            sample_every=steps,
        )
        final = simulate(config).final
        exact = continuum_solution(
            grid.positions, final.time, material.diffusivity, length, mode, amplitude
        )
        report = error_metrics(final, TemperatureField(values=exact, time=final.time), grid.dx)
        logger.info(f"N={node_count} dx={grid.dx:.6g} steps={steps} l2={report.l2:.6e}")
        points.append(
            ConvergencePoint(
                node_count=node_count,
                dx=grid.dx,
                steps=steps,
                time=final.time,
                l2_error=report.l2,
            )
        )

    order = observed_order([p.dx for p in points], [p.l2_error for p in points])
    return ConvergenceReport(points=points, observed_order=order)
