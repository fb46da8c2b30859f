"""
Time integration driver: runs the explicit scheme from a configuration and
records sampled frames, stability, steady-state time and divergence.
"""
import math
import time
from typing import List, Optional

import numpy as np

from models.schemas import (
    BoundaryCondition,
    Dirichlet,
    Neumann,
    SimulationResult,
    SolverConfig,
    TemperatureField,
)
from solver.ftcs import advance, apply_initial_condition, max_rate, pin_dirichlet_ends
from solver.stability import check_stability, mesh_fourier_number
from utils.logger import logger

DIVERGENCE_FACTOR = 10.0


def divergence_bound(initial: np.ndarray, bc: BoundaryCondition) -> float:
    """
    Magnitude above which a run counts as diverged.

    Ten times the largest initial or boundary temperature. Ends with a non-zero
    prescribed gradient keep injecting heat, so the maximum principle gives no
    bound and only non-finite values count as divergence.
    """
    if any(isinstance(end, Neumann) and end.gradient != 0.0 for end in (bc.left, bc.right)):
        return math.inf
    magnitudes = [float(np.max(np.abs(initial)))]
    magnitudes.extend(abs(end.value) for end in (bc.left, bc.right) if isinstance(end, Dirichlet))
    return DIVERGENCE_FACTOR * max(magnitudes)


def simulate(config: SolverConfig) -> SimulationResult:
    """
    Run ceil(t_end/dt) explicit steps.

    When t_end is not a multiple of dt the last step is shortened to land on
    t_end exactly, with lambda scaled down in proportion, so every recorded time
    lies in (0, t_end]. Frames are stored every ``sample_every`` steps plus the
    final step. The steady time is the first sampled time whose rate of change
    against the previous step is below ``steady_eps``. An unstable mesh Fourier
    number is recorded, not rejected; stepping stops early once values become
    non-finite, or at the steady time when ``stop_on_steady`` is set.

    Args:
        config: Validated solver configuration

    Returns:
        SimulationResult with frames and diagnostics
    """
    grid, bc, dt = config.grid, config.bc, config.dt
    dx = grid.dx
    lam = mesh_fourier_number(config.material.diffusivity, dt, dx)
    verdict = check_stability(lam)
    logger.log_stability(lam, verdict.value)

    steps = config.step_count
    logger.log_run_start(config, steps)
    started = time.perf_counter()

    # In-place working buffers
    current = np.array(apply_initial_condition(config.ic, grid).values)
    pin_dirichlet_ends(current, bc)
    following = np.empty_like(current)
    padded = np.empty(current.shape[0] + 2)

    frames: List[TemperatureField] = [TemperatureField(values=current, time=0.0)]
    bound = divergence_bound(current, bc)
    steady_time: Optional[float] = None
    diverged_at: Optional[float] = None

    with np.errstate(over="ignore", invalid="ignore"):
        for step in range(1, steps + 1):
            step_dt, step_lam, now = dt, lam, step * dt
            if step == steps:
                remaining = config.t_end - (steps - 1) * dt
                if 0.0 < remaining < dt:
                    step_dt, step_lam = remaining, lam * (remaining / dt)
                now = config.t_end
            advance(current, following, step_lam, bc, dx, padded)
            finite = bool(np.all(np.isfinite(following)))

            if diverged_at is None and (not finite or float(np.max(np.abs(following))) > bound):
                diverged_at = now
                logger.debug(f"Divergence bound {bound:g} exceeded at step {step}")

            sampled = step % config.sample_every == 0 or step == steps
            if (
                sampled
                and steady_time is None
                and finite
                and max_rate(current, following, step_dt) < config.steady_eps
            ):
                steady_time = now
                logger.debug(f"Steady state reached at t={now:g} (step {step})")

            current, following = following, current
            stop = not finite or (config.stop_on_steady and steady_time is not None)
            if sampled or stop:
                frames.append(TemperatureField(values=current, time=now, diverged=not finite))
            if stop:
                break

    result = SimulationResult(
        frames=frames,
        fourier_number=lam,
        stable=verdict,
        steady_time=steady_time,
        diverged_at=diverged_at,
    )
    logger.log_run_end(result, time.perf_counter() - started)
    return result
