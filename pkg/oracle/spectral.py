"""
Closed-form references for the explicit scheme.

With both ends fixed, the interior second-difference operator has the sine
eigenvectors v_k(i) = sin(k*pi*i/(M+1)), so n explicit steps multiply mode k by
g_k**n with g_k = 1 - 4*lambda*sin^2(k*pi/(2(M+1))). Subtracting the linear
steady profile reduces fixed non-zero ends to the homogeneous problem.
"""
import math
from typing import Optional, Union

import numpy as np

from models.schemas import BoundaryCondition, TemperatureField
from utils.errors import ConfigurationError, DomainError, UnsupportedQueryError

ArrayOrFloat = Union[float, np.ndarray]


class DiscreteModeBasis:
    """
    Eigenbasis of the interior second-difference operator on N nodes.

    Attributes:
        interior_count: M = N - 2
        vectors: (M, M) array, row k-1 holds v_k at interior nodes 1..M
        eigenvalues: mu_k = -(4/dx^2)*sin^2(k*pi/(2(M+1)))
    """

    def __init__(self, node_count: int, dx: float = 1.0):
        if node_count < 3:
            raise ConfigurationError(f"Mode basis needs at least 3 nodes, got {node_count}")
        if not dx > 0:
            raise DomainError("dx", dx, "must be > 0")
        self.interior_count = node_count - 2
        self.dx = dx
        modes = np.arange(1, self.interior_count + 1)
        self.vectors = np.sin(np.outer(modes, modes) * np.pi / (self.interior_count + 1))
        self.half_angles = modes * np.pi / (2 * (self.interior_count + 1))
        self.eigenvalues = -(4.0 / dx ** 2) * np.sin(self.half_angles) ** 2

    def project(self, interior: np.ndarray) -> np.ndarray:
        """Mode coefficients of an interior vector."""
        return (2.0 / (self.interior_count + 1)) * (self.vectors @ interior)

    def reconstruct(self, coefficients: np.ndarray) -> np.ndarray:
        """Interior vector from mode coefficients."""
        return self.vectors.T @ coefficients

    def gram(self) -> np.ndarray:
        """Discrete inner products of all basis pairs; (M+1)/2 on the diagonal."""
        return self.vectors @ self.vectors.T

    def second_difference(self, interior: np.ndarray) -> np.ndarray:
        """Interior operator (v_{i+1} - 2 v_i + v_{i-1})/dx^2 with zero ends."""
        padded = np.concatenate(([0.0], interior, [0.0]))
        return ((padded[2:] + padded[:-2]) - 2.0 * interior) / self.dx ** 2


def amplification_factors(lam: float, interior_count: int) -> np.ndarray:
    """Per-step multipliers g_k for k = 1..M."""
    modes = np.arange(1, interior_count + 1)
    return 1.0 - 4.0 * lam * np.sin(modes * np.pi / (2 * (interior_count + 1))) ** 2


def exact_ftcs_solution(
    ic: TemperatureField,
    lam: float,
    bc: BoundaryCondition,
    steps: int,
    dt: Optional[float] = None,
) -> TemperatureField:
    """
    Result of ``steps`` explicit steps, computed without stepping.

    Args:
        ic: Starting field; its end values must equal the Dirichlet values
        lam: Mesh Fourier number
        bc: Boundary conditions, Dirichlet at both ends
        steps: Number of steps, >= 0
        dt: Optional step size used to stamp the output time

    Returns:
        Field after ``steps`` steps

    Raises:
        UnsupportedQueryError: If either end is Neumann
        ConfigurationError: If the field's ends disagree with the Dirichlet values
        DomainError: If steps is negative or lam is not positive
    """
    if not bc.both_dirichlet:
        raise UnsupportedQueryError("Closed-form solution needs Dirichlet conditions at both ends")
    if steps < 0:
        raise DomainError("steps", steps, "must be >= 0")
    if not lam > 0:
        raise DomainError("lambda", lam, "must be > 0")
    if steps == 0:
        return ic

    values = ic.values
    left, right = bc.left.value, bc.right.value
    if values[0] != left or values[-1] != right:
        raise ConfigurationError(
            f"Field ends ({values[0]:g}, {values[-1]:g}) differ from the "
            f"Dirichlet values ({left:g}, {right:g})"
        )

    count = len(ic)
    profile = left + (right - left) * np.arange(count) / (count - 1)
    basis = DiscreteModeBasis(count)
    coefficients = basis.project(values[1:-1] - profile[1:-1])
    growth = amplification_factors(lam, basis.interior_count) ** steps

    out = profile.copy()
    out[1:-1] += basis.reconstruct(coefficients * growth)
    out[0], out[-1] = left, right
    elapsed = 0.0 if dt is None else steps * dt
    return TemperatureField(values=out, time=ic.time + elapsed)


def continuum_solution(
    x: ArrayOrFloat,
    t: float,
    alpha: float,
    length: float,
    mode: int,
    amplitude: float = 1.0,
) -> ArrayOrFloat:
    """
    Separated solution of the heat equation with both ends at zero.

    Returns A*sin(m*pi*x/L)*exp(-alpha*(m*pi/L)^2*t).

    Raises:
        DomainError: If x lies outside [0, L] or the other parameters are out of range
    """
    if not (math.isfinite(length) and length > 0):
        raise DomainError("length", length, "must be finite and > 0")
    if not (math.isfinite(alpha) and alpha > 0):
        raise DomainError("alpha", alpha, "must be finite and > 0")
    if not (math.isfinite(t) and t >= 0):
        raise DomainError("t", t, "must be finite and >= 0")
    if int(mode) != mode or mode < 1:
        raise DomainError("mode", mode, "must be an integer >= 1")

    positions = np.asarray(x, dtype=np.float64)
    if np.any(positions < 0) or np.any(positions > length) or not np.all(np.isfinite(positions)):
        raise DomainError("x", x, f"must lie in [0, {length:g}]")

    wavenumber = mode * np.pi / length
    result = amplitude * np.sin(wavenumber * positions) * math.exp(-alpha * wavenumber ** 2 * t)
    if positions.ndim == 0:
        return float(result)
    return result
