"""
Mesh Fourier number and the von Neumann stability bound of the explicit scheme.

The amplification factor of mode theta is 1 - 4*lambda*sin^2(theta/2), so every
mode stays bounded exactly when lambda <= 1/2.
"""
import math

from models.schemas import StabilityVerdict, fourier_ratio
from utils.errors import DomainError

STABILITY_LIMIT = 0.5


def mesh_fourier_number(alpha: float, dt: float, dx: float) -> float:
    """
    Compute lambda = alpha*dt/dx^2.

    Raises:
        DomainError: If any argument is non-positive or non-finite, or the
            quotient overflows or underflows
    """
    for name, value in (("alpha", alpha), ("dt", dt), ("dx", dx)):
        if not (math.isfinite(value) and value > 0):
            raise DomainError(name, value, "must be finite and > 0")
    lam = fourier_ratio(alpha, dt, dx)
    if not (math.isfinite(lam) and lam > 0):
        raise DomainError("lambda", lam, "alpha*dt/dx^2 is out of floating-point range")
    return lam


def check_stability(lam: float) -> StabilityVerdict:
    """
    Classify a mesh Fourier number.

    Args:
        lam: Mesh Fourier number

    Returns:
        STABLE below 1/2, MARGINAL at exactly 1/2, UNSTABLE above

    Raises:
        DomainError: If lam is not finite
    """
    if not math.isfinite(lam):
        raise DomainError("lambda", lam, "must be finite")
    if lam <= 0:
        raise DomainError("lambda", lam, "must be > 0")
    if lam < STABILITY_LIMIT:
        return StabilityVerdict.STABLE
    if lam == STABILITY_LIMIT:
        return StabilityVerdict.MARGINAL
    return StabilityVerdict.UNSTABLE


def max_stable_dt(alpha: float, dx: float) -> float:
    """
    Largest time step with lambda <= 1/2.

    Raises:
        DomainError: If an argument is invalid or the bound is out of floating-point range
    """
    for name, value in (("alpha", alpha), ("dx", dx)):
        if not (math.isfinite(value) and value > 0):
            raise DomainError(name, value, "must be finite and > 0")
    dt = STABILITY_LIMIT * (dx * dx) / alpha
    if not (math.isfinite(dt) and dt > 0):
        raise DomainError("dt", dt, "0.5*dx^2/alpha is out of floating-point range")
    return dt
