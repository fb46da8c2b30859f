"""
Material catalog and diffusivity arithmetic.

Property values are the reference rod values. Conductivity magnitudes correspond
to W/cm·K; the solver only needs self-consistent units.
"""
import math
from typing import Dict, Tuple

from models.schemas import Material
from utils.errors import DomainError, MaterialLookupError

_CATALOG: Dict[str, Material] = {
    "aluminium": Material(name="aluminium", conductivity=2.38, density=2.7, specific_heat=0.92),
    "copper": Material(name="copper", conductivity=4.1, density=8.96, specific_heat=0.376),
    "mild-steel": Material(name="mild-steel", conductivity=0.064, density=7.85, specific_heat=0.51),
}


def _require_positive(name: str, value: float) -> None:
    if not (math.isfinite(value) and value > 0):
        raise DomainError(name, value, "must be finite and > 0")


def thermal_diffusivity(k: float, rho: float, c: float) -> float:
    """
    Thermal diffusivity alpha = k/(rho*c).

    Args:
        k: Thermal conductivity
        rho: Density
        c: Specific heat

    Returns:
        Diffusivity in the units implied by the inputs

    Raises:
        DomainError: If any input is non-positive or non-finite, or the quotient
            is out of floating-point range
    """
    _require_positive("k", k)
    _require_positive("rho", rho)
    _require_positive("c", c)
    heat_capacity = rho * c
    alpha = k / heat_capacity if heat_capacity > 0 else math.inf
    if not (math.isfinite(alpha) and alpha > 0):
        raise DomainError("diffusivity", alpha, "k/(rho*c) is out of floating-point range")
    return alpha


def catalog_keys() -> Tuple[str, ...]:
    """Valid material names in catalog order."""
    return tuple(_CATALOG)


def builtin_material(name: str) -> Material:
    """
    Look up a catalog material (case-insensitive).

    Args:
        name: One of ``catalog_keys()``

    Returns:
        The catalog record

    Raises:
        MaterialLookupError: If the name is not in the catalog
    """
    key = name.strip().lower()
    try:
        return _CATALOG[key]
    except KeyError:
        raise MaterialLookupError(name, catalog_keys()) from None


def custom_material(k: float, rho: float, c: float, name: str = "custom") -> Material:
    """Build a material from raw properties, validating them like ``thermal_diffusivity``."""
    thermal_diffusivity(k, rho, c)
    return Material(name=name, conductivity=k, density=rho, specific_heat=c)
